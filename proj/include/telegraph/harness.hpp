#pragma once

// Validation tools: goodness of fit, quadrature mass checks, and
// finite-difference residuals of the governing equations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "json.hpp"
#include "telegraph/errors.hpp"
#include "telegraph/planar.hpp"
#include "telegraph/quadrature.hpp"
#include "telegraph/rates.hpp"
#include "telegraph/telegraph1d.hpp"
#include "telegraph/velocity.hpp"

namespace telegraph::harness {

struct ValidationReport {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  std::string details;

  /// Pass when statistic <= threshold.
  static ValidationReport upper(std::string name, double statistic, double threshold, std::uint64_t seed = 0,
                                std::uint64_t n = 0, std::string details = {}) {
    return {std::move(name), statistic, threshold, statistic <= threshold, seed, n, std::move(details)};
  }

  /// Pass when statistic >= threshold (p-values).
  static ValidationReport lower(std::string name, double statistic, double threshold, std::uint64_t seed = 0,
                                std::uint64_t n = 0, std::string details = {}) {
    return {std::move(name), statistic, threshold, statistic >= threshold, seed, n, std::move(details)};
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["statistic"] = statistic;
    j["threshold"] = threshold;
    j["passed"] = passed;
    j["seed"] = seed;
    j["n"] = n;
    j["details"] = details;
    return j;
  }
};

// ---------------------------------------------------------------------------
// Kolmogorov-Smirnov
// ---------------------------------------------------------------------------

/// A CDF with its left limits, so laws with atoms can be compared exactly.
struct Cdf {
  std::function<double(double)> value;
  std::function<double(double)> left;  // F(x-); empty means continuous

  double at(double x) const { return value(x); }
  double before(double x) const { return left ? left(x) : value(x); }
};

/// sup_x |F_n(x) - F(x)|, checked on both sides of every sample value.
inline double ks_statistic(std::vector<double> samples, const Cdf& cdf) {
  if (samples.empty()) throw domain_error("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < samples.size()) {
    std::size_t j = i;
    while (j < samples.size() && samples[j] == samples[i]) ++j;
    const double v = samples[i];
    d = std::max(d, std::abs(static_cast<double>(i) / n - cdf.before(v)));
    d = std::max(d, std::abs(static_cast<double>(j) / n - cdf.at(v)));
    i = j;
  }
  return d;
}

/// Accurate CDF of a DensityModel1D. The continuous part is tabulated in the
/// angle theta = asin((Phi(x) - mid) / half) and interpolated by cubic
/// Hermite pieces that use the exact density as slope.
class TabulatedCdf {
 public:
  /// `ac_only`: CDF of the continuous part normalised to mass 1, atoms dropped.
  explicit TabulatedCdf(const DensityModel1D& model, bool ac_only = false, int cells = 8192)
      : atoms_(model.atoms), ac_only_(ac_only) {
    if (!model.reduced) throw domain_error("TabulatedCdf needs a model with a unit-speed representation");
    const auto& r = *model.reduced;
    profile_.emplace(r.profile);
    g_ = r.g;
    mid_ = 0.5 * (r.y_lo + r.y_hi);
    half_ = 0.5 * (r.y_hi - r.y_lo);
    edge_singular_ = r.edge_singular;
    cells_ = cells;
    const double pi = std::numbers::pi;
    step_ = pi / cells;
    nodes_h_.resize(static_cast<std::size_t>(cells) + 1);
    cumulative_.assign(static_cast<std::size_t>(cells) + 1, 0.0);
    for (int k = 0; k <= cells; ++k) nodes_h_[static_cast<std::size_t>(k)] = h(theta(k));
    for (int k = 0; k < cells; ++k) {
      cumulative_[static_cast<std::size_t>(k) + 1] = cumulative_[static_cast<std::size_t>(k)] + cell_integral(k, theta(k + 1));
    }
    ac_mass_ = cumulative_.back();
    if (ac_only_) {
      if (!(ac_mass_ > 0.0)) throw domain_error("TabulatedCdf: continuous part has no mass");
    } else {
      for (const auto& a : atoms_) {
        if (a.weight < 0.0) throw domain_error("TabulatedCdf: negative atom");
      }
    }
  }

  double ac_mass() const { return ac_mass_; }

  double operator()(double x) const { return evaluate(x, false); }
  double left(double x) const { return evaluate(x, true); }

  Cdf as_cdf() const {
    return {[this](double x) { return (*this)(x); }, [this](double x) { return left(x); }};
  }

 private:
  double theta(int k) const { return -0.5 * std::numbers::pi + k * step_; }

  double h(double th) const {
    const double y = mid_ + half_ * std::sin(th);
    return g_(y) * half_ * std::cos(th);
  }

  double cell_integral(int k, double upper) const {
    const double a = theta(k);
    if (upper <= a) return 0.0;
    const auto f = [this](double th) { return h(th); };
    // Edge cells: Phi = mid +- half rounds onto the endpoint for the outermost
    // nodes, so the error estimate is not meaningful there.
    if (edge_singular_ && (k == 0 || k == cells_ - 1)) return quad::integrate_singular_unchecked(f, a, upper, 1e-13);
    return quad::kronrod21(f, a, upper);
  }

  double ac_cdf_theta(double th) const {
    if (th <= -0.5 * std::numbers::pi) return 0.0;
    if (th >= 0.5 * std::numbers::pi) return ac_mass_;
    int k = static_cast<int>(std::floor((th + 0.5 * std::numbers::pi) / step_));
    k = std::clamp(k, 0, cells_ - 1);
    const double base = cumulative_[static_cast<std::size_t>(k)];
    if (edge_singular_ && (k == 0 || k == cells_ - 1)) return base + cell_integral(k, th);
    // Cubic Hermite interpolation of the cumulative integral on the cell.
    const double s = (th - theta(k)) / step_;
    const double c0 = base;
    const double c1 = cumulative_[static_cast<std::size_t>(k) + 1];
    const double m0 = nodes_h_[static_cast<std::size_t>(k)] * step_;
    const double m1 = nodes_h_[static_cast<std::size_t>(k) + 1] * step_;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * c0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * c1 + (s3 - s2) * m1;
  }

  double evaluate(double x, bool strict) const {
    double y;
    if (std::isinf(x)) {
      y = x;
    } else {
      y = profile_->phi(x);
    }
    double th;
    if (y <= mid_ - half_) {
      th = -0.5 * std::numbers::pi;
    } else if (y >= mid_ + half_) {
      th = 0.5 * std::numbers::pi;
    } else {
      th = std::asin(std::clamp((y - mid_) / half_, -1.0, 1.0));
    }
    const double ac = ac_cdf_theta(th);
    if (ac_only_) return ac / ac_mass_;
    double mass = ac;
    for (const auto& a : atoms_) {
      if (strict ? a.x < x : a.x <= x) mass += a.weight;
    }
    return mass;
  }

  std::vector<Atom> atoms_;
  bool ac_only_;
  std::optional<VelocityProfile> profile_;
  std::function<double(double)> g_;
  double mid_ = 0.0;
  double half_ = 1.0;
  bool edge_singular_ = false;
  int cells_ = 0;
  double step_ = 0.0;
  std::vector<double> nodes_h_;
  std::vector<double> cumulative_;
  double ac_mass_ = 0.0;
};

// ---------------------------------------------------------------------------
// Chi-square
// ---------------------------------------------------------------------------

struct Chi2Result {
  double statistic = 0.0;
  double p_value = 1.0;
  int dof = 0;
  int merged_bins = 0;
};

/// Pearson test of observed counts against expected probabilities. Cells with
/// expected count < 5 are pooled; a pooled cell still below 5 joins the
/// smallest remaining cell.
inline Chi2Result chi2_counts(std::span<const double> observed, std::span<const double> probs) {
  if (observed.size() != probs.size()) throw domain_error("chi2: size mismatch");
  double n = 0.0;
  for (const double o : observed) n += o;
  if (!(n > 0.0)) throw degenerate_error("chi2: no samples");
  std::vector<std::pair<double, double>> cells;  // (observed, expected)
  double pool_o = 0.0;
  double pool_e = 0.0;
  int merged = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = probs[i] * n;
    if (e < 5.0) {
      pool_o += observed[i];
      pool_e += e;
      ++merged;
    } else {
      cells.emplace_back(observed[i], e);
    }
  }
  if (merged > 0 && (pool_e > 0.0 || pool_o > 0.0)) {
    if (pool_e >= 5.0 || cells.empty()) {
      cells.emplace_back(pool_o, pool_e);
    } else {
      auto smallest = std::min_element(cells.begin(), cells.end(),
                                       [](const auto& a, const auto& b) { return a.second < b.second; });
      smallest->first += pool_o;
      smallest->second += pool_e;
    }
  }
  if (cells.size() < 2) throw degenerate_error("chi2: fewer than 2 effective bins");
  Chi2Result r;
  r.merged_bins = merged;
  for (const auto& [o, e] : cells) {
    if (e <= 0.0) {
      if (o > 0.0) r.statistic = std::numeric_limits<double>::infinity();
      continue;
    }
    r.statistic += (o - e) * (o - e) / e;
  }
  r.dof = static_cast<int>(cells.size()) - 1;
  r.p_value = std::isinf(r.statistic) ? 0.0 : boost::math::gamma_q(0.5 * r.dof, 0.5 * r.statistic);
  return r;
}

/// 2-d histogram test. `expected` holds bin probabilities (row-major, x index
/// outer) with sum <= 1; samples outside every bin form a remainder cell with
/// probability 1 - sum.
inline Chi2Result chi2_2d(std::span<const double> xs, std::span<const double> ys, std::span<const double> x_edges,
                          std::span<const double> y_edges, std::span<const double> expected) {
  if (xs.size() != ys.size()) throw domain_error("chi2_2d: coordinate size mismatch");
  if (x_edges.size() < 2 || y_edges.size() < 2) throw degenerate_error("chi2_2d: need at least one bin");
  const std::size_t nx = x_edges.size() - 1;
  const std::size_t ny = y_edges.size() - 1;
  if (expected.size() != nx * ny) throw domain_error("chi2_2d: expected grid has the wrong size");
  double total = 0.0;
  for (const double e : expected) total += e;
  if (total > 1.0 + 1e-9) throw domain_error("chi2_2d: expected masses exceed 1");
  std::vector<double> observed(nx * ny + 1, 0.0);
  const auto locate = [](std::span<const double> edges, double v) -> std::optional<std::size_t> {
    if (!(v >= edges.front()) || !(v < edges.back())) return std::nullopt;
    const auto it = std::upper_bound(edges.begin(), edges.end(), v);
    return static_cast<std::size_t>(it - edges.begin()) - 1;
  };
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto ix = locate(x_edges, xs[i]);
    const auto iy = locate(y_edges, ys[i]);
    if (ix && iy && expected[*ix * ny + *iy] > 0.0) {
      observed[*ix * ny + *iy] += 1.0;
    } else {
      observed.back() += 1.0;
    }
  }
  std::vector<double> probs(expected.begin(), expected.end());
  probs.push_back(std::max(0.0, 1.0 - total));
  return chi2_counts(observed, probs);
}

/// Probability of each (x, y) bin under the planar law restricted to
/// transformed radius < keep_fraction * t. Bins are integrated in (u, v),
/// where the 1/(c1 c2) factor cancels against the Jacobian.
inline std::vector<double> planar_bin_masses(const PlanarMotionSpec& spec, std::span<const double> x_edges,
                                             std::span<const double> y_edges, double keep_fraction) {
  const double radius = keep_fraction * spec.t;
  const double r2 = radius * radius;
  std::vector<double> masses;
  masses.reserve((x_edges.size() - 1) * (y_edges.size() - 1));
  std::vector<double> u_edges(x_edges.size());
  std::vector<double> v_edges(y_edges.size());
  for (std::size_t i = 0; i < x_edges.size(); ++i) u_edges[i] = spec.profile_x.phi(x_edges[i]);
  for (std::size_t j = 0; j < y_edges.size(); ++j) v_edges[j] = spec.profile_y.phi(y_edges[j]);
  const quad::Tolerance tol{1e-14, 1e-10, 12};
  for (std::size_t i = 0; i + 1 < u_edges.size(); ++i) {
    for (std::size_t j = 0; j + 1 < v_edges.size(); ++j) {
      const double u0 = std::max(u_edges[i], -radius);
      const double u1 = std::min(u_edges[i + 1], radius);
      if (!(u1 > u0)) {
        masses.push_back(0.0);
        continue;
      }
      const double v0 = v_edges[j];
      const double v1 = v_edges[j + 1];
      // With A = t^2 - u^2 and v = sqrt(A) sin(phi) the 1/s factor cancels:
      // the v-integral becomes (lambda/2pi) e^{-lambda t} int exp(lambda sqrt(A) cos phi) dphi.
      const auto inner = [&](double u) {
        const double w = std::sqrt(std::max(0.0, r2 - u * u));
        const double a = std::max(v0, -w);
        const double b = std::min(v1, w);
        if (!(b > a)) return 0.0;
        const double root_a = std::sqrt(spec.t * spec.t - u * u);
        const double pa = std::asin(std::clamp(a / root_a, -1.0, 1.0));
        const double pb = std::asin(std::clamp(b / root_a, -1.0, 1.0));
        const double k = spec.lambda / (2.0 * std::numbers::pi);
        return quad::integrate(
            [&](double phi) { return k * std::exp(-spec.lambda * (spec.t - root_a * std::cos(phi))); }, pa, pb, tol);
      };
      // Split the u-range where the clipped v-interval changes form; the
      // pieces have square-root endpoint behaviour, hence tanh-sinh.
      std::vector<double> cuts = {u0, u1};
      for (const double v : {v0, v1}) {
        if (std::abs(v) < radius) {
          const double uc = std::sqrt(r2 - v * v);
          for (const double c : {-uc, uc}) {
            if (c > u0 && c < u1) cuts.push_back(c);
          }
        }
      }
      std::sort(cuts.begin(), cuts.end());
      double m = 0.0;
      for (std::size_t k = 0; k + 1 < cuts.size(); ++k) m += quad::integrate_singular(inner, cuts[k], cuts[k + 1], 1e-10);
      masses.push_back(m);
    }
  }
  return masses;
}

/// Histogram test of a planar batch on a bins x bins grid over the bounding
/// box of the support. Samples at transformed radius >= keep_fraction * t go
/// to the remainder cell together with the annulus and boundary mass.
inline Chi2Result chi2_planar(const PlanarMotionSpec& spec, const PlanarBatch& batch, int bins,
                              double keep_fraction = 0.98) {
  if (bins < 1) throw degenerate_error("chi2_planar: need at least one bin per axis");
  const auto edges = [bins, t = spec.t](const VelocityProfile& p) {
    const double lo = p.phi_inverse(-t);
    const double hi = p.phi_inverse(t);
    std::vector<double> e(static_cast<std::size_t>(bins) + 1);
    for (int k = 0; k <= bins; ++k) e[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / bins;
    return e;
  };
  const std::vector<double> xe = edges(spec.profile_x);
  const std::vector<double> ye = edges(spec.profile_y);
  const std::vector<double> masses = planar_bin_masses(spec, xe, ye, keep_fraction);
  const double keep2 = keep_fraction * keep_fraction * spec.t * spec.t;
  std::vector<double> xs = batch.xs;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(spec.transformed_radius2(batch.xs[i], batch.ys[i]) < keep2)) xs[i] = std::numeric_limits<double>::quiet_NaN();
  }
  return chi2_2d(xs, batch.ys, xe, ye, masses);
}

// ---------------------------------------------------------------------------
// Quadrature mass
// ---------------------------------------------------------------------------

/// Mass of the continuous part, integrated in the unit-speed coordinate when
/// the model provides one (theta = asin substitution for edge-singular laws).
inline double ac_mass(const DensityModel1D& model) {
  if (model.reduced) {
    const auto& r = *model.reduced;
    if (r.edge_singular) {
      const double mid = 0.5 * (r.y_lo + r.y_hi);
      const double half = 0.5 * (r.y_hi - r.y_lo);
      const auto f = [&](double th) { return r.g(mid + half * std::sin(th)) * half * std::cos(th); };
      const double pi2 = 0.5 * std::numbers::pi;
      return quad::integrate_singular(f, -pi2, 0.0, 1e-14) + quad::integrate_singular(f, 0.0, pi2, 1e-14);
    }
    return quad::integrate(r.g, r.y_lo, r.y_hi, {1e-14, 1e-13, 30});
  }
  if (!std::isfinite(model.lo) || !std::isfinite(model.hi)) {
    throw divergence_error("quadrature_mass: unbounded support without a unit-speed representation");
  }
  return quad::integrate_singular(model.ac, model.lo, model.hi, 1e-13);
}

/// Continuous mass plus atom weights.
inline double quadrature_mass(const DensityModel1D& model) { return ac_mass(model) + model.atom_mass(); }

// ---------------------------------------------------------------------------
// Finite-difference residuals
// ---------------------------------------------------------------------------

namespace eq {
/// u_tt + 2 lambda u_t = c (c u_x)_x
struct Telegraph {
  double lambda;
  VelocityProfile profile;
};
/// u_tt + (l1 + l2) u_t = c (c u_x)_x + c (l1 - l2) u_x
struct TelegraphDrift {
  double lambda1;
  double lambda2;
  VelocityProfile profile;
};
/// u_tt + (2 alpha / t) u_t = c (c u_x)_x
struct Epd {
  double alpha;
  VelocityProfile profile;
};
/// u_tt + 2 lambda(t) u_t = c (c u_x)_x
struct NonHomogeneous {
  RateFunction rate;
  VelocityProfile profile;
};
/// u_tt + 2 lambda u_t = c1 (c1 u_x)_x + c2 (c2 u_y)_y
struct DampedWave2D {
  double lambda;
  VelocityProfile profile_x;
  VelocityProfile profile_y;
};
}  // namespace eq

using Equation1D = std::variant<eq::Telegraph, eq::TelegraphDrift, eq::Epd, eq::NonHomogeneous>;

/// Residual nodes: `nodes` x `nodes` points spanning the box; derivatives use
/// central differences with spacing h.
struct ResidualGrid {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double y_lo = 0.0;  // 2-d only
  double y_hi = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double h = 1e-3;
  int nodes = 11;
  bool check_cone = true;  // require 10 h clearance from the cone |Phi| < t
  // Apply the space operator in the adjoint form d/dx(c d/dx(c u)) (first-order
  // terms d/dx(c u)), which is the form satisfied by densities g(Phi(x), t) / c(x).
  bool density_form = false;
};

namespace detail {

inline double node(double lo, double hi, int k, int m) { return m == 1 ? lo : lo + (hi - lo) * k / (m - 1); }

template <class U>
double conservative_second(const VelocityProfile& p, const U& u, double x, double h, bool density_form = false) {
  if (density_form) {
    const double wp = p.speed(x + h) * u(x + h);
    const double w0 = p.speed(x) * u(x);
    const double wm = p.speed(x - h) * u(x - h);
    return (p.speed(x + 0.5 * h) * (wp - w0) - p.speed(x - 0.5 * h) * (w0 - wm)) / (h * h);
  }
  const double up = u(x + h);
  const double u0 = u(x);
  const double um = u(x - h);
  return p.speed(x) * (p.speed(x + 0.5 * h) * (up - u0) - p.speed(x - 0.5 * h) * (u0 - um)) / (h * h);
}

template <class U>
double first_derivative(const VelocityProfile& p, const U& u, double x, double h, bool density_form) {
  if (density_form) return (p.speed(x + h) * u(x + h) - p.speed(x - h) * u(x - h)) / (2.0 * h);
  return p.speed(x) * (u(x + h) - u(x - h)) / (2.0 * h);
}

inline const VelocityProfile& profile_of(const Equation1D& e) {
  return std::visit([](const auto& v) -> const VelocityProfile& { return v.profile; }, e);
}

}  // namespace detail

/// max |L_h u - source| over the grid nodes.
inline double pde_residual_grid(const std::function<double(double, double)>& u, const Equation1D& equation,
                                const ResidualGrid& grid,
                                const std::function<double(double, double)>& source = {}) {
  const double h = grid.h;
  if (!(h > 0.0)) throw domain_violation_error("residual grid spacing must be positive");
  if (!(grid.t_lo - h > 0.0)) throw domain_violation_error("residual grid must stay at t > h");
  if (grid.nodes < 1 || grid.x_hi < grid.x_lo || grid.t_hi < grid.t_lo) {
    throw domain_violation_error("residual grid box is empty");
  }
  const VelocityProfile& p = detail::profile_of(equation);
  double worst = 0.0;
  for (int i = 0; i < grid.nodes; ++i) {
    const double x = detail::node(grid.x_lo, grid.x_hi, i, grid.nodes);
    for (int j = 0; j < grid.nodes; ++j) {
      const double t = detail::node(grid.t_lo, grid.t_hi, j, grid.nodes);
      if (grid.check_cone && !(t - std::max(std::abs(p.phi(x - h)), std::abs(p.phi(x + h))) >= 10.0 * h)) {
        throw domain_violation_error("residual node within 10 h of the cone boundary");
      }
      const double ut = (u(x, t + h) - u(x, t - h)) / (2.0 * h);
      const double utt = (u(x, t + h) - 2.0 * u(x, t) + u(x, t - h)) / (h * h);
      const auto ux_of = [&](double xx) { return u(xx, t); };
      const double space = detail::conservative_second(p, ux_of, x, h, grid.density_form);
      double r = 0.0;
      std::visit(
          [&](const auto& e) {
            using E = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<E, eq::Telegraph>) {
              r = utt + 2.0 * e.lambda * ut - space;
            } else if constexpr (std::is_same_v<E, eq::TelegraphDrift>) {
              const double drift = detail::first_derivative(p, ux_of, x, h, grid.density_form);
              r = utt + (e.lambda1 + e.lambda2) * ut - space - (e.lambda1 - e.lambda2) * drift;
            } else if constexpr (std::is_same_v<E, eq::Epd>) {
              r = utt + 2.0 * e.alpha / t * ut - space;
            } else {
              r = utt + 2.0 * e.rate.rate_at(t) * ut - space;
            }
          },
          equation);
      if (source) r -= source(x, t);
      worst = std::max(worst, std::abs(r));
    }
  }
  return worst;
}

/// Planar damped wave residual, u(x, y, t).
inline double pde_residual_grid_2d(const std::function<double(double, double, double)>& u,
                                   const eq::DampedWave2D& equation, const ResidualGrid& grid) {
  const double h = grid.h;
  if (!(h > 0.0)) throw domain_violation_error("residual grid spacing must be positive");
  if (!(grid.t_lo - h > 0.0)) throw domain_violation_error("residual grid must stay at t > h");
  const auto& px = equation.profile_x;
  const auto& py = equation.profile_y;
  double worst = 0.0;
  for (int i = 0; i < grid.nodes; ++i) {
    const double x = detail::node(grid.x_lo, grid.x_hi, i, grid.nodes);
    for (int k = 0; k < grid.nodes; ++k) {
      const double y = detail::node(grid.y_lo, grid.y_hi, k, grid.nodes);
      for (int j = 0; j < grid.nodes; ++j) {
        const double t = detail::node(grid.t_lo, grid.t_hi, j, grid.nodes);
        if (grid.check_cone) {
          const double ru = std::max(std::abs(px.phi(x - h)), std::abs(px.phi(x + h)));
          const double rv = std::max(std::abs(py.phi(y - h)), std::abs(py.phi(y + h)));
          if (!(t - std::hypot(ru, rv) >= 10.0 * h)) {
            throw domain_violation_error("residual node within 10 h of the support boundary");
          }
        }
        const double ut = (u(x, y, t + h) - u(x, y, t - h)) / (2.0 * h);
        const double utt = (u(x, y, t + h) - 2.0 * u(x, y, t) + u(x, y, t - h)) / (h * h);
        const double sx =
            detail::conservative_second(px, [&](double xx) { return u(xx, y, t); }, x, h, grid.density_form);
        const double sy =
            detail::conservative_second(py, [&](double yy) { return u(x, yy, t); }, y, h, grid.density_form);
        worst = std::max(worst, std::abs(utt + 2.0 * equation.lambda * ut - sx - sy));
      }
    }
  }
  return worst;
}

/// Riemann-Liouville derivative of order alpha at t by the Grunwald-Letnikov
/// sum with step h. The term at the lower terminal is dropped, so f may be
/// singular at 0.
inline double grunwald_letnikov(const std::function<double(double)>& f, double alpha, double t, double h) {
  if (!(h > 0.0) || !(t > h)) throw domain_error("grunwald_letnikov needs 0 < h < t");
  const auto n = static_cast<long>(std::floor(t / h));
  double w = 1.0;
  double sum = 0.0;
  for (long k = 0; k <= n; ++k) {
    const double s = t - static_cast<double>(k) * h;
    if (s < 0.5 * h) break;
    sum += w * f(s);
    w *= (static_cast<double>(k) - alpha) / static_cast<double>(k + 1);
  }
  return sum / std::pow(h, alpha);
}

/// log2 of the residual ratio under h -> h/2 (2 for second-order schemes).
inline double observed_order(double residual_h, double residual_half) {
  return std::log2(residual_h / residual_half);
}

}  // namespace telegraph::harness
