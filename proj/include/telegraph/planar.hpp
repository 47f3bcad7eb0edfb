#pragma once

// Planar motions with uniformly distributed directions, switching at Poisson
// epochs, with axis speeds c1(x) and c2(y). With u = Phi1(x), v = Phi2(y) the
// motion becomes the standard unit-speed planar random flight.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "telegraph/errors.hpp"
#include "telegraph/parallel.hpp"
#include "telegraph/rng.hpp"
#include "telegraph/specialfun.hpp"
#include "telegraph/velocity.hpp"

namespace telegraph {

struct PlanarMotionSpec {
  VelocityProfile profile_x;
  VelocityProfile profile_y;
  double lambda = 1.0;
  double t = 1.0;

  void validate() const {
    if (!(lambda > 0.0)) throw domain_error("planar motion needs lambda > 0");
    if (!(t > 0.0) || !std::isfinite(t)) throw domain_error("planar motion needs t > 0");
    for (const auto* p : {&profile_x, &profile_y}) {
      if (p->infinite_cone()) throw domain_error("planar motion needs profiles with finite Phi");
      if (!(t < p->phi_sup()) || !(-t > p->phi_inf())) {
        throw domain_error("planar motion: Phi range of a profile does not cover [-t, t]");
      }
    }
  }

  /// Squared transformed radius Phi1(x)^2 + Phi2(y)^2.
  double transformed_radius2(double x, double y) const {
    const double u = profile_x.phi(x);
    const double v = profile_y.phi(y);
    return u * u + v * v;
  }
};

struct PlanarBatch {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<std::uint32_t> event_counts;
  std::uint64_t seed = 0;
  double t = 0.0;
};

namespace detail {

// Unit-speed planar flight with `times` as switching epochs. Returns (u, v).
inline std::pair<double, double> unit_flight(std::span<const double> times, double t, CounterStream& rng) {
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  double theta = 2.0 * std::numbers::pi * rng.uniform();
  for (const double e : times) {
    u += (e - s) * std::cos(theta);
    v += (e - s) * std::sin(theta);
    s = e;
    theta = 2.0 * std::numbers::pi * rng.uniform();
  }
  u += (t - s) * std::cos(theta);
  v += (t - s) * std::sin(theta);
  return {u, v};
}

inline std::vector<double> poisson_epochs(double lambda, double t, CounterStream& rng) {
  std::vector<double> times;
  double s = 0.0;
  while (true) {
    s += rng.exponential() / lambda;
    if (!(s < t)) break;
    times.push_back(s);
  }
  return times;
}

}  // namespace detail

inline PlanarBatch simulate_planar(const PlanarMotionSpec& spec, std::size_t n, std::uint64_t seed,
                                   unsigned workers = default_workers()) {
  spec.validate();
  if (n == 0) throw domain_error("simulate_planar: need at least one path");
  PlanarBatch batch;
  batch.seed = seed;
  batch.t = spec.t;
  batch.xs.resize(n);
  batch.ys.resize(n);
  batch.event_counts.resize(n);
  parallel_for(n, workers, [&](std::size_t i) {
    CounterStream rng(seed, i);
    const std::vector<double> times = detail::poisson_epochs(spec.lambda, spec.t, rng);
    const auto [u, v] = detail::unit_flight(times, spec.t, rng);
    batch.xs[i] = spec.profile_x.phi_inverse(u);
    batch.ys[i] = spec.profile_y.phi_inverse(v);
    batch.event_counts[i] = static_cast<std::uint32_t>(times.size());
  });
  return batch;
}

/// One trajectory with exactly `changes` switches at uniform order statistics
/// in (0, t), sampled at `points_per_leg` points per straight leg in (u, v).
inline std::vector<std::pair<double, double>> planar_trajectory(const PlanarMotionSpec& spec, int changes,
                                                                std::uint64_t seed, int points_per_leg = 64) {
  spec.validate();
  if (changes < 0) throw domain_error("planar_trajectory: changes must be non-negative");
  CounterStream rng(seed, static_cast<std::uint64_t>(changes));
  std::vector<double> times(static_cast<std::size_t>(changes));
  for (auto& e : times) e = spec.t * rng.uniform();
  std::sort(times.begin(), times.end());
  times.push_back(spec.t);
  std::vector<std::pair<double, double>> path = {{0.0, 0.0}};
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  for (const double e : times) {
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    for (int k = 1; k <= points_per_leg; ++k) {
      const double len = (e - s) * k / points_per_leg;
      path.emplace_back(spec.profile_x.phi_inverse(u + len * std::cos(theta)),
                        spec.profile_y.phi_inverse(v + len * std::sin(theta)));
    }
    u += (e - s) * std::cos(theta);
    v += (e - s) * std::sin(theta);
    s = e;
  }
  return path;
}

namespace detail {

inline constexpr double boundary_guard = 1e-12;

inline double planar_guarded_gap(double t, double r2) {
  const double gap = t - std::sqrt(r2);
  if (gap > 0.0 && gap < boundary_guard) {
    throw domain_error("density evaluated within 1e-12 of the support boundary");
  }
  return gap;
}

}  // namespace detail

/// Continuous part of the law in transformed coordinates (u, v):
/// (lambda / 2 pi) exp(-lambda t + lambda s) / s, s = sqrt(t^2 - u^2 - v^2).
inline double planar_density_transformed(double lambda, double t, double u, double v) {
  const double r2 = u * u + v * v;
  if (!(r2 < t * t)) return 0.0;
  const double s = std::sqrt(t * t - r2);
  return lambda / (2.0 * std::numbers::pi) * std::exp(-lambda * (t - s)) / s;
}

/// Continuous part of the law of (X(t), Y(t)); zero outside the support.
inline double density_planar(const PlanarMotionSpec& spec, double x, double y) {
  const double u = spec.profile_x.phi(x);
  const double v = spec.profile_y.phi(y);
  const double r2 = u * u + v * v;
  if (!(r2 < spec.t * spec.t)) return 0.0;
  detail::planar_guarded_gap(spec.t, r2);
  return planar_density_transformed(spec.lambda, spec.t, u, v) /
         (spec.profile_x.speed(x) * spec.profile_y.speed(y));
}

/// Law of the position given n >= 1 switches:
/// (n / (2 pi t^n)) (t^2 - Phi1^2 - Phi2^2)^{n/2 - 1} / (c1(x) c2(y)).
inline double conditional_density(const PlanarMotionSpec& spec, int n_events, double x, double y) {
  if (n_events < 1) throw domain_error("conditional_density: need at least one switch");
  const double t = spec.t;
  const double r2 = spec.transformed_radius2(x, y);
  if (!(r2 < t * t)) return 0.0;
  if (n_events == 1) detail::planar_guarded_gap(t, r2);
  // t^{-n} (t^2 - r^2)^{n/2-1} = t^{-2} (1 - r^2/t^2)^{n/2-1}
  const double rho = 1.0 - r2 / (t * t);
  const double val = n_events / (2.0 * std::numbers::pi * t * t) * std::pow(rho, 0.5 * n_events - 1.0);
  return val / (spec.profile_x.speed(x) * spec.profile_y.speed(y));
}

inline bool support_contains(const PlanarMotionSpec& spec, double x, double y) {
  return spec.transformed_radius2(x, y) < spec.t * spec.t;
}

struct PolylinePoint {
  double phi_angle = 0.0;
  double x = 0.0;
  double y = 0.0;
};

/// m points of the support boundary at equispaced transformed angles in [0, 2 pi).
inline std::vector<PolylinePoint> boundary_polyline(const PlanarMotionSpec& spec, int m) {
  if (m < 8) throw domain_error("boundary_polyline needs at least 8 points");
  spec.validate();
  std::vector<PolylinePoint> pts;
  pts.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const double a = 2.0 * std::numbers::pi * k / m;
    pts.push_back({a, spec.profile_x.phi_inverse(spec.t * std::cos(a)),
                   spec.profile_y.phi_inverse(spec.t * std::sin(a))});
  }
  return pts;
}

/// Lame-curve support for power speeds c1(x) = |x|^gamma / c1, c2(y) = |y|^beta / c2:
/// (c1 |x|^{1-gamma} / (1-gamma))^2 + (c2 |y|^{1-beta} / (1-beta))^2 < t^2.
struct LameSupport {
  double gamma_exp = 0.0;
  double beta_exp = 0.0;
  double c1 = 1.0;
  double c2 = 1.0;
  double t = 1.0;

  void validate() const {
    if (!(gamma_exp < 1.0) || !(beta_exp < 1.0)) throw domain_error("Lame support needs gamma, beta < 1");
    if (!(c1 > 0.0) || !(c2 > 0.0) || !(t > 0.0)) throw domain_error("Lame support needs c1, c2, t > 0");
  }

  /// Left side of the boundary equation (equals t^2 on the curve).
  double lame_value(double x, double y) const {
    const double a = c1 * std::pow(std::abs(x), 1.0 - gamma_exp) / (1.0 - gamma_exp);
    const double b = c2 * std::pow(std::abs(y), 1.0 - beta_exp) / (1.0 - beta_exp);
    return a * a + b * b;
  }

  bool contains(double x, double y) const { return lame_value(x, y) < t * t; }

  /// Superellipse exponents 2(1 - gamma), 2(1 - beta).
  double exponent_x() const { return 2.0 * (1.0 - gamma_exp); }
  double exponent_y() const { return 2.0 * (1.0 - beta_exp); }

  PlanarMotionSpec motion(double lambda = 1.0) const {
    validate();
    return {VelocityProfile::power(gamma_exp, c1), VelocityProfile::power(beta_exp, c2), lambda, t};
  }
};

/// d-dimensional Euler-Poisson-Darboux law
/// Gamma(alpha + d/2) / (pi^{d/2} Gamma(alpha) t^{d+2alpha-2}) (t^2 - sum Phi_j^2)^{alpha-1} / prod c_j.
inline double density_epd_ddim(std::span<const VelocityProfile> profiles, double alpha, double t,
                               std::span<const double> x) {
  if (profiles.size() != x.size() || profiles.empty()) throw domain_error("density_epd_ddim: dimension mismatch");
  if (!(alpha > 0.0)) throw domain_error("density_epd_ddim: alpha must be positive");
  if (!(t > 0.0)) throw domain_error("density_epd_ddim: t must be positive");
  const double d = static_cast<double>(x.size());
  double r2 = 0.0;
  double speeds = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double u = profiles[j].phi(x[j]);
    r2 += u * u;
    speeds *= profiles[j].speed(x[j]);
  }
  if (!(r2 < t * t)) return 0.0;
  if (alpha < 1.0) detail::planar_guarded_gap(t, r2);
  // t^{-(d+2alpha-2)} (t^2 - r2)^{alpha-1} = t^{-d} (1 - r2/t^2)^{alpha-1}
  const double norm = special::gamma(alpha + 0.5 * d) / (std::pow(std::numbers::pi, 0.5 * d) * special::gamma(alpha));
  return norm * std::pow(t, -d) * std::pow(1.0 - r2 / (t * t), alpha - 1.0) / speeds;
}

}  // namespace telegraph
