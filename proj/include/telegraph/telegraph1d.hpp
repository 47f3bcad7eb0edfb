#pragma once

// One-dimensional finite-velocity motions with space-varying speed: path
// samplers (symmetric, asymmetric, non-homogeneous) and explicit laws.
//
// Every law here has the form pdf(x) = g(Phi(x), t) / c(x) on |Phi(x)| < t,
// where g is the law of the corresponding unit-speed motion. Models keep g so
// that integrals can be taken in the transformed coordinate, where the
// integrand is free of the 1/c(x) singularities of power profiles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "telegraph/errors.hpp"
#include "telegraph/parallel.hpp"
#include "telegraph/rates.hpp"
#include "telegraph/rng.hpp"
#include "telegraph/specialfun.hpp"
#include "telegraph/velocity.hpp"

namespace telegraph {

struct Atom {
  double x = 0.0;
  double weight = 0.0;
};

/// A 1-d law: point masses plus an absolutely continuous part on an interval.
struct DensityModel1D {
  /// Unit-speed representation: pdf(x) = g(Phi(x)) / c(x) for y_lo < Phi(x) < y_hi.
  struct Reduced {
    VelocityProfile profile;
    std::function<double(double)> g;
    double y_lo = 0.0;
    double y_hi = 0.0;
    bool edge_singular = false;  // g unbounded at y_lo / y_hi
  };

  std::vector<Atom> atoms;
  std::function<double(double)> ac;  // pdf of the continuous part in x
  double lo = 0.0;                   // support of the continuous part
  double hi = 0.0;
  double t = 0.0;
  std::optional<Reduced> reduced;

  double pdf(double x) const { return ac(x); }

  double atom_mass() const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.weight;
    return m;
  }
};

namespace detail {

inline DensityModel1D make_reduced_model(const VelocityProfile& p, double t, std::function<double(double)> g,
                                         double y_half_width, bool edge_singular, std::vector<Atom> atoms) {
  if (p.infinite_cone()) throw domain_error("density requires a profile with finite Phi");
  DensityModel1D m;
  m.t = t;
  const Cone cone = p.cone_endpoints(y_half_width);
  m.lo = cone.lo;
  m.hi = cone.hi;
  m.atoms = std::move(atoms);
  m.reduced = DensityModel1D::Reduced{p, g, -y_half_width, y_half_width, edge_singular};
  m.ac = [p, g = std::move(g), y_half_width](double x) {
    const double y = p.phi(x);
    if (!(std::abs(y) < y_half_width)) return 0.0;
    return g(y) / p.speed(x);
  };
  return m;
}

inline void require_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw domain_error("t must be positive and finite");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Explicit laws
// ---------------------------------------------------------------------------

/// Law of the symmetric motion with constant rate lambda: atoms of weight
/// e^{-lambda t}/2 at the cone ends, continuous part
/// e^{-lambda t}/(2 c(x)) [lambda I0(lambda s) + d/dt I0(lambda s)], s = sqrt(t^2 - Phi(x)^2).
inline DensityModel1D density_symmetric(const VelocityProfile& p, double lambda, double t) {
  detail::require_time(t);
  if (!(lambda > 0.0)) throw domain_error("density_symmetric: lambda must be positive");
  auto g = [lambda, t](double y) {
    const double s2 = t * t - y * y;
    if (!(s2 > 0.0)) return 0.0;
    const double z = lambda * std::sqrt(s2);
    // e^{-lambda t} I_k(z) = e^{z - lambda t} * scaled(z); d/dt I0(lambda s) = lambda^2 t I1(z)/z.
    const double damp = std::exp(z - lambda * t);
    return 0.5 * damp *
           (lambda * special::bessel_i0_scaled(z) + lambda * lambda * t * special::bessel_i1_over_x_scaled(z));
  };
  const double w = 0.5 * std::exp(-lambda * t);
  std::vector<Atom> atoms = {{p.phi_inverse(-t), w}, {p.phi_inverse(t), w}};
  return detail::make_reduced_model(p, t, g, t, false, std::move(atoms));
}

/// Law under the rate lambda tanh(lambda t): continuous part
/// (1/(2 c(x) cosh lambda t)) d/dt I0(lambda s), atoms 1/(2 cosh lambda t) at the cone ends.
inline DensityModel1D density_tanh(const VelocityProfile& p, double lambda, double t) {
  detail::require_time(t);
  if (!(lambda > 0.0)) throw domain_error("density_tanh: lambda must be positive");
  const double lt = lambda * t;
  // 1 / cosh(lt) = 2 e^{-lt} / (1 + e^{-2 lt})
  const double sech_scale = 2.0 / (1.0 + std::exp(-2.0 * lt));
  auto g = [lambda, t, lt, sech_scale](double y) {
    const double s2 = t * t - y * y;
    if (!(s2 > 0.0)) return 0.0;
    const double z = lambda * std::sqrt(s2);
    return 0.5 * sech_scale * std::exp(z - lt) * lambda * lambda * t * special::bessel_i1_over_x_scaled(z);
  };
  const double w = 0.5 / std::cosh(lt);
  std::vector<Atom> atoms = {{p.phi_inverse(-t), w}, {p.phi_inverse(t), w}};
  return detail::make_reduced_model(p, t, g, t, false, std::move(atoms));
}

/// Law under the rate lambda coth(lambda t): purely continuous,
/// lambda I0(lambda s) / (2 c(x) sinh lambda t).
inline DensityModel1D density_coth(const VelocityProfile& p, double lambda, double t) {
  detail::require_time(t);
  if (!(lambda > 0.0)) throw domain_error("density_coth: lambda must be positive");
  const double lt = lambda * t;
  // 1 / sinh(lt) = 2 e^{-lt} / (1 - e^{-2 lt})
  const double csch_scale = 2.0 / (-std::expm1(-2.0 * lt));
  auto g = [lambda, t, lt, csch_scale](double y) {
    const double s2 = t * t - y * y;
    if (!(s2 > 0.0)) return 0.0;
    const double z = lambda * std::sqrt(s2);
    return 0.5 * lambda * csch_scale * std::exp(z - lt) * special::bessel_i0_scaled(z);
  };
  return detail::make_reduced_model(p, t, g, t, false, {});
}

/// Euler-Poisson-Darboux law: (1 - Phi(x)^2/t^2)^{alpha-1} / (B(alpha, 1/2) c(x) t).
inline DensityModel1D density_epd(const VelocityProfile& p, double alpha, double t) {
  detail::require_time(t);
  if (!(alpha > 0.0)) throw domain_error("density_epd: alpha must be positive");
  const double norm = 1.0 / (special::beta(alpha, 0.5) * t);
  auto g = [alpha, t, norm](double y) {
    const double r = 1.0 - (y / t) * (y / t);
    if (!(r > 0.0)) return 0.0;
    return norm * std::pow(r, alpha - 1.0);
  };
  return detail::make_reduced_model(p, t, g, t, alpha < 1.0, {});
}

/// Lorentz-type change of variables removing the drift of the asymmetric
/// equation: x' = Phi(x) + B t, t' = B Phi(x) + t, B = (l1 - l2)/(l1 + l2).
inline std::pair<double, double> lorentz_transform(double lambda1, double lambda2, const VelocityProfile& p,
                                                   double x, double t) {
  if (!(lambda1 + lambda2 > 0.0)) throw domain_error("lorentz_transform: lambda1 + lambda2 must be positive");
  const double b = (lambda1 - lambda2) / (lambda1 + lambda2);
  const double y = p.phi(x);
  return {y + b * t, b * y + t};
}

inline double lorentz_coefficient(double lambda1, double lambda2) {
  if (!(lambda1 + lambda2 > 0.0)) throw domain_error("lorentz_coefficient: lambda1 + lambda2 must be positive");
  return (lambda1 - lambda2) / (lambda1 + lambda2);
}

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

struct PathBatch {
  std::vector<double> positions;
  std::vector<std::uint32_t> event_counts;
  std::vector<std::int8_t> direction_at_t;
  std::uint64_t seed = 0;
  double t = 0.0;
  std::size_t n_paths = 0;
};

enum class PathMode {
  transformed,  // unit-speed motion in Phi coordinates, mapped back by phi_inverse
  rk4,          // direct integration of dX/dt = +-c(X) between switches
};

struct SimulationOptions {
  unsigned workers = default_workers();
  PathMode mode = PathMode::transformed;
};

namespace detail {

// Below this magnitude a leg leaving a zero of c is restarted from +-zero_snap.
inline constexpr double zero_snap = 1e-16;

// Adaptive RK4 (step doubling) for dX/dt = dir * c(X) over a duration.
// Handles c(0) = 0 by snapping across the origin, where the ODE is not
// Lipschitz and a plain integrator would stall.
inline double integrate_leg(const VelocityProfile& p, double x, int dir, double duration) {
  const auto rhs = [&p, dir](double v) { return dir * p.speed(v); };
  const auto rk4 = [&rhs](double v, double h) {
    const double k1 = rhs(v);
    const double k2 = rhs(v + 0.5 * h * k1);
    const double k3 = rhs(v + 0.5 * h * k2);
    const double k4 = rhs(v + h * k3);
    return v + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
  };
  double remaining = duration;
  double h = duration;
  int guard = 0;
  while (remaining > 0.0) {
    if (++guard > 10'000'000) throw divergence_error("rk4 leg integration did not finish");
    if (std::abs(x) <= zero_snap && p.speed(x) == 0.0) x = dir * zero_snap;
    h = std::min(h, remaining);
    const double full = rk4(x, h);
    const double half = rk4(rk4(x, 0.5 * h), 0.5 * h);
    const double err = std::abs(full - half) / 15.0;
    const double tol = 1e-15 + 1e-13 * std::abs(half);
    const bool crosses = (half != 0.0 && x != 0.0 && std::signbit(half) != std::signbit(x)) ||
                         (std::abs(half) < zero_snap && std::abs(half) < std::abs(x));
    if (crosses && p.speed(0.0) == 0.0) {
      if (h < 1e-14) {
        // Land on the origin; the next pass restarts on the far side.
        x = 0.0;
        remaining -= h;
        continue;
      }
      h *= 0.5;
      continue;
    }
    if (err > tol && h > 1e-14) {
      h *= std::max(0.2, 0.9 * std::pow(tol / err, 0.2));
      continue;
    }
    x = half + (half - full) / 15.0;
    remaining -= h;
    if (err > 0.0) {
      h *= std::min(4.0, 0.9 * std::pow(tol / err, 0.2));
    } else {
      h *= 4.0;
    }
  }
  return x;
}

}  // namespace detail

/// Symmetric motion: initial direction +-1 equiprobable, switches at the
/// events of `rate`, speed c(x). For rates with divergent integrated rate the
/// motion starts at time eps * t from the origin.
inline PathBatch simulate_symmetric(const VelocityProfile& p, const RateFunction& rate, double t, std::size_t n,
                                    std::uint64_t seed, SimulationOptions opt = {}) {
  detail::require_time(t);
  if (n == 0) throw domain_error("simulate_symmetric: need at least one path");
  if (p.infinite_cone()) throw domain_error("simulate_symmetric: profile has infinite Phi");
  if (opt.mode == PathMode::rk4 && p.kind() == ProfileKind::power && p.gamma_exp() < 0.0) {
    throw domain_error("rk4 mode needs a speed that is finite at the origin");
  }
  PathBatch batch;
  batch.seed = seed;
  batch.t = t;
  batch.n_paths = n;
  batch.positions.resize(n);
  batch.event_counts.resize(n);
  batch.direction_at_t.resize(n);
  const double t0 = rate.start_time(t);
  const double travel = t - t0;
  parallel_for(n, opt.workers, [&](std::size_t i) {
    CounterStream rng(seed, i);
    int dir = rng.uniform() < 0.5 ? 1 : -1;
    const std::vector<double> events = rate.sample_event_times(t, rng);
    double s = t0;
    if (opt.mode == PathMode::transformed) {
      double y = 0.0;
      for (const double e : events) {
        y += dir * (e - s);
        dir = -dir;
        s = e;
      }
      y += dir * (t - s);
      y = std::clamp(y, -travel, travel);
      batch.positions[i] = p.phi_inverse(y);
    } else {
      double x = 0.0;
      for (const double e : events) {
        x = detail::integrate_leg(p, x, dir, e - s);
        dir = -dir;
        s = e;
      }
      batch.positions[i] = detail::integrate_leg(p, x, dir, t - s);
    }
    batch.event_counts[i] = static_cast<std::uint32_t>(events.size());
    batch.direction_at_t[i] = static_cast<std::int8_t>(dir);
  });
  return batch;
}

/// Asymmetric motion: holding times Exp(lambda1) while moving with +c(x),
/// Exp(lambda2) while moving with -c(x). Always simulated in Phi coordinates.
inline PathBatch simulate_asymmetric(const VelocityProfile& p, double lambda1, double lambda2, double t,
                                     std::size_t n, std::uint64_t seed, SimulationOptions opt = {}) {
  detail::require_time(t);
  if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) throw domain_error("simulate_asymmetric: rates must be positive");
  if (n == 0) throw domain_error("simulate_asymmetric: need at least one path");
  if (p.infinite_cone()) throw domain_error("simulate_asymmetric: profile has infinite Phi");
  PathBatch batch;
  batch.seed = seed;
  batch.t = t;
  batch.n_paths = n;
  batch.positions.resize(n);
  batch.event_counts.resize(n);
  batch.direction_at_t.resize(n);
  parallel_for(n, opt.workers, [&](std::size_t i) {
    CounterStream rng(seed, i);
    int dir = rng.uniform() < 0.5 ? 1 : -1;
    double s = 0.0;
    double y = 0.0;
    std::uint32_t count = 0;
    while (true) {
      const double hold = rng.exponential() / (dir > 0 ? lambda1 : lambda2);
      if (!(s + hold < t)) break;
      y += dir * hold;
      s += hold;
      dir = -dir;
      ++count;
    }
    y += dir * (t - s);
    y = std::clamp(y, -t, t);
    batch.positions[i] = p.phi_inverse(y);
    batch.event_counts[i] = count;
    batch.direction_at_t[i] = static_cast<std::int8_t>(dir);
  });
  return batch;
}

}  // namespace telegraph
