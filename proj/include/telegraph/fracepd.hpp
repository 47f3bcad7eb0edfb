#pragma once

// Time-fractional Euler-Poisson-Darboux equation
//   (D_t^{2 nu} + c1 t^{-nu} D_t^{nu}) u = sum_j d^{2n} u / dx_j^{2n}
// with Riemann-Liouville derivatives, and its parabolic solutions
//   u = t^{-nu} [1 - c2 S(x) / t^{2 nu}],  S(x) = sum_j x_j^{2n}.

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "telegraph/errors.hpp"
#include "telegraph/format.hpp"
#include "telegraph/specialfun.hpp"
#include "telegraph/telegraph1d.hpp"
#include "telegraph/velocity.hpp"

namespace telegraph::fracepd {

struct Params {
  double nu = 0.0;
  int d = 1;
  int n = 1;
  double c1 = 0.0;
  double c2 = 0.0;
  std::optional<double> normalizer;  // (3/4) sqrt(c2), only for d = 1, n = 1, c2 > 0
};

namespace detail {

inline double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

inline bool near_rational(double nu, int num, int den) { return std::abs(nu * den - num) < 1e-12; }

}  // namespace detail

/// nu values excluded outright: 1/2, 1/3, 1/4, 1/5.
inline bool is_excluded_nu(double nu) {
  for (int den = 2; den <= 5; ++den) {
    if (detail::near_rational(nu, 1, den)) return true;
  }
  return false;
}

/// nu values where some 1 - k nu (k = 1..5) is a non-positive integer,
/// i.e. nu = m/k with 1 <= m < k. Includes the excluded set.
inline bool is_gamma_singular_nu(double nu) {
  for (int k = 2; k <= 5; ++k) {
    for (int m = 1; m < k; ++m) {
      if (detail::near_rational(nu, m, k)) return true;
    }
  }
  return false;
}

inline void check_nu(double nu) {
  if (!(nu > 0.0) || !(nu < 1.0)) throw domain_error("nu must lie in (0, 1)");
  if (is_excluded_nu(nu)) throw singular_nu_error("nu = " + format_double(nu) + " is excluded (1/2, 1/3, 1/4, 1/5)");
  if (is_gamma_singular_nu(nu)) {
    throw extended_singularity_error("nu = " + format_double(nu) + " puts a Gamma argument 1 - k nu on a pole");
  }
}

/// c1 = -Gamma(1-4nu)/Gamma(1-5nu) and
/// c2 = -[Gamma(1-nu)/Gamma(1-3nu) - (Gamma(1-4nu)/Gamma(1-5nu)) Gamma(1-nu)/Gamma(1-2nu)] / ((2n)! d).
inline Params make_params(double nu, int d, int n) {
  check_nu(nu);
  if (d < 1) throw domain_error("dimension d must be positive");
  if (n < 1) throw domain_error("spatial order n must be positive");
  using special::gamma;
  Params p;
  p.nu = nu;
  p.d = d;
  p.n = n;
  const double g1 = gamma(1.0 - nu);
  const double ratio4_5 = gamma(1.0 - 4.0 * nu) / gamma(1.0 - 5.0 * nu);
  p.c1 = -ratio4_5;
  const double bracket = g1 / gamma(1.0 - 3.0 * nu) - ratio4_5 * g1 / gamma(1.0 - 2.0 * nu);
  p.c2 = -bracket / (detail::factorial(2 * n) * d);
  if (d == 1 && n == 1 && p.c2 > 0.0) p.normalizer = 0.75 * std::sqrt(p.c2);
  return p;
}

/// S(x) = sum_j x_j^{2n}.
inline double spatial_sum(const Params& p, std::span<const double> x) {
  if (static_cast<int>(x.size()) != p.d) throw domain_error("point dimension does not match d");
  double s = 0.0;
  for (const double xi : x) s += std::pow(xi * xi, p.n);
  return s;
}

/// Parabolic solution; clamped to zero outside its support when c2 > 0.
inline double eval_solution(const Params& p, std::span<const double> x, double t) {
  if (!(t > 0.0)) throw domain_error("eval_solution: t must be positive");
  const double tn = std::pow(t, p.nu);
  const double value = (1.0 - p.c2 * spatial_sum(p, x) / (tn * tn)) / tn;
  if (p.c2 > 0.0 && value < 0.0) return 0.0;
  return value;
}

/// Coefficients of the residual LHS - RHS of the equation applied to the
/// parabolic solution, expanded on the power basis: `power3` multiplies
/// t^{-3 nu} and `power5` multiplies S(x) t^{-5 nu}. Both vanish for the
/// matched (c1, c2). The `scale_*` fields hold the largest constituent term
/// of each coefficient in absolute value.
struct Residual {
  double power3 = 0.0;
  double power5 = 0.0;
  double scale3 = 0.0;
  double scale5 = 0.0;
};

/// Residual with explicit (c1, c2), so perturbed coefficients can be inspected.
inline Residual residual_coefficients(double nu, int d, int n, double c1, double c2) {
  check_nu(nu);
  using special::formal_power_coeff;
  // u = t^{-nu} - c2 S t^{-3nu}.
  // D^{2nu} t^{-nu}          -> t^{-3nu};   t^{-nu} D^{nu} t^{-nu}    -> t^{-3nu}
  // D^{2nu} t^{-3nu}         -> t^{-5nu};   t^{-nu} D^{nu} t^{-3nu}   -> t^{-5nu}
  // sum_j d^{2n}/dx_j^{2n} u = -c2 (2n)! d t^{-3nu}
  const double a = formal_power_coeff(2.0 * nu, -nu);
  const double b = c1 * formal_power_coeff(nu, -nu);
  const double rhs = -c2 * detail::factorial(2 * n) * d;
  const double e = -c2 * formal_power_coeff(2.0 * nu, -3.0 * nu);
  const double f = -c2 * c1 * formal_power_coeff(nu, -3.0 * nu);
  Residual r;
  r.power3 = a + b - rhs;
  r.power5 = e + f;
  r.scale3 = std::max({std::abs(a), std::abs(b), std::abs(rhs)});
  r.scale5 = std::max(std::abs(e), std::abs(f));
  return r;
}

inline Residual residual_coefficients(const Params& p) {
  return residual_coefficients(p.nu, p.d, p.n, p.c1, p.c2);
}

struct ScanPoint {
  double nu = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

/// Grid points k * step in (0, 1) with their coefficients, skipping the
/// Gamma-singular nu. `positive_only` keeps c2 > 0.
inline std::vector<ScanPoint> scan_grid(int d, int n, double grid_step, bool positive_only) {
  if (!(grid_step > 0.0) || grid_step > 0.1) throw domain_error("grid_step must lie in (0, 0.1]");
  std::vector<ScanPoint> out;
  for (long k = 1;; ++k) {
    const double nu = static_cast<double>(k) * grid_step;
    if (!(nu < 1.0)) break;
    if (is_gamma_singular_nu(nu)) continue;
    const Params p = make_params(nu, d, n);
    if (positive_only && !(p.c2 > 0.0)) continue;
    out.push_back({nu, p.c1, p.c2});
  }
  return out;
}

/// Grid points with c2 > 0.
inline std::vector<ScanPoint> scan_nu(int d, int n, double grid_step) { return scan_grid(d, n, grid_step, true); }

/// One-dimensional law p(x,t) = (N / (c(x) t^nu)) [1 - c2 Phi(x)^2 / t^{2nu}] on
/// |Phi(x)| < t^nu / sqrt(c2), N = (3/4) sqrt(c2). Without a profile c = 1.
inline DensityModel1D normalized_law_1d(double nu, double t, const std::optional<VelocityProfile>& profile = {}) {
  if (!(t > 0.0)) throw domain_error("normalized_law_1d: t must be positive");
  const Params p = make_params(nu, 1, 1);
  if (!(p.c2 > 0.0)) throw positivity_error("normalized_law_1d needs c2 > 0, got " + format_double(p.c2));
  const double n_const = *p.normalizer;
  const double tn = std::pow(t, nu);
  const double half_width = tn / std::sqrt(p.c2);
  const double c2 = p.c2;
  auto g = [n_const, tn, c2](double y) {
    const double v = 1.0 - c2 * y * y / (tn * tn);
    return v > 0.0 ? n_const * v / tn : 0.0;
  };
  const VelocityProfile prof = profile.value_or(VelocityProfile::constant(1.0));
  return telegraph::detail::make_reduced_model(prof, t, g, half_width, false, {});
}

}  // namespace telegraph::fracepd
