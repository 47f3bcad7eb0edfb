#pragma once

// Thin wrappers over Boost.Math quadrature with a uniform error policy.

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "telegraph/errors.hpp"
#include "telegraph/format.hpp"

namespace telegraph::quad {

struct Tolerance {
  double absolute = 1e-12;
  double relative = 1e-12;
  unsigned max_depth = 30;
};

/// Adaptive Gauss-Kronrod (21 point) on [a, b]. Throws divergence_error when
/// the error estimate misses both tolerances.
template <class F>
double integrate(F&& f, double a, double b, Tolerance tol = {}) {
  if (a == b) return 0.0;
  using rule = boost::math::quadrature::gauss_kronrod<double, 21>;
  double err = 0.0;
  double l1 = 0.0;
  // Single-panel first: the adaptive driver inflates its estimate on very
  // short intervals even when one panel is exact.
  const double single = rule::integrate(f, a, b, 0, 0.0, &err, &l1);
  if (std::isfinite(single) && err <= std::max(tol.absolute, 0.5 * tol.relative * std::abs(single))) return single;
  const double value = rule::integrate(f, a, b, tol.max_depth, tol.relative * 0.5, &err, &l1);
  if (!std::isfinite(value) || err > std::max(tol.absolute, tol.relative * std::abs(value))) {
    throw divergence_error("quadrature did not converge on [" + format_double(a) + ", " +
                           format_double(b) + "], error estimate " + format_double(err));
  }
  return value;
}

/// Fixed 21-point Kronrod rule, no adaptivity. For short cells with smooth integrands.
template <class F>
double kronrod21(F&& f, double a, double b) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 0, 0.0);
}

/// Double-exponential rule for integrable endpoint singularities.
template <class F>
double integrate_singular(F&& f, double a, double b, double relative = 1e-12) {
  if (a == b) return 0.0;
  static thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
  double err = 0.0;
  double l1 = 0.0;
  const double value = rule.integrate(f, a, b, relative, &err, &l1);
  if (!std::isfinite(value) || err > std::max(1e-10, 1e3 * relative * std::abs(value))) {
    throw divergence_error("tanh-sinh quadrature did not converge, error estimate " + format_double(err));
  }
  return value;
}

/// Same rule without the convergence check. For integrands whose values near
/// an endpoint are limited by rounding of the argument (the estimate then
/// stalls well above the true error).
template <class F>
double integrate_singular_unchecked(F&& f, double a, double b, double relative = 1e-12) {
  if (a == b) return 0.0;
  static thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
  return rule.integrate(f, a, b, relative);
}

}  // namespace telegraph::quad
