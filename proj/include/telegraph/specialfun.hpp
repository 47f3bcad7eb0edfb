#pragma once

// Special functions used by the probability laws: Gamma, Beta, I0, I1, J0
// and the Riemann-Liouville power rule. No external dependencies.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "telegraph/errors.hpp"

namespace telegraph::special {

namespace detail {

// Lanczos approximation, g = 7, n = 9.
inline constexpr double lanczos_g = 7.0;
inline constexpr std::array<double, 9> lanczos_coeff = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

inline constexpr double gamma_overflow = 171.6243769563027;

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Gamma for x >= 0.5.
inline double gamma_positive(double x) {
  const double z = x - 1.0;
  double a = lanczos_coeff[0];
  const double t = z + lanczos_g + 0.5;
  for (std::size_t i = 1; i < lanczos_coeff.size(); ++i) a += lanczos_coeff[i] / (z + static_cast<double>(i));
  // Split the power to keep t^(z+0.5) finite up to the overflow threshold.
  const double half_pow = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_pow * (half_pow * std::exp(-t)) * a;
}

// Asymptotic expansion sum for I_nu(x) e^{-x} sqrt(2 pi x), nu in {0, 1}.
inline double bessel_i_asymptotic_sum(double mu, double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (8.0 * k * x);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace detail

/// Euler Gamma function. Throws pole_error at non-positive integers and
/// overflow_error above the double range (x > 171.62...).
inline double gamma(double x) {
  if (!std::isfinite(x)) throw domain_error("gamma: non-finite argument");
  if (detail::is_nonpositive_integer(x)) throw pole_error("gamma: pole at non-positive integer");
  if (x > detail::gamma_overflow) throw overflow_error("gamma: overflow");
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    const double s = std::sin(std::numbers::pi * x);
    return std::numbers::pi / (s * detail::gamma_positive(1.0 - x));
  }
  return detail::gamma_positive(x);
}

/// 1/Gamma(x), defined as 0 at the poles.
inline double reciprocal_gamma(double x) {
  if (detail::is_nonpositive_integer(x)) return 0.0;
  if (x > detail::gamma_overflow) return 0.0;
  return 1.0 / gamma(x);
}

inline double beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw domain_error("beta: arguments must be positive");
  // B(1, b) = 1/b exactly.
  if (a == 1.0) return 1.0 / b;
  if (b == 1.0) return 1.0 / a;
  if (a + b > detail::gamma_overflow) {
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
  }
  return gamma(a) * gamma(b) / gamma(a + b);
}

/// Exponentially scaled I0: e^{-|x|} I0(x). Never overflows.
inline double bessel_i0_scaled(double x) {
  const double ax = std::abs(x);
  if (ax < 15.0) {
    const double q = 0.25 * ax * ax;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
      term *= q / (static_cast<double>(k) * k);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return sum * std::exp(-ax);
  }
  return detail::bessel_i_asymptotic_sum(0.0, ax) / std::sqrt(2.0 * std::numbers::pi * ax);
}

/// Exponentially scaled I1: e^{-|x|} I1(x).
inline double bessel_i1_scaled(double x) {
  const double ax = std::abs(x);
  double value;
  if (ax < 15.0) {
    const double q = 0.25 * ax * ax;
    double term = 0.5 * ax;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
      term *= q / (static_cast<double>(k) * (k + 1));
      sum += term;
      if (term <= 1e-17 * sum) break;
    }
    value = sum * std::exp(-ax);
  } else {
    value = detail::bessel_i_asymptotic_sum(4.0, ax) / std::sqrt(2.0 * std::numbers::pi * ax);
  }
  return x < 0.0 ? -value : value;
}

// Largest argument whose exponential is finite in double.
inline constexpr double bessel_i_overflow = 713.0;

inline double bessel_i0(double x) {
  if (!std::isfinite(x)) throw domain_error("bessel_i0: non-finite argument");
  if (std::abs(x) > bessel_i_overflow) throw overflow_error("bessel_i0: overflow");
  return bessel_i0_scaled(x) * std::exp(std::abs(x));
}

inline double bessel_i1(double x) {
  if (!std::isfinite(x)) throw domain_error("bessel_i1: non-finite argument");
  if (std::abs(x) > bessel_i_overflow) throw overflow_error("bessel_i1: overflow");
  return bessel_i1_scaled(x) * std::exp(std::abs(x));
}

/// I1(z)/z, continuous at z = 0 where it equals 1/2.
inline double bessel_i1_over_x_scaled(double z) {
  const double az = std::abs(z);
  if (az < 1e-3) {
    const double q = 0.25 * az * az;
    return (0.5 + 0.25 * q + q * q / 24.0) * std::exp(-az);
  }
  return bessel_i1_scaled(az) / az;
}

inline double bessel_j0(double x) {
  if (!std::isfinite(x)) throw domain_error("bessel_j0: non-finite argument");
  const double ax = std::abs(x);
  if (ax < 15.0) {
    const double q = 0.25 * ax * ax;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
      term *= -q / (static_cast<double>(k) * k);
      sum += term;
      if (std::abs(term) < 1e-17 * std::max(std::abs(sum), 1e-300) && k > q) break;
    }
    return sum;
  }
  // Hankel expansion: J0 = sqrt(2/(pi x)) (P cos chi - Q sin chi).
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;  // a_k / x^k with alternating sign pattern applied below
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (-(odd * odd)) / (8.0 * k * ax);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    // term = a_k(0) / x^k; P gets (-1)^{k/2} a_{2j}, Q gets (-1)^{j} a_{2j+1}
    if (k % 2 == 0) {
      p += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    } else {
      q += (((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    }
    if (std::abs(term) < 1e-17) break;
  }
  const double chi = ax - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * ax)) * (p * std::cos(chi) - q * std::sin(chi));
}

/// Riemann-Liouville power rule: D^alpha t^beta = coeff * t^(beta - alpha) with
/// coeff = Gamma(beta+1)/Gamma(beta+1-alpha). Zero when beta+1-alpha is a
/// non-positive integer.
inline double rl_power_coeff(double alpha, double beta_exp) {
  if (!(alpha > 0.0)) throw domain_error("rl_power_coeff: order must be positive");
  if (!(beta_exp > -1.0)) throw domain_error("rl_power_coeff: exponent must exceed -1");
  return gamma(beta_exp + 1.0) * reciprocal_gamma(beta_exp + 1.0 - alpha);
}

/// Same ratio continued analytically to beta <= -1 (formal power rule). Used
/// for coefficient matching of power series in t, where the classical
/// integral definition no longer applies.
inline double formal_power_coeff(double alpha, double beta_exp) {
  if (!(alpha > 0.0)) throw domain_error("formal_power_coeff: order must be positive");
  return gamma(beta_exp + 1.0) * reciprocal_gamma(beta_exp + 1.0 - alpha);
}

}  // namespace telegraph::special
