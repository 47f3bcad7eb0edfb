#pragma once

// Time-dependent switching rates lambda(t) with closed-form integrated rates,
// exact inverse-CDF event sampling, and the quantities of the Riccati and
// D'Alembert reductions.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "telegraph/errors.hpp"
#include "telegraph/format.hpp"
#include "telegraph/rng.hpp"

namespace telegraph {

enum class RateKind { constant, tanh, coth, epd };

namespace detail {

// log cosh(x), x >= 0, without overflow.
inline double log_cosh(double x) {
  x = std::abs(x);
  if (x < 1.0) {
    const double s = std::sinh(0.5 * x);  // cosh x - 1 = 2 sinh^2(x/2)
    return std::log1p(2.0 * s * s);
  }
  return x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2;
}

// log sinh(x), x > 0, without overflow.
inline double log_sinh(double x) {
  if (x < 0.5) return std::log(std::sinh(x));
  return x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2;
}

// Inverse of log_cosh on [0, inf): acosh(e^y).
inline double inverse_log_cosh(double y) {
  if (y <= 0.0) return 0.0;
  return y + std::log1p(std::sqrt(-std::expm1(-2.0 * y)));
}

// Inverse of log_sinh: asinh(e^y).
inline double inverse_log_sinh(double y) {
  if (y < 0.0) return std::asinh(std::exp(y));
  return y + std::log1p(std::sqrt(1.0 + std::exp(-2.0 * y)));
}

}  // namespace detail

class RateFunction {
 public:
  static constexpr double default_eps = 1e-9;

  static RateFunction constant(double lambda) { return make(RateKind::constant, lambda, "lambda"); }
  static RateFunction tanh(double lambda) { return make(RateKind::tanh, lambda, "lambda"); }
  static RateFunction coth(double lambda) { return make(RateKind::coth, lambda, "lambda"); }
  static RateFunction epd(double alpha) { return make(RateKind::epd, alpha, "alpha"); }

  RateKind kind() const { return kind_; }
  /// lambda for constant/tanh/coth kinds, alpha for the epd kind.
  double parameter() const { return param_; }

  /// Relative start offset for kinds whose integrated rate diverges at 0.
  double eps() const { return eps_; }
  RateFunction with_eps(double eps) const {
    if (!(eps > 0.0) || !(eps < 1.0)) throw domain_error("eps must lie in (0, 1)");
    RateFunction r = *this;
    r.eps_ = eps;
    return r;
  }

  /// Lambda(0, t) is infinite for coth and epd kinds.
  bool divergent_at_zero() const { return kind_ == RateKind::coth || kind_ == RateKind::epd; }

  /// Simulation start time for a horizon t_max: 0, or eps * t_max for divergent kinds.
  double start_time(double t_max) const { return divergent_at_zero() ? eps_ * t_max : 0.0; }

  double rate_at(double t) const {
    switch (kind_) {
      case RateKind::constant:
        return param_;
      case RateKind::tanh:
        if (t < 0.0) throw domain_error("rate_at: t must be non-negative");
        return param_ * std::tanh(param_ * t);
      case RateKind::coth:
        if (!(t > 0.0)) throw domain_error("rate_at: t must be positive for the coth rate");
        return param_ / std::tanh(param_ * t);
      case RateKind::epd:
        if (!(t > 0.0)) throw domain_error("rate_at: t must be positive for the epd rate");
        return param_ / t;
    }
    return 0.0;
  }

  /// Lambda(s, t) = int_s^t lambda(u) du; +inf when s = 0 for coth and epd.
  double integrated_rate(double s, double t) const {
    if (!(s >= 0.0) || !(t >= s)) throw domain_error("integrated_rate: need 0 <= s <= t");
    if (s == t) return 0.0;
    const double inf = std::numeric_limits<double>::infinity();
    switch (kind_) {
      case RateKind::constant:
        return param_ * (t - s);
      case RateKind::tanh:
        return detail::log_cosh(param_ * t) - detail::log_cosh(param_ * s);
      case RateKind::coth:
        if (s == 0.0) return inf;
        return detail::log_sinh(param_ * t) - detail::log_sinh(param_ * s);
      case RateKind::epd:
        if (s == 0.0) return inf;
        return param_ * std::log(t / s);
    }
    return 0.0;
  }

  /// Solves Lambda(s, T) = e for T.
  double next_event_after(double s, double e) const {
    switch (kind_) {
      case RateKind::constant:
        return s + e / param_;
      case RateKind::tanh:
        return detail::inverse_log_cosh(detail::log_cosh(param_ * s) + e) / param_;
      case RateKind::coth:
        return detail::inverse_log_sinh(detail::log_sinh(param_ * s) + e) / param_;
      case RateKind::epd:
        return s * std::exp(e / param_);
    }
    return s;
  }

  /// Event times in (start_time(t_max), t_max], strictly increasing.
  std::vector<double> sample_event_times(double t_max, CounterStream& rng) const {
    if (!(t_max > 0.0)) throw domain_error("sample_event_times: t_max must be positive");
    std::vector<double> times;
    double s = start_time(t_max);
    while (true) {
      const double next = next_event_after(s, rng.exponential());
      if (!(next <= t_max)) break;
      if (next <= s) break;  // no representable progress; remaining mass is below resolution
      times.push_back(next);
      s = next;
    }
    return times;
  }

  /// lambda'(t) + lambda(t)^2.
  double riccati_residual(double t) const {
    if (!(t > 0.0)) throw domain_error("riccati_residual: t must be positive");
    const double l = param_;
    switch (kind_) {
      case RateKind::constant:
      case RateKind::tanh:
      case RateKind::coth:
        // tanh: l^2 sech^2 + l^2 tanh^2 = l^2; coth: -l^2 csch^2 + l^2 coth^2 = l^2.
        return l * l;
      case RateKind::epd:
        return l * (l - 1.0) / (t * t);
    }
    return 0.0;
  }

  /// Pointwise lambda'(t) + lambda(t)^2 from the individual terms, without the
  /// hyperbolic identities. Used to check riccati_residual.
  double riccati_terms(double t) const {
    if (!(t > 0.0)) throw domain_error("riccati_terms: t must be positive");
    const double l = param_;
    switch (kind_) {
      case RateKind::constant:
        return l * l;
      case RateKind::tanh: {
        const double sech = 1.0 / std::cosh(l * t);
        const double th = std::tanh(l * t);
        return l * l * sech * sech + l * l * th * th;
      }
      case RateKind::coth: {
        const double csch = 1.0 / std::sinh(l * t);
        const double ct = 1.0 / std::tanh(l * t);
        return -l * l * csch * csch + l * l * ct * ct;
      }
      case RateKind::epd:
        return -l / (t * t) + l * l / (t * t);
    }
    return 0.0;
  }

  /// gamma(t) with gamma'/gamma = -2 lambda(t): exp(-2 Lambda(t0, t)), t0 = 0 for
  /// constant/tanh and t0 = reference for divergent kinds.
  double gamma_factor(double t, double reference = 1.0) const {
    if (!(t > 0.0)) throw domain_error("gamma_factor: t must be positive");
    const double l = param_;
    switch (kind_) {
      case RateKind::constant:
        return std::exp(-2.0 * l * t);
      case RateKind::tanh: {
        const double sech = 1.0 / std::cosh(l * t);
        return sech * sech;
      }
      case RateKind::coth: {
        const double ratio = std::sinh(l * reference) / std::sinh(l * t);
        return ratio * ratio;
      }
      case RateKind::epd:
        return std::pow(t / reference, -2.0 * l);
    }
    return 1.0;
  }

  /// Parseable description, e.g. "rate:tanh:lambda=1".
  std::string describe() const {
    std::string s = "rate:";
    switch (kind_) {
      case RateKind::constant:
        s += "constant:lambda=";
        break;
      case RateKind::tanh:
        s += "tanh:lambda=";
        break;
      case RateKind::coth:
        s += "coth:lambda=";
        break;
      case RateKind::epd:
        s += "epd:alpha=";
        break;
    }
    s += format_double(param_);
    if (divergent_at_zero()) s += ",eps=" + format_double(eps_);
    return s;
  }

 private:
  static RateFunction make(RateKind kind, double p, const char* what) {
    if (!(p > 0.0) || !std::isfinite(p)) throw domain_error(std::string("rate needs ") + what + " > 0");
    RateFunction r;
    r.kind_ = kind;
    r.param_ = p;
    return r;
  }

  RateKind kind_ = RateKind::constant;
  double param_ = 1.0;
  double eps_ = default_eps;
};

}  // namespace telegraph
