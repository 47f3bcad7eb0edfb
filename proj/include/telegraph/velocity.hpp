#pragma once

// Velocity profiles c(x) > 0 and the transform Phi(x) = int_0^x dw / c(w),
// which turns motion with speed c(x) into motion at unit speed.

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>

#include "telegraph/errors.hpp"
#include "telegraph/format.hpp"
#include "telegraph/quadrature.hpp"

namespace telegraph {

enum class ProfileKind { constant, power, custom };

/// Closed interval reached by time t, or flagged unbounded.
struct Cone {
  double lo = 0.0;
  double hi = 0.0;
  bool infinite = false;
};

class VelocityProfile {
 public:
  using SpeedFn = std::function<double(double)>;

  struct CustomOptions {
    bool even = false;
    double phi_sup = std::numeric_limits<double>::infinity();  // lim_{x->+inf} Phi(x)
    double phi_inf = -std::numeric_limits<double>::infinity();  // lim_{x->-inf} Phi(x)
    double check_half_width = 10.0;  // positivity grid [-w, w]
    int check_points = 201;
    quad::Tolerance tolerance{1e-10, 1e-13, 30};
    std::string description;  // returned by describe(); defaults to "custom:name=<name>"
  };

  static VelocityProfile constant(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw domain_error("constant profile needs c > 0");
    VelocityProfile p;
    p.kind_ = ProfileKind::constant;
    p.c_ = c;
    return p;
  }

  /// c(x) = |x|^gamma / scale. gamma >= 1 is accepted but marks the cone infinite.
  static VelocityProfile power(double gamma_exp, double scale = 1.0) {
    if (!std::isfinite(gamma_exp)) throw domain_error("power profile needs a finite exponent");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw domain_error("power profile needs scale > 0");
    VelocityProfile p;
    p.kind_ = ProfileKind::power;
    p.gamma_ = gamma_exp;
    p.scale_ = scale;
    return p;
  }

  static VelocityProfile custom(std::string name, SpeedFn speed, CustomOptions options) {
    if (!speed) throw domain_error("custom profile needs a speed function");
    const int m = std::max(options.check_points, 2);
    for (int i = 0; i < m; ++i) {
      const double x = -options.check_half_width + 2.0 * options.check_half_width * i / (m - 1);
      const double v = speed(x);
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw domain_error("custom profile '" + name + "' is not positive at x = " + std::to_string(x));
      }
    }
    VelocityProfile p;
    p.kind_ = ProfileKind::custom;
    p.name_ = std::move(name);
    p.speed_fn_ = std::make_shared<SpeedFn>(std::move(speed));
    p.custom_ = options;
    return p;
  }

  ProfileKind kind() const { return kind_; }
  double constant_speed() const { return c_; }
  double gamma_exp() const { return gamma_; }
  double scale() const { return scale_; }
  const std::string& name() const { return name_; }

  bool is_even() const { return kind_ != ProfileKind::custom || custom_.even; }

  /// True when Phi diverges (power profiles with gamma >= 1).
  bool infinite_cone() const { return kind_ == ProfileKind::power && gamma_ >= 1.0; }

  double speed(double x) const {
    switch (kind_) {
      case ProfileKind::constant:
        return c_;
      case ProfileKind::power:
        return std::pow(std::abs(x), gamma_) / scale_;
      case ProfileKind::custom:
        return (*speed_fn_)(x);
    }
    return 0.0;
  }

  double phi(double x) const {
    if (!std::isfinite(x)) throw domain_error("phi: non-finite argument");
    switch (kind_) {
      case ProfileKind::constant:
        return x / c_;
      case ProfileKind::power: {
        if (x == 0.0) return 0.0;
        if (gamma_ >= 1.0) throw divergence_error("phi: int dw/|w|^gamma diverges for gamma >= 1");
        const double e = 1.0 - gamma_;
        return std::copysign(scale_ * std::pow(std::abs(x), e) / e, x);
      }
      case ProfileKind::custom: {
        if (x == 0.0) return 0.0;
        const auto& f = *speed_fn_;
        const double v = quad::integrate([&f](double w) { return 1.0 / f(w); }, 0.0, x, custom_.tolerance);
        return v;
      }
    }
    return 0.0;
  }

  /// Supremum and infimum of Phi over the real line.
  double phi_sup() const {
    if (kind_ == ProfileKind::custom) return custom_.phi_sup;
    return std::numeric_limits<double>::infinity();
  }
  double phi_inf() const {
    if (kind_ == ProfileKind::custom) return custom_.phi_inf;
    return -std::numeric_limits<double>::infinity();
  }

  double phi_inverse(double y) const {
    if (!std::isfinite(y)) throw range_error("phi_inverse: non-finite argument");
    switch (kind_) {
      case ProfileKind::constant:
        return y * c_;
      case ProfileKind::power: {
        if (y == 0.0) return 0.0;
        if (gamma_ >= 1.0) throw range_error("phi_inverse: Phi is unbounded at every x != 0 for gamma >= 1");
        const double e = 1.0 - gamma_;
        return std::copysign(std::pow(std::abs(y) * e / scale_, 1.0 / e), y);
      }
      case ProfileKind::custom:
        return custom_inverse(y);
    }
    return 0.0;
  }

  /// Interval {x : |Phi(x)| <= t} around the origin.
  Cone cone_endpoints(double t) const {
    if (!(t > 0.0)) throw domain_error("cone_endpoints: t must be positive");
    if (infinite_cone()) {
      const double inf = std::numeric_limits<double>::infinity();
      return {-inf, inf, true};
    }
    const double inf = std::numeric_limits<double>::infinity();
    const double hi = t >= phi_sup() ? inf : phi_inverse(t);
    const double lo = -t <= phi_inf() ? -inf : phi_inverse(-t);
    return {lo, hi, std::isinf(hi) || std::isinf(lo)};
  }

  /// Parseable description, e.g. "power:gamma=0.5,scale=1".
  std::string describe() const {
    switch (kind_) {
      case ProfileKind::constant:
        return "constant:c=" + format_double(c_);
      case ProfileKind::power:
        return "power:gamma=" + format_double(gamma_) + ",scale=" + format_double(scale_);
      case ProfileKind::custom:
        return custom_.description.empty() ? "custom:name=" + name_ : custom_.description;
    }
    return {};
  }

 private:
  VelocityProfile() = default;

  double custom_inverse(double y) const {
    if (y == 0.0) return 0.0;
    if (y >= custom_.phi_sup || y <= custom_.phi_inf) {
      throw range_error("phi_inverse: value outside the range of Phi for profile '" + name_ + "'");
    }
    // Phi is increasing: bracket by doubling away from [0, 1], then bisect.
    const double dir = y > 0.0 ? 1.0 : -1.0;
    double inner = 0.0;
    double outer = dir;
    int doublings = 0;
    while (dir * phi(outer) < dir * y) {
      inner = outer;
      outer *= 2.0;
      if (++doublings > 80) throw range_error("phi_inverse: failed to bracket the root");
    }
    double lo = std::min(inner, outer);
    double hi = std::max(inner, outer);
    while (hi - lo > 1e-12 * std::max(1.0, std::abs(hi))) {
      const double mid = 0.5 * (lo + hi);
      if (phi(mid) < y) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }

  ProfileKind kind_ = ProfileKind::constant;
  double c_ = 1.0;
  double gamma_ = 0.0;
  double scale_ = 1.0;
  std::string name_;
  std::shared_ptr<const SpeedFn> speed_fn_;
  CustomOptions custom_{};
};

namespace profiles {

/// c(x) = (1 + x^2) / scale; Phi(x) = scale * atan(x), bounded by scale * pi / 2.
inline VelocityProfile one_plus_x2(double scale = 1.0) {
  VelocityProfile::CustomOptions o;
  o.even = true;
  o.phi_sup = scale * std::acos(-1.0) / 2.0;
  o.phi_inf = -o.phi_sup;
  o.description = "custom:name=one_plus_x2,scale=" + format_double(scale);
  return VelocityProfile::custom(
      "one_plus_x2", [scale](double x) { return (1.0 + x * x) / scale; }, o);
}

/// c(x) = sqrt(1 + x^2) / scale; Phi(x) = scale * asinh(x), unbounded.
inline VelocityProfile sqrt1px2(double scale = 1.0) {
  VelocityProfile::CustomOptions o;
  o.even = true;
  o.description = "custom:name=sqrt1px2,scale=" + format_double(scale);
  return VelocityProfile::custom(
      "sqrt1px2", [scale](double x) { return std::sqrt(1.0 + x * x) / scale; }, o);
}

}  // namespace profiles

}  // namespace telegraph
