#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "telegraph/harness.hpp"
#include "telegraph/planar.hpp"
#include "telegraph/quadrature.hpp"
#include "telegraph/rng.hpp"

using namespace telegraph;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

// Mass of f over the disc of radius t. The radius is written r = sqrt(t^2 - s^2),
// which removes the inverse-square-root edge singularity of the planar laws.
double disc_mass(const std::function<double(double, double)>& f, double t) {
  const quad::Tolerance tol{1e-13, 1e-11, 20};
  const auto ring = [&](double theta) {
    return quad::integrate(
        [&](double s) {
          const double r = std::sqrt(std::max(0.0, t * t - s * s));
          return f(r * std::cos(theta), r * std::sin(theta)) * s;
        },
        0.0, t, tol);
  };
  return quad::integrate(ring, 0.0, 2.0 * pi, tol);
}

PlanarMotionSpec unit_spec(double lambda, double t) {
  const auto c = VelocityProfile::constant(1.0);
  return {c, c, lambda, t};
}

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

}  // namespace

TEST_CASE("planar density at the origin") {
  for (const double lambda : {0.5, 2.0}) {
    for (const double t : {0.7, 1.5}) {
      CHECK_THAT(density_planar(unit_spec(lambda, t), 0.0, 0.0), WithinRel(lambda / (2.0 * pi * t), 1e-14));
    }
  }
}

TEST_CASE("planar density against its closed form with constant speeds") {
  const double lambda = 1.4;
  const double t = 1.2;
  const auto cx = VelocityProfile::constant(0.5);
  const auto cy = VelocityProfile::constant(2.0);
  const PlanarMotionSpec spec{cx, cy, lambda, t};
  for (const auto& [x, y] : {std::pair{0.1, 0.3}, std::pair{-0.4, 1.0}, std::pair{0.55, -0.2}}) {
    const double u = x / 0.5;
    const double v = y / 2.0;
    const double s = std::sqrt(t * t - u * u - v * v);
    // lambda e^{-lambda t + lambda s} / (2 pi s c1 c2)
    const double expected = lambda * std::exp(-lambda * t + lambda * s) / (2.0 * pi * s * 0.5 * 2.0);
    CHECK_THAT(density_planar(spec, x, y), WithinRel(expected, 1e-13));
  }
  CHECK(density_planar(spec, 0.6, 0.1) == 0.0);
}

TEST_CASE("planar continuous mass is 1 - exp(-lambda t)") {
  for (const double lambda : {0.3, 1.0, 3.0}) {
    const auto spec = unit_spec(lambda, 1.0);
    const double m = disc_mass([&](double x, double y) { return density_planar(spec, x, y); }, 1.0);
    CHECK_THAT(m, WithinAbs(1.0 - std::exp(-lambda), 1e-4));
  }
}

TEST_CASE("conditional densities") {
  const double t = 1.5;
  const auto spec = unit_spec(1.0, t);
  CHECK_THAT(conditional_density(spec, 1, 0.0, 0.0), WithinRel(1.0 / (2.0 * pi * t * t), 1e-14));
  for (const auto& [x, y] : {std::pair{0.0, 0.0}, std::pair{0.5, -0.7}, std::pair{1.4, 0.2}}) {
    CHECK_THAT(conditional_density(spec, 2, x, y), WithinRel(1.0 / (pi * t * t), 1e-14));
  }
  for (int n = 1; n <= 6; ++n) {
    const double m = disc_mass([&](double x, double y) { return conditional_density(spec, n, x, y); }, t);
    INFO("n = " << n);
    CHECK_THAT(m, WithinAbs(1.0, 1e-6));
  }
  CHECK_THROWS_AS(conditional_density(spec, 0, 0.0, 0.0), domain_error);
}

TEST_CASE("Poisson mixture of conditional laws reproduces the density") {
  const auto p = VelocityProfile::power(0.5);
  const PlanarMotionSpec spec{p, p, 1.3, 1.2};
  CounterStream rng(99, 0);
  int checked = 0;
  while (checked < 20) {
    const double u = spec.t * (2.0 * rng.uniform() - 1.0);
    const double v = spec.t * (2.0 * rng.uniform() - 1.0);
    if (u * u + v * v > 0.95 * spec.t * spec.t) continue;
    const double x = p.phi_inverse(u);
    const double y = p.phi_inverse(v);
    if (x == 0.0 || y == 0.0) continue;
    double sum = 0.0;
    double weight = std::exp(-spec.lambda * spec.t);
    for (int n = 1; n <= 80; ++n) {
      weight *= spec.lambda * spec.t / n;
      sum += weight * conditional_density(spec, n, x, y);
    }
    const double d = density_planar(spec, x, y);
    CHECK_THAT(sum, WithinAbs(d, 1e-6 * std::max(1.0, d)));
    ++checked;
  }
}

TEST_CASE("planar density reflection symmetry") {
  const auto p = VelocityProfile::power(0.5);
  const auto q = profiles::sqrt1px2();
  const PlanarMotionSpec spec{p, q, 0.8, 1.0};
  for (const auto& [x, y] : {std::pair{0.05, 0.2}, std::pair{0.1, -0.5}, std::pair{0.2, 0.1}}) {
    const double v = density_planar(spec, x, y);
    CHECK(density_planar(spec, -x, y) == v);
    CHECK(density_planar(spec, x, -y) == v);
    CHECK(density_planar(spec, -x, -y) == v);
  }
}

TEST_CASE("boundary guard") {
  const auto spec = unit_spec(1.0, 1.0);
  CHECK_THROWS_AS(density_planar(spec, 1.0 - 1e-14, 0.0), domain_error);
  CHECK_NOTHROW(density_planar(spec, 1.0 - 1e-9, 0.0));
  CHECK(density_planar(spec, 1.0, 0.0) == 0.0);
  CHECK(support_contains(spec, 0.6, 0.79));
  CHECK_FALSE(support_contains(spec, 0.6, 0.81));
}

TEST_CASE("spec validation") {
  const auto c = VelocityProfile::constant(1.0);
  CHECK_THROWS_AS(simulate_planar({c, c, 0.0, 1.0}, 10, 1), domain_error);
  CHECK_THROWS_AS(simulate_planar({c, VelocityProfile::power(1.0), 1.0, 1.0}, 10, 1), domain_error);
  CHECK_THROWS_AS(simulate_planar({c, profiles::one_plus_x2(), 1.0, 2.0}, 10, 1), domain_error);
  CHECK_THROWS_AS(boundary_polyline({c, c, 1.0, 1.0}, 4), domain_error);
}

TEST_CASE("planar sampler: zero-event paths sit on the boundary") {
  const auto p = VelocityProfile::power(0.5);
  const PlanarMotionSpec spec{p, p, 1.1, 1.0};
  const std::size_t n = 200'000;
  const PlanarBatch b = simulate_planar(spec, n, 17);
  std::size_t zero = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r2 = spec.transformed_radius2(b.xs[i], b.ys[i]);
    CHECK(r2 <= spec.t * spec.t * (1.0 + 1e-9));
    if (b.event_counts[i] == 0) {
      ++zero;
      CHECK_THAT(std::sqrt(r2), WithinAbs(spec.t, 1e-9));
    }
  }
  const double q = std::exp(-spec.lambda * spec.t);
  const double nn = static_cast<double>(n);
  CHECK(std::abs(static_cast<double>(zero) / nn - q) < 3.0 * std::sqrt(q * (1.0 - q) / nn));
}

TEST_CASE("planar sampler: centred and exchangeable") {
  const auto p = VelocityProfile::power(0.5);
  const PlanarMotionSpec spec{p, p, 1.0, 1.0};
  const std::size_t n = 200'000;
  const PlanarBatch b = simulate_planar(spec, n, 23);
  for (const auto* v : {&b.xs, &b.ys}) {
    double s = 0.0;
    double s2 = 0.0;
    for (const double x : *v) {
      s += x;
      s2 += x * x;
    }
    const double mean = s / n;
    const double se = std::sqrt((s2 / n - mean * mean) / n);
    CHECK(std::abs(mean) < 3.0 * se);
  }
  CHECK(two_sample_ks(b.xs, b.ys) <= 1.36 * std::sqrt(2.0 / n) * 1.5);
}

TEST_CASE("planar histogram against bin-integrated density") {
  const auto p = VelocityProfile::power(0.5);
  const PlanarMotionSpec spec{p, p, 1.0, 1.0};
  const PlanarBatch b = simulate_planar(spec, 200'000, 41);
  const auto chi = harness::chi2_planar(spec, b, 20);
  INFO("statistic " << chi.statistic << " dof " << chi.dof);
  CHECK(chi.p_value > 0.01);
}

TEST_CASE("Lame curves") {
  SECTION("astroid") {
    const LameSupport s{2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.5};
    for (const auto& q : boundary_polyline(s.motion(), 256)) {
      CHECK_THAT(s.lame_value(q.x, q.y), WithinRel(s.t * s.t, 1e-9));
      // (1/3) |x|^{1/3} / (1/3) = |x|^{1/3}, so the curve is |x|^{2/3} + |y|^{2/3} = t^2.
      CHECK_THAT(std::cbrt(q.x * q.x) + std::cbrt(q.y * q.y), WithinRel(s.t * s.t, 1e-9));
    }
    CHECK(s.exponent_x() == Catch::Approx(2.0 / 3.0));
  }
  SECTION("ellipse and circle") {
    const double t = 2.0;
    const PlanarMotionSpec ellipse{VelocityProfile::constant(0.5), VelocityProfile::constant(1.5), 1.0, t};
    for (const auto& q : boundary_polyline(ellipse, 64)) {
      CHECK_THAT((q.x / 0.5) * (q.x / 0.5) + (q.y / 1.5) * (q.y / 1.5), WithinRel(t * t, 1e-12));
    }
    const PlanarMotionSpec circle{VelocityProfile::constant(0.8), VelocityProfile::constant(0.8), 1.0, t};
    for (const auto& q : boundary_polyline(circle, 64)) CHECK_THAT(std::hypot(q.x, q.y), WithinRel(0.8 * t, 1e-12));
  }
  SECTION("general exponents") {
    const LameSupport s{0.25, -0.5, 2.0, 0.7, 1.1};
    for (const auto& q : boundary_polyline(s.motion(), 128)) CHECK_THAT(s.lame_value(q.x, q.y), WithinRel(1.21, 1e-9));
    CHECK(s.contains(0.0, 0.0));
    CHECK_THROWS_AS(LameSupport({1.0, 0.5, 1.0, 1.0, 1.0}).motion(), domain_error);
  }
}

TEST_CASE("trajectories stay inside the support") {
  const LameSupport s{2.0 / 3.0, 2.0 / 3.0, 1.0, 1.0, 3.0};
  const auto spec = s.motion();
  for (const int changes : {0, 2, 3, 4}) {
    const auto path = planar_trajectory(spec, changes, 1);
    CHECK(path.size() == static_cast<std::size_t>(64 * (changes + 1) + 1));
    for (const auto& [x, y] : path) CHECK(spec.transformed_radius2(x, y) <= spec.t * spec.t * (1.0 + 1e-12));
  }
  CHECK(planar_trajectory(spec, 3, 5) == planar_trajectory(spec, 3, 5));
}

TEST_CASE("d-dimensional EPD law") {
  const auto prof = VelocityProfile::power(0.5);
  const std::vector<VelocityProfile> one{prof};
  for (const double alpha : {0.5, 1.0, 2.5}) {
    const auto m = density_epd(prof, alpha, 1.3);
    for (int k = 1; k <= 20; ++k) {
      const double x = m.lo + (m.hi - m.lo) * (k - 0.5) / 20.0;
      if (x == 0.0) continue;
      const std::vector<double> pt{x};
      CHECK_THAT(density_epd_ddim(one, alpha, 1.3, pt), WithinRel(m.pdf(x), 1e-12));
    }
  }
  const auto c = VelocityProfile::constant(1.0);
  const std::vector<VelocityProfile> two{c, c};
  const double t = 1.4;
  for (const auto& x : {std::vector<double>{0.0, 0.0}, std::vector<double>{0.5, -0.9}}) {
    CHECK_THAT(density_epd_ddim(two, 1.0, t, x), WithinRel(1.0 / (pi * t * t), 1e-14));
  }
  const double mass = disc_mass(
      [&](double x, double y) {
        const std::vector<double> pt{x, y};
        return density_epd_ddim(two, 1.5, t, pt);
      },
      t);
  CHECK_THAT(mass, WithinAbs(1.0, 1e-5));
  // d = 3, alpha = 1: uniform on the ball of radius t.
  const std::vector<VelocityProfile> three{c, c, c};
  const std::vector<double> pt3{0.1, 0.2, 0.3};
  CHECK_THAT(density_epd_ddim(three, 1.0, t, pt3), WithinRel(3.0 / (4.0 * pi * t * t * t), 1e-13));
  CHECK_THROWS_AS(density_epd_ddim(two, 1.0, t, pt3), domain_error);
}
