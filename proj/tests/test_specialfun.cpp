#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "telegraph/harness.hpp"
#include "telegraph/specialfun.hpp"

using namespace telegraph;
using namespace telegraph::special;
namespace sf = telegraph::special;
using Catch::Matchers::WithinRel;
using Catch::Matchers::WithinAbs;

TEST_CASE("gamma at integers and half-integers") {
  CHECK_THAT(sf::gamma(5.0), WithinRel(24.0, 1e-14));
  CHECK_THAT(sf::gamma(0.5), WithinRel(std::sqrt(std::numbers::pi), 1e-14));
  CHECK_THAT(sf::gamma(1.0), WithinRel(1.0, 1e-15));
  CHECK_THAT(sf::gamma(-0.5), WithinRel(-2.0 * std::sqrt(std::numbers::pi), 1e-13));
}

TEST_CASE("gamma reflection") {
  CHECK_THAT(sf::gamma(0.3) * sf::gamma(0.7), WithinRel(std::numbers::pi / std::sin(0.3 * std::numbers::pi), 1e-13));
}

TEST_CASE("gamma matches std::tgamma on |x| <= 30") {
  for (double x = -29.95; x <= 30.0; x += 0.137) {
    if (std::abs(x - std::round(x)) < 1e-9 && x <= 0.0) continue;
    INFO("x = " << x);
    CHECK_THAT(sf::gamma(x), WithinRel(std::tgamma(x), 1e-12));
  }
}

TEST_CASE("gamma recurrence on a log grid") {
  for (int k = 0; k <= 60; ++k) {
    const double x = 0.1 * std::pow(200.0, k / 60.0);
    CHECK_THAT(sf::gamma(x + 1.0), WithinRel(x * sf::gamma(x), 1e-12));
  }
}

TEST_CASE("gamma errors") {
  CHECK_THROWS_AS(sf::gamma(0.0), pole_error);
  CHECK_THROWS_AS(sf::gamma(-3.0), pole_error);
  CHECK_THROWS_AS(sf::gamma(172.0), overflow_error);
  CHECK_NOTHROW(sf::gamma(171.0));
  CHECK(reciprocal_gamma(-2.0) == 0.0);
}

TEST_CASE("beta") {
  CHECK_THAT(beta(1.0, 0.5), WithinRel(2.0, 1e-14));
  CHECK_THAT(beta(0.5, 0.5), WithinRel(std::numbers::pi, 1e-14));
  CHECK_THAT(beta(2.3, 0.7), WithinRel(beta(0.7, 2.3), 1e-14));
  for (const double a : {0.2, 1.1, 3.7}) {
    for (const double b : {0.5, 2.0, 6.1}) {
      CHECK_THAT(beta(a, b) * sf::gamma(a + b), WithinRel(sf::gamma(a) * sf::gamma(b), 1e-12));
    }
  }
  CHECK_THROWS_AS(beta(0.0, 1.0), domain_error);
  CHECK_THROWS_AS(beta(1.0, -1.0), domain_error);
}

TEST_CASE("Bessel values at zero") {
  CHECK(bessel_i0(0.0) == 1.0);
  CHECK(bessel_i1(0.0) == 0.0);
  CHECK(bessel_j0(0.0) == 1.0);
}

TEST_CASE("I0(1) against its ascending series") {
  double sum = 0.0;
  double term = 1.0;
  for (int k = 0; k < 30; ++k) {
    if (k > 0) term *= 0.25 / (static_cast<double>(k) * k);
    sum += term;
  }
  CHECK_THAT(bessel_i0(1.0), WithinRel(sum, 1e-14));
  CHECK_THAT(sum, WithinAbs(1.2660658, 1e-7));
}

TEST_CASE("Bessel functions against the standard library on |x| <= 50") {
  for (double x = 0.01; x <= 50.0; x *= 1.07) {
    INFO("x = " << x);
    CHECK_THAT(bessel_i0(x), WithinRel(std::cyl_bessel_i(0.0, x), 1e-10));
    CHECK_THAT(bessel_i1(x), WithinRel(std::cyl_bessel_i(1.0, x), 1e-10));
    const double j = std::cyl_bessel_j(0.0, x);
    // Near zeros of J0 relative accuracy is meaningless; compare absolutely there.
    CHECK_THAT(bessel_j0(x), WithinAbs(j, 1e-10 * std::max(1.0, std::abs(j))));
  }
}

TEST_CASE("Bessel parity") {
  for (const double x : {0.3, 2.0, 14.9, 15.1, 40.0}) {
    CHECK(bessel_i0(-x) == bessel_i0(x));
    CHECK(bessel_i1(-x) == -bessel_i1(x));
    CHECK(bessel_j0(-x) == bessel_j0(x));
  }
}

TEST_CASE("I0' = I1 by central differences") {
  for (const double x : {0.5, 2.0, 10.0}) {
    const double h = 1e-5 * std::max(1.0, x);
    const double fd = (bessel_i0(x + h) - bessel_i0(x - h)) / (2.0 * h);
    CHECK_THAT(fd, WithinRel(bessel_i1(x), 1e-6));
  }
}

TEST_CASE("scaled Bessel functions and overflow") {
  CHECK_THROWS_AS(bessel_i0(800.0), overflow_error);
  CHECK_THROWS_AS(bessel_i1(-800.0), overflow_error);
  CHECK_THAT(bessel_i0_scaled(800.0), WithinRel(1.0 / std::sqrt(2.0 * std::numbers::pi * 800.0), 1e-3));
  CHECK_THAT(bessel_i1_over_x_scaled(0.0), WithinRel(0.5, 1e-15));
  for (const double z : {1e-4, 5e-4, 2e-3, 0.5}) {
    CHECK_THAT(bessel_i1_over_x_scaled(z), WithinRel(std::cyl_bessel_i(1.0, z) / z * std::exp(-z), 1e-12));
  }
}

TEST_CASE("Riemann-Liouville power rule") {
  CHECK_THAT(rl_power_coeff(1.0, 2.0), WithinRel(2.0, 1e-14));
  CHECK_THAT(rl_power_coeff(0.5, 1.0), WithinRel(2.0 / std::sqrt(std::numbers::pi), 1e-14));
  for (const double b : {1.0, 2.0, 3.5}) CHECK_THAT(rl_power_coeff(1.0, b), WithinRel(b, 1e-13));
  // Derivative of order 2 of t: zero by the reciprocal-Gamma convention.
  CHECK(rl_power_coeff(2.0, 1.0) == 0.0);
  CHECK_THROWS_AS(rl_power_coeff(0.5, -1.0), domain_error);
  CHECK_THROWS_AS(rl_power_coeff(0.0, 1.0), domain_error);
  CHECK_NOTHROW(formal_power_coeff(0.5, -1.5));
}

TEST_CASE("power rule against a Grunwald-Letnikov sum") {
  const auto f = [](double t) { return std::pow(t, 0.7); };
  const double gl = harness::grunwald_letnikov(f, 0.5, 1.0, 1e-5);
  CHECK_THAT(gl, WithinRel(rl_power_coeff(0.5, 0.7), 1e-4));
}
