#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "telegraph/harness.hpp"
#include "telegraph/rng.hpp"
#include "telegraph/telegraph1d.hpp"

using namespace telegraph;
using namespace telegraph::harness;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("KS of an inverse-transform draw is small") {
  const std::size_t n = 100'000;
  const double rate = 1.7;
  std::vector<double> xs;
  CounterStream rng(1, 0);
  for (std::size_t i = 0; i < n; ++i) xs.push_back(-std::log1p(-rng.uniform()) / rate);
  const Cdf exp_cdf{[&](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); }, {}};
  CHECK(ks_statistic(xs, exp_cdf) <= 1.36 / std::sqrt(static_cast<double>(n)) * 1.5);
}

TEST_CASE("KS edge cases") {
  const std::vector<double> constant(50, 2.0);
  const Cdf point{[](double x) { return x >= 2.0 ? 1.0 : 0.0; }, [](double x) { return x > 2.0 ? 1.0 : 0.0; }};
  CHECK(ks_statistic(constant, point) == 0.0);

  std::vector<double> u;
  CounterStream rng(2, 0);
  for (int i = 0; i < 20'000; ++i) u.push_back(rng.uniform());
  const Cdf wide{[](double x) { return std::clamp(x / 2.0, 0.0, 1.0); }, {}};
  CHECK_THAT(ks_statistic(u, wide), WithinAbs(0.5, 0.01));
  CHECK_THROWS_AS(ks_statistic({}, wide), domain_error);
}

TEST_CASE("tabulated CDF with atoms") {
  const auto p = VelocityProfile::power(0.5);
  const auto m = density_symmetric(p, 1.0, 1.0);
  const TabulatedCdf cdf(m);
  const double w = 0.5 * std::exp(-1.0);
  CHECK(cdf(-2.0) == 0.0);
  CHECK_THAT(cdf.left(m.lo), WithinAbs(0.0, 1e-15));
  CHECK_THAT(cdf(m.lo), WithinAbs(w, 1e-12));
  CHECK_THAT(cdf.left(m.hi), WithinAbs(1.0 - w, 1e-9));
  CHECK_THAT(cdf(m.hi), WithinAbs(1.0, 1e-9));
  CHECK_THAT(cdf(0.0), WithinAbs(0.5, 1e-9));
  double prev = 0.0;
  for (double x = m.lo; x <= m.hi; x += 0.001) {
    const double v = cdf(x);
    CHECK(v >= prev - 1e-15);
    prev = v;
  }
  // Interpolated values against direct quadrature of the continuous part.
  for (const double x : {-0.2, -0.05, 0.01, 0.1, 0.24}) {
    // pdf ~ |x|^{-1/2} at the origin: split there and use the endpoint-safe rule.
    const double direct = w + (x < 0.0 ? quad::integrate_singular(m.ac, m.lo, x, 1e-13)
                                       : quad::integrate_singular(m.ac, m.lo, 0.0, 1e-13) +
                                             quad::integrate_singular(m.ac, 0.0, x, 1e-13));
    CHECK_THAT(cdf(x), WithinAbs(direct, 1e-10));
  }
  const TabulatedCdf ac_only(m, true);
  CHECK_THAT(ac_only(m.hi), WithinAbs(1.0, 1e-15));
  CHECK_THAT(ac_only.ac_mass(), WithinAbs(1.0 - 2.0 * w, 1e-9));
}

TEST_CASE("tabulated CDF of an edge-singular law") {
  const auto m = density_epd(VelocityProfile::constant(1.0), 0.5, 1.0);
  const TabulatedCdf cdf(m);
  // Arcsine law: F(x) = 1/2 + asin(x)/pi. The outermost cells lose the
  // sliver where Phi rounds onto the endpoint, a few 1e-9 of mass.
  for (const double x : {-0.999999, -0.5, 0.0, 0.3, 0.99}) {
    CHECK_THAT(cdf(x), WithinAbs(0.5 + std::asin(x) / std::numbers::pi, 1e-8));
  }
}

TEST_CASE("chi-square of exact counts is zero") {
  const std::vector<double> probs{0.1, 0.2, 0.3, 0.4};
  const std::vector<double> obs{100, 200, 300, 400};
  const Chi2Result r = chi2_counts(obs, probs);
  CHECK(r.statistic == 0.0);
  CHECK(r.p_value == 1.0);
  CHECK(r.dof == 3);
}

TEST_CASE("chi-square rejects misplaced mass") {
  const std::vector<double> probs{0.98, 0.01, 0.01};
  const std::vector<double> obs{0, 0, 1000};
  CHECK(chi2_counts(obs, probs).p_value < 1e-12);
}

TEST_CASE("chi-square pools small cells") {
  const std::vector<double> probs{0.5, 0.499, 0.0005, 0.0005};
  const std::vector<double> obs{500, 499, 1, 0};
  const Chi2Result r = chi2_counts(obs, probs);
  CHECK(r.merged_bins == 2);
  CHECK(r.dof == 1);
}

TEST_CASE("chi-square degenerate inputs") {
  const std::vector<double> probs{0.5, 0.5};
  CHECK_THROWS_AS(chi2_counts(std::vector<double>{0, 0}, probs), degenerate_error);
  CHECK_THROWS_AS(chi2_counts(std::vector<double>{1, 2, 3}, probs), domain_error);
  CHECK_THROWS_AS(chi2_counts(std::vector<double>{10}, std::vector<double>{1.0}), degenerate_error);
}

TEST_CASE("chi2_2d p-values over repeated seeds") {
  const std::vector<double> edges{0.0, 0.25, 0.5, 0.75, 1.0};
  // Bin masses for the density 4xy on the unit square; no remainder.
  std::vector<double> expected;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const auto sq = [](double a, double b) { return b * b - a * a; };
      expected.push_back(sq(edges[i], edges[i + 1]) * sq(edges[j], edges[j + 1]));
    }
  }
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CounterStream rng(seed, 0);
    std::vector<double> xs;
    std::vector<double> ys;
    for (int k = 0; k < 2000; ++k) {
      xs.push_back(std::sqrt(rng.uniform()));
      ys.push_back(std::sqrt(rng.uniform()));
    }
    ok += chi2_2d(xs, ys, edges, edges, expected).p_value > 0.001 ? 1 : 0;
  }
  CHECK(ok >= 99);
}

TEST_CASE("chi2_2d routes outside samples to the remainder") {
  const std::vector<double> edges{0.0, 1.0, 2.0};
  const std::vector<double> expected{0.25, 0.25, 0.25, 0.15};  // remainder 0.1
  std::vector<double> xs;
  std::vector<double> ys;
  for (int k = 0; k < 25; ++k) xs.push_back(0.5), ys.push_back(0.5);
  for (int k = 0; k < 25; ++k) xs.push_back(0.5), ys.push_back(1.5);
  for (int k = 0; k < 25; ++k) xs.push_back(1.5), ys.push_back(0.5);
  for (int k = 0; k < 15; ++k) xs.push_back(1.5), ys.push_back(1.5);
  for (int k = 0; k < 10; ++k) xs.push_back(7.0), ys.push_back(-1.0);
  CHECK_THAT(chi2_2d(xs, ys, edges, edges, expected).statistic, WithinAbs(0.0, 1e-12));
  CHECK_THROWS_AS(chi2_2d(xs, ys, edges, edges, std::vector<double>{0.6, 0.6, 0.0, 0.0}), domain_error);
}

TEST_CASE("quadrature mass") {
  const auto unit = VelocityProfile::constant(1.0);
  CHECK_THAT(quadrature_mass(density_epd(unit, 1.0, 2.0)), WithinAbs(1.0, 1e-10));
  CHECK_THAT(quadrature_mass(density_symmetric(unit, 2.0, 1.5)), WithinAbs(1.0, 1e-6));
  for (const double lambda : {0.5, 2.0}) {
    const auto m = density_tanh(unit, lambda, 1.0);
    CHECK_THAT(ac_mass(m), WithinAbs(1.0 - 1.0 / std::cosh(lambda), 1e-6));
  }
  DensityModel1D bare;
  bare.ac = [](double) { return 1.0; };
  bare.lo = 0.0;
  bare.hi = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(quadrature_mass(bare), divergence_error);
  bare.hi = 0.5;
  CHECK_THAT(quadrature_mass(bare), WithinAbs(0.5, 1e-13));
}

TEST_CASE("residual of the classical telegraph law converges at second order") {
  const auto unit = VelocityProfile::constant(1.0);
  const double lambda = 1.5;
  const auto u = [&](double x, double t) { return density_symmetric(unit, lambda, t).pdf(x); };
  ResidualGrid g{-0.4, 0.4, 0, 0, 0.8, 1.2};
  g.h = 1e-2;
  const double r1 = pde_residual_grid(u, eq::Telegraph{lambda, unit}, g);
  g.h = 5e-3;
  const double r2 = pde_residual_grid(u, eq::Telegraph{lambda, unit}, g);
  CHECK_THAT(r1 / r2, WithinAbs(4.0, 0.8));
  CHECK(observed_order(r1, r2) >= 1.8);
}

TEST_CASE("residual of the EPD law with alpha = 2") {
  const auto unit = VelocityProfile::constant(1.0);
  const auto u = [&](double x, double t) { return density_epd(unit, 2.0, t).pdf(x); };
  ResidualGrid g{-0.4, 0.4, 0, 0, 0.8, 1.2};
  g.h = 1e-2;
  const double r1 = pde_residual_grid(u, eq::Epd{2.0, unit}, g);
  g.h = 5e-3;
  const double r2 = pde_residual_grid(u, eq::Epd{2.0, unit}, g);
  CHECK(observed_order(r1, r2) >= 1.8);
}

TEST_CASE("d'Alembert solution of the undamped planar wave") {
  const auto unit = VelocityProfile::constant(1.0);
  const auto f = [](double s) { return std::exp(-s * s); };
  const auto u = [&](double x, double y, double t) { return f(x - t) + f(x + t) + 0.0 * y; };
  ResidualGrid g{-1.0, 1.0, -1.0, 1.0, 0.5, 1.5};
  g.check_cone = false;
  g.nodes = 7;
  // Equal stencils in t and x cancel the truncation error exactly, so only
  // the C h^2 bound is checked.
  for (const double h : {1e-2, 5e-3}) {
    g.h = h;
    CHECK(pde_residual_grid_2d(u, eq::DampedWave2D{0.0, unit, unit}, g) <= h * h);
  }
}

TEST_CASE("planar law satisfies the damped wave equation") {
  const auto p = profiles::sqrt1px2();
  const double lambda = 0.9;
  const auto u = [&](double x, double y, double t) { return density_planar({p, p, lambda, t}, x, y); };
  ResidualGrid g{-0.3, 0.3, -0.3, 0.3, 1.0, 1.2};
  g.density_form = true;
  g.nodes = 5;
  g.h = 1e-2;
  const double r1 = pde_residual_grid_2d(u, eq::DampedWave2D{lambda, p, p}, g);
  g.h = 5e-3;
  const double r2 = pde_residual_grid_2d(u, eq::DampedWave2D{lambda, p, p}, g);
  INFO("residuals " << r1 << " " << r2);
  CHECK(observed_order(r1, r2) >= 1.8);
}

TEST_CASE("residual grid guards") {
  const auto unit = VelocityProfile::constant(1.0);
  const auto u = [&](double x, double t) { return density_symmetric(unit, 1.0, t).pdf(x); };
  ResidualGrid near{0.0, 0.95, 0, 0, 0.9, 1.0};
  CHECK_THROWS_AS(pde_residual_grid(u, eq::Telegraph{1.0, unit}, near), domain_violation_error);
  ResidualGrid early{0.0, 0.0, 0, 0, 0.0, 1.0};
  CHECK_THROWS_AS(pde_residual_grid(u, eq::Telegraph{1.0, unit}, early), domain_violation_error);
}

TEST_CASE("negative controls") {
  const auto unit = VelocityProfile::constant(1.0);
  const PathBatch b = simulate_symmetric(unit, RateFunction::constant(1.0), 1.0, 50'000, 4);
  const TabulatedCdf wrong(density_tanh(unit, 1.0, 1.0));
  CHECK(ks_statistic(b.positions, wrong.as_cdf()) > 0.02);

  // The wrong damping leaves an O(1) residual.
  const auto u = [&](double x, double t) { return density_symmetric(unit, 1.0, t).pdf(x); };
  ResidualGrid g{-0.4, 0.4, 0, 0, 0.8, 1.2};
  g.h = 5e-3;
  CHECK(pde_residual_grid(u, eq::Telegraph{1.3, unit}, g) > 1e-2);
}

TEST_CASE("Grunwald-Letnikov reproduces integer derivatives") {
  const auto f = [](double t) { return t * t * t; };
  CHECK_THAT(grunwald_letnikov(f, 1.0, 2.0, 1e-4), WithinRel(12.0, 1e-3));
  CHECK_THAT(grunwald_letnikov(f, 2.0, 2.0, 1e-4), WithinRel(12.0, 1e-3));
  CHECK_THROWS_AS(grunwald_letnikov(f, 0.5, 1.0, 2.0), domain_error);
}

TEST_CASE("validation reports serialize") {
  const auto r = ValidationReport::upper("x", 0.5, 1.0, 7, 100, "note");
  CHECK(r.passed);
  const auto j = r.to_json();
  CHECK(j["name"] == "x");
  CHECK(j["seed"] == 7);
  CHECK(j["passed"] == true);
  CHECK_FALSE(ValidationReport::lower("p", 0.001, 0.01).passed);
  CHECK(j.dump() == ValidationReport::upper("x", 0.5, 1.0, 7, 100, "note").to_json().dump());
}
