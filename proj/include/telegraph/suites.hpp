#pragma once

// Named validation suites. Each suite returns ValidationReports; a suite
// passes when every report passes. Shared by `telegraph verify` and the
// acceptance binary.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "telegraph/format.hpp"
#include "telegraph/fracepd.hpp"
#include "telegraph/harness.hpp"
#include "telegraph/io.hpp"
#include "telegraph/planar.hpp"
#include "telegraph/rates.hpp"
#include "telegraph/rng.hpp"
#include "telegraph/telegraph1d.hpp"
#include "telegraph/velocity.hpp"

namespace telegraph::suites {

using harness::ValidationReport;

struct SuiteOptions {
  std::size_t paths = 1'000'000;
  std::uint64_t seed = 20240601;
  unsigned workers = default_workers();
  std::string cli_path;  // when set, determinism is also checked through the CLI
  std::string scratch_dir = ".";
};

struct Suite {
  int id;
  std::string name;
  std::string summary;
  std::function<std::vector<ValidationReport>(const SuiteOptions&)> run;
};

namespace detail {

using clock = std::chrono::steady_clock;

inline double seconds_since(clock::time_point start) {
  return std::chrono::duration<double>(clock::now() - start).count();
}

inline std::vector<double> ac_positions(const PathBatch& b) {
  std::vector<double> out;
  out.reserve(b.positions.size());
  for (std::size_t i = 0; i < b.positions.size(); ++i) {
    if (b.event_counts[i] > 0) out.push_back(b.positions[i]);
  }
  return out;
}

inline double zero_event_fraction(const PathBatch& b) {
  std::size_t k = 0;
  for (const auto c : b.event_counts) k += (c == 0);
  return static_cast<double>(k) / static_cast<double>(b.event_counts.size());
}

// |observed - p| in units of the binomial standard deviation.
inline double z_score(double observed, double p, std::size_t n) {
  return std::abs(observed - p) / std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

inline std::string fmt(double v) { return format_double(v); }

}  // namespace detail

// 1. Constant-speed telegraph process against its explicit law.
inline std::vector<ValidationReport> classical(const SuiteOptions& o) {
  const auto start = detail::clock::now();
  const auto prof = VelocityProfile::constant(1.0);
  const PathBatch b = simulate_symmetric(prof, RateFunction::constant(1.0), 1.0, o.paths, o.seed, {o.workers});
  const DensityModel1D law = density_symmetric(prof, 1.0, 1.0);
  const harness::TabulatedCdf cdf(law, true);
  const double ks = harness::ks_statistic(detail::ac_positions(b), cdf.as_cdf());
  const double frac = detail::zero_event_fraction(b);
  double off_end = 0.0;
  for (std::size_t i = 0; i < b.positions.size(); ++i) {
    if (b.event_counts[i] == 0) off_end = std::max(off_end, std::abs(std::abs(b.positions[i]) - 1.0));
  }
  const double elapsed = detail::seconds_since(start);
  return {
      ValidationReport::upper("classical.ks_ac", ks, 0.005, o.seed, o.paths, "KS of paths with >= 1 switch"),
      ValidationReport::upper("classical.atom_fraction_sigma", detail::z_score(frac, std::exp(-1.0), o.paths), 3.0,
                              o.seed, o.paths, "zero-switch fraction " + detail::fmt(frac) + " vs e^-1"),
      ValidationReport::upper("classical.atoms_on_cone_ends", off_end, 1e-12, o.seed, o.paths),
      ValidationReport::upper("classical.runtime_s", elapsed, 60.0, o.seed, o.paths),
  };
}

// 2. Power speed |x|^{1/2}: all positions inside the deformed cone [-1, 1].
inline std::vector<ValidationReport> cone(const SuiteOptions& o) {
  const double gamma = 0.5;
  const double t = 2.0;
  const auto prof = VelocityProfile::power(gamma, 1.0);
  const double end = std::pow((1.0 - gamma) * t, 1.0 / (1.0 - gamma));
  const PathBatch b = simulate_symmetric(prof, RateFunction::constant(1.0), t, o.paths, o.seed, {o.workers});
  std::size_t violations = 0;
  for (const double x : b.positions) violations += (std::abs(x) > end + 1e-9);
  const Cone c = prof.cone_endpoints(t);
  const double endpoint_err = std::max(std::abs(c.hi - end), std::abs(c.lo + end));
  return {
      ValidationReport::upper("cone.violations", static_cast<double>(violations), 0.0, o.seed, o.paths,
                              "cone [-" + detail::fmt(end) + ", " + detail::fmt(end) + "]"),
      ValidationReport::upper("cone.endpoint_formula", endpoint_err, 1e-12),
  };
}

// 3. Rates lambda tanh(lambda t) and lambda coth(lambda t).
inline std::vector<ValidationReport> tanh_coth(const SuiteOptions& o) {
  std::vector<ValidationReport> out;
  const double lambda = 1.0;
  const double t = 1.0;
  const auto unit = VelocityProfile::constant(1.0);
  const PathBatch tb = simulate_symmetric(unit, RateFunction::tanh(lambda), t, o.paths, o.seed, {o.workers});
  const double sech = 1.0 / std::cosh(lambda * t);
  out.push_back(ValidationReport::upper("tanh.zero_event_sigma",
                                        detail::z_score(detail::zero_event_fraction(tb), sech, o.paths), 3.0, o.seed,
                                        o.paths, "target 1/cosh(lambda t) = " + detail::fmt(sech)));
  {
    const harness::TabulatedCdf cdf(density_tanh(unit, lambda, t), true);
    out.push_back(ValidationReport::upper("tanh.ks_ac", harness::ks_statistic(detail::ac_positions(tb), cdf.as_cdf()),
                                          0.005, o.seed, o.paths));
  }
  {
    const PathBatch cb = simulate_symmetric(unit, RateFunction::coth(lambda), t, o.paths, o.seed + 1, {o.workers});
    const harness::TabulatedCdf cdf(density_coth(unit, lambda, t));
    out.push_back(ValidationReport::upper("coth.ks", harness::ks_statistic(cb.positions, cdf.as_cdf()), 0.005,
                                          o.seed + 1, o.paths));
  }
  for (const auto& prof : {unit, VelocityProfile::power(0.5, 1.0)}) {
    const std::string tag = "[" + prof.describe() + "]";
    const DensityModel1D th = density_tanh(prof, lambda, t);
    const double ac = harness::ac_mass(th);
    out.push_back(ValidationReport::upper("tanh.mass_balance" + tag, std::abs(ac + th.atom_mass() - 1.0), 1e-6));
    out.push_back(ValidationReport::upper("tanh.ac_mass" + tag, std::abs(ac - (1.0 - sech)), 1e-6));
    const DensityModel1D ct = density_coth(prof, lambda, t);
    out.push_back(ValidationReport::upper("coth.atoms" + tag, static_cast<double>(ct.atoms.size()), 0.0));
    out.push_back(ValidationReport::upper("coth.mass" + tag, std::abs(harness::quadrature_mass(ct) - 1.0), 1e-6));
  }
  return out;
}

// 4. lambda' + lambda^2 is constant for the tanh and coth rates.
inline std::vector<ValidationReport> riccati(const SuiteOptions&) {
  std::vector<ValidationReport> out;
  for (const auto& rate : {RateFunction::tanh(1.0), RateFunction::coth(1.0), RateFunction::tanh(0.7),
                           RateFunction::coth(1.3)}) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const int m = 2000;
    for (int k = 0; k <= m; ++k) {
      const double t = 0.1 * std::pow(100.0, static_cast<double>(k) / m);
      const double v = rate.riccati_terms(t);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    out.push_back(ValidationReport::upper("riccati.spread[" + rate.describe() + "]", hi - lo, 1e-12, 0, m + 1,
                                          "value " + detail::fmt(hi)));
  }
  return out;
}

// 5. Euler-Poisson-Darboux law.
inline std::vector<ValidationReport> epd(const SuiteOptions&) {
  std::vector<ValidationReport> out;
  const auto unit = VelocityProfile::constant(1.0);
  double uniform_err = 0.0;
  for (const double t : {0.5, 1.0, 2.0}) {
    const DensityModel1D m = density_epd(unit, 1.0, t);
    for (int k = 1; k < 200; ++k) {
      const double x = -t + 2.0 * t * k / 200.0;
      uniform_err = std::max(uniform_err, std::abs(m.pdf(x) * 2.0 * t - 1.0));
    }
  }
  out.push_back(ValidationReport::upper("epd.alpha1_uniform", uniform_err, 4.0 * std::numeric_limits<double>::epsilon(),
                                        0, 597, "relative deviation from 1/(2t)"));
  for (const auto& prof : {unit, VelocityProfile::power(0.5, 1.0)}) {
    for (const double alpha : {0.5, 1.0, 2.5}) {
      const double mass = harness::quadrature_mass(density_epd(prof, alpha, 1.5));
      out.push_back(ValidationReport::upper("epd.mass[alpha=" + detail::fmt(alpha) + "," + prof.describe() + "]",
                                            std::abs(mass - 1.0), 1e-6));
    }
  }
  // Residual order: the density under the adjoint operator, and g(Phi(x), t)
  // = c(x) pdf(x) under c d/dx(c d/dx .); both coincide for constant c.
  struct Case {
    double alpha;
    VelocityProfile prof;
    harness::ResidualGrid box;
    bool density_form;
  };
  const auto power = VelocityProfile::power(0.5, 1.0);
  const std::vector<Case> cases = {
      {2.0, unit, {-0.3, 0.3, 0, 0, 0.8, 1.2}, false},
      {2.5, unit, {-0.3, 0.3, 0, 0, 0.8, 1.2}, false},
      {2.0, power, {0.05, 0.2, 0, 0, 1.2, 1.6}, true},
      {2.5, power, {0.05, 0.2, 0, 0, 1.2, 1.6}, true},
      {2.5, power, {0.05, 0.2, 0, 0, 1.2, 1.6}, false},
  };
  for (const auto& c : cases) {
    const auto u = [&](double x, double t) {
      const double v = density_epd(c.prof, c.alpha, t).pdf(x);
      return c.density_form ? v : v * c.prof.speed(x);
    };
    auto g1 = c.box;
    g1.h = 1e-2;
    g1.density_form = c.density_form;
    auto g2 = g1;
    g2.h = 5e-3;
    const harness::eq::Epd e{c.alpha, c.prof};
    const double r1 = harness::pde_residual_grid(u, e, g1);
    const double r2 = harness::pde_residual_grid(u, e, g2);
    out.push_back(ValidationReport::upper("epd.residual_ratio[alpha=" + detail::fmt(c.alpha) + "," +
                                              c.prof.describe() + (c.density_form ? ",density" : ",reduced") + "]",
                                          std::abs(r1 / r2 - 4.0), 0.8, 0,
                                          static_cast<std::uint64_t>(g1.nodes * g1.nodes),
                                          "residuals " + detail::fmt(r1) + " -> " + detail::fmt(r2) + ", ratio " +
                                              detail::fmt(r1 / r2)));
  }
  return out;
}

// 6. Time-fractional EPD equation and its parabolic solutions.
inline std::vector<ValidationReport> fractional_epd(const SuiteOptions&) {
  const auto start = detail::clock::now();
  std::vector<ValidationReport> out;
  double worst = 0.0;
  std::uint64_t points = 0;
  for (int d = 1; d <= 3; ++d) {
    for (int n = 1; n <= 2; ++n) {
      for (const auto& sp : fracepd::scan_grid(d, n, 0.05, false)) {
        const auto r = fracepd::residual_coefficients(fracepd::make_params(sp.nu, d, n));
        worst = std::max({worst, std::abs(r.power3) / r.scale3, std::abs(r.power5) / r.scale5});
        ++points;
      }
    }
  }
  out.push_back(ValidationReport::upper("fracepd.residual_coefficients", worst, 1e-10, 0, points,
                                        "max relative coefficient over nu grid x d x n"));

  // Grunwald-Letnikov: derivatives taken numerically on the solution itself.
  double gl_worst = 0.0;
  std::string gl_notes;
  for (const double nu : {0.05, 0.1, 0.15}) {
    for (const int d : {1, 2}) {
      const fracepd::Params p = fracepd::make_params(nu, d, 1);
      const std::vector<double> x = d == 1 ? std::vector<double>{0.5} : std::vector<double>{0.3, 0.4};
      const double s = fracepd::spatial_sum(p, x);
      const auto u = [&](double t) { return std::pow(t, -nu) - p.c2 * s * std::pow(t, -3.0 * nu); };
      const double t = 1.0;
      const double h = 1e-5;
      const double lhs = harness::grunwald_letnikov(u, 2.0 * nu, t, h) +
                         p.c1 * std::pow(t, -nu) * harness::grunwald_letnikov(u, nu, t, h);
      const double rhs = -p.c2 * 2.0 * d * std::pow(t, -3.0 * nu);
      const double rel = std::abs(lhs - rhs) / std::abs(rhs);
      gl_worst = std::max(gl_worst, rel);
      gl_notes += "nu=" + detail::fmt(nu) + ",d=" + std::to_string(d) + ":" + detail::fmt(rel) + " ";
    }
  }
  out.push_back(ValidationReport::upper("fracepd.grunwald_letnikov", gl_worst, 1e-3, 0, 6, gl_notes));

  double analytic = 0.0;
  double quad = 0.0;
  std::uint64_t laws = 0;
  for (const auto& sp : fracepd::scan_nu(1, 1, 0.05)) {
    const fracepd::Params p = fracepd::make_params(sp.nu, 1, 1);
    analytic = std::max(analytic, std::abs(*p.normalizer * 4.0 / (3.0 * std::sqrt(p.c2)) - 1.0));
    for (const double t : {0.5, 1.0, 2.0}) {
      quad = std::max(quad, std::abs(harness::quadrature_mass(fracepd::normalized_law_1d(sp.nu, t)) - 1.0));
      ++laws;
    }
  }
  out.push_back(ValidationReport::upper("fracepd.normalized_mass_analytic", analytic,
                                        4.0 * std::numeric_limits<double>::epsilon(), 0, laws / 3));
  out.push_back(ValidationReport::upper("fracepd.normalized_mass_quadrature", quad, 1e-10, 0, laws));
  out.push_back(ValidationReport::upper("fracepd.runtime_s", detail::seconds_since(start), 10.0));
  return out;
}

namespace detail {

// Polar quadrature of f(r) r dr dtheta over the disc of radius t, with the
// radial variable r = sqrt(t^2 - s^2) so that (t^2 - r^2)^{-1/2} edges are smooth.
inline double polar_mass(const std::function<double(double, double)>& density, double t) {
  const quad::Tolerance tol{1e-13, 1e-11, 20};
  const auto radial = [&](double theta) {
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    return quad::integrate(
        [&](double s) {
          const double r = std::sqrt(std::max(0.0, t * t - s * s));
          return density(r * c, r * sn) * s;
        },
        0.0, t, tol);
  };
  return quad::integrate(radial, 0.0, 2.0 * std::numbers::pi, tol);
}

}  // namespace detail

// 7. Planar motion with uniformly distributed directions.
inline std::vector<ValidationReport> planar(const SuiteOptions& o) {
  std::vector<ValidationReport> out;
  const auto unit = VelocityProfile::constant(1.0);
  const PlanarMotionSpec spec{unit, unit, 1.0, 1.0};
  const double ac = detail::polar_mass([&](double x, double y) { return density_planar(spec, x, y); }, spec.t);
  out.push_back(ValidationReport::upper("planar.ac_mass", std::abs(ac - (1.0 - std::exp(-spec.lambda * spec.t))), 1e-4,
                                        0, 0, "mass " + detail::fmt(ac)));

  const PlanarBatch b = simulate_planar(spec, o.paths, o.seed, o.workers);
  const harness::Chi2Result chi = harness::chi2_planar(spec, b, 50, 0.98);
  out.push_back(ValidationReport::lower("planar.chi2_p", chi.p_value, 0.01, o.seed, o.paths,
                                        "statistic " + detail::fmt(chi.statistic) + ", dof " + std::to_string(chi.dof)));

  const PlanarMotionSpec wide{unit, unit, 1.0, 1.5};
  double cond_worst = 0.0;
  for (int n = 1; n <= 6; ++n) {
    const double m = detail::polar_mass([&](double x, double y) { return conditional_density(wide, n, x, y); }, wide.t);
    cond_worst = std::max(cond_worst, std::abs(m - 1.0));
  }
  out.push_back(ValidationReport::upper("planar.conditional_masses", cond_worst, 1e-6, 0, 6));

  double mix_worst = 0.0;
  CounterStream rng(o.seed, 0xC0FFEE);
  for (const auto& s : {spec, PlanarMotionSpec{VelocityProfile::power(0.5, 1.0), VelocityProfile::power(0.5, 1.0), 1.3,
                                               1.2}}) {
    for (int k = 0; k < 20; ++k) {
      const double r = 0.95 * s.t * std::sqrt(rng.uniform());
      const double a = 2.0 * std::numbers::pi * rng.uniform();
      const double x = s.profile_x.phi_inverse(r * std::cos(a));
      const double y = s.profile_y.phi_inverse(r * std::sin(a));
      const double lt = s.lambda * s.t;
      double weight = std::exp(-lt);
      double sum = 0.0;
      for (int n = 1; n < 500; ++n) {
        weight *= lt / n;
        const double term = weight * conditional_density(s, n, x, y);
        sum += term;
        if (n > lt && term < 1e-12 * sum) break;
      }
      const double exact = density_planar(s, x, y);
      mix_worst = std::max(mix_worst, std::abs(sum - exact) / exact);
    }
  }
  out.push_back(ValidationReport::upper("planar.poisson_mixture", mix_worst, 1e-6, o.seed, 40, "relative"));

  double uniform_err = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double r = 0.99 * wide.t * k / 50.0;
    const double a = 0.7 * k;
    uniform_err = std::max(uniform_err, std::abs(conditional_density(wide, 2, r * std::cos(a), r * std::sin(a)) *
                                                     std::numbers::pi * wide.t * wide.t -
                                                 1.0));
  }
  out.push_back(ValidationReport::upper("planar.conditional_n2_uniform", uniform_err,
                                        2.0 * std::numeric_limits<double>::epsilon(), 0, 50));
  return out;
}

// 8. Support geometry and the superellipse figure.
inline std::vector<ValidationReport> geometry(const SuiteOptions&) {
  std::vector<ValidationReport> out;
  struct Case {
    std::string name;
    LameSupport lame;
  };
  for (const double t : {1.0, 2.5}) {
    const std::vector<Case> cases = {
        {"astroid", {2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, t}},
        {"ellipse", {0.0, 0.0, 1.0, 2.0, t}},
        {"circle", {0.0, 0.0, 1.5, 1.5, t}},
    };
    for (const auto& c : cases) {
      double err = 0.0;
      for (const auto& p : boundary_polyline(c.lame.motion(), 256)) {
        err = std::max(err, std::abs(c.lame.lame_value(p.x, p.y) - t * t));
      }
      out.push_back(ValidationReport::upper("geometry.lame[" + c.name + ",t=" + detail::fmt(t) + "]", err, 1e-9, 0, 256));
    }
    // The astroid in its classical form |x|^{2/3} + |y|^{2/3} = t^2.
    double astroid = 0.0;
    for (const auto& p : boundary_polyline(cases[0].lame.motion(), 256)) {
      astroid = std::max(astroid, std::abs(std::cbrt(p.x * p.x) + std::cbrt(p.y * p.y) - t * t));
    }
    out.push_back(ValidationReport::upper("geometry.astroid_form[t=" + detail::fmt(t) + "]", astroid, 1e-9, 0, 256));
  }

  double family = 0.0;
  for (const double n : io::figure_family_n) {
    for (const auto& p : boundary_polyline(io::figure_family_member(n), 512)) {
      family = std::max(family, std::abs(std::pow(std::abs(p.x), n) + std::pow(std::abs(p.y), n) - 1.0));
    }
  }
  out.push_back(ValidationReport::upper("geometry.figure_family_curves", family, 1e-9, 0, 4,
                                        "|x|^n + |y|^n = 1 for n in {2/3, 3/2, 2, 3}"));
  const std::string svg = io::figure_family_svg();
  const auto count = [&svg](std::string_view needle) {
    std::size_t k = 0;
    for (auto pos = svg.find(needle); pos != std::string::npos; pos = svg.find(needle, pos + 1)) ++k;
    return static_cast<double>(k);
  };
  out.push_back(ValidationReport::upper("geometry.svg_boundaries", std::abs(count("class=\"boundary\"") - 4.0), 0.0));
  out.push_back(ValidationReport::upper("geometry.svg_sample_paths", std::abs(count("class=\"path\"") - 4.0), 0.0));
  double outside = 0.0;
  const PlanarMotionSpec astroid = io::figure_family_member(2.0 / 3.0);
  for (const int changes : {0, 2, 3, 4}) {
    for (const auto& [x, y] : planar_trajectory(astroid, changes, 1)) {
      outside = std::max(outside, astroid.transformed_radius2(x, y) - astroid.t * astroid.t);
    }
  }
  out.push_back(ValidationReport::upper("geometry.sample_paths_inside", outside, 1e-9));
  return out;
}

// 9. Asymmetric rates.
inline std::vector<ValidationReport> asymmetric(const SuiteOptions& o) {
  std::vector<ValidationReport> out;
  for (const auto& prof : {VelocityProfile::constant(1.0), VelocityProfile::power(0.5, 1.0)}) {
    const std::uint64_t seed = o.seed + (prof.kind() == ProfileKind::constant ? 0 : 1);
    const PathBatch b = simulate_asymmetric(prof, 1.0, 1.0, 1.0, o.paths, seed, {o.workers});
    const harness::TabulatedCdf cdf(density_symmetric(prof, 1.0, 1.0));
    out.push_back(ValidationReport::upper("asymmetric.equal_rates_ks[" + prof.describe() + "]",
                                          harness::ks_statistic(b.positions, cdf.as_cdf()), 0.005, seed, o.paths,
                                          "against the symmetric law, atoms included"));
  }
  // p(x, t) = u(x', t') with u smooth: the drift operator applied to p must
  // equal (1 - B^2) times the classical operator applied to u.
  const double l1 = 3.0;
  const double l2 = 1.0;
  const double bcoef = lorentz_coefficient(l1, l2);
  const double sum = l1 + l2;
  const auto prof = VelocityProfile::power(0.5, 1.0);
  const auto u = [](double xp, double tp) { return std::exp(-xp * xp - tp * tp); };
  const auto p = [&](double x, double t) {
    const auto [xp, tp] = lorentz_transform(l1, l2, prof, x, t);
    return u(xp, tp);
  };
  const auto source = [&](double x, double t) {
    const auto [xp, tp] = lorentz_transform(l1, l2, prof, x, t);
    const double v = u(xp, tp);
    const double u_t = -2.0 * tp * v;
    const double u_tt = (4.0 * tp * tp - 2.0) * v;
    const double u_xx = (4.0 * xp * xp - 2.0) * v;
    return (1.0 - bcoef * bcoef) * (u_tt + sum * u_t - u_xx);
  };
  const harness::eq::TelegraphDrift e{l1, l2, prof};
  harness::ResidualGrid g1{0.1, 0.5, 0, 0, 0.5, 1.0};
  g1.check_cone = false;
  g1.h = 1e-2;
  auto g2 = g1;
  g2.h = 5e-3;
  const double r1 = harness::pde_residual_grid(p, e, g1, source);
  const double r2 = harness::pde_residual_grid(p, e, g2, source);
  out.push_back(ValidationReport::upper("asymmetric.lorentz_residual_ratio", std::abs(r1 / r2 - 4.0), 0.8, 0, 121,
                                        "residuals " + detail::fmt(r1) + " -> " + detail::fmt(r2) + ", ratio " +
                                            detail::fmt(r1 / r2)));
  auto g3 = g1;
  g3.h = 1e-3;
  out.push_back(ValidationReport::upper("asymmetric.lorentz_residual_h1e-3", harness::pde_residual_grid(p, e, g3, source),
                                        1e-4, 0, 121));
  return out;
}

namespace detail {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace detail

// 10. Bit-identical output under different worker counts.
inline std::vector<ValidationReport> determinism(const SuiteOptions& o) {
  std::vector<ValidationReport> out;
  const std::size_t n = std::min<std::size_t>(o.paths, 100'000);
  const auto prof = VelocityProfile::power(0.5, 1.0);
  const auto render_1d = [&](const std::function<PathBatch(unsigned)>& make, unsigned w) {
    std::ostringstream os;
    io::write_paths_csv(os, make(w));
    return os.str();
  };
  struct Case {
    std::string name;
    std::function<PathBatch(unsigned)> make;
  };
  const std::vector<Case> cases = {
      {"symmetric", [&](unsigned w) { return simulate_symmetric(prof, RateFunction::constant(1.0), 1.0, n, o.seed, {w}); }},
      {"tanh", [&](unsigned w) { return simulate_symmetric(prof, RateFunction::tanh(1.0), 1.0, n, o.seed, {w}); }},
      {"epd", [&](unsigned w) { return simulate_symmetric(prof, RateFunction::epd(1.5), 1.0, n, o.seed, {w}); }},
      {"asymmetric", [&](unsigned w) { return simulate_asymmetric(prof, 2.0, 1.0, 1.0, n, o.seed, {w}); }},
  };
  for (const auto& c : cases) {
    const std::string a = render_1d(c.make, 1);
    const std::string b = render_1d(c.make, 4);
    out.push_back(ValidationReport::upper("determinism.workers[" + c.name + "]", a == b ? 0.0 : 1.0, 0.0, o.seed, n));
  }
  {
    const PlanarMotionSpec spec{prof, prof, 1.0, 1.0};
    std::ostringstream a;
    std::ostringstream b;
    io::write_planar_csv(a, simulate_planar(spec, n, o.seed, 1));
    io::write_planar_csv(b, simulate_planar(spec, n, o.seed, 4));
    out.push_back(ValidationReport::upper("determinism.workers[planar]", a.str() == b.str() ? 0.0 : 1.0, 0.0, o.seed, n));
  }
  if (!o.cli_path.empty()) {
    const std::vector<std::string> commands = {
        "simulate-1d --profile power:gamma=0.5 --rate rate:constant:lambda=1 --t 1 --paths 20000",
        "simulate-1d --profile constant:c=1 --lambda1 2 --lambda2 1 --t 1 --paths 20000",
        "simulate-planar --profile power:gamma=0.5 --profile-y constant:c=2 --lambda 1 --t 1 --paths 20000",
    };
    int k = 0;
    for (const auto& cmd : commands) {
      std::string files[2];
      int status = 0;
      for (int w = 0; w < 2; ++w) {
        files[w] = o.scratch_dir + "/determinism_" + std::to_string(k) + "_" + std::to_string(w) + ".csv";
        const std::string line = "TELEGRAPH_WORKERS=" + std::string(w == 0 ? "1" : "3") + " \"" + o.cli_path + "\" " +
                                 cmd + " --seed " + std::to_string(o.seed) + " --out \"" + files[w] + "\"";
        status |= std::system(line.c_str());
      }
      const std::string a = detail::slurp(files[0]);
      const std::string b = detail::slurp(files[1]);
      const bool same = status == 0 && !a.empty() && a == b;
      out.push_back(ValidationReport::upper("determinism.cli[" + cmd.substr(0, cmd.find(' ')) + "#" +
                                                std::to_string(k) + "]",
                                            same ? 0.0 : 1.0, 0.0, o.seed, 20000, cmd));
      ++k;
    }
  }
  return out;
}

inline const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> suites = {
      {1, "classical", "constant-speed telegraph law, KS and boundary atoms", classical},
      {2, "cone", "power speed gamma=1/2: positions inside the deformed cone", cone},
      {3, "tanh-coth", "tanh/coth rate laws: atoms and mass balance", tanh_coth},
      {4, "riccati", "lambda' + lambda^2 constant for tanh/coth", riccati},
      {5, "epd", "Euler-Poisson-Darboux law: uniform case, mass, residual order", epd},
      {6, "fractional-epd", "fractional EPD coefficients, GL cross-check, normalized law", fractional_epd},
      {7, "planar", "planar law: mass, chi-square, conditional laws", planar},
      {8, "geometry", "Lame-curve supports and the superellipse figure", geometry},
      {9, "asymmetric", "equal-rate reduction and drift-removing transform", asymmetric},
      {10, "determinism", "identical output for any worker count", determinism},
  };
  return suites;
}

/// Suite by name or number; nullptr when unknown.
inline const Suite* find_suite(std::string_view key) {
  for (const auto& s : all_suites()) {
    if (s.name == key || std::to_string(s.id) == key) return &s;
  }
  return nullptr;
}

}  // namespace telegraph::suites
