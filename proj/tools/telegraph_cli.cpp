// telegraph: simulate, evaluate and verify finite-velocity random motions.
//
// Exit status: 0 success, 1 validation failure, 2 usage error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "telegraph/telegraph.hpp"

namespace {

using namespace telegraph;
using json = nlohmann::ordered_json;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<std::string> profile;
  std::optional<std::string> profile_y;
  std::optional<std::string> rate;
  std::optional<double> lambda;
  std::optional<double> lambda1;
  std::optional<double> lambda2;
  std::optional<double> alpha;
  std::optional<double> nu;
  std::optional<double> t;
  std::optional<std::size_t> paths;
  std::optional<std::uint64_t> seed;
  std::optional<double> grid;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> mode;
  std::optional<std::string> suite;
  std::optional<int> d;
  std::optional<int> n;
  std::optional<std::string> config;
  bool figure = false;
  bool all = false;
};

template <class T>
void fill(std::optional<T>& slot, const json& j, const char* key) {
  if (slot || !j.contains(key)) return;
  try {
    slot = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw usage_error(std::string("config key '") + key + "': " + e.what());
  }
}

// Values from --config fill whatever the flags left unset.
void merge_config(RunConfig& c) {
  if (!c.config) return;
  std::ifstream in(*c.config);
  if (!in) throw usage_error("cannot read config file " + *c.config);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw usage_error("config file is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) throw usage_error("config file must hold a JSON object");
  static const char* known[] = {"profile", "profile-y", "rate", "lambda", "lambda1", "lambda2", "alpha", "nu", "t",
                                "paths", "seed", "grid", "out", "format", "mode", "suite", "d", "n"};
  for (const auto& [key, _] : j.items()) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) == std::end(known)) {
      throw usage_error("unknown config key '" + key + "'");
    }
  }
  fill(c.profile, j, "profile");
  fill(c.profile_y, j, "profile-y");
  fill(c.rate, j, "rate");
  fill(c.lambda, j, "lambda");
  fill(c.lambda1, j, "lambda1");
  fill(c.lambda2, j, "lambda2");
  fill(c.alpha, j, "alpha");
  fill(c.nu, j, "nu");
  fill(c.t, j, "t");
  fill(c.paths, j, "paths");
  fill(c.seed, j, "seed");
  fill(c.grid, j, "grid");
  fill(c.out, j, "out");
  fill(c.format, j, "format");
  fill(c.mode, j, "mode");
  fill(c.suite, j, "suite");
  fill(c.d, j, "d");
  fill(c.n, j, "n");
}

template <class T>
const T& need(const std::optional<T>& v, const char* flag) {
  if (!v) throw usage_error(std::string("missing required option --") + flag);
  return *v;
}

double positive(const std::optional<double>& v, const char* flag) {
  const double x = need(v, flag);
  if (!(x > 0.0)) throw usage_error(std::string("--") + flag + " must be positive");
  return x;
}

std::string format_or(const RunConfig& c, const std::string& fallback, std::initializer_list<const char*> allowed) {
  const std::string f = c.format.value_or(fallback);
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  throw usage_error("unsupported --format '" + f + "' for this subcommand");
}

VelocityProfile profile_of(const std::optional<std::string>& spec) {
  return config::parse_profile(spec.value_or("constant:c=1"));
}

// Single writer: stdout or the --out file.
void emit(const RunConfig& c, const std::string& text) {
  if (!c.out || *c.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(*c.out, std::ios::binary);
  if (!f) throw usage_error("cannot write " + *c.out);
  f << text;
}

std::size_t path_count(const RunConfig& c) {
  const std::size_t n = need(c.paths, "paths");
  if (n == 0) throw usage_error("--paths must be positive");
  return n;
}

int simulate_1d(const RunConfig& c) {
  const VelocityProfile prof = profile_of(c.profile);
  const double t = positive(c.t, "t");
  const std::size_t n = path_count(c);
  const std::uint64_t seed = need(c.seed, "seed");
  const std::string fmt = format_or(c, "csv", {"csv", "json"});
  SimulationOptions opt;
  if (c.mode) {
    if (*c.mode == "rk4") {
      opt.mode = PathMode::rk4;
    } else if (*c.mode != "transformed") {
      throw usage_error("--mode must be transformed or rk4");
    }
  }
  PathBatch b;
  std::string kind;
  if (c.lambda1 || c.lambda2) {
    if (c.rate || c.lambda || c.alpha) throw usage_error("--lambda1/--lambda2 cannot be combined with another rate");
    if (opt.mode == PathMode::rk4) throw usage_error("--mode rk4 is only available for symmetric motions");
    b = simulate_asymmetric(prof, positive(c.lambda1, "lambda1"), positive(c.lambda2, "lambda2"), t, n, seed, opt);
    kind = "asymmetric";
  } else {
    const int given = (c.rate ? 1 : 0) + (c.lambda ? 1 : 0) + (c.alpha ? 1 : 0);
    if (given > 1) throw usage_error("give exactly one of --rate, --lambda, --alpha");
    RateFunction rate = RateFunction::constant(1.0);
    if (c.rate) {
      rate = config::parse_rate(*c.rate);
    } else if (c.lambda) {
      rate = RateFunction::constant(positive(c.lambda, "lambda"));
    } else if (c.alpha) {
      rate = RateFunction::epd(positive(c.alpha, "alpha"));
    } else {
      throw usage_error("simulate-1d needs --rate, --lambda, --alpha or --lambda1/--lambda2");
    }
    b = simulate_symmetric(prof, rate, t, n, seed, opt);
    kind = rate.describe();
  }
  std::ostringstream os;
  if (fmt == "csv") {
    io::write_paths_csv(os, b);
  } else {
    json j;
    j["profile"] = prof.describe();
    j["motion"] = kind;
    j["t"] = t;
    j["seed"] = seed;
    j["x"] = b.positions;
    j["n_events"] = b.event_counts;
    std::vector<int> dirs(b.direction_at_t.begin(), b.direction_at_t.end());
    j["direction"] = dirs;
    os << j.dump() << '\n';
  }
  emit(c, os.str());
  return 0;
}

PlanarMotionSpec planar_spec(const RunConfig& c) {
  const VelocityProfile px = profile_of(c.profile);
  const VelocityProfile py = c.profile_y ? config::parse_profile(*c.profile_y) : px;
  PlanarMotionSpec spec{px, py, c.lambda ? positive(c.lambda, "lambda") : 1.0, positive(c.t, "t")};
  spec.validate();
  return spec;
}

int simulate_planar_cmd(const RunConfig& c) {
  const PlanarMotionSpec spec = planar_spec(c);
  format_or(c, "csv", {"csv"});
  const PlanarBatch b = simulate_planar(spec, path_count(c), need(c.seed, "seed"));
  std::ostringstream os;
  io::write_planar_csv(os, b);
  emit(c, os.str());
  return 0;
}

int density_cmd(const RunConfig& c) {
  const std::string fmt = format_or(c, "csv", {"csv", "json"});
  const int points = static_cast<int>(c.grid.value_or(201.0));
  if (points < 2) throw usage_error("--grid must be at least 2 points");
  std::ostringstream os;
  if (c.profile_y) {
    if (fmt != "csv") throw usage_error("planar density is written as CSV only");
    const PlanarMotionSpec spec = planar_spec(c);
    const auto xs = io::grid(spec.profile_x.phi_inverse(-spec.t), spec.profile_x.phi_inverse(spec.t), points);
    const auto ys = io::grid(spec.profile_y.phi_inverse(-spec.t), spec.profile_y.phi_inverse(spec.t), points);
    io::write_planar_density_csv(os, spec, xs, ys);
    emit(c, os.str());
    return 0;
  }
  const VelocityProfile prof = profile_of(c.profile);
  const double t = positive(c.t, "t");
  DensityModel1D m;
  if (c.nu) {
    m = fracepd::normalized_law_1d(*c.nu, t, prof);
  } else if (c.rate) {
    const RateFunction r = config::parse_rate(*c.rate);
    switch (r.kind()) {
      case RateKind::constant: m = density_symmetric(prof, r.parameter(), t); break;
      case RateKind::tanh: m = density_tanh(prof, r.parameter(), t); break;
      case RateKind::coth: m = density_coth(prof, r.parameter(), t); break;
      case RateKind::epd: m = density_epd(prof, r.parameter(), t); break;
    }
  } else if (c.lambda) {
    m = density_symmetric(prof, positive(c.lambda, "lambda"), t);
  } else if (c.alpha) {
    m = density_epd(prof, positive(c.alpha, "alpha"), t);
  } else {
    throw usage_error("density needs --rate, --lambda, --alpha, --nu or --profile-y");
  }
  if (!std::isfinite(m.lo) || !std::isfinite(m.hi)) throw usage_error("density support is unbounded");
  const auto xs = io::grid(m.lo, m.hi, points, true);
  if (fmt == "csv") {
    io::write_density_csv(os, m, xs);
  } else {
    json j = io::density_header(m);
    std::vector<double> pdf;
    for (const double x : xs) pdf.push_back(m.pdf(x));
    j["x"] = xs;
    j["pdf"] = pdf;
    os << j.dump() << '\n';
  }
  emit(c, os.str());
  return 0;
}

int support_cmd(const RunConfig& c) {
  const std::string fmt = format_or(c, "svg", {"csv", "svg"});
  if (c.figure) {
    if (fmt != "svg") throw usage_error("--figure is rendered as SVG only");
    emit(c, io::figure_family_svg(512, c.seed.value_or(1)));
    return 0;
  }
  const PlanarMotionSpec spec = planar_spec(c);
  const int m = static_cast<int>(c.grid.value_or(256.0));
  const auto pts = boundary_polyline(spec, m);
  std::ostringstream os;
  if (fmt == "csv") {
    io::write_polyline_csv(os, pts);
  } else {
    os << io::svg_document({io::boundary_layer(pts, "#c0392b", spec.profile_x.describe() + " x " +
                                                                spec.profile_y.describe())});
  }
  emit(c, os.str());
  return 0;
}

int verify_cmd(const RunConfig& c, const std::string& self) {
  suites::SuiteOptions o;
  if (c.paths) o.paths = path_count(c);
  if (c.seed) o.seed = *c.seed;
  o.scratch_dir = std::filesystem::temp_directory_path().string();
  o.cli_path = self;
  const std::string name = c.suite.value_or("all");
  std::vector<const suites::Suite*> chosen;
  if (name == "all") {
    for (const auto& s : suites::all_suites()) chosen.push_back(&s);
  } else if (const auto* s = suites::find_suite(name)) {
    chosen.push_back(s);
  } else {
    throw usage_error("unknown suite '" + name + "'");
  }
  json reports = json::array();
  bool ok = true;
  for (const auto* s : chosen) {
    bool suite_ok = true;
    for (const auto& r : s->run(o)) {
      suite_ok = suite_ok && r.passed;
      reports.push_back(r.to_json());
      std::cerr << (r.passed ? "  pass " : "  FAIL ") << r.name << " = " << format_double(r.statistic)
                << " (threshold " << format_double(r.threshold) << ")\n";
    }
    std::cerr << (suite_ok ? "PASS " : "FAIL ") << s->name << '\n';
    ok = ok && suite_ok;
  }
  emit(c, reports.dump(2) + "\n");
  return ok ? 0 : 1;
}

int scan_nu_cmd(const RunConfig& c) {
  format_or(c, "csv", {"csv"});
  const double step = c.grid.value_or(0.05);
  const auto pts = fracepd::scan_grid(c.d.value_or(1), c.n.value_or(1), step, !c.all);
  std::ostringstream os;
  io::write_scan_csv(os, pts);
  emit(c, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-velocity random motions with space-varying speed"};
  app.require_subcommand(1);
  RunConfig c;

  const auto common = [&c](CLI::App* s) {
    s->add_option("--config", c.config, "JSON file with option values; flags take precedence");
    s->add_option("--out", c.out, "output file (default stdout)");
    s->add_option("--format", c.format, "output format");
  };
  const auto motion = [&c](CLI::App* s) {
    s->add_option("--profile", c.profile, "speed profile, e.g. power:gamma=0.5,scale=1");
    s->add_option("--t", c.t, "time horizon");
  };

  auto* sim1 = app.add_subcommand("simulate-1d", "simulate 1-d paths (PathBatch CSV)");
  common(sim1);
  motion(sim1);
  sim1->add_option("--rate", c.rate, "rate, e.g. rate:tanh:lambda=1");
  sim1->add_option("--lambda", c.lambda, "constant rate");
  sim1->add_option("--lambda1", c.lambda1, "rate while moving forward");
  sim1->add_option("--lambda2", c.lambda2, "rate while moving backward");
  sim1->add_option("--alpha", c.alpha, "EPD rate alpha / t");
  sim1->add_option("--paths", c.paths, "number of paths");
  sim1->add_option("--seed", c.seed, "seed (required)");
  sim1->add_option("--mode", c.mode, "transformed (default) or rk4");

  auto* sim2 = app.add_subcommand("simulate-planar", "simulate planar motions (PlanarBatch CSV)");
  common(sim2);
  motion(sim2);
  sim2->add_option("--profile-y", c.profile_y, "speed profile of the y axis (default: --profile)");
  sim2->add_option("--lambda", c.lambda, "switching rate");
  sim2->add_option("--paths", c.paths, "number of paths");
  sim2->add_option("--seed", c.seed, "seed (required)");

  auto* dens = app.add_subcommand("density", "evaluate a law on a grid");
  common(dens);
  motion(dens);
  dens->add_option("--profile-y", c.profile_y, "planar density with this y profile");
  dens->add_option("--rate", c.rate, "rate kind selects the law");
  dens->add_option("--lambda", c.lambda, "constant rate");
  dens->add_option("--alpha", c.alpha, "EPD law");
  dens->add_option("--nu", c.nu, "normalized fractional EPD law");
  dens->add_option("--grid", c.grid, "points per axis (default 201)");

  auto* sup = app.add_subcommand("support", "support boundary as CSV or SVG");
  common(sup);
  motion(sup);
  sup->add_option("--profile-y", c.profile_y, "speed profile of the y axis (default: --profile)");
  sup->add_option("--grid", c.grid, "polyline points (default 256)");
  sup->add_flag("--figure", c.figure, "superellipse family n in {2/3, 3/2, 2, 3} with astroid sample paths");
  sup->add_option("--seed", c.seed, "seed of the figure's sample paths");

  auto* ver = app.add_subcommand("verify", "run validation suites, JSON reports");
  common(ver);
  ver->add_option("--suite", c.suite, "suite name or number, or all");
  ver->add_option("--paths", c.paths, "Monte Carlo paths (default 1000000)");
  ver->add_option("--seed", c.seed, "seed (default 20240601)");

  auto* scan = app.add_subcommand("scan-nu", "fractional EPD coefficients over a nu grid");
  common(scan);
  scan->add_option("--d", c.d, "dimension (default 1)");
  scan->add_option("--n", c.n, "spatial order (default 1)");
  scan->add_option("--grid", c.grid, "nu step (default 0.05)");
  scan->add_flag("--all", c.all, "include points with c2 <= 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    merge_config(c);
    if (sim1->parsed()) return simulate_1d(c);
    if (sim2->parsed()) return simulate_planar_cmd(c);
    if (dens->parsed()) return density_cmd(c);
    if (sup->parsed()) return support_cmd(c);
    if (ver->parsed()) return verify_cmd(c, std::filesystem::absolute(argv[0]).string());
    if (scan->parsed()) return scan_nu_cmd(c);
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const config::parse_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const telegraph::domain_error& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return 2;
  } catch (const telegraph::range_error& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
