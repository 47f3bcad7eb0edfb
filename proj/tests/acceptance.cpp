// Acceptance run: every criterion at full scale (10^6 paths), one line each.
// Usage: acceptance [--paths N] [--seed S] [--json FILE]

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "telegraph/suites.hpp"

#ifndef TELEGRAPH_CLI_PATH
#define TELEGRAPH_CLI_PATH ""
#endif

int main(int argc, char** argv) {
  using namespace telegraph;
  suites::SuiteOptions opt;
  opt.cli_path = TELEGRAPH_CLI_PATH;
  opt.scratch_dir = std::filesystem::temp_directory_path().string();
  std::string json_path;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (std::strcmp(argv[i], "--paths") == 0) {
      opt.paths = std::stoull(argv[i + 1]);
    } else if (std::strcmp(argv[i], "--seed") == 0) {
      opt.seed = std::stoull(argv[i + 1]);
    } else if (std::strcmp(argv[i], "--json") == 0) {
      json_path = argv[i + 1];
    } else {
      std::cerr << "unknown argument " << argv[i] << '\n';
      return 2;
    }
  }

  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  int failed = 0;
  for (const auto& suite : suites::all_suites()) {
    std::vector<harness::ValidationReport> reports;
    std::string error;
    try {
      reports = suite.run(opt);
    } catch (const std::exception& e) {
      error = e.what();
    }
    bool ok = error.empty() && !reports.empty();
    for (const auto& r : reports) {
      ok = ok && r.passed;
      all.push_back(r.to_json());
    }
    failed += ok ? 0 : 1;
    std::cout << "criterion " << suite.id << " [" << suite.name << "]: " << (ok ? "PASS" : "FAIL") << " - "
              << suite.summary << '\n';
    for (const auto& r : reports) {
      std::cout << "    " << (r.passed ? "ok   " : "FAIL ") << r.name << " = " << format_double(r.statistic)
                << " (threshold " << format_double(r.threshold) << ")\n";
    }
    if (!error.empty()) std::cout << "    error: " << error << '\n';
  }
  if (!json_path.empty()) std::ofstream(json_path) << all.dump(2) << '\n';
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
  return failed == 0 ? 0 : 1;
}
