#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "shiftedprime/config.hpp"

namespace shiftedprime::cli {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;

  bool pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"characters", "expsums", "majorarcs", "explicit"};
  return names;
}

/// Runs one invariant suite. `csv_out`, when given, receives the suite's row-level report.
SuiteResult run_suite(const std::string& name, const RunConfig& config,
                      const std::optional<std::filesystem::path>& csv_out);

}  // namespace shiftedprime::cli
