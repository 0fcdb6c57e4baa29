#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "shiftedprime/diffsets.hpp"
#include "shiftedprime/increment.hpp"
#include "shiftedprime/majorarcs.hpp"

namespace shiftedprime {

/// Every tunable constant of a run. Parsed from a flat "key = value" file with '#' comments.
struct RunConfig {
  MajorArcConstants majorarcs;  // c1, C1 (dichotomy), C3, c4, budgets
  double decomposition_C = 10.0;
  IncrementConstants increment;
  IncrementSearch search;
  bool enforce_hypotheses = false;
  double bound_C = 1.0;
  double bound_c = 1.0;
  std::int64_t sieve_limit = kDefaultSieveLimit;
  std::int64_t exact_ceiling = kDefaultExactCeiling;
  std::int64_t node_budget = kDefaultNodeBudget;
  std::string zeta_zeros = "zeta_zeros.txt";         // relative to the data directory
  std::string lfunction_zeros = "lfunction_zeros.txt";
  std::string output_dir = ".";
  std::uint64_t seed = 0;

  /// Canonical "key = value" listing of every field, one per line.
  std::string echo() const;
  /// FNV-1a 64-bit hash of echo(), as 16 hex digits.
  std::string hash() const;
};

/// Throws parse-error on malformed lines or unknown keys, invalid-argument on constants out of range.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// SHIFTEDPRIME_DATA if set, else the data directory of the source tree.
std::filesystem::path data_directory();
/// `name` itself when absolute, else resolved against data_directory().
std::filesystem::path data_path(const std::string& name);

}  // namespace shiftedprime
