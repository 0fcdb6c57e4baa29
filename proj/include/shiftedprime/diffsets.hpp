#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace shiftedprime {

/// A subset of [N] none of whose positive differences is (p - 1)/d for a prime p.
struct AvoidingSet {
  std::int64_t N = 0;
  std::int64_t d = 1;
  std::vector<std::int64_t> elements;  // sorted ascending

  double density() const { return N > 0 ? static_cast<double>(elements.size()) / static_cast<double>(N) : 0.0; }
};

struct Validation {
  bool valid = true;
  /// First violating pair (x, y), x > y: smallest x, then smallest y.
  std::optional<std::pair<std::int64_t, std::int64_t>> violation;
};

/// Throws element-out-of-range when an element lies outside [N].
Validation validate(std::span<const std::int64_t> elements, std::int64_t N, std::int64_t d);

struct GreedyOrder {
  enum class Kind { Ascending, Random } kind = Kind::Ascending;
  std::uint64_t seed = 0;

  static GreedyOrder ascending() { return {}; }
  static GreedyOrder random(std::uint64_t seed) { return {Kind::Random, seed}; }
};

AvoidingSet greedy_set(std::int64_t N, std::int64_t d, GreedyOrder order = GreedyOrder::ascending());
/// Greedy scan over an explicit candidate order; the result is maximal among the candidates.
AvoidingSet greedy_scan(std::int64_t N, std::int64_t d, std::span<const std::int64_t> order);

inline constexpr std::int64_t kDefaultExactCeiling = 500;
inline constexpr std::int64_t kDefaultNodeBudget = 50'000'000;

struct ExactOptions {
  std::int64_t node_budget = kDefaultNodeBudget;
  std::int64_t ceiling = kDefaultExactCeiling;
};

struct ExactResult {
  AvoidingSet set;
  bool optimal = false;
  std::int64_t nodes = 0;
};

/// Maximum independent set of the graph on [N] joining x, y when |x - y| is a target.
/// Branch and bound over the complement (max clique) with bitset candidate sets and
/// greedy clique-cover bounds. Returns the best set found with optimal = false when the
/// node budget runs out. The witness is the lexicographically least optimum for N <= 30.
ExactResult max_set_exact(std::int64_t N, std::int64_t d, const ExactOptions& options = {});

struct DensityRow {
  std::int64_t N = 0;
  std::int64_t d = 1;
  std::string solver;  // "exact" or "greedy"
  std::int64_t size = 0;
  double density = 0.0;
  double bound = 0.0;  // C exp(-c (log N)^{1/3})
  bool optimal = true;
};

struct DensityCurveOptions {
  double C = 1.0;
  double c = 1.0;
  std::int64_t exact_upto = 0;  // exact rows for N <= exact_upto
  ExactOptions exact;
};

double density_bound(std::int64_t N, double C, double c);
std::vector<DensityRow> density_curve(std::span<const std::int64_t> Ns, std::int64_t d,
                                      const DensityCurveOptions& options = {});

void write_density_csv(std::ostream& out, std::span<const DensityRow> rows);
/// {"N":..,"d":..,"size":..,"elements":[..]}
std::string witness_json(const AvoidingSet& set);

}  // namespace shiftedprime
