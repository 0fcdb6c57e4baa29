#include "shiftedprime/diffsets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"

#include "shiftedprime/arith.hpp"
#include "shiftedprime/bitset.hpp"
#include "shiftedprime/error.hpp"

namespace shiftedprime {

namespace {

void require_positive(std::int64_t N, std::int64_t d) {
  if (N < 1 || d < 1) throw Error(ErrorKind::InvalidArgument, "N and d must be positive");
}

// forward[k] = [k is a target], reversed[j] = forward[N - j]; bit positions are values.
struct TargetBits {
  Bitset forward;
  Bitset reversed;
};

TargetBits target_bits(std::int64_t N, std::int64_t d) {
  TargetBits t{Bitset(N + 1), Bitset(N + 1)};
  for (std::int64_t k : shifted_prime_targets(N, d)) {
    t.forward.set(k);
    t.reversed.set(N - k);
  }
  return t;
}

// Max clique search over an adjacency given as bitsets, colouring bound as in MCQ/BBMC.
class CliqueSearch {
 public:
  CliqueSearch(const std::vector<Bitset>& adj, std::int64_t budget) : adj_(adj), budget_(budget) {}

  void seed(std::vector<std::int64_t> clique) { best_ = std::move(clique); }
  void run(const Bitset& candidates) {
    current_.clear();
    expand(candidates);
  }

  const std::vector<std::int64_t>& best() const { return best_; }
  bool aborted() const { return aborted_; }
  std::int64_t nodes() const { return nodes_; }

 private:
  void expand(Bitset P) {
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    std::vector<std::pair<std::int64_t, std::int64_t>> coloured;  // (vertex, colour)
    Bitset uncoloured = P;
    std::int64_t colour = 0;
    while (uncoloured.any()) {
      ++colour;
      Bitset klass = uncoloured;
      for (std::int64_t v = klass.first(); v != -1; v = klass.first()) {
        uncoloured.reset(v);
        klass.reset(v);
        klass.and_not(adj_[v]);
        coloured.emplace_back(v, colour);
      }
    }
    const auto best_size = [&] { return static_cast<std::int64_t>(best_.size()); };
    for (auto it = coloured.rbegin(); it != coloured.rend(); ++it) {
      const auto [v, k] = *it;
      if (static_cast<std::int64_t>(current_.size()) + k <= best_size()) return;
      current_.push_back(v);
      Bitset next = P;
      next &= adj_[v];
      if (!next.any()) {
        if (static_cast<std::int64_t>(current_.size()) > best_size()) best_ = current_;
      } else {
        expand(next);
      }
      current_.pop_back();
      if (aborted_) return;
      P.reset(v);
    }
  }

  const std::vector<Bitset>& adj_;
  std::int64_t budget_;
  std::int64_t nodes_ = 0;
  bool aborted_ = false;
  std::vector<std::int64_t> current_;
  std::vector<std::int64_t> best_;
};

// Compatibility graph on vertices 0..N-1 (value v + 1): adjacent iff the difference is allowed.
std::vector<Bitset> compatibility_graph(std::int64_t N, std::int64_t d, std::span<const std::int64_t> order) {
  const auto mask = shifted_prime_mask(N, d);
  std::vector<Bitset> adj(static_cast<std::size_t>(N), Bitset(N));
  for (std::int64_t i = 0; i < N; ++i) {
    for (std::int64_t j = 0; j < N; ++j) {
      if (i != j && !mask[static_cast<std::size_t>(std::abs(order[i] - order[j]))]) adj[i].set(j);
    }
  }
  return adj;
}

}  // namespace

Validation validate(std::span<const std::int64_t> elements, std::int64_t N, std::int64_t d) {
  require_positive(N, d);
  Bitset members(N + 1);
  for (std::int64_t x : elements) {
    if (x < 1 || x > N) {
      throw Error(ErrorKind::ElementOutOfRange, std::to_string(x) + " is outside [1, " + std::to_string(N) + "]");
    }
    members.set(x);
  }
  const TargetBits targets = target_bits(N, d);
  Validation result;
  for (std::int64_t x = members.first(); x != -1; x = members.next(x)) {
    // y = x - k for targets k sits at reversed-bit position N - k, shifted by x - N.
    const std::int64_t y = members.first_common_shifted(targets.reversed, x - N);
    if (y != -1 && y < x) {
      result.valid = false;
      result.violation = std::make_pair(x, y);
      break;
    }
  }
  return result;
}

AvoidingSet greedy_scan(std::int64_t N, std::int64_t d, std::span<const std::int64_t> order) {
  require_positive(N, d);
  const TargetBits targets = target_bits(N, d);
  Bitset blocked(N + 1);
  Bitset taken(N + 1);
  for (std::int64_t y : order) {
    if (y < 1 || y > N) {
      throw Error(ErrorKind::ElementOutOfRange, std::to_string(y) + " is outside [1, " + std::to_string(N) + "]");
    }
    if (blocked.test(y) || taken.test(y)) continue;
    taken.set(y);
    blocked.or_shifted(targets.forward, y);
    blocked.or_shifted(targets.reversed, y - N);
  }
  AvoidingSet out{N, d, {}};
  for (std::int64_t x = taken.first(); x != -1; x = taken.next(x)) out.elements.push_back(x);
  return out;
}

AvoidingSet greedy_set(std::int64_t N, std::int64_t d, GreedyOrder order) {
  require_positive(N, d);
  std::vector<std::int64_t> scan(static_cast<std::size_t>(N));
  std::iota(scan.begin(), scan.end(), 1);
  if (order.kind == GreedyOrder::Kind::Random) {
    std::mt19937_64 rng(order.seed);
    std::shuffle(scan.begin(), scan.end(), rng);
  }
  return greedy_scan(N, d, scan);
}

ExactResult max_set_exact(std::int64_t N, std::int64_t d, const ExactOptions& options) {
  require_positive(N, d);
  if (N > options.ceiling) {
    throw Error(ErrorKind::LimitExceeded,
                "exact mode is limited to N <= " + std::to_string(options.ceiling) + ", got " + std::to_string(N));
  }
  const auto mask = shifted_prime_mask(N, d);

  // Most-compatible vertices first; they head the colour classes.
  std::vector<std::int64_t> degree(static_cast<std::size_t>(N + 1), 0);
  for (std::int64_t x = 1; x <= N; ++x) {
    for (std::int64_t y = 1; y <= N; ++y) {
      if (x != y && !mask[static_cast<std::size_t>(std::abs(x - y))]) ++degree[x];
    }
  }
  std::vector<std::int64_t> order(static_cast<std::size_t>(N));
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return degree[a] > degree[b]; });
  const auto adj = compatibility_graph(N, d, order);

  std::vector<std::int64_t> position(static_cast<std::size_t>(N + 1));
  for (std::int64_t i = 0; i < N; ++i) position[order[i]] = i;
  const AvoidingSet greedy = greedy_set(N, d);
  std::vector<std::int64_t> seed;
  for (std::int64_t x : greedy.elements) seed.push_back(position[x]);

  CliqueSearch search(adj, options.node_budget);
  search.seed(seed);
  Bitset all(N);
  for (std::int64_t i = 0; i < N; ++i) all.set(i);
  search.run(all);

  ExactResult result;
  result.optimal = !search.aborted();
  result.nodes = search.nodes();
  result.set = {N, d, {}};
  for (std::int64_t v : search.best()) result.set.elements.push_back(order[v]);
  std::sort(result.set.elements.begin(), result.set.elements.end());

  if (result.optimal && N <= 30) {
    // Lexicographically least optimum: keep the smallest value that still extends to an optimum.
    std::vector<std::int64_t> identity(static_cast<std::size_t>(N));
    std::iota(identity.begin(), identity.end(), 1);
    const auto plain = compatibility_graph(N, d, identity);
    const auto target = static_cast<std::int64_t>(result.set.elements.size());
    std::vector<std::int64_t> chosen;
    Bitset allowed = all;
    for (std::int64_t v = 0; v < N && static_cast<std::int64_t>(chosen.size()) < target; ++v) {
      if (!allowed.test(v)) continue;
      Bitset rest = allowed;
      rest &= plain[v];
      for (std::int64_t u = 0; u <= v; ++u) rest.reset(u);
      const auto need = target - static_cast<std::int64_t>(chosen.size()) - 1;
      bool feasible = need == 0;
      if (!feasible && rest.count() >= need) {
        CliqueSearch sub(plain, options.node_budget);
        sub.run(rest);
        feasible = static_cast<std::int64_t>(sub.best().size()) >= need;
      }
      if (feasible) {
        chosen.push_back(v + 1);
        allowed = rest;
      } else {
        allowed.reset(v);
      }
    }
    result.set.elements = chosen;
  }
  return result;
}

double density_bound(std::int64_t N, double C, double c) {
  return C * std::exp(-c * std::cbrt(std::log(static_cast<double>(N))));
}

std::vector<DensityRow> density_curve(std::span<const std::int64_t> Ns, std::int64_t d,
                                      const DensityCurveOptions& options) {
  std::vector<DensityRow> rows;
  for (std::int64_t N : Ns) {
    const double bound = density_bound(N, options.C, options.c);
    const AvoidingSet greedy = greedy_set(N, d);
    rows.push_back({N, d, "greedy", static_cast<std::int64_t>(greedy.elements.size()), greedy.density(), bound, true});
    if (N <= options.exact_upto) {
      const ExactResult exact = max_set_exact(N, d, options.exact);
      rows.push_back({N, d, "exact", static_cast<std::int64_t>(exact.set.elements.size()), exact.set.density(), bound,
                      exact.optimal});
    }
  }
  return rows;
}

void write_density_csv(std::ostream& out, std::span<const DensityRow> rows) {
  out << "N,d,solver,size,density,bound\n";
  const auto old = out.precision(10);
  for (const auto& r : rows) {
    out << r.N << ',' << r.d << ',' << r.solver << ',' << r.size << ',' << r.density << ',' << r.bound << '\n';
  }
  out.precision(old);
}

std::string witness_json(const AvoidingSet& set) {
  nlohmann::json j;
  j["N"] = set.N;
  j["d"] = set.d;
  j["size"] = set.elements.size();
  j["elements"] = set.elements;
  return j.dump();
}

}  // namespace shiftedprime
