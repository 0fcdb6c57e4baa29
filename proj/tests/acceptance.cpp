// Acceptance criteria: one PASS/FAIL line per criterion.
// Exit status is 0 iff the failing set equals --known-failures.
#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shiftedprime/arith.hpp"
#include "shiftedprime/characters.hpp"
#include "shiftedprime/config.hpp"
#include "shiftedprime/diffsets.hpp"
#include "shiftedprime/error.hpp"
#include "shiftedprime/expsums.hpp"
#include "shiftedprime/increment.hpp"
#include "shiftedprime/majorarcs.hpp"
#include "shiftedprime/zerodata.hpp"

using namespace shiftedprime;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double seconds;  // runtime limit
  std::function<Outcome()> run;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

ZeroDatabase shipped() {
  ZeroDatabase db;
  db.load(data_path("zeta_zeros.txt"), ZeroFileFormat::ZetaHeights);
  db.load(data_path("lfunction_zeros.txt"), ZeroFileFormat::Tabular);
  return db;
}

// Largest avoiding subset of [N] for every N <= n_max, over all 2^n_max subsets.
// valid[mask] extends valid[mask minus its top bit] when the top element conflicts with nothing.
std::vector<int> exhaustive_sizes(int n_max, std::int64_t d) {
  std::vector<std::uint32_t> conflict(n_max, 0);
  for (int i = 0; i < n_max; ++i) {
    for (int j = 0; j < i; ++j) {
      if (is_prime(d * (i - j) + 1)) conflict[i] |= 1u << j;
    }
  }
  std::vector<char> valid(std::size_t{1} << n_max, 0);
  std::vector<int> best_top(n_max + 1, 0);  // best size with all elements below the index
  valid[0] = 1;
  for (std::uint32_t mask = 1; mask < (1u << n_max); ++mask) {
    const int top = 31 - std::countl_zero(mask);
    const std::uint32_t rest = mask & ~(1u << top);
    if (!valid[rest] || (rest & conflict[top]) != 0) continue;
    valid[mask] = 1;
    best_top[top + 1] = std::max(best_top[top + 1], std::popcount(mask));
  }
  for (int n = 1; n <= n_max; ++n) best_top[n] = std::max(best_top[n], best_top[n - 1]);
  return best_top;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome criterion1() {
  const auto start = std::chrono::steady_clock::now();
  const int n_max = 22;
  for (std::int64_t d : {1, 2, 3}) {
    const auto oracle = exhaustive_sizes(n_max, d);
    for (int N = 1; N <= n_max; ++N) {
      const auto r = max_set_exact(N, d);
      const auto size = static_cast<int>(r.set.elements.size());
      if (!r.optimal || size != oracle[N] || !validate(r.set.elements, N, d).valid) {
        return {false, "N=" + std::to_string(N) + " d=" + std::to_string(d) + " exact " + std::to_string(size) +
                           " oracle " + std::to_string(oracle[N])};
      }
    }
  }
  const double exact_seconds = seconds_since(start);
  const auto ladder_start = std::chrono::steady_clock::now();
  std::vector<std::int64_t> ladder;
  for (int k = 6; k <= 20; ++k) ladder.push_back(std::int64_t{1} << k);
  const auto curve = density_curve(ladder, 1);
  double worst = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i) worst = std::max(worst, curve[i].density / curve[i - 1].density);
  const double ladder_seconds = seconds_since(ladder_start);
  return {worst <= 1.1 && exact_seconds <= 60.0 && ladder_seconds <= 300.0,
          "exact = oracle for N <= 22, d <= 3 (" + fmt(exact_seconds) + "s); greedy density on 2^6..2^20 from " +
              fmt(curve.front().density) + " to " + fmt(curve.back().density) + ", max step ratio " + fmt(worst) +
              " (" + fmt(ladder_seconds) + "s)"};
}

Outcome criterion2() {
  std::int64_t cases = 0, failures = 0, nonsquarefree = 0;
  double worst = 0.0;
  for (std::int64_t q = 1; q <= 60; ++q) {
    for (std::int64_t d = 1; d <= 30; ++d) {
      const auto chi = CharacterGroup(d * q).principal();
      const double expected = gcd(d, q) == 1 ? 1.0 : 0.0;
      for (std::int64_t a = 1; a <= q; ++a) {
        if (gcd(a, q) != 1) continue;
        ++cases;
        const double err = std::abs(std::abs(G(a, q, d, chi)) - expected);
        worst = std::max(worst, err);
        if (err > 1e-9) {
          ++failures;
          nonsquarefree += mobius(q) == 0;
        }
      }
    }
  }
  std::string detail = std::to_string(failures) + "/" + std::to_string(cases) + " cases off by more than 1e-9 (max " +
                       fmt(worst) + ")";
  if (failures > 0) {
    detail += "; " + std::to_string(nonsquarefree) + " of them at non-squarefree q, where |G| = |mu(q)| = 0";
  }
  return {failures == 0, detail};
}

Outcome criterion3() {
  double worst = 0.0;
  std::int64_t at = 0;
  for (std::int64_t q = 1; q <= 200; ++q) {
    const CharacterGroup g(q);
    const double err = std::max(column_orthogonality_error(g), row_orthogonality_error(g));
    if (err > worst) {
      worst = err;
      at = q;
    }
  }
  return {worst <= 1e-9, "max error " + fmt(worst) + " at q=" + std::to_string(at)};
}

Outcome criterion4() {
  ZeroDatabase db;
  db.load(data_path("zeta_zeros.txt"), ZeroFileFormat::ZetaHeights);
  const auto zeta = CharacterGroup(1).principal();
  const LambdaTable lambda(100'000);
  const std::vector<double> xs{1e3, 3e3, 1e4, 1e5};
  bool within = true;
  int improved = 0;
  double worst = 0.0;
  for (double x : xs) {
    double err[2];
    int i = 0;
    for (double T : {50.0, 100.0}) {
      err[i] = std::abs(lambda.psi(x) - explicit_psi(db, x, zeta, T, true).real());
      const double ratio = err[i] / (5.0 * x * std::log(x) * std::log(x) / T);
      worst = std::max(worst, ratio);
      within = within && ratio <= 1.0;
      ++i;
    }
    improved += err[1] < err[0];
  }
  return {within && improved >= 3, "max error/bound " + fmt(worst) + ", T=100 better for " + std::to_string(improved) +
                                       "/4 of x"};
}

Outcome criterion5() {
  const LambdaTable lambda(2'000'001);
  std::mt19937_64 rng(20240601);
  double worst = 0.0;
  std::string worst_at;
  for (int seed = 0; seed < 50; ++seed) {
    std::mt19937_64 local(rng());
    const std::int64_t q = 1 + static_cast<std::int64_t>(local() % 30);
    const std::int64_t d = 1 + static_cast<std::int64_t>(local() % 20);
    const std::int64_t N = 1000 + static_cast<std::int64_t>(local() % 99'001);
    std::int64_t a = 1 + static_cast<std::int64_t>(local() % static_cast<std::uint64_t>(q));
    while (gcd(a, q) != 1) a = a % q + 1;
    for (double kappa : {0.0, 1.0 / (4.0 * N), -1.0 / (4.0 * N)}) {
      const auto r = verify_decomposition(lambda, N, d, q, a, kappa);
      const double bound = 10.0 * std::log(static_cast<double>(d * N)) * std::log(std::max<double>(q, 2.0));
      if (r.residual / bound > worst) {
        worst = r.residual / bound;
        worst_at = "N=" + std::to_string(N) + " d=" + std::to_string(d) + " q=" + std::to_string(q);
      }
    }
  }
  return {worst <= 1.0, "max residual/bound " + fmt(worst) + " at " + worst_at};
}

Outcome criterion6() {
  const auto db = shipped();
  const double D = 5.0, T = 30.0;
  const std::int64_t N = 100'000;
  MajorArcConstants constants;
  constants.allow_out_of_hypothesis = true;
  const auto verdict = detect_dichotomy(db, D, T, constants.dichotomy);
  if (verdict.exceptional) return {false, "fixture is exceptional at (D, T) = (5, 30)"};
  const LambdaTable lambda(3 * N + 1);
  double worst = 0.0;
  MajorArcReport at;
  int reports = 0;
  for (std::int64_t d = 1; d <= 3; ++d) {
    for (std::int64_t q = 1; q <= 10; ++q) {
      for (std::int64_t a = 1; a <= q; ++a) {
        if (gcd(a, q) != 1) continue;
        for (double delta : {0.0, 1.0 / (4.0 * N)}) {
          const auto r = verify_major_arc_bound(lambda, verdict, N, d, q, a, delta, constants);
          ++reports;
          if (r.pass_ratio >= worst) {
            worst = r.pass_ratio;
            at = r;
          }
        }
      }
    }
  }
  return {worst <= 1.0, std::to_string(reports) + " reports, max pass_ratio " + fmt(worst) + " at d=" +
                            std::to_string(at.d) + " q=" + std::to_string(at.q) + " a=" + std::to_string(at.a) +
                            " (lhs " + fmt(at.lhs) + ", main " + fmt(at.term_main) + ", zero " + fmt(at.term_zero) +
                            ", tail " + fmt(at.term_tail) + ")"};
}

Outcome criterion7() {
  const LambdaTable lambda(300'001);
  double worst = 0.0;
  for (std::int64_t N : {1000, 33'333, 100'000}) {
    for (std::int64_t d : {1, 3}) {
      const auto f = make_F(lambda, N, d);
      const auto grid = fourier_grid(f.weights, 4 * N);
      const double rhs = f.weights.squaredNorm();
      worst = std::max(worst, std::abs(grid.squaredNorm() / static_cast<double>(4 * N) - rhs) / rhs);

      const auto A = greedy_set(N, d).elements;
      const double alpha = static_cast<double>(A.size()) / static_cast<double>(N);
      const auto params = compute_parameters(N, d, alpha, {}, ArcOverride{});
      const auto profile = energy_profile(A, N, d, params, 4 * N, lambda);
      worst = std::max(worst, std::abs(profile.unweighted_torus - profile.unweighted_physical) /
                                  profile.unweighted_physical);
    }
  }
  return {worst <= 1e-6, "max relative error " + fmt(worst)};
}

// Densest progression with difference <= max_d and length >= min_len, by direct counting.
std::pair<std::int64_t, std::int64_t> densest(const std::vector<std::int64_t>& A, std::int64_t N, std::int64_t max_d,
                                              std::int64_t min_len) {
  std::vector<char> in(static_cast<std::size_t>(N + 1), 0);
  for (std::int64_t x : A) in[x] = 1;
  std::int64_t best_count = 0, best_len = 1;
  for (std::int64_t dp = 1; dp <= max_d; ++dp) {
    for (std::int64_t s = 1; s <= N; ++s) {
      std::int64_t count = 0, len = 0;
      for (std::int64_t x = s; x <= N; x += dp) {
        count += in[x];
        ++len;
        if (len >= min_len && count * best_len > best_count * len) {
          best_count = count;
          best_len = len;
        }
      }
    }
  }
  return {best_count, best_len};
}

Outcome criterion8() {
  const std::int64_t N = 3000;
  IncrementConstants zero;
  zero.c6 = zero.c7 = zero.c8 = 0.0;
  IncrementSearch search;
  search.max_difference = 10;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(seed);
    const std::int64_t q = 2 + static_cast<std::int64_t>(seed % 6);
    const std::int64_t r = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
    std::vector<std::int64_t> order;
    for (std::int64_t x = r; x <= N; x += q) order.push_back(x);
    std::shuffle(order.begin(), order.end(), rng);
    const auto A = greedy_scan(N, 1, order).elements;
    const double alpha = static_cast<double>(A.size()) / static_cast<double>(N);

    const auto out = extract_increment(A, N, 1, zero, search);
    const auto& p = out.progression;
    std::int64_t count = 0;
    for (std::int64_t x : A) {
      count += x >= p.start && (x - p.start) % p.difference == 0 && (x - p.start) / p.difference < p.length;
    }
    const double counted = static_cast<double>(count) / static_cast<double>(p.length);
    const auto [bc, bl] = densest(A, N, 10, N / 100);
    const double oracle = static_cast<double>(bc) / static_cast<double>(bl);
    const double gap = std::abs(counted - oracle) / oracle;
    worst = std::max(worst, gap);
    if (!out.found || !(counted > alpha) || gap > 0.02) {
      return {false, "seed " + std::to_string(seed) + " (q=" + std::to_string(q) + "): found=" +
                         (out.found ? "true" : "false") + " density " + fmt(counted) + " alpha " + fmt(alpha) +
                         " oracle " + fmt(oracle)};
    }
  }
  return {true, "20 sets, max relative gap to oracle " + fmt(worst)};
}

Outcome criterion9() {
  const ZeroDatabase genuine = shipped();
  const auto v = detect_dichotomy(genuine, 10.0, 10.0, {});
  if (v.exceptional) return {false, "genuine fixture reported exceptional"};

  ZeroDatabase planted = shipped();
  planted.load_text("# complete_to 10\n3 1 0.999 0\n", ZeroFileFormat::Tabular, "planted");
  const auto e = detect_dichotomy(planted, 10.0, 10.0, {});
  if (!e.exceptional || !e.witness || e.witness->beta != 0.999 || e.witness->modulus != 3 ||
      e.witness->character != CharacterId{3, 1}) {
    return {false, "planted zero not echoed"};
  }
  planted.load_text("# complete_to 10\n4 1 0.9995 0\n", ZeroFileFormat::Tabular, "second");
  try {
    detect_dichotomy(planted, 10.0, 10.0, {});
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::LemmaViolation) {
      return {true, "unexceptional; witness " + e.witness->character.str() + " beta 0.999; two witnesses rejected"};
    }
    return {false, std::string("wrong error: ") + err.what()};
  }
  return {false, "two witnesses accepted"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> known;
  std::vector<int> only;
  app.add_option("--known-failures", known, "criteria expected to fail")->delimiter(',');
  app.add_option("--only", only, "run only these criteria")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "exact max-set sizes and greedy density trend", 60.0 + 300.0, criterion1},
      {2, "principal Gauss-type sum: |G| = 1 if (d,q) = 1, else 0", 30.0, criterion2},
      {3, "character orthogonality q <= 200", 60.0, criterion3},
      {4, "explicit formula against direct psi", 60.0, criterion4},
      {5, "decomposition residual sweep", 300.0, criterion5},
      {6, "major arc bound sweep", 120.0, criterion6},
      {7, "Parseval on grids", 30.0, criterion7},
      {8, "increment extraction against exhaustive search", 180.0, criterion8},
      {9, "dichotomy routing", 1.0, criterion9},
  };

  std::set<int> failed;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double elapsed = seconds_since(start);
    const bool in_time = elapsed <= c.seconds;
    const bool pass = o.pass && in_time;
    if (!pass) failed.insert(c.id);
    std::printf("%s %d %s: %s [%.2fs%s]\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), o.detail.c_str(), elapsed,
                in_time ? "" : ", over time limit");
    std::fflush(stdout);
  }

  std::set<int> expected;
  for (int k : known) {
    if (only.empty() || std::find(only.begin(), only.end(), k) != only.end()) expected.insert(k);
  }
  if (failed != expected) {
    std::printf("unexpected outcome: %zu failing, %zu expected\n", failed.size(), expected.size());
    return 1;
  }
  return 0;
}
