#include "shiftedprime/increment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "json.hpp"

#include "shiftedprime/diffsets.hpp"
#include "shiftedprime/error.hpp"
#include "shiftedprime/expsums.hpp"

namespace shiftedprime {

namespace {

std::vector<std::int64_t> in_range_sorted(std::span<const std::int64_t> A, std::int64_t N) {
  std::vector<std::int64_t> out(A.begin(), A.end());
  for (std::int64_t x : out) {
    if (x < 1 || x > N) {
      throw Error(ErrorKind::ElementOutOfRange, std::to_string(x) + " is outside [1, " + std::to_string(N) + "]");
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Grid indices k with k/M in the arc; the +-1 margin absorbs rounding at the endpoints.
template <typename Visit>
void for_grid_points(const ArcSystem& arcs, const MajorArc& arc, std::int64_t M, Visit visit) {
  const double m = static_cast<double>(M);
  const auto lo = static_cast<std::int64_t>(std::floor((arc.center - arc.half_width) * m)) - 1;
  const auto hi = static_cast<std::int64_t>(std::ceil((arc.center + arc.half_width) * m)) + 1;
  for (std::int64_t k = lo; k <= hi && k - lo < M; ++k) {
    const std::int64_t idx = ((k % M) + M) % M;
    if (arcs.in_arc(static_cast<double>(idx) / m, arc.a, arc.q)) visit(idx);
  }
}

}  // namespace

IncrementParameters compute_parameters(std::int64_t N, std::int64_t d, double alpha,
                                       const IncrementConstants& constants,
                                       std::optional<ArcOverride> override_arcs) {
  if (N < 2 || d < 1) throw Error(ErrorKind::InvalidArgument, "parameters need N >= 2 and d >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1]");
  IncrementParameters p;
  p.N = N;
  p.d = d;
  p.alpha = alpha;
  p.constants = constants;
  p.Nprime = static_cast<std::int64_t>(std::floor(constants.c9 * alpha * static_cast<double>(N)));
  if (override_arcs) {
    p.Qprime = override_arcs->Qprime;
    p.Q = override_arcs->Q;
    p.overridden = true;
  } else {
    const double log_n = p.Nprime >= 2 ? std::log(static_cast<double>(p.Nprime)) : 0.0;
    const double d4 = std::pow(static_cast<double>(d), 4);
    p.Qprime = d4 * std::pow(log_n, 8) / (constants.c10 * constants.c10 * alpha * alpha);
    p.Q = p.Qprime > 0.0 ? static_cast<double>(p.Nprime) / p.Qprime : 0.0;
  }
  p.degenerate = p.Nprime < 1 || p.Qprime < 1.0 || p.Q < 2.0 * p.Qprime;
  return p;
}

EnergyProfile energy_profile(std::span<const std::int64_t> A, std::int64_t N, std::int64_t d,
                             const IncrementParameters& params, std::int64_t M, const LambdaTable& lambda) {
  const auto set = in_range_sorted(A, N);
  if (params.Nprime < 1) throw Error(ErrorKind::InvalidArgument, "N' must be positive");
  const std::int64_t support = std::max(N, params.Nprime);
  if (M < 4 * N || M < support) {
    throw Error(ErrorKind::GridTooSmall, "grid size " + std::to_string(M) + " below 4N = " + std::to_string(4 * N));
  }
  const ArcSystem arcs(params.Q, params.Qprime);

  EnergyProfile p;
  p.alpha = static_cast<double>(set.size()) / static_cast<double>(N);
  p.M = M;
  Eigen::VectorXd balanced = Eigen::VectorXd::Zero(support);
  balanced.head(params.Nprime).array() -= p.alpha;
  for (std::int64_t x : set) balanced[x - 1] += 1.0;
  p.unweighted_physical = balanced.squaredNorm();

  const auto b_hat = fourier_grid(balanced, M);
  const auto f_hat = fourier_grid(make_F(lambda, params.Nprime, d).weights, M);
  p.f0 = std::abs(f_hat[0]);

  const auto labels = arcs.label_grid(M);
  const std::int64_t max_q = arcs.max_denominator();
  p.energy.assign(static_cast<std::size_t>(max_q), 0.0);
  for (std::int64_t q = 1; q <= max_q; ++q) p.q.push_back(q);
  const double inv_m = 1.0 / static_cast<double>(M);
  for (std::int64_t k = 0; k < M; ++k) {
    const double b2 = std::norm(b_hat[k]);
    const double w = b2 * std::abs(f_hat[k]) * inv_m;
    p.unweighted_torus += b2 * inv_m;
    p.total_torus += w;
    if (labels[k] != 0) p.energy[labels[k] - 1] += w;
  }
  for (double e : p.energy) p.total_major += e;
  p.minor = p.total_torus - p.total_major;
  return p;
}

void write_energy_csv(std::ostream& out, const EnergyProfile& profile) {
  out << "q,energy\n";
  const auto old = out.precision(12);
  for (std::size_t i = 0; i < profile.q.size(); ++i) out << profile.q[i] << ',' << profile.energy[i] << '\n';
  out.precision(old);
}

ArcSplit split_arcs(const EnergyProfile& profile, double alpha, double C6) {
  ArcSplit s;
  s.threshold = C6 / (alpha * alpha * alpha);
  for (std::size_t i = 0; i < profile.q.size(); ++i) {
    if (static_cast<double>(profile.q[i]) <= s.threshold) {
      s.q1.push_back(profile.q[i]);
      s.total1 += profile.energy[i];
    } else {
      s.q2.push_back(profile.q[i]);
      s.total2 += profile.energy[i];
    }
  }
  return s;
}

std::vector<ArcSup> sup_on_arcs(std::int64_t Nprime, std::int64_t d, const ArcSystem& arcs, std::int64_t M,
                                const LambdaTable& lambda) {
  const auto f_hat = fourier_grid(make_F(lambda, Nprime, d).weights, M);
  const double f0 = std::abs(f_hat[0]);
  std::vector<ArcSup> out;
  for (std::int64_t q = 1; q <= arcs.max_denominator(); ++q) out.push_back({q, 0.0, 0.0});
  for (const auto& arc : arcs.arcs()) {
    auto& entry = out[static_cast<std::size_t>(arc.q - 1)];
    for_grid_points(arcs, arc, M, [&](std::int64_t k) { entry.sup = std::max(entry.sup, std::abs(f_hat[k])); });
  }
  for (auto& entry : out) entry.ratio = entry.sup / (f0 / static_cast<double>(euler_phi(entry.q)));
  return out;
}

ArcSup sup_on_arc(std::int64_t Nprime, std::int64_t d, std::int64_t q, const ArcSystem& arcs, std::int64_t M,
                  const LambdaTable& lambda) {
  if (q < 1 || q > arcs.max_denominator()) {
    throw Error(ErrorKind::InvalidArgument, "q = " + std::to_string(q) + " has no major arcs");
  }
  return sup_on_arcs(Nprime, d, arcs, M, lambda)[static_cast<std::size_t>(q - 1)];
}

IncrementOutcome extract_increment(std::span<const std::int64_t> A, std::int64_t N, std::int64_t d,
                                   const IncrementConstants& constants, const IncrementSearch& search) {
  const auto set = in_range_sorted(A, N);
  IncrementOutcome out;
  if (set.empty()) {
    out.notes.push_back("empty set");
    return out;
  }
  const auto size = static_cast<std::int64_t>(set.size());
  const double alpha = static_cast<double>(size) / static_cast<double>(N);
  out.alpha = alpha;
  auto& th = out.thresholds;
  th.max_difference = constants.c6 > 0.0 ? constants.c6 / (alpha * alpha * alpha)
                                         : std::numeric_limits<double>::infinity();
  th.min_length = std::pow(constants.c7 * alpha / (static_cast<double>(d) * std::log(static_cast<double>(N))), 8) *
                  static_cast<double>(N);
  th.min_density = alpha * (1.0 + constants.c8);

  // Dominant frequency from the M_1 energy profile, when the arc parameters allow one.
  if (N >= 2) {
    const auto params = compute_parameters(N, d, alpha, constants, search.arcs);
    const std::int64_t top = d * params.Nprime + 1;
    if (params.Nprime >= 1 && params.Qprime >= 1.0 && params.Q >= params.Qprime && top <= kDefaultSieveLimit) {
      const LambdaTable lambda(std::max<std::int64_t>(top, 2));
      const auto profile =
          energy_profile(set, N, d, params, std::max(search.grid_factor, std::int64_t{4}) * N, lambda);
      const auto split = split_arcs(profile, alpha, constants.C6);
      // Frequency 0 carries no progression structure; d' = 1 is always searched.
      double best = -1.0;
      for (std::int64_t q : split.q1) {
        if (q >= 2 && profile.energy[q - 1] > best) {
          best = profile.energy[q - 1];
          out.dominant_q = q;
        }
      }
    } else {
      out.notes.push_back("arc parameters degenerate (Q < Q'); exhaustive progression search only");
    }
  }

  const double cap = std::min(th.max_difference, static_cast<double>(N));
  std::vector<std::int64_t> differences;
  for (std::int64_t k = 1; k <= search.max_difference && static_cast<double>(k) <= cap; ++k) differences.push_back(k);
  if (out.dominant_q > 1) {
    for (std::int64_t k = out.dominant_q; static_cast<double>(k) <= cap && k <= search.max_difference * out.dominant_q;
         k += out.dominant_q) {
      if (k > search.max_difference) differences.push_back(k);
    }
  }

  const auto min_length = std::max<std::int64_t>(
      {1, static_cast<std::int64_t>(std::ceil(th.min_length)),
       static_cast<std::int64_t>(std::ceil(search.min_length_fraction * static_cast<double>(N)))});

  std::vector<char> member(static_cast<std::size_t>(N + 1), 0);
  for (std::int64_t x : set) member[x] = 1;

  // Densest window; any window of length >= 2L splits into two of length >= L, one at least as
  // dense, so lengths in [L, 2L) attain the optimum density.
  bool have = false;
  std::int64_t best_count = 0;
  Progression best;
  auto better = [&](std::int64_t count, const Progression& p) {
    if (!have) return true;
    const auto lhs = static_cast<__int128>(count) * best.length;
    const auto rhs = static_cast<__int128>(best_count) * p.length;
    if (lhs != rhs) return lhs > rhs;
    const auto off_frequency = [&](std::int64_t dp) { return out.dominant_q > 1 && dp % out.dominant_q != 0; };
    return std::tuple(off_frequency(p.difference), p.difference, p.start, -p.length) <
           std::tuple(off_frequency(best.difference), best.difference, best.start, -best.length);
  };
  std::vector<std::int64_t> prefix;
  for (std::int64_t dp : differences) {
    for (std::int64_t r = 1; r <= std::min(dp, N); ++r) {
      prefix.assign(1, 0);
      for (std::int64_t x = r; x <= N; x += dp) prefix.push_back(prefix.back() + member[x]);
      const auto n = static_cast<std::int64_t>(prefix.size()) - 1;
      for (std::int64_t i = 0; i + min_length <= n; ++i) {
        const std::int64_t max_len = std::min(n - i, 2 * min_length - 1);
        for (std::int64_t len = min_length; len <= max_len; ++len) {
          const std::int64_t count = prefix[i + len] - prefix[i];
          const Progression p{dp, r + i * dp, len};
          if (better(count, p)) {
            have = true;
            best = p;
            best_count = count;
          }
        }
      }
    }
  }
  if (!have) {
    out.notes.push_back("no progression of length >= " + std::to_string(min_length) + " fits in [N]");
    return out;
  }

  out.progression = best;
  out.dprime = best.difference;
  out.count = best_count;
  out.new_density = static_cast<double>(best_count) / static_cast<double>(best.length);
  th.difference_ok = static_cast<double>(best.difference) <= th.max_difference;
  th.length_ok = static_cast<double>(best.length) >= th.min_length;
  const bool increases = static_cast<__int128>(best_count) * N > static_cast<__int128>(size) * best.length;
  th.density_ok = increases && static_cast<long double>(best_count) * N >=
                                   static_cast<long double>(size) * best.length * (1.0L + constants.c8);
  out.found = th.difference_ok && th.length_ok && th.density_ok;
  return out;
}

std::vector<IterationStep> run_iteration(std::span<const std::int64_t> A0, std::int64_t N,
                                         const IncrementConstants& constants, std::int64_t max_steps,
                                         const IterationOptions& options) {
  std::vector<std::int64_t> A = in_range_sorted(A0, N);
  std::int64_t d = 1;
  std::vector<IterationStep> trajectory;
  for (std::int64_t step = 0; step < max_steps && N >= 2 && !A.empty(); ++step) {
    if (!validate(A, N, d).valid) {
      throw Error(ErrorKind::InvalidArgument, "set at step " + std::to_string(step) + " is not shifted-prime avoiding");
    }
    IterationStep s;
    s.step = step;
    s.N = N;
    s.d = d;
    s.alpha = static_cast<double>(A.size()) / static_cast<double>(N);
    s.params = compute_parameters(N, d, s.alpha, constants, options.search.arcs);
    const double log_n = std::log(static_cast<double>(N));
    s.D = std::exp(log_n / (constants.Cprime * (std::log(1.0 / s.alpha) + std::log(log_n) + 1.0)));
    s.cap = constants.c5 * std::pow(s.D, constants.c5);
    s.within_cap = static_cast<double>(d) / s.alpha <= s.cap;
    s.above_floor = std::pow(s.D, constants.C4) < static_cast<double>(N);

    if (options.enforce_hypotheses && !(s.within_cap && s.above_floor)) {
      s.outcome.notes.push_back("halted: d/alpha cap or N floor fails");
      trajectory.push_back(s);
      break;
    }
    s.outcome = extract_increment(A, N, d, constants, options.search);
    s.found = s.outcome.found;
    if (!s.found) {
      trajectory.push_back(s);
      break;
    }
    const Progression& p = s.outcome.progression;
    std::vector<std::int64_t> next;
    for (std::int64_t x : A) {
      if (x >= p.start && (x - p.start) % p.difference == 0 && (x - p.start) / p.difference < p.length) {
        next.push_back((x - p.start) / p.difference + 1);
      }
    }
    const std::int64_t next_d = d * p.difference;
    s.next_valid = validate(next, p.length, next_d).valid;
    trajectory.push_back(s);
    if (!s.next_valid) break;
    A = std::move(next);
    N = p.length;
    d = next_d;
  }
  return trajectory;
}

std::string step_json(const IterationStep& s) {
  const auto& o = s.outcome;
  const auto& c = s.params.constants;
  nlohmann::json j;
  j["step"] = s.step;
  j["N"] = s.N;
  j["d"] = s.d;
  j["alpha"] = s.alpha;
  j["found"] = s.found;
  j["parameters"] = {{"Nprime", s.params.Nprime}, {"Qprime", s.params.Qprime},     {"Q", s.params.Q},
                     {"degenerate", s.params.degenerate}, {"overridden", s.params.overridden},
                     {"interval", s.params.interval}};
  j["constants"] = {{"c5", c.c5}, {"c6", c.c6}, {"c7", c.c7}, {"c8", c.c8}, {"c9", c.c9},
                    {"c10", c.c10}, {"C4", c.C4}, {"C5", c.C5}, {"C6", c.C6}, {"Cprime", c.Cprime}};
  j["hypotheses"] = {{"D", s.D}, {"cap", s.cap}, {"within_cap", s.within_cap}, {"above_floor", s.above_floor}};
  j["thresholds"] = {{"max_difference", std::isfinite(o.thresholds.max_difference)
                                            ? nlohmann::json(o.thresholds.max_difference)
                                            : nlohmann::json("inf")},
                     {"min_length", o.thresholds.min_length},
                     {"min_density", o.thresholds.min_density},
                     {"difference_ok", o.thresholds.difference_ok},
                     {"length_ok", o.thresholds.length_ok},
                     {"density_ok", o.thresholds.density_ok}};
  j["progression"] = {{"difference", o.progression.difference},
                      {"start", o.progression.start},
                      {"length", o.progression.length},
                      {"count", o.count},
                      {"density", o.new_density}};
  j["dominant_q"] = o.dominant_q;
  j["next_valid"] = s.next_valid;
  j["notes"] = o.notes;
  return j.dump();
}

}  // namespace shiftedprime
