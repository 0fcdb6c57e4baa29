#include "shiftedprime/majorarcs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shiftedprime/error.hpp"
#include "shiftedprime/expsums.hpp"

namespace shiftedprime {

namespace {

struct HypothesisLedger {
  bool allow = false;
  bool violated = false;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (!allow) throw Error(ErrorKind::HypothesisViolation, what);
    violated = true;
    notes.push_back("out-of-hypothesis: " + what);
  }
};

void check_hard_inputs(std::int64_t N, std::int64_t d, std::int64_t q, std::int64_t a, double delta) {
  if (N < 1 || d < 1 || q < 1) throw Error(ErrorKind::HypothesisViolation, "N, d, q must be positive");
  if (gcd(a, q) != 1) {
    throw Error(ErrorKind::HypothesisViolation,
                "(a, q) = (" + std::to_string(a) + ", " + std::to_string(q) + ") not coprime");
  }
  if (std::abs(delta) > 0.5) throw Error(ErrorKind::HypothesisViolation, "delta outside [-1/2, 1/2]");
}

std::string fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

void check_size_hypothesis(HypothesisLedger& ledger, std::int64_t N, const DichotomyVerdict& verdict,
                           const MajorArcConstants& constants) {
  const double log_floor = constants.C3 * std::log(verdict.D * verdict.T);
  ledger.require(std::log(static_cast<double>(N)) > log_floor,
                 "N = " + std::to_string(N) + " is not above (DT)^C3 = exp(" + fmt(log_floor) + ")");
}

void check_modulus_hypothesis(HypothesisLedger& ledger, std::int64_t d, std::int64_t q,
                              const DichotomyVerdict& verdict, const MajorArcConstants& constants) {
  const double dq = static_cast<double>(d * q);
  if (!verdict.exceptional) {
    ledger.require(dq <= verdict.D, "dq = " + fmt(dq) + " exceeds D = " + fmt(verdict.D));
  } else {
    const double cap = std::pow(verdict.D, constants.dichotomy.C1);
    ledger.require(dq <= cap, "dq = " + fmt(dq) + " exceeds D^C1 = " + fmt(cap));
    ledger.require(d % verdict.witness->modulus == 0,
                   "d = " + std::to_string(d) + " is not a multiple of d_D = " + std::to_string(verdict.witness->modulus));
  }
}

}  // namespace

double torus_distance(double theta, double center) {
  double diff = std::fmod(theta - center, 1.0);
  if (diff < 0.0) diff += 1.0;
  return std::min(diff, 1.0 - diff);
}

ArcSystem::ArcSystem(double Q, double Qprime) : Q_(Q), Qprime_(Qprime) {
  if (!(Qprime >= 1.0) || !(Q >= Qprime)) {
    throw Error(ErrorKind::InvalidArgument, "arc system needs Q >= Q' >= 1, got Q = " + fmt(Q) + ", Q' = " + fmt(Qprime));
  }
  max_q_ = static_cast<std::int64_t>(std::floor(Qprime));
  for (std::int64_t q = 1; q <= max_q_; ++q) {
    for (std::int64_t a = 1; a <= q; ++a) {
      if (gcd(a, q) != 1) continue;
      arcs_.push_back({a, q, static_cast<double>(a % q) / static_cast<double>(q),
                       1.0 / (static_cast<double>(q) * Q)});
    }
  }

  std::vector<MajorArc> sorted = arcs_;
  std::sort(sorted.begin(), sorted.end(), [](const MajorArc& x, const MajorArc& y) { return x.center < y.center; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const MajorArc& cur = sorted[i];
    const MajorArc& next = sorted[(i + 1) % sorted.size()];
    double gap = next.center - cur.center;
    if (i + 1 == sorted.size()) gap += 1.0;
    if (gap <= cur.half_width + next.half_width) disjoint_ = false;
  }
}

double ArcSystem::total_measure() const {
  double total = 0.0;
  for (std::int64_t q = 1; q <= max_q_; ++q) {
    total += static_cast<double>(euler_phi(q)) * 2.0 / (static_cast<double>(q) * Q_);
  }
  return total;
}

bool ArcSystem::standard_regime() const { return Qprime_ <= std::sqrt(Q_) / 2.0; }

bool ArcSystem::in_arc(double theta, std::int64_t a, std::int64_t q) const {
  return torus_distance(theta, static_cast<double>(a) / static_cast<double>(q)) <=
         1.0 / (static_cast<double>(q) * Q_);
}

bool ArcSystem::in_major_arcs_of(double theta, std::int64_t q) const {
  if (q < 1 || q > max_q_) return false;
  const double scaled = theta * static_cast<double>(q);
  // Half-widths are at most 1/q, so only the two neighbouring fractions can contain theta.
  for (double a_real : {std::floor(scaled), std::ceil(scaled)}) {
    auto a = static_cast<std::int64_t>(a_real) % q;
    if (a < 0) a += q;
    if (a == 0) a = q;
    if (gcd(a, q) == 1 && in_arc(theta, a, q)) return true;
  }
  return false;
}

std::int64_t ArcSystem::denominator_at(double theta) const {
  for (std::int64_t q = 1; q <= max_q_; ++q) {
    if (in_major_arcs_of(theta, q)) return q;
  }
  return 0;
}

std::vector<std::int64_t> ArcSystem::label_grid(std::int64_t M) const {
  std::vector<std::int64_t> labels(static_cast<std::size_t>(M), 0);
  const double m = static_cast<double>(M);
  for (const auto& arc : arcs_) {  // arcs_ are ordered by q, so the first label set is the smallest q
    const auto lo = static_cast<std::int64_t>(std::floor((arc.center - arc.half_width) * m)) - 1;
    const auto hi = static_cast<std::int64_t>(std::ceil((arc.center + arc.half_width) * m)) + 1;
    for (std::int64_t k = lo; k <= hi && k - lo < M; ++k) {
      const std::int64_t idx = ((k % M) + M) % M;
      if (labels[idx] != 0) continue;
      if (in_arc(static_cast<double>(idx) / m, arc.a, arc.q)) labels[idx] = arc.q;
    }
  }
  return labels;
}

MajorArcReport verify_major_arc_bound(const LambdaTable& lambda, const DichotomyVerdict& verdict, std::int64_t N,
                                      std::int64_t d, std::int64_t q, std::int64_t a, double delta,
                                      const MajorArcConstants& constants) {
  check_hard_inputs(N, d, q, a, delta);
  HypothesisLedger ledger{constants.allow_out_of_hypothesis, false, {}};
  check_size_hypothesis(ledger, N, verdict, constants);
  check_modulus_hypothesis(ledger, d, q, verdict, constants);

  MajorArcReport r;
  r.N = N;
  r.D = verdict.D;
  r.T = verdict.T;
  r.d = d;
  r.q = q;
  r.a = a;
  r.delta = delta;
  r.constants = constants;
  r.verdict = verdict;

  const FNdFunction f = make_F(lambda, N, d);
  r.lhs = std::abs(F_hat(f, static_cast<double>(a) / static_cast<double>(q) + delta));
  r.f0 = f.weights.sum();

  const double n = static_cast<double>(N);
  const double phi_d = static_cast<double>(euler_phi(d));
  const double phi_q = static_cast<double>(euler_phi(q));
  const double dqn = static_cast<double>(d * q) * n;
  const double log_n = std::log(n);

  r.term_main = 2.0 * r.f0 / phi_q;
  const double zero_scale = constants.zero_budget * dqn / (phi_d * phi_q);
  if (!verdict.exceptional) {
    r.term_zero = zero_scale * std::exp(-constants.c4 * log_n / std::log(verdict.D * verdict.T));
  } else {
    const double one_minus_beta = 1.0 - verdict.witness->beta;
    const double log_dqt = std::log(static_cast<double>(d * q) * verdict.T);
    r.term_zero = zero_scale * one_minus_beta * log_dqt * std::exp(-constants.c4 * log_n / log_dqt);
    r.f0_lower_term = static_cast<double>(d) * n / phi_d * one_minus_beta *
                      std::log(static_cast<double>(d) * verdict.T) / (4.0 * constants.dichotomy.c1);
    r.notes.push_back("exceptional lower-bound term (1-beta_D)log(dT)/(4c1) scaled by dN/phi(d): " +
                      fmt(*r.f0_lower_term));
  }
  r.term_tail = constants.tail_budget * (1.0 + n * std::abs(delta)) * dqn * log_n * log_n / verdict.T;
  r.pass_ratio = r.lhs / (r.term_main + r.term_zero + r.term_tail);
  r.out_of_hypothesis = ledger.violated;
  r.notes.insert(r.notes.end(), ledger.notes.begin(), ledger.notes.end());
  return r;
}

MajorArcReport verify_major_arc_bound(const ZeroDatabase& db, const LambdaTable& lambda, std::int64_t N, double D,
                                      double T, std::int64_t d, std::int64_t q, std::int64_t a, double delta,
                                      const MajorArcConstants& constants) {
  const auto verdict = detect_dichotomy(db, D, T, constants.dichotomy);
  return verify_major_arc_bound(lambda, verdict, N, d, q, a, delta, constants);
}

void write_major_arc_csv_header(std::ostream& out) {
  out << "N,D,T,d,q,a,delta,regime,lhs,term_main,term_zero,term_tail,pass_ratio\n";
}

void write_major_arc_csv_row(std::ostream& out, const MajorArcReport& r) {
  const auto old = out.precision(12);
  out << r.N << ',' << r.D << ',' << r.T << ',' << r.d << ',' << r.q << ',' << r.a << ',' << r.delta << ','
      << r.regime() << ',' << r.lhs << ',' << r.term_main << ',' << r.term_zero << ',' << r.term_tail << ','
      << r.pass_ratio << '\n';
  out.precision(old);
}

F0LowerBoundReport verify_F0_lower_bound(const LambdaTable& lambda, const DichotomyVerdict& verdict, std::int64_t N,
                                         std::int64_t d, const MajorArcConstants& constants) {
  check_hard_inputs(N, d, 1, 1, 0.0);
  HypothesisLedger ledger{constants.allow_out_of_hypothesis, false, {}};
  check_size_hypothesis(ledger, N, verdict, constants);
  check_modulus_hypothesis(ledger, d, 1, verdict, constants);

  F0LowerBoundReport r;
  r.N = N;
  r.d = d;
  r.verdict = verdict;
  r.f0 = make_F(lambda, N, d).weights.sum();
  const double dn = static_cast<double>(d) * static_cast<double>(N);
  const double phi_d = static_cast<double>(euler_phi(d));
  const double log_n = std::log(static_cast<double>(N));
  if (!verdict.exceptional) {
    r.main_term = dn / (2.0 * phi_d);
  } else {
    r.main_term = dn / phi_d * (1.0 - verdict.witness->beta) * std::log(static_cast<double>(d) * verdict.T) /
                  (4.0 * constants.dichotomy.c1);
  }
  r.tail = constants.tail_budget * dn * log_n * log_n / verdict.T;
  r.lower_bound = r.main_term - r.tail;
  r.margin = r.f0 - r.lower_bound;
  r.out_of_hypothesis = ledger.violated;
  r.notes = ledger.notes;
  return r;
}

F0LowerBoundReport verify_F0_lower_bound(const ZeroDatabase& db, const LambdaTable& lambda, std::int64_t N, double D,
                                         double T, std::int64_t d, const MajorArcConstants& constants) {
  const auto verdict = detect_dichotomy(db, D, T, constants.dichotomy);
  return verify_F0_lower_bound(lambda, verdict, N, d, constants);
}

ExceptionalIntegralReport exceptional_integral_lower_bound(double beta, std::int64_t d, std::int64_t q, double T,
                                                           double N, const MajorArcConstants& constants) {
  if (!(beta < 1.0) || beta <= 0.0) throw Error(ErrorKind::HypothesisViolation, "beta_D must lie in (0, 1)");
  if (d < 1 || q < 1 || T < 1.0 || N < 1.0) throw Error(ErrorKind::HypothesisViolation, "d, q, T, N must be >= 1");
  const double C1 = constants.dichotomy.C1;
  const double c1 = constants.dichotomy.c1;
  const double log_dqt = std::log(static_cast<double>(d * q) * T);
  const double log_lower = std::log(N) / 8.0;
  if (log_lower < constants.C3 / (8.0 * C1) * log_dqt) {
    throw Error(ErrorKind::HypothesisViolation, "N^{1/8} is below (dqT)^{C3/(8 C1)}");
  }

  const double lower = std::exp(log_lower);
  const double upper = static_cast<double>(d) * N;
  const double one_minus_beta = 1.0 - beta;
  // Antiderivative of 1 - t^{beta-1}: t - t^beta/beta = -t ((1 - beta) + expm1((beta-1) log t)) / beta.
  auto antiderivative = [&](double t) {
    return -t * (one_minus_beta + std::expm1(-one_minus_beta * std::log(t))) / beta;
  };

  ExceptionalIntegralReport r;
  r.closed_form = upper > lower ? antiderivative(upper) - antiderivative(lower) : 0.0;
  const double x = constants.C3 * one_minus_beta * log_dqt / (8.0 * C1);
  const double length = std::max(0.0, upper - lower);
  r.pointwise_bound = length * x / (x + 1.0);
  r.shaped_bound = length * one_minus_beta * log_dqt / (2.0 * c1);
  r.constants_sufficient = c1 * constants.C3 >= 8.0 * C1 && one_minus_beta * log_dqt <= c1;
  // Relative slack for rounding in the closed form.
  const double tol = 1e-12 * std::max(1.0, upper);
  r.pointwise_holds = r.closed_form + tol >= r.pointwise_bound;
  r.shaped_holds = r.closed_form + tol >= r.shaped_bound;
  return r;
}

}  // namespace shiftedprime
