#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "shiftedprime/arith.hpp"
#include "shiftedprime/zerodata.hpp"

namespace shiftedprime {

/// M_{a,q} = {theta : |theta - a/q| <= 1/(qQ)} on the torus [0, 1).
struct MajorArc {
  std::int64_t a = 1;
  std::int64_t q = 1;
  double center = 0.0;      // a/q reduced into [0, 1)
  double half_width = 0.0;  // 1/(qQ)
};

class ArcSystem {
 public:
  ArcSystem(double Q, double Qprime);

  double Q() const { return Q_; }
  double Qprime() const { return Qprime_; }
  const std::vector<MajorArc>& arcs() const { return arcs_; }
  std::int64_t max_denominator() const { return max_q_; }

  /// Sum over arcs of their lengths, sum_{q <= Q'} phi(q) 2/(qQ).
  double total_measure() const;
  /// True when the arcs are pairwise disjoint on the torus.
  bool disjoint() const { return disjoint_; }
  /// Q' <= sqrt(Q)/2, the regime in which disjointness is guaranteed.
  bool standard_regime() const;

  bool in_arc(double theta, std::int64_t a, std::int64_t q) const;
  bool in_major_arcs_of(double theta, std::int64_t q) const;  // theta in M*_q
  /// Smallest q <= Q' with theta in M*_q, or 0 for the minor arcs.
  std::int64_t denominator_at(double theta) const;
  /// denominator_at(k/M) for every k in [0, M).
  std::vector<std::int64_t> label_grid(std::int64_t M) const;

 private:
  double Q_;
  double Qprime_;
  std::int64_t max_q_;
  std::vector<MajorArc> arcs_;
  bool disjoint_ = true;
};

inline ArcSystem build_arcs(double Q, double Qprime) { return ArcSystem(Q, Qprime); }

/// Torus distance |theta - center| measured mod 1.
double torus_distance(double theta, double center);

struct MajorArcConstants {
  DichotomyConstants dichotomy;
  double C3 = 8.0;
  double c4 = 0.05;
  double zero_budget = 1.0;  // implied constant of the zero term
  double tail_budget = 1.0;  // implied constant of the (1 + N|delta|) dqN log^2 N / T term
  bool allow_out_of_hypothesis = false;
};

struct MajorArcReport {
  std::int64_t N = 0;
  double D = 0.0, T = 0.0;
  std::int64_t d = 1, q = 1, a = 1;
  double delta = 0.0;
  MajorArcConstants constants;
  DichotomyVerdict verdict;
  double lhs = 0.0;
  double f0 = 0.0;
  double term_main = 0.0;
  double term_zero = 0.0;
  double term_tail = 0.0;
  /// Exceptional regime only: (dN/phi(d)) (1 - beta_D) log(dT) / (4 c1).
  std::optional<double> f0_lower_term;
  double pass_ratio = 0.0;
  bool out_of_hypothesis = false;
  std::vector<std::string> notes;

  std::string regime() const { return verdict.exceptional ? "exceptional" : "unexceptional"; }
};

/// Evaluates |F_hat_{N,d}(a/q + delta)| and the regime's right-hand side
/// 2|F_hat(0)|/phi(q) + zero term + tail term with the configured budgets.
MajorArcReport verify_major_arc_bound(const LambdaTable& lambda, const DichotomyVerdict& verdict, std::int64_t N,
                                      std::int64_t d, std::int64_t q, std::int64_t a, double delta,
                                      const MajorArcConstants& constants);
MajorArcReport verify_major_arc_bound(const ZeroDatabase& db, const LambdaTable& lambda, std::int64_t N, double D,
                                      double T, std::int64_t d, std::int64_t q, std::int64_t a, double delta,
                                      const MajorArcConstants& constants);

void write_major_arc_csv_header(std::ostream& out);
void write_major_arc_csv_row(std::ostream& out, const MajorArcReport& r);

struct F0LowerBoundReport {
  std::int64_t N = 0, d = 1;
  DichotomyVerdict verdict;
  double f0 = 0.0;
  double main_term = 0.0;  // dN/(2 phi(d)), or the exceptional main term
  double tail = 0.0;       // tail_budget * dN log^2 N / T
  double lower_bound = 0.0;
  double margin = 0.0;     // f0 - lower_bound
  bool out_of_hypothesis = false;
  std::vector<std::string> notes;
};

F0LowerBoundReport verify_F0_lower_bound(const LambdaTable& lambda, const DichotomyVerdict& verdict, std::int64_t N,
                                         std::int64_t d, const MajorArcConstants& constants);
F0LowerBoundReport verify_F0_lower_bound(const ZeroDatabase& db, const LambdaTable& lambda, std::int64_t N, double D,
                                         double T, std::int64_t d, const MajorArcConstants& constants);

struct ExceptionalIntegralReport {
  double closed_form = 0.0;      // int_{N^{1/8}}^{dN} (1 - t^{beta-1}) dt
  double pointwise_bound = 0.0;  // (dN - N^{1/8}) x/(x+1), x = C3 (1-beta) log(dqT) / (8 C1)
  double shaped_bound = 0.0;     // (dN - N^{1/8}) (1-beta) log(dqT) / (2 c1)
  /// c1 C3 >= 8 C1 and (1 - beta) log(dqT) <= c1: the conditions under which
  /// pointwise_bound >= shaped_bound follows algebraically.
  bool constants_sufficient = false;
  bool pointwise_holds = false;
  bool shaped_holds = false;
};

/// Lower bound for the exceptional main-term integral. Throws hypothesis-violation unless
/// beta < 1 and N^{1/8} >= (dqT)^{C3/(8 C1)}.
ExceptionalIntegralReport exceptional_integral_lower_bound(double beta, std::int64_t d, std::int64_t q, double T,
                                                           double N, const MajorArcConstants& constants);

}  // namespace shiftedprime
