#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "shiftedprime/arith.hpp"
#include "shiftedprime/majorarcs.hpp"

namespace shiftedprime {

struct IncrementConstants {
  double c9 = 1.0;
  double c10 = 1.0;
  double C6 = 10.0;
  double c5 = 0.1;
  double c6 = 1.0;  // 0 disables the cap on d'
  double c7 = 0.1;
  double c8 = 0.05;
  double C4 = 1.0;
  double C5 = 1.0;
  double Cprime = 1.0;
};

/// Desk-scale replacement for the (Q', Q) formulas.
struct ArcOverride {
  double Qprime = 20.0;
  double Q = 500.0;
};

struct IncrementParameters {
  std::int64_t N = 0;
  std::int64_t d = 1;
  double alpha = 0.0;
  std::int64_t Nprime = 0;  // floor(c9 alpha N)
  double Qprime = 0.0;      // d^4 log^8 N' / (c10^2 alpha^2), unless overridden
  double Q = 0.0;           // N' / Q', unless overridden
  IncrementConstants constants;
  bool degenerate = false;  // Q < 2 Q'
  bool overridden = false;
  std::string interval = "[N']";  // the interval I of the balanced function
};

IncrementParameters compute_parameters(std::int64_t N, std::int64_t d, double alpha,
                                       const IncrementConstants& constants,
                                       std::optional<ArcOverride> override_arcs = std::nullopt);

struct EnergyProfile {
  std::vector<std::int64_t> q;      // 1..floor(Q')
  std::vector<double> energy;       // Riemann sum of |(1_A - alpha 1_I)^|^2 |F_hat_{N',d}| over M*_q
  double total_major = 0.0;
  double total_torus = 0.0;         // same weighted integrand over the whole torus
  double minor = 0.0;               // total_torus - total_major
  double unweighted_torus = 0.0;    // (1/M) sum_k |(1_A - alpha 1_I)^(k/M)|^2
  double unweighted_physical = 0.0; // sum_x (1_A - alpha 1_I)(x)^2
  double f0 = 0.0;                  // |F_hat_{N',d}(0)|
  double alpha = 0.0;
  std::int64_t M = 0;
};

/// Needs Lambda up to dN' + 1 and M >= 4N (grid-too-small otherwise). Arcs come from
/// build_arcs(Q, Q'); each grid point counts towards the smallest q whose arcs contain it.
EnergyProfile energy_profile(std::span<const std::int64_t> A, std::int64_t N, std::int64_t d,
                             const IncrementParameters& params, std::int64_t M, const LambdaTable& lambda);

void write_energy_csv(std::ostream& out, const EnergyProfile& profile);

struct ArcSplit {
  double threshold = 0.0;  // C6 alpha^{-3}
  std::vector<std::int64_t> q1, q2;
  double total1 = 0.0;
  double total2 = 0.0;
};

ArcSplit split_arcs(const EnergyProfile& profile, double alpha, double C6);

struct ArcSup {
  std::int64_t q = 1;
  double sup = 0.0;    // max |F_hat_{N',d}| over grid points of M*_q
  double ratio = 0.0;  // sup / (|F_hat(0)| / phi(q))
};

/// Sup of |F_hat_{N',d}| on the grid points of each M*_q, q <= Q'.
std::vector<ArcSup> sup_on_arcs(std::int64_t Nprime, std::int64_t d, const ArcSystem& arcs, std::int64_t M,
                                const LambdaTable& lambda);
ArcSup sup_on_arc(std::int64_t Nprime, std::int64_t d, std::int64_t q, const ArcSystem& arcs, std::int64_t M,
                  const LambdaTable& lambda);

struct IncrementSearch {
  std::int64_t max_difference = 64;  // exhaustive d' range
  double min_length_fraction = 0.01; // lengths below this fraction of N are not searched
  std::int64_t grid_factor = 4;      // M = grid_factor * N for the energy profile
  std::optional<ArcOverride> arcs;
};

struct Progression {
  std::int64_t difference = 1;
  std::int64_t start = 1;
  std::int64_t length = 0;
};

struct IncrementThresholds {
  double max_difference = 0.0;  // c6 alpha^{-3}; infinite when c6 = 0
  double min_length = 0.0;      // (c7 alpha / (d log N))^8 N
  double min_density = 0.0;     // alpha (1 + c8)
  bool difference_ok = false;
  bool length_ok = false;
  bool density_ok = false;
};

struct IncrementOutcome {
  bool found = false;
  std::int64_t dprime = 0;
  Progression progression;
  std::int64_t count = 0;  // |A cap P'|
  double new_density = 0.0;
  double alpha = 0.0;
  std::int64_t dominant_q = 0;  // q >= 2 with the largest M_1 energy, 0 when no profile was available
  IncrementThresholds thresholds;
  std::vector<std::string> notes;
};

/// Densest progression P' = {start + d'k} inside [N] over the searched (d', start, length) range;
/// found iff all three thresholds hold. Density ties go to multiples of the dominant q, then the
/// smallest d', start and the longest length. Sieves its own Lambda table for the energy profile.
IncrementOutcome extract_increment(std::span<const std::int64_t> A, std::int64_t N, std::int64_t d,
                                   const IncrementConstants& constants, const IncrementSearch& search = {});

struct IterationStep {
  std::int64_t step = 0;
  std::int64_t N = 0;
  std::int64_t d = 1;
  double alpha = 0.0;
  bool found = false;
  IncrementParameters params;
  IncrementOutcome outcome;
  double D = 0.0;           // exp(log N / (C'(log alpha^{-1} + log log N + 1)))
  double cap = 0.0;         // c5 D^{c5}
  bool within_cap = false;  // d alpha^{-1} <= cap
  bool above_floor = false; // D^{C4} < N
  bool next_valid = true;   // rescaled set passes validate under d d'
};

struct IterationOptions {
  IncrementSearch search;
  bool enforce_hypotheses = false;  // halt when the cap or floor fails
};

/// Each step rescales A cap P' to {(x - start)/d' + 1} in [length], with d <- d d'.
std::vector<IterationStep> run_iteration(std::span<const std::int64_t> A0, std::int64_t N,
                                         const IncrementConstants& constants, std::int64_t max_steps,
                                         const IterationOptions& options = {});

/// One JSON object for the step, without a trailing newline.
std::string step_json(const IterationStep& step);

}  // namespace shiftedprime
