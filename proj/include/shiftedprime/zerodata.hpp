#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "shiftedprime/characters.hpp"

namespace shiftedprime {

/// A nontrivial zero rho = beta + i gamma of L(s, chi) for a primitive character.
struct ZeroEntry {
  CharacterId character;
  double beta = 0.5;
  double gamma = 0.0;
  int multiplicity = 1;
};

enum class ZeroFileFormat {
  ZetaHeights,  // one positive ordinate per line, beta = 1/2, character 1:0
  Tabular,      // "q index beta gamma [multiplicity]"
};

ZeroFileFormat parse_zero_format(const std::string& name);

/// Ingested zeros keyed by primitive character, with completeness heights.
///
/// Every source file carries a "# complete_to H" header: all zeros of the characters it lists
/// with |gamma| <= H are present. A tabular file may also declare "# covers_moduli_upto Q", which
/// extends that promise to every primitive character of modulus 2..Q, including ones with no
/// listed zeros; zeta itself is only ever covered by its own heights file. Queries above the completeness height of a character fail with incomplete-data.
class ZeroDatabase {
 public:
  void load(const std::filesystem::path& path, ZeroFileFormat format);
  /// Parses file contents directly; `source` names the input in errors and provenance.
  void load_text(const std::string& text, ZeroFileFormat format, const std::string& source);

  /// Height to which zeros of the primitive character `id` are complete, or nullopt.
  std::optional<double> completeness_height(const CharacterId& id) const;
  /// Raw entries for a primitive character (real-character mirrors included).
  std::span<const ZeroEntry> zeros(const CharacterId& id) const;
  const std::vector<std::string>& provenance() const { return provenance_; }
  std::int64_t entry_count() const;

 private:
  std::map<CharacterId, std::vector<ZeroEntry>> entries_;
  std::map<CharacterId, double> heights_;
  std::vector<std::pair<std::int64_t, double>> modulus_coverage_;  // (Q, H)
  std::vector<std::string> provenance_;
};

ZeroDatabase load_zeros(const std::filesystem::path& path, ZeroFileFormat format);

/// Z(chi; T): zeros of L(s, chi) with beta >= 1/2 and |gamma| <= T, multiplicity-expanded.
/// Non-primitive characters are resolved to their inducer.
std::vector<ZeroEntry> zero_window(const ZeroDatabase& db, const DirichletCharacter& chi, double T);
/// Z(q; T): union of Z(chi; T) over all characters mod q.
std::vector<ZeroEntry> zero_window(const ZeroDatabase& db, std::int64_t q, double T);

struct DichotomyConstants {
  double c1 = 0.05;
  double C1 = 10.0;
};

struct ExceptionalWitness {
  CharacterId character;
  std::int64_t modulus = 1;
  double beta = 0.0;
};

struct DichotomyVerdict {
  double D = 2.0;
  double T = 1.0;
  bool exceptional = false;
  std::optional<ExceptionalWitness> witness;
  DichotomyConstants constants;
  double threshold = 0.0;  // 1 - c1 / (C1 log(DT))
};

/// Scans real zeros of primitive characters of modulus <= D for beta >= 1 - c1/(C1 log(DT)).
/// More than one qualifying zero is reported as lemma-violation.
DichotomyVerdict detect_dichotomy(const ZeroDatabase& db, double D, double T, const DichotomyConstants& constants);

/// x 1_{principal}(chi) - sum_{rho in Z(chi;T)} x^rho / rho. Requires 1 <= T <= x^{1/4} unless
/// `allow_out_of_range` is set.
std::complex<double> explicit_psi(const ZeroDatabase& db, double x, const DirichletCharacter& chi, double T,
                                  bool allow_out_of_range = false);

/// sum over Z(dq;T) of |x^{rho-1}| = x^{beta-1}, optionally without one copy of the real zero
/// `exclude_beta`.
double zero_sum_decay(const ZeroDatabase& db, double x, std::int64_t d, std::int64_t q, double T,
                      std::optional<double> exclude_beta = std::nullopt);

/// CSV rows "q,index,beta,gamma" with a header line.
void write_zero_csv(std::ostream& out, std::span<const ZeroEntry> entries);

}  // namespace shiftedprime
