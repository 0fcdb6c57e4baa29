#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace shiftedprime {

inline constexpr std::int64_t kDefaultCharacterModulusLimit = 100'000;

/// Stable character label, serialized as "q:index". Index 0 is the principal character.
struct CharacterId {
  std::int64_t modulus = 1;
  std::int64_t index = 0;

  std::string str() const;
  static CharacterId parse(const std::string& text);
  friend bool operator==(const CharacterId&, const CharacterId&) = default;
  friend auto operator<=>(const CharacterId&, const CharacterId&) = default;
};

class DirichletCharacter {
 public:
  DirichletCharacter(CharacterId id, Eigen::VectorXcd values, std::int64_t conductor);

  const CharacterId& id() const { return id_; }
  std::int64_t modulus() const { return id_.modulus; }
  std::int64_t index() const { return id_.index; }
  std::int64_t conductor() const { return conductor_; }
  bool is_primitive() const { return conductor_ == id_.modulus; }
  bool is_principal() const { return id_.index == 0; }
  bool is_real() const { return is_real_; }

  /// chi(n) for any integer n (periodic with period q).
  std::complex<double> operator()(std::int64_t n) const {
    const std::int64_t q = id_.modulus;
    return values_[static_cast<Eigen::Index>(((n % q) + q) % q)];
  }
  const Eigen::VectorXcd& values() const { return values_; }

 private:
  CharacterId id_;
  Eigen::VectorXcd values_;
  std::int64_t conductor_;
  bool is_real_;
};

/// The full group of Dirichlet characters mod q.
///
/// Characters are labelled by exponent vectors with respect to fixed generators of the
/// cyclic factors of (Z/qZ)^*: for each odd prime power the least primitive root, for
/// 4 the class of -1, and for 2^k (k >= 3) the pair (-1, 5). Primes are taken in increasing
/// order and the exponent vector is read as a mixed-radix number, first factor most
/// significant, so index 0 is the principal character.
class CharacterGroup {
 public:
  explicit CharacterGroup(std::int64_t q, std::int64_t max_modulus = kDefaultCharacterModulusLimit);

  std::int64_t modulus() const { return q_; }
  std::int64_t size() const { return size_; }

  DirichletCharacter character(std::int64_t index) const;
  DirichletCharacter principal() const { return character(0); }
  std::vector<DirichletCharacter> characters() const;

  std::int64_t conjugate_index(std::int64_t index) const;
  std::vector<std::int64_t> exponents(std::int64_t index) const;
  std::int64_t index_of(std::span<const std::int64_t> exponents) const;

  /// Orders of the cyclic factors and their generators lifted to residues mod q.
  const std::vector<std::int64_t>& factor_orders() const { return orders_; }
  const std::vector<std::int64_t>& generators() const { return generators_; }

  /// Dense table: row i holds character i evaluated at 0..q-1.
  Eigen::MatrixXcd table() const;

 private:
  std::int64_t q_;
  std::int64_t size_;
  std::int64_t phase_denominator_;       // lcm of the factor orders
  std::vector<std::int64_t> orders_;
  std::vector<std::int64_t> generators_;
  // Discrete logs: unit_logs_[n * factors + i] is the log of n in factor i, or -1 off units.
  std::vector<std::int64_t> unit_logs_;
};

/// Smallest f | q such that chi is induced from a character mod f, and that primitive character.
std::pair<std::int64_t, DirichletCharacter> conductor_and_inducer(const DirichletCharacter& chi);

/// chi(n) == inducer(n) * principal_q(n) on every sampled n, to 1e-12.
bool verify_induction_identity(const DirichletCharacter& chi, const DirichletCharacter& inducer,
                               std::span<const std::int64_t> sample);

/// Max deviation of (1/phi(q)) sum_chi chi(a) conj(chi(b)) from [a == b] over units a, b.
double column_orthogonality_error(const CharacterGroup& group);
/// Max deviation of sum_{n mod q} chi(n) from phi(q) [chi principal], and of the row Gram
/// matrix from phi(q) I.
double row_orthogonality_error(const CharacterGroup& group);

/// e(r / m) with exact values at multiples of a quarter turn.
std::complex<double> root_of_unity(std::int64_t r, std::int64_t m);

}  // namespace shiftedprime
