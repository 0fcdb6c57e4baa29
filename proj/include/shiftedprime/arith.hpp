#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace shiftedprime {

inline constexpr std::int64_t kDefaultSieveLimit = 100'000'000;

/// Smallest-prime-factor table on [0, limit]. spf[n] == n iff n is prime (n >= 2).
class PrimeSieve {
 public:
  explicit PrimeSieve(std::int64_t limit, std::int64_t max_limit = kDefaultSieveLimit);

  std::int64_t limit() const { return limit_; }
  bool is_prime(std::int64_t n) const;
  std::uint32_t smallest_prime_factor(std::int64_t n) const;
  const std::vector<std::uint32_t>& primes() const { return primes_; }

 private:
  std::int64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

/// Sieved von Mangoldt weights Lambda(n) for 1 <= n <= limit (natural log).
class LambdaTable {
 public:
  explicit LambdaTable(std::int64_t limit, std::int64_t max_limit = kDefaultSieveLimit);

  std::int64_t limit() const { return limit_; }
  double operator()(std::int64_t n) const { return values_[static_cast<Eigen::Index>(n)]; }
  // Index 0 is unused and holds 0.
  const Eigen::VectorXd& values() const { return values_; }

  /// Chebyshev psi(x) = sum_{n <= x} Lambda(n), summed in increasing n.
  double psi(double x) const;

 private:
  std::int64_t limit_;
  Eigen::VectorXd values_;
};

inline LambdaTable sieve_lambda(std::int64_t x, std::int64_t max_limit = kDefaultSieveLimit) {
  return LambdaTable(x, max_limit);
}

struct PrimePower {
  std::int64_t prime;
  int exponent;
  std::int64_t value() const;
};

struct FactoredInteger {
  std::int64_t n = 1;
  std::vector<PrimePower> factors;  // primes strictly increasing
};

FactoredInteger factor(std::int64_t n);
std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);
std::int64_t euler_phi(std::int64_t n);
int mobius(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);
bool is_prime(std::int64_t n);

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m);
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);

/// Solves x = r_i (mod m_i) for pairwise coprime moduli; result in [0, prod m_i).
std::int64_t crt(std::span<const std::int64_t> residues, std::span<const std::int64_t> moduli);

std::int64_t multiplicative_order(std::int64_t a, std::int64_t n);
/// Least primitive root mod n, or nullopt when (Z/nZ)^* is not cyclic.
std::optional<std::int64_t> primitive_root(std::int64_t n);

/// {(p-1)/d : p prime, d | p-1, 1 <= (p-1)/d <= N}, sorted ascending.
std::vector<std::int64_t> shifted_prime_targets(std::int64_t N, std::int64_t d);
/// Indicator form of shifted_prime_targets: mask[k] for k in [0, N].
std::vector<bool> shifted_prime_mask(std::int64_t N, std::int64_t d);

}  // namespace shiftedprime
