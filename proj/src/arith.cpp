#include "shiftedprime/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

#include "shiftedprime/error.hpp"

namespace shiftedprime {

namespace {

void check_limit(std::int64_t x, std::int64_t max_limit) {
  if (x < 1) throw Error(ErrorKind::InvalidArgument, "sieve limit must be >= 1, got " + std::to_string(x));
  if (x > max_limit) {
    throw Error(ErrorKind::LimitExceeded,
                "sieve limit " + std::to_string(x) + " exceeds maximum " + std::to_string(max_limit));
  }
}

}  // namespace

PrimeSieve::PrimeSieve(std::int64_t limit, std::int64_t max_limit) : limit_(limit) {
  check_limit(limit, max_limit);
  spf_.assign(static_cast<std::size_t>(limit + 1), 0);
  // Linear sieve: every composite is struck exactly once by its smallest prime factor.
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes_) {
      const std::int64_t composite = static_cast<std::int64_t>(p) * i;
      if (p > spf_[i] || composite > limit) break;
      spf_[composite] = p;
    }
  }
}

bool PrimeSieve::is_prime(std::int64_t n) const {
  return n >= 2 && n <= limit_ && spf_[n] == static_cast<std::uint32_t>(n);
}

std::uint32_t PrimeSieve::smallest_prime_factor(std::int64_t n) const { return spf_[n]; }

LambdaTable::LambdaTable(std::int64_t limit, std::int64_t max_limit) : limit_(limit) {
  check_limit(limit, max_limit);
  PrimeSieve sieve(limit, max_limit);
  values_ = Eigen::VectorXd::Zero(limit + 1);
  for (std::int64_t n = 2; n <= limit; ++n) {
    const std::int64_t p = sieve.smallest_prime_factor(n);
    const std::int64_t rest = n / p;
    // n = p^k iff n/p is 1 or itself a power of the same p.
    if (rest == 1 || (sieve.smallest_prime_factor(rest) == p && values_[rest] > 0.0)) {
      values_[n] = std::log(static_cast<double>(p));
    }
  }
}

double LambdaTable::psi(double x) const {
  const auto top = std::min<std::int64_t>(limit_, static_cast<std::int64_t>(std::floor(x)));
  if (static_cast<double>(limit_) < std::floor(x)) {
    throw Error(ErrorKind::LimitExceeded, "psi(" + std::to_string(x) + ") beyond sieve limit");
  }
  double total = 0.0;
  for (std::int64_t n = 1; n <= top; ++n) total += values_[n];
  return total;
}

std::int64_t PrimePower::value() const {
  std::int64_t v = 1;
  for (int i = 0; i < exponent; ++i) v *= prime;
  return v;
}

FactoredInteger factor(std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "factor() needs n >= 1");
  FactoredInteger out;
  out.n = n;
  std::int64_t m = n;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.factors.push_back({p, e});
  }
  if (m > 1) out.factors.push_back({m, 1});
  return out;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
std::int64_t lcm(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

std::int64_t euler_phi(std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "euler_phi needs n >= 1");
  std::int64_t result = n;
  for (const auto& pp : factor(n).factors) result = result / pp.prime * (pp.prime - 1);
  return result;
}

int mobius(std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "mobius needs n >= 1");
  int sign = 1;
  for (const auto& pp : factor(n).factors) {
    if (pp.exponent > 1) return 0;
    sign = -sign;
  }
  return sign;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out{1};
  for (const auto& pp : factor(n).factors) {
    const std::size_t base = out.size();
    std::int64_t pk = 1;
    for (int e = 1; e <= pp.exponent; ++e) {
      pk *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t result = 1;
  base %= m;
  if (base < 0) base += m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = ((a % m) + m) % m, r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) throw Error(ErrorKind::NotCoprime, std::to_string(a) + " is not invertible mod " + std::to_string(m));
  return ((old_s % m) + m) % m;
}

std::int64_t crt(std::span<const std::int64_t> residues, std::span<const std::int64_t> moduli) {
  std::int64_t x = 0, modulus = 1;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    const std::int64_t m = moduli[i];
    const std::int64_t r = ((residues[i] % m) + m) % m;
    // x + modulus * t = r (mod m)
    const std::int64_t diff = ((r - x % m) % m + m) % m;
    const std::int64_t t = mul_mod(diff, inverse_mod(modulus % m, m), m);
    x += modulus * t;
    modulus *= m;
  }
  return x;
}

std::int64_t multiplicative_order(std::int64_t a, std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "modulus must be >= 1");
  if (gcd(a, n) != 1) {
    throw Error(ErrorKind::NotCoprime, std::to_string(a) + " and " + std::to_string(n) + " are not coprime");
  }
  if (n == 1) return 1;
  const std::int64_t group_order = euler_phi(n);
  std::int64_t order = group_order;
  for (const auto& pp : factor(group_order).factors) {
    for (int e = 0; e < pp.exponent; ++e) {
      if (pow_mod(a, order / pp.prime, n) == 1) {
        order /= pp.prime;
      } else {
        break;
      }
    }
  }
  return order;
}

std::optional<std::int64_t> primitive_root(std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "modulus must be >= 1");
  if (n <= 2) return 1;
  if (n == 4) return 3;
  const auto f = factor(n % 2 == 0 ? n / 2 : n).factors;
  // Cyclic unit groups: 1, 2, 4, p^k, 2p^k with p odd.
  if (f.size() != 1 || f[0].prime == 2) return std::nullopt;
  const std::int64_t group_order = euler_phi(n);
  const auto order_factors = factor(group_order).factors;
  for (std::int64_t g = 2; g < n; ++g) {
    if (gcd(g, n) != 1) continue;
    bool generator = true;
    for (const auto& pp : order_factors) {
      if (pow_mod(g, group_order / pp.prime, n) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  return std::nullopt;
}

std::vector<bool> shifted_prime_mask(std::int64_t N, std::int64_t d) {
  if (N < 1 || d < 1) throw Error(ErrorKind::InvalidArgument, "shifted_prime_mask needs N, d >= 1");
  std::vector<bool> mask(static_cast<std::size_t>(N + 1), false);
  PrimeSieve sieve(d * N + 1, std::numeric_limits<std::int64_t>::max());
  for (std::int64_t k = 1; k <= N; ++k) mask[k] = sieve.is_prime(d * k + 1);
  return mask;
}

std::vector<std::int64_t> shifted_prime_targets(std::int64_t N, std::int64_t d) {
  const auto mask = shifted_prime_mask(N, d);
  std::vector<std::int64_t> out;
  for (std::int64_t k = 1; k <= N; ++k) {
    if (mask[k]) out.push_back(k);
  }
  return out;
}

}  // namespace shiftedprime
