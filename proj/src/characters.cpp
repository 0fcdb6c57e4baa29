#include "shiftedprime/characters.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "shiftedprime/arith.hpp"
#include "shiftedprime/error.hpp"

namespace shiftedprime {

namespace {

constexpr double kUnitTolerance = 1e-12;

bool near(std::complex<double> a, std::complex<double> b, double tol = kUnitTolerance) {
  return std::abs(a - b) <= tol;
}

std::int64_t smallest_conductor(const Eigen::VectorXcd& values, std::int64_t q) {
  for (std::int64_t f : divisors(q)) {
    bool trivial_on_kernel = true;
    for (std::int64_t n = 1; n < q && trivial_on_kernel; n += f) {
      if (gcd(n, q) != 1) continue;
      trivial_on_kernel = near(values[n], 1.0);
    }
    if (trivial_on_kernel) return f;
  }
  return q;
}

}  // namespace

std::string CharacterId::str() const { return std::to_string(modulus) + ":" + std::to_string(index); }

CharacterId CharacterId::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::ParseError, "character id '" + text + "' is not q:index");
  try {
    std::size_t used = 0;
    CharacterId id;
    id.modulus = std::stoll(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("modulus");
    const std::string tail = text.substr(colon + 1);
    id.index = std::stoll(tail, &used);
    if (used != tail.size()) throw std::invalid_argument("index");
    if (id.modulus < 1 || id.index < 0) throw std::invalid_argument("range");
    return id;
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "character id '" + text + "' is not q:index");
  }
}

std::complex<double> root_of_unity(std::int64_t r, std::int64_t m) {
  r = ((r % m) + m) % m;
  const std::int64_t g = std::gcd(r, m);
  r /= g;
  m /= g;
  if (m == 1) return {1.0, 0.0};
  if (m == 2) return {-1.0, 0.0};
  if (m == 4) return r == 1 ? std::complex<double>{0.0, 1.0} : std::complex<double>{0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(m);
  return {std::cos(angle), std::sin(angle)};
}

DirichletCharacter::DirichletCharacter(CharacterId id, Eigen::VectorXcd values, std::int64_t conductor)
    : id_(id), values_(std::move(values)), conductor_(conductor) {
  is_real_ = true;
  for (Eigen::Index n = 0; n < values_.size(); ++n) {
    if (values_[n].imag() != 0.0) {
      is_real_ = false;
      break;
    }
  }
}

CharacterGroup::CharacterGroup(std::int64_t q, std::int64_t max_modulus) : q_(q) {
  if (q < 1) throw Error(ErrorKind::InvalidArgument, "character modulus must be >= 1");
  if (q > max_modulus) {
    throw Error(ErrorKind::LimitExceeded,
                "character modulus " + std::to_string(q) + " exceeds maximum " + std::to_string(max_modulus));
  }

  // One entry per cyclic factor: (prime power, generator mod prime power, order).
  struct Factor {
    std::int64_t prime_power;
    std::int64_t generator;
    std::int64_t order;
  };
  std::vector<Factor> factors;
  for (const auto& pp : factor(q).factors) {
    const std::int64_t pk = pp.value();
    if (pp.prime != 2) {
      factors.push_back({pk, *primitive_root(pk), euler_phi(pk)});
    } else if (pp.exponent == 2) {
      factors.push_back({pk, pk - 1, 2});
    } else if (pp.exponent >= 3) {
      factors.push_back({pk, pk - 1, 2});
      factors.push_back({pk, 5, pk / 4});
    }
  }

  const std::size_t k = factors.size();
  size_ = 1;
  phase_denominator_ = 1;
  std::vector<std::int64_t> prime_powers;
  for (const auto& f : factors) {
    orders_.push_back(f.order);
    size_ *= f.order;
    phase_denominator_ = std::lcm(phase_denominator_, f.order);
    if (prime_powers.empty() || prime_powers.back() != f.prime_power) prime_powers.push_back(f.prime_power);
  }

  // Generators lifted to q: g mod its prime power, 1 mod the other prime powers.
  for (const auto& f : factors) {
    std::vector<std::int64_t> residues;
    for (std::int64_t pk : prime_powers) residues.push_back(pk == f.prime_power ? f.generator : 1);
    generators_.push_back(q == 1 ? 0 : crt(residues, prime_powers));
  }

  unit_logs_.assign(static_cast<std::size_t>(q * static_cast<std::int64_t>(k)), -1);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& f = factors[i];
    const bool two_adic_pair = (f.prime_power % 2 == 0) && f.prime_power >= 8;
    // log table of the generator inside (Z / p^e)^*
    std::vector<std::int64_t> log_table(static_cast<std::size_t>(f.prime_power), -1);
    std::int64_t power = 1;
    for (std::int64_t e = 0; e < f.order; ++e) {
      log_table[power] = e;
      power = power * f.generator % f.prime_power;
    }
    for (std::int64_t n = 0; n < q; ++n) {
      if (gcd(n, q) != 1) continue;
      std::int64_t r = n % f.prime_power;
      std::int64_t log = 0;
      if (two_adic_pair) {
        const bool minus = (r % 4 == 3);
        if (f.generator != 5) {
          log = minus ? 1 : 0;
        } else {
          if (minus) r = f.prime_power - r;
          log = log_table[r];
        }
      } else {
        log = log_table[r];
      }
      unit_logs_[static_cast<std::size_t>(n) * k + i] = log;
    }
  }
}

std::vector<std::int64_t> CharacterGroup::exponents(std::int64_t index) const {
  if (index < 0 || index >= size_) {
    throw Error(ErrorKind::InvalidArgument,
                "character index " + std::to_string(index) + " out of range mod " + std::to_string(q_));
  }
  std::vector<std::int64_t> out(orders_.size());
  for (std::size_t i = orders_.size(); i-- > 0;) {
    out[i] = index % orders_[i];
    index /= orders_[i];
  }
  return out;
}

std::int64_t CharacterGroup::index_of(std::span<const std::int64_t> exps) const {
  std::int64_t index = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    index = index * orders_[i] + ((exps[i] % orders_[i]) + orders_[i]) % orders_[i];
  }
  return index;
}

std::int64_t CharacterGroup::conjugate_index(std::int64_t index) const {
  auto exps = exponents(index);
  for (std::size_t i = 0; i < exps.size(); ++i) exps[i] = (orders_[i] - exps[i]) % orders_[i];
  return index_of(exps);
}

DirichletCharacter CharacterGroup::character(std::int64_t index) const {
  const auto exps = exponents(index);
  const std::size_t k = orders_.size();
  Eigen::VectorXcd values = Eigen::VectorXcd::Zero(q_);
  for (std::int64_t n = 0; n < q_; ++n) {
    const std::int64_t* logs = unit_logs_.data() + static_cast<std::size_t>(n) * k;
    if (q_ == 1) {
      values[n] = 1.0;
      continue;
    }
    if (k > 0 && logs[0] < 0) continue;
    if (k == 0 && gcd(n, q_) != 1) continue;
    std::int64_t phase = 0;
    for (std::size_t i = 0; i < k; ++i) {
      phase = (phase + exps[i] * logs[i] % orders_[i] * (phase_denominator_ / orders_[i])) % phase_denominator_;
    }
    values[n] = root_of_unity(phase, phase_denominator_);
  }
  const std::int64_t conductor = smallest_conductor(values, q_);
  return DirichletCharacter({q_, index}, std::move(values), conductor);
}

std::vector<DirichletCharacter> CharacterGroup::characters() const {
  std::vector<DirichletCharacter> out;
  out.reserve(static_cast<std::size_t>(size_));
  for (std::int64_t i = 0; i < size_; ++i) out.push_back(character(i));
  return out;
}

Eigen::MatrixXcd CharacterGroup::table() const {
  Eigen::MatrixXcd out(size_, q_);
  for (std::int64_t i = 0; i < size_; ++i) out.row(i) = character(i).values().transpose();
  return out;
}

std::pair<std::int64_t, DirichletCharacter> conductor_and_inducer(const DirichletCharacter& chi) {
  const std::int64_t q = chi.modulus();
  const std::int64_t f = chi.conductor();
  if (f == q) return {f, chi};

  const CharacterGroup group(f, std::max<std::int64_t>(f, kDefaultCharacterModulusLimit));
  // chi_1(g) for each generator g mod f, read off a lift of g that is coprime to q.
  std::vector<std::int64_t> exps;
  const auto& gens = group.generators();
  const auto& orders = group.factor_orders();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::int64_t lift = gens[i];
    while (gcd(lift, q) != 1) lift += f;
    const double angle = std::arg(chi(lift));
    const double turns = angle / (2.0 * std::numbers::pi) * static_cast<double>(orders[i]);
    exps.push_back(((std::llround(turns) % orders[i]) + orders[i]) % orders[i]);
  }
  return {f, group.character(group.index_of(exps))};
}

bool verify_induction_identity(const DirichletCharacter& chi, const DirichletCharacter& inducer,
                               std::span<const std::int64_t> sample) {
  const std::int64_t q = chi.modulus();
  for (std::int64_t n : sample) {
    const std::complex<double> principal = gcd(n, q) == 1 ? 1.0 : 0.0;
    if (!near(chi(n), inducer(n) * principal)) return false;
  }
  return true;
}

double column_orthogonality_error(const CharacterGroup& group) {
  const std::int64_t q = group.modulus();
  std::vector<Eigen::Index> units;
  for (std::int64_t n = 0; n < q; ++n) {
    if (gcd(n, q) == 1) units.push_back(n);
  }
  const Eigen::MatrixXcd table = group.table();
  Eigen::MatrixXcd unit_columns(table.rows(), static_cast<Eigen::Index>(units.size()));
  for (std::size_t j = 0; j < units.size(); ++j) unit_columns.col(static_cast<Eigen::Index>(j)) = table.col(units[j]);
  const Eigen::MatrixXcd gram =
      (unit_columns.adjoint() * unit_columns) / static_cast<double>(group.size());
  const auto identity = Eigen::MatrixXcd::Identity(gram.rows(), gram.cols());
  return (gram - identity).cwiseAbs().maxCoeff();
}

double row_orthogonality_error(const CharacterGroup& group) {
  const Eigen::MatrixXcd table = group.table();
  const double phi = static_cast<double>(group.size());
  double worst = 0.0;
  const Eigen::VectorXcd row_sums = table.rowwise().sum();
  for (Eigen::Index i = 0; i < row_sums.size(); ++i) {
    const double expected = i == 0 ? phi : 0.0;
    worst = std::max(worst, std::abs(row_sums[i] - expected));
  }
  const Eigen::MatrixXcd gram = table * table.adjoint();
  const Eigen::MatrixXcd identity = phi * Eigen::MatrixXcd::Identity(gram.rows(), gram.cols());
  return std::max(worst, (gram - identity).cwiseAbs().maxCoeff());
}

}  // namespace shiftedprime
