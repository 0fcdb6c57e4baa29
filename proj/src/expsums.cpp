#include "shiftedprime/expsums.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "shiftedprime/error.hpp"

namespace shiftedprime {

namespace {

void require_sieved(const LambdaTable& lambda, std::int64_t top) {
  if (top > lambda.limit()) {
    throw Error(ErrorKind::LimitExceeded,
                "needs Lambda up to " + std::to_string(top) + ", sieve limit is " + std::to_string(lambda.limit()));
  }
}

}  // namespace

FNdFunction make_F(const LambdaTable& lambda, std::int64_t N, std::int64_t d) {
  if (N < 1 || d < 1) throw Error(ErrorKind::InvalidArgument, "F_{N,d} needs N, d >= 1");
  require_sieved(lambda, d * N + 1);
  FNdFunction f{N, d, Eigen::VectorXd(N)};
  for (std::int64_t n = 1; n <= N; ++n) f.weights[n - 1] = lambda(d * n + 1);
  return f;
}

std::complex<double> S(const LambdaTable& lambda, double x, double delta, const DirichletCharacter& chi) {
  const auto top = static_cast<std::int64_t>(std::floor(x));
  require_sieved(lambda, top);
  std::complex<double> total = 0.0;
  for (std::int64_t n = 2; n <= top; ++n) {
    const double w = lambda(n);
    if (w == 0.0) continue;
    total += w * chi(n) * e(-static_cast<double>(n) * delta);
  }
  return total;
}

ComplexVector<double> S_all_characters(const LambdaTable& lambda, double x, double delta,
                                       const CharacterGroup& group) {
  const auto top = static_cast<std::int64_t>(std::floor(x));
  require_sieved(lambda, top);
  const std::int64_t q = group.modulus();
  ComplexVector<double> by_residue = ComplexVector<double>::Zero(q);
  for (std::int64_t n = 2; n <= top; ++n) {
    const double w = lambda(n);
    if (w == 0.0) continue;
    by_residue[n % q] += w * e(-static_cast<double>(n) * delta);
  }
  const Eigen::MatrixXcd table = group.table();
  return table * by_residue;
}

std::complex<double> G(std::int64_t a, std::int64_t q, std::int64_t d, const DirichletCharacter& chi) {
  if (q < 1 || d < 1) throw Error(ErrorKind::InvalidArgument, "G needs q, d >= 1");
  if (chi.modulus() != d * q) {
    throw Error(ErrorKind::ModulusMismatch, "character " + chi.id().str() + " is not of modulus dq = " +
                                                std::to_string(d * q));
  }
  std::complex<double> total = 0.0;
  for (std::int64_t m = 0; m < q; ++m) {
    total += root_of_unity(-a * m, q) * std::conj(chi(d * m + 1));
  }
  return total;
}

bool trivial_G_bound_check(std::int64_t a, std::int64_t q, std::int64_t d, const DirichletCharacter& chi) {
  return std::abs(G(a, q, d, chi)) <= static_cast<double>(q) + 1e-9;
}

std::complex<double> F_hat(const FNdFunction& f, double theta) {
  std::complex<double> total = 0.0;
  for (std::int64_t n = 1; n <= f.N; ++n) {
    const double w = f.weights[n - 1];
    if (w == 0.0) continue;
    total += w * e(-static_cast<double>(n) * theta);
  }
  return total;
}

std::complex<double> F_hat(const LambdaTable& lambda, std::int64_t N, std::int64_t d, double theta) {
  return F_hat(make_F(lambda, N, d), theta);
}

ComplexVector<double> fourier_grid(const Eigen::VectorXd& weights, std::int64_t M) {
  if (M < weights.size() || M < 1) {
    throw Error(ErrorKind::GridTooSmall,
                "grid size " + std::to_string(M) + " below support length " + std::to_string(weights.size()));
  }
  return transform_on_grid<double>(weights, M);
}

std::vector<FourierPoint> F_hat_grid(const LambdaTable& lambda, std::int64_t N, std::int64_t d, std::int64_t M) {
  const auto values = fourier_grid(make_F(lambda, N, d).weights, M);
  std::vector<FourierPoint> out(static_cast<std::size_t>(M));
  for (std::int64_t k = 0; k < M; ++k) {
    out[k] = {static_cast<double>(k) / static_cast<double>(M), values[k]};
  }
  return out;
}

DecompositionReport verify_decomposition(const LambdaTable& lambda, std::int64_t N, std::int64_t d, std::int64_t q,
                                         std::int64_t a, double kappa, double C) {
  if (gcd(a, q) != 1) {
    throw Error(ErrorKind::NotCoprime, "a = " + std::to_string(a) + " is not coprime to q = " + std::to_string(q));
  }
  if (std::abs(kappa) > 0.5) throw Error(ErrorKind::InvalidArgument, "kappa must lie in [-1/2, 1/2]");
  const std::int64_t x = d * N + 1;
  require_sieved(lambda, x);

  DecompositionReport r;
  r.N = N;
  r.d = d;
  r.q = q;
  r.a = a;
  r.kappa = kappa;
  const double theta = static_cast<double>(a) / static_cast<double>(q) + kappa;
  r.lhs = F_hat(lambda, N, d, theta);

  const CharacterGroup group(d * q);
  const double shift = kappa / static_cast<double>(d);
  const ComplexVector<double> sums = S_all_characters(lambda, static_cast<double>(x), shift, group);
  std::complex<double> total = 0.0;
  for (std::int64_t i = 0; i < group.size(); ++i) {
    total += sums[i] * G(a, q, d, group.character(i));
  }
  r.main = e(shift) * total / static_cast<double>(group.size());
  r.residual = std::abs(r.lhs - r.main);
  const double log_dn = std::log(static_cast<double>(d * N));
  r.budget = q >= 2 ? C * log_dn * std::log(static_cast<double>(q)) : C * log_dn;
  r.pass = r.residual <= r.budget;
  return r;
}

void write_decomposition_csv_header(std::ostream& out) { out << "N,d,q,a,kappa,residual,budget,pass\n"; }

void write_decomposition_csv_row(std::ostream& out, const DecompositionReport& r) {
  const auto old = out.precision(12);
  out << r.N << ',' << r.d << ',' << r.q << ',' << r.a << ',' << r.kappa << ',' << r.residual << ',' << r.budget
      << ',' << (r.pass ? 1 : 0) << '\n';
  out.precision(old);
}

std::complex<double> S_via_zeros(const ZeroDatabase& db, std::int64_t N, std::int64_t d, double delta,
                                 const DirichletCharacter& chi, double T, const QuadratureOptions& options) {
  if (N < 1 || d < 1) throw Error(ErrorKind::InvalidArgument, "S_via_zeros needs N, d >= 1");
  if (std::abs(delta) > 0.5) throw Error(ErrorKind::InvalidArgument, "delta must lie in [-1/2, 1/2]");
  if (T < 1.0) throw Error(ErrorKind::InvalidArgument, "S_via_zeros needs T >= 1");
  const double n_real = static_cast<double>(N);
  if (!options.allow_out_of_range && T > std::pow(n_real, 1.0 / 32.0)) {
    throw Error(ErrorKind::RangeViolation, "T = " + std::to_string(T) + " exceeds N^{1/32} = " +
                                               std::to_string(std::pow(n_real, 1.0 / 32.0)));
  }
  const auto window = zero_window(db, chi, T);
  double max_gamma = 1.0;
  for (const auto& z : window) max_gamma = std::max(max_gamma, std::abs(z.gamma));
  const double principal = chi.is_principal() ? 1.0 : 0.0;

  const double lower = std::pow(n_real, 0.125);
  const double upper = static_cast<double>(d * N + 1);
  if (upper <= lower) return 0.0;

  auto integrand = [&](double t) {
    const double log_t = std::log(t);
    std::complex<double> zeros = 0.0;
    for (const auto& z : window) zeros += std::polar(std::exp((z.beta - 1.0) * log_t), z.gamma * log_t);
    return (principal - zeros) * std::polar(1.0, -2.0 * std::numbers::pi * std::fmod(delta * t, 1.0));
  };

  // 4-point Gauss-Legendre nodes and weights on [-1, 1].
  static constexpr std::array<double, 4> nodes{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                               0.8611363115940526};
  static constexpr std::array<double, 4> weights{0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                                 0.3478548451374538};
  const double f = options.step_fraction;
  const double delta_step = delta == 0.0 ? std::numeric_limits<double>::infinity() : f / std::abs(delta);

  std::complex<double> total = 0.0;
  double t = lower;
  while (t < upper) {
    const double h = std::min({delta_step, f * t / max_gamma, upper - t});
    const double mid = t + 0.5 * h;
    std::complex<double> panel = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) panel += weights[i] * integrand(mid + 0.5 * h * nodes[i]);
    total += 0.5 * h * panel;
    t += h;
  }
  return total;
}

}  // namespace shiftedprime
