#pragma once

#include <complex>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "shiftedprime/arith.hpp"
#include "shiftedprime/characters.hpp"
#include "shiftedprime/fourier.hpp"
#include "shiftedprime/zerodata.hpp"

namespace shiftedprime {

/// F_{N,d}(n) = Lambda(dn + 1) on [N]; weights[n - 1] holds the value at n.
struct FNdFunction {
  std::int64_t N = 0;
  std::int64_t d = 1;
  Eigen::VectorXd weights;
};

FNdFunction make_F(const LambdaTable& lambda, std::int64_t N, std::int64_t d);

struct FourierPoint {
  double theta = 0.0;
  std::complex<double> value;
};

/// S_x(delta, chi) = sum_{n <= x} Lambda(n) chi(n) e(-n delta), summed directly.
std::complex<double> S(const LambdaTable& lambda, double x, double delta, const DirichletCharacter& chi);

/// S_x(delta, chi) for every character of `group` at once. Groups the sum by residue class,
/// sum_r chi(r) W_r with W_r = sum_{n <= x, n = r mod q} Lambda(n) e(-n delta).
ComplexVector<double> S_all_characters(const LambdaTable& lambda, double x, double delta,
                                       const CharacterGroup& group);

/// G_{a,q,d,chi} = sum_{m=0}^{q-1} e(-am/q) conj(chi)(dm + 1), chi of modulus dq.
std::complex<double> G(std::int64_t a, std::int64_t q, std::int64_t d, const DirichletCharacter& chi);

/// |G_{a,q,d,chi}| <= q up to 1e-9.
bool trivial_G_bound_check(std::int64_t a, std::int64_t q, std::int64_t d, const DirichletCharacter& chi);

/// Fourier transform of F_{N,d} at theta, by direct summation.
std::complex<double> F_hat(const LambdaTable& lambda, std::int64_t N, std::int64_t d, double theta);
std::complex<double> F_hat(const FNdFunction& f, double theta);

/// F_hat at theta = k/M for k in [0, M), via a length-M DFT. Needs M >= N.
std::vector<FourierPoint> F_hat_grid(const LambdaTable& lambda, std::int64_t N, std::int64_t d, std::int64_t M);
ComplexVector<double> fourier_grid(const Eigen::VectorXd& weights, std::int64_t M);

struct DecompositionReport {
  std::int64_t N = 0, d = 1, q = 1, a = 1;
  double kappa = 0.0;
  std::complex<double> lhs;   // F_hat(a/q + kappa), direct
  std::complex<double> main;  // character-sum expression
  double residual = 0.0;
  double budget = 0.0;
  bool pass = false;
};

/// Compares F_hat_{N,d}(a/q + kappa) with
/// (1/phi(dq)) sum_{chi mod dq} e(kappa/d) S_{dN+1}(kappa/d, chi) G_{a,q,d,chi}.
/// Passes when the residual is within C log(dN) log q (C log(dN) when q = 1).
DecompositionReport verify_decomposition(const LambdaTable& lambda, std::int64_t N, std::int64_t d, std::int64_t q,
                                         std::int64_t a, double kappa, double C = 10.0);

void write_decomposition_csv_header(std::ostream& out);
void write_decomposition_csv_row(std::ostream& out, const DecompositionReport& r);

struct QuadratureOptions {
  bool allow_out_of_range = false;  // skip the 1 <= T <= N^{1/32} precondition
  double step_fraction = 1.0 / 16.0;
};

/// int_{N^{1/8}}^{dN+1} (1_{principal}(chi) - sum_{rho in Z(chi;T)} t^{rho-1}) e^{-2 pi i delta t} dt.
///
/// Composite 4-point Gauss-Legendre; each panel is at most min(f/|delta|, f t/max(|gamma|,1))
/// wide, f = step_fraction, so both oscillations are resolved.
std::complex<double> S_via_zeros(const ZeroDatabase& db, std::int64_t N, std::int64_t d, double delta,
                                 const DirichletCharacter& chi, double T, const QuadratureOptions& options = {});

}  // namespace shiftedprime
