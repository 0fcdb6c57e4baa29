#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

namespace shiftedprime {

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

namespace detail {

inline bool has_only_small_factors(std::int64_t m) {
  for (std::int64_t p : {2, 3, 5, 7}) {
    while (m % p == 0) m /= p;
  }
  return m == 1;
}

inline std::int64_t next_power_of_two(std::int64_t n) {
  std::int64_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace detail

/// Forward DFT, out[k] = sum_n in[n] e(-nk/M), for any length M.
///
/// Smooth lengths go straight to Eigen's FFT; other lengths use Bluestein's chirp-z
/// identity nk = (n^2 + k^2 - (k-n)^2)/2 with a power-of-two convolution.
template <typename Scalar>
ComplexVector<Scalar> dft(const ComplexVector<Scalar>& in) {
  using Complex = std::complex<Scalar>;
  const std::int64_t m = in.size();
  if (m == 0) return {};
  Eigen::FFT<Scalar> fft;
  if (detail::has_only_small_factors(m)) {
    std::vector<Complex> src(in.data(), in.data() + m), dst;
    fft.fwd(dst, src);
    return Eigen::Map<ComplexVector<Scalar>>(dst.data(), m);
  }

  // chirp[n] = e(-n^2 / (2M)); n^2 is reduced mod 2M so the angle stays exact in double.
  std::vector<Complex> chirp(static_cast<std::size_t>(m));
  const std::int64_t two_m = 2 * m;
  for (std::int64_t n = 0; n < m; ++n) {
    const std::int64_t sq = static_cast<std::int64_t>((static_cast<__int128>(n) * n) % two_m);
    const Scalar angle = -std::numbers::pi_v<Scalar> * static_cast<Scalar>(sq) / static_cast<Scalar>(m);
    chirp[n] = Complex(std::cos(angle), std::sin(angle));
  }
  const std::int64_t len = detail::next_power_of_two(2 * m - 1);
  std::vector<Complex> a(static_cast<std::size_t>(len), Complex(0)), b(static_cast<std::size_t>(len), Complex(0));
  for (std::int64_t n = 0; n < m; ++n) a[n] = in[n] * chirp[n];
  b[0] = std::conj(chirp[0]);
  for (std::int64_t n = 1; n < m; ++n) b[n] = b[len - n] = std::conj(chirp[n]);

  std::vector<Complex> fa, fb, conv;
  fft.fwd(fa, a);
  fft.fwd(fb, b);
  for (std::int64_t i = 0; i < len; ++i) fa[i] *= fb[i];
  fft.inv(conv, fa);  // Eigen's inverse is normalised by 1/len

  ComplexVector<Scalar> out(m);
  for (std::int64_t k = 0; k < m; ++k) out[k] = conv[k] * chirp[k];
  return out;
}

/// Transform of a function supported on 1..weights.size() (weights[0] is f(1)) sampled at
/// theta = k/M for k in [0, M). Requires M >= weights.size(); index n is placed at n mod M.
template <typename Scalar>
ComplexVector<Scalar> transform_on_grid(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& weights, std::int64_t m) {
  ComplexVector<Scalar> buffer = ComplexVector<Scalar>::Zero(m);
  for (Eigen::Index i = 0; i < weights.size(); ++i) buffer[(i + 1) % m] += weights[i];
  return dft<Scalar>(buffer);
}

/// e(theta) = exp(2 pi i theta).
template <typename Scalar>
std::complex<Scalar> e(Scalar theta) {
  // Reduce first so large arguments keep their fractional part.
  const Scalar frac = theta - std::floor(theta);
  const Scalar angle = 2 * std::numbers::pi_v<Scalar> * frac;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace shiftedprime
