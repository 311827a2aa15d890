#include "awalk/fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace awalk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// In-place iterative radix-2, n a power of two. sign = -1 forward.
void fft_pow2(std::vector<cdouble>& v, int sign) {
  const std::size_t n = v.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(v[i], v[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * kTwoPi / static_cast<double>(len);
    const cdouble wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cdouble w(1.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        cdouble u = v[i + k];
        cdouble t = w * v[i + k + len / 2];
        v[i + k] = u + t;
        v[i + k + len / 2] = u - t;
        w *= wl;
      }
    }
  }
}

// Bluestein chirp-z for arbitrary n: X_r = conj(w_r) * sum_k (v_k conj(w_k)) w_{r-k}
// with w_k = e(sign * k^2 / 2n). k^2 is reduced mod 2n in integer arithmetic
// so the chirp phase stays exact for large n.
std::vector<cdouble> bluestein(const std::vector<cdouble>& v, int sign) {
  const std::size_t n = v.size();
  const std::size_t m = std::bit_ceil(2 * n - 1);
  std::vector<cdouble> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t k2 = static_cast<std::size_t>((static_cast<__uint128_t>(k) * k) % (2 * n));
    const double ang = sign * std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
    w[k] = cdouble(std::cos(ang), std::sin(ang));
  }
  std::vector<cdouble> x(m, cdouble(0)), y(m, cdouble(0));
  for (std::size_t k = 0; k < n; ++k) x[k] = v[k] * std::conj(w[k]);
  y[0] = w[0];
  for (std::size_t k = 1; k < n; ++k) y[k] = y[m - k] = w[k];
  fft_pow2(x, -1);
  fft_pow2(y, -1);
  for (std::size_t k = 0; k < m; ++k) x[k] *= y[k];
  fft_pow2(x, +1);
  std::vector<cdouble> out(n);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t r = 0; r < n; ++r) out[r] = std::conj(w[r]) * x[r] * scale;
  return out;
}

}  // namespace

std::vector<cdouble> dft_direct(const std::vector<cdouble>& v, bool inverse) {
  const std::size_t n = v.size();
  const int sign = inverse ? +1 : -1;
  std::vector<cdouble> out(n);
  for (std::size_t r = 0; r < n; ++r) {
    cdouble acc(0);
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t rx = static_cast<std::size_t>((static_cast<__uint128_t>(r) * x) % n);
      const double ang = sign * kTwoPi * static_cast<double>(rx) / static_cast<double>(n);
      acc += v[x] * cdouble(std::cos(ang), std::sin(ang));
    }
    out[r] = inverse ? acc / static_cast<double>(n) : acc;
  }
  return out;
}

std::vector<cdouble> dft_fast(const std::vector<cdouble>& v, bool inverse) {
  const std::size_t n = v.size();
  if (n == 0) return {};
  const int sign = inverse ? +1 : -1;
  std::vector<cdouble> out;
  if (std::has_single_bit(n)) {
    out = v;
    fft_pow2(out, sign);
  } else {
    out = bluestein(v, sign);
  }
  if (inverse)
    for (auto& z : out) z /= static_cast<double>(n);
  return out;
}

std::vector<cdouble> dft(const std::vector<cdouble>& v, bool inverse) {
  return v.size() <= kDirectDftCrossover ? dft_direct(v, inverse) : dft_fast(v, inverse);
}

}  // namespace awalk
