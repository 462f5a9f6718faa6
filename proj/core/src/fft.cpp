#include "triad/fft.hpp"

#include <cmath>
#include <numbers>

#include "triad/error.hpp"

namespace triad {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Chirp e^{-i*pi*m^2/n} with the quadratic exponent reduced mod 2n first,
// so the angle stays small and accurate for large m.
std::complex<double> chirp(std::uint64_t m, std::uint64_t n) {
  std::uint64_t q = (m * m) % (2 * n);
  double angle = -std::numbers::pi * static_cast<double>(q) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

std::vector<std::complex<double>> bluestein(std::span<const double> x) {
  const std::size_t n = x.size();
  const std::size_t m = next_pow2(2 * n - 1);

  std::vector<std::complex<double>> a(m), b(m);
  for (std::size_t i = 0; i < n; ++i) a[i] = x[i] * chirp(i, n);
  b[0] = std::conj(chirp(0, n));
  for (std::size_t i = 1; i < n; ++i) {
    b[i] = std::conj(chirp(i, n));
    b[m - i] = b[i];
  }

  fft_pow2(a, false);
  fft_pow2(b, false);
  for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
  fft_pow2(a, true);

  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp(k, n);
  return out;
}

} // namespace

void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (!is_pow2(n)) raise(ErrorKind::usage, "fft_pow2: length must be a power of two");

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = (inverse ? kTwoPi : -kTwoPi) / static_cast<double>(len);
    const std::complex<double> wl{std::cos(angle), std::sin(angle)};
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w{1.0, 0.0};
      for (std::size_t k = 0; k < len / 2; ++k) {
        const auto u = a[i + k];
        const auto v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }

  if (inverse) {
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& v : a) v *= inv;
  }
}

std::vector<std::complex<double>> dft_real(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) raise(ErrorKind::usage, "dft_real: empty input");
  if (n == 1) return {std::complex<double>{x[0], 0.0}};

  if (is_pow2(n)) {
    std::vector<std::complex<double>> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = x[i];
    fft_pow2(a, false);
    return a;
  }
  return bluestein(x);
}

std::vector<std::complex<double>> dft_naive(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      const double angle = -kTwoPi * static_cast<double>(k) * static_cast<double>(i) /
                           static_cast<double>(n);
      acc += x[i] * std::complex<double>{std::cos(angle), std::sin(angle)};
    }
    out[k] = acc;
  }
  return out;
}

} // namespace triad
