#pragma once

#include <complex>
#include <span>
#include <vector>

namespace triad {

/// Unnormalized forward DFT of a real signal: X[k] = sum_n x[n] e^{-2*pi*i*k*n/N}.
/// Radix-2 Cooley-Tukey for power-of-two lengths, Bluestein otherwise, so every
/// length runs in O(N log N). Matches the naive sum to roundoff.
std::vector<std::complex<double>> dft_real(std::span<const double> x);

/// In-place radix-2 transform; n must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse);

/// O(N^2) reference evaluation of the same sum. Test oracle; keep independent
/// of dft_real.
std::vector<std::complex<double>> dft_naive(std::span<const double> x);

} // namespace triad
