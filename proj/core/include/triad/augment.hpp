#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace triad {

enum class AugmentKind { jitter, warp };

/// One random segment corruption: where, how long, and with what parameters.
struct AugmentationSpec {
  AugmentKind kind = AugmentKind::jitter;
  std::size_t start = 0;   // j, offset within the window
  std::size_t length = 0;  // l
  double noise_sigma = 1.0;   // jitter
  double cutoff = 0.1;        // warp, normalized frequency in (0, 0.5)
  int filter_order = 2;       // warp
};

/// Digital low-pass Butterworth coefficients (b, a), a[0] == 1, DC gain 1.
/// Derived from the analog prototype via bilinear transform with frequency
/// pre-warping; cutoff is a fraction of the sampling rate in (0, 0.5).
struct FilterCoeffs {
  std::vector<double> b;
  std::vector<double> a;
  double max_pole_radius = 0.0;
};

FilterCoeffs butterworth_coeffs(double cutoff, int order);

/// Single causal pass, zero initial conditions.
std::vector<double> filter_forward(const FilterCoeffs& c, std::span<const double> x);

/// Zero-phase low-pass: forward then backward over an odd-reflection padded
/// copy, pad sized so boundary transients decay below ~1e-13.
std::vector<double> butterworth_lowpass(std::span<const double> signal, double cutoff,
                                        int order);

/// Adds N(0, sigma^2) noise to positions [j, j+l); the rest is untouched.
std::vector<double> jitter_segment(std::span<const double> window,
                                   const AugmentationSpec& spec, std::mt19937_64& rng);

/// Replaces [j, j+l) with the zero-phase filtered version of the whole
/// window; outside the segment the window is unchanged.
std::vector<double> warp_segment(std::span<const double> window,
                                 const AugmentationSpec& spec);

/// Draws kind, location, length, and parameters, applies the corruption, and
/// returns the spec for logging. Requires window length >= 8.
std::pair<std::vector<double>, AugmentationSpec> random_augment(
    std::span<const double> window, std::mt19937_64& rng);

} // namespace triad
