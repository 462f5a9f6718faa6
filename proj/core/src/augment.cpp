#include "triad/augment.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "triad/error.hpp"

namespace triad {

namespace {

void validate_segment(std::size_t window_len, const AugmentationSpec& spec) {
  if (spec.length < 1 || spec.start + spec.length > window_len)
    raise(ErrorKind::config, "augment: segment [j, j+l) outside the window");
}

// Value of the odd-reflection extension of x at any integer index t.
// Each fold is anti-symmetric about an endpoint value, composed as an
// affine transform so arbitrarily long pads work on short signals.
double odd_ext(std::span<const double> x, std::ptrdiff_t t) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  if (n == 1) return x[0];
  double sign = 1.0;
  double offset = 0.0;
  while (t < 0 || t >= n) {
    if (t < 0) {
      offset += sign * 2.0 * x[0];
      sign = -sign;
      t = -t;
    } else {
      offset += sign * 2.0 * x[n - 1];
      sign = -sign;
      t = 2 * (n - 1) - t;
    }
  }
  return offset + sign * x[static_cast<std::size_t>(t)];
}

std::size_t pad_length(const FilterCoeffs& c) {
  const double rho = c.max_pole_radius;
  const std::size_t order_floor = 3 * c.a.size();
  if (rho <= 0.0 || rho >= 1.0) return order_floor;
  // rho^p < 1e-13  =>  p > -13 ln 10 / ln rho
  const double p = std::ceil(-13.0 * std::numbers::ln10 / std::log(rho));
  return std::clamp<std::size_t>(static_cast<std::size_t>(p), order_floor, 8192);
}

} // namespace

FilterCoeffs butterworth_coeffs(double cutoff, int order) {
  if (!(cutoff > 0.0 && cutoff < 0.5))
    raise(ErrorKind::config, "butterworth: cutoff must lie strictly in (0, 0.5)");
  if (order < 1 || order > 4)
    raise(ErrorKind::config, "butterworth: order must lie in [1, 4]");

  using cplx = std::complex<double>;
  const double warped = std::tan(std::numbers::pi * cutoff);

  // Left-half-plane analog poles, mapped through s = (z-1)/(z+1).
  std::vector<cplx> zpoles(static_cast<std::size_t>(order));
  double max_radius = 0.0;
  for (int k = 0; k < order; ++k) {
    const double theta =
        std::numbers::pi * (2.0 * k + order + 1.0) / (2.0 * order);
    const cplx sp = warped * cplx{std::cos(theta), std::sin(theta)};
    zpoles[static_cast<std::size_t>(k)] = (1.0 + sp) / (1.0 - sp);
    max_radius = std::max(max_radius, std::abs(zpoles[static_cast<std::size_t>(k)]));
  }
  if (max_radius >= 1.0)
    raise(ErrorKind::config, "butterworth: unstable pole at this cutoff");

  // Denominator prod(z - z_k), expanded in descending powers of z.
  std::vector<cplx> den{1.0};
  for (const cplx& p : zpoles) {
    std::vector<cplx> next(den.size() + 1, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < den.size(); ++i) {
      next[i] += den[i];
      next[i + 1] -= den[i] * p;
    }
    den = std::move(next);
  }

  // Numerator K (z+1)^n with K fixed by H(1) = 1.
  cplx k_gain{1.0, 0.0};
  for (const cplx& p : zpoles) k_gain *= (1.0 - p);
  k_gain /= std::pow(2.0, order);

  FilterCoeffs c;
  c.max_pole_radius = max_radius;
  c.a.resize(den.size());
  c.b.resize(den.size());
  double binom = 1.0;
  for (std::size_t i = 0; i < den.size(); ++i) {
    c.a[i] = den[i].real();
    c.b[i] = (k_gain * binom).real();
    binom = binom * static_cast<double>(order - static_cast<int>(i)) /
            static_cast<double>(i + 1);
  }

  // Pin the transfer function's DC gain to exactly sum(b)/sum(a) = 1.
  double sa = 0.0, sb = 0.0;
  for (double v : c.a) sa += v;
  for (double v : c.b) sb += v;
  const double fix = sa / sb;
  for (double& v : c.b) v *= fix;
  return c;
}

std::vector<double> filter_forward(const FilterCoeffs& c, std::span<const double> x) {
  const std::size_t m = c.a.size();
  std::vector<double> state(m, 0.0);  // transposed direct form II
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const double yi = c.b[0] * xi + state[1 % m];
    for (std::size_t j = 1; j + 1 < m; ++j)
      state[j] = c.b[j] * xi + state[j + 1] - c.a[j] * yi;
    if (m > 1) state[m - 1] = c.b[m - 1] * xi - c.a[m - 1] * yi;
    y[i] = yi;
  }
  return y;
}

std::vector<double> butterworth_lowpass(std::span<const double> signal, double cutoff,
                                        int order) {
  if (signal.empty()) return {};
  const FilterCoeffs c = butterworth_coeffs(cutoff, order);
  const std::size_t pad = pad_length(c);
  const auto n = static_cast<std::ptrdiff_t>(signal.size());

  std::vector<double> ext(signal.size() + 2 * pad);
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(ext.size()); ++t)
    ext[static_cast<std::size_t>(t)] = odd_ext(signal, t - static_cast<std::ptrdiff_t>(pad));

  auto fwd = filter_forward(c, ext);
  std::reverse(fwd.begin(), fwd.end());
  auto back = filter_forward(c, fwd);
  std::reverse(back.begin(), back.end());

  return {back.begin() + static_cast<std::ptrdiff_t>(pad),
          back.begin() + static_cast<std::ptrdiff_t>(pad) + n};
}

std::vector<double> jitter_segment(std::span<const double> window,
                                   const AugmentationSpec& spec, std::mt19937_64& rng) {
  validate_segment(window.size(), spec);
  if (!(spec.noise_sigma > 0.0))
    raise(ErrorKind::config, "jitter: noise sigma must be positive");
  std::vector<double> out(window.begin(), window.end());
  std::normal_distribution<double> noise(0.0, spec.noise_sigma);
  for (std::size_t i = spec.start; i < spec.start + spec.length; ++i) out[i] += noise(rng);
  return out;
}

std::vector<double> warp_segment(std::span<const double> window,
                                 const AugmentationSpec& spec) {
  validate_segment(window.size(), spec);
  const auto filtered = butterworth_lowpass(window, spec.cutoff, spec.filter_order);
  std::vector<double> out(window.begin(), window.end());
  std::copy(filtered.begin() + static_cast<std::ptrdiff_t>(spec.start),
            filtered.begin() + static_cast<std::ptrdiff_t>(spec.start + spec.length),
            out.begin() + static_cast<std::ptrdiff_t>(spec.start));
  return out;
}

std::pair<std::vector<double>, AugmentationSpec> random_augment(
    std::span<const double> window, std::mt19937_64& rng) {
  const std::size_t len = window.size();
  if (len < 8) raise(ErrorKind::insufficient_data, "random_augment: window shorter than 8");

  AugmentationSpec spec;
  spec.kind = std::uniform_int_distribution<int>(0, 1)(rng) == 0 ? AugmentKind::jitter
                                                                 : AugmentKind::warp;
  const std::size_t lo = std::max<std::size_t>(1, len / 10);
  const std::size_t hi = std::max(lo, len / 2);
  spec.length = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  spec.start = std::uniform_int_distribution<std::size_t>(0, len - spec.length)(rng);
  spec.noise_sigma = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
  spec.cutoff = std::uniform_real_distribution<double>(0.02, 0.15)(rng);
  spec.filter_order = 2;

  if (spec.kind == AugmentKind::jitter)
    return {jitter_segment(window, spec, rng), spec};
  return {warp_segment(window, spec), spec};
}

} // namespace triad
