#include "triad/features.hpp"

#include <cmath>

#include "triad/error.hpp"
#include "triad/fft.hpp"

namespace triad {

std::string_view domain_name(Domain d) {
  switch (d) {
    case Domain::temporal: return "temporal";
    case Domain::frequency: return "frequency";
    case Domain::residual: return "residual";
  }
  return "?";
}

std::size_t channels_for(Domain d) { return d == Domain::frequency ? 3 : 1; }

Spectrum dft(std::span<const double> window) {
  if (window.empty()) raise(ErrorKind::usage, "dft: empty window");
  const auto bins = dft_real(window);
  Spectrum s;
  s.re.resize(bins.size());
  s.im.resize(bins.size());
  for (std::size_t k = 0; k < bins.size(); ++k) {
    s.re[k] = bins[k].real();
    s.im[k] = bins[k].imag();
  }
  return s;
}

DomainFeatures freq_features(const Spectrum& s) {
  const std::size_t n = s.size();
  DomainFeatures f;
  f.domain = Domain::frequency;
  f.len = n;
  f.channel_count = 3;
  f.data.resize(3 * n);
  auto amp = f.channel(0);
  auto phase = f.channel(1);
  auto power = f.channel(2);
  for (std::size_t k = 0; k < n; ++k) {
    const double re = s.re[k];
    const double im = s.im[k];
    const double p = re * re + im * im;
    amp[k] = std::sqrt(p);
    phase[k] = (re == 0.0 && im == 0.0) ? 0.0 : std::atan2(re, im);
    power[k] = p;
  }
  return f;
}

DomainFeatures residual_features(std::span<const double> window, std::size_t period) {
  if (period < 2) raise(ErrorKind::config, "residual_features: period must be >= 2");
  const std::size_t n = window.size();
  std::vector<double> phase_sum(period, 0.0);
  std::vector<std::size_t> phase_count(period, 0);
  for (std::size_t i = 0; i < n; ++i) {
    phase_sum[i % period] += window[i];
    ++phase_count[i % period];
  }
  for (std::size_t m = 0; m < period; ++m) {
    if (phase_count[m] > 0) phase_sum[m] /= static_cast<double>(phase_count[m]);
  }

  DomainFeatures f;
  f.domain = Domain::residual;
  f.len = n;
  f.channel_count = 1;
  f.data.resize(n);
  for (std::size_t i = 0; i < n; ++i) f.data[i] = window[i] - phase_sum[i % period];
  return f;
}

DomainFeatures extract(std::span<const double> window, Domain d, std::size_t period) {
  switch (d) {
    case Domain::temporal: {
      DomainFeatures f;
      f.domain = Domain::temporal;
      f.len = window.size();
      f.channel_count = 1;
      f.data.assign(window.begin(), window.end());
      return f;
    }
    case Domain::frequency:
      return freq_features(dft(window));
    case Domain::residual:
      return residual_features(window, period);
  }
  raise(ErrorKind::usage, "extract: unknown domain");
}

void standardize_channels(DomainFeatures& f) {
  for (std::size_t c = 0; c < f.channel_count; ++c) {
    auto ch = f.channel(c);
    double mean = 0.0;
    for (double v : ch) mean += v;
    mean /= static_cast<double>(ch.size());
    double var = 0.0;
    for (double v : ch) {
      const double d = v - mean;
      var += d * d;
    }
    var /= static_cast<double>(ch.size());
    if (var <= 0.0) {
      for (double& v : ch) v = 0.0;
    } else {
      const double inv = 1.0 / std::sqrt(var);
      for (double& v : ch) v = (v - mean) * inv;
    }
  }
}

std::array<DomainFeatures, 3> encoder_features(std::span<const double> window,
                                               std::size_t period) {
  std::array<DomainFeatures, 3> out{
      extract(window, Domain::temporal, period),
      extract(window, Domain::frequency, period),
      extract(window, Domain::residual, period),
  };
  standardize_channels(out[1]);
  return out;
}

} // namespace triad
