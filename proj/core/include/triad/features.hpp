#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace triad {

/// Full L-bin spectrum of a real window, split into real/imaginary parts.
struct Spectrum {
  std::vector<double> re;
  std::vector<double> im;

  std::size_t size() const { return re.size(); }
};

enum class Domain { temporal = 0, frequency = 1, residual = 2 };

constexpr std::array<Domain, 3> kDomains{Domain::temporal, Domain::frequency,
                                         Domain::residual};

std::string_view domain_name(Domain d);

/// Per-window multi-channel feature block. Logically an L x C matrix; stored
/// channel-major so each channel is one contiguous run.
struct DomainFeatures {
  Domain domain = Domain::temporal;
  std::size_t len = 0;
  std::size_t channel_count = 0;
  std::vector<double> data;  // channel-major, data[c * len + t]

  double at(std::size_t t, std::size_t c) const { return data[c * len + t]; }
  std::span<const double> channel(std::size_t c) const {
    return {data.data() + c * len, len};
  }
  std::span<double> channel(std::size_t c) {
    return {data.data() + c * len, len};
  }
};

std::size_t channels_for(Domain d);  // 1 for temporal/residual, 3 for frequency

/// Exact DFT of the window (fast transform internally; equals the naive sum).
Spectrum dft(std::span<const double> window);

/// Three frequency channels per Table-convention: amplitude, phase, power.
/// Phase keeps the arctan(Re/Im) argument order via atan2(Re, Im), defined 0
/// at the origin.
DomainFeatures freq_features(const Spectrum& s);

/// Window minus its seasonal profile, where the profile at offset m is the
/// mean of window values at positions congruent to m modulo the period.
DomainFeatures residual_features(std::span<const double> window, std::size_t period);

/// Dispatch by domain: temporal = identity channel, frequency =
/// freq_features(dft(window)), residual = residual_features(window, period).
DomainFeatures extract(std::span<const double> window, Domain d, std::size_t period);

/// Per-channel standardization (zero mean, unit population variance);
/// constant channels are left at zero.
void standardize_channels(DomainFeatures& f);

/// The encoder-facing feature triple for one window: temporal and residual
/// raw, frequency channels standardized.
std::array<DomainFeatures, 3> encoder_features(std::span<const double> window,
                                               std::size_t period);

} // namespace triad
