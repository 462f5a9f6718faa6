#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace triad {

/// Univariate sequence of finite real samples.
struct TimeSeries {
  std::vector<double> values;
  std::string name;

  std::size_t size() const { return values.size(); }
};

/// Train/test split plus the single labeled anomaly span (inclusive end),
/// as carried by UCR anomaly-archive filenames.
struct DatasetMeta {
  std::size_t train_end = 0;      // exclusive end of the training split
  std::size_t anomaly_begin = 0;  // first anomalous index
  std::size_t anomaly_end = 0;    // last anomalous index (inclusive)
};

struct SegmentationConfig {
  std::size_t window_len = 0;  // L
  std::size_t stride = 0;
  std::size_t period = 0;
};

struct WindowSlice {
  std::size_t start = 0;
  std::vector<double> values;
};

struct NormStats {
  double mean = 0.0;
  double std = 1.0;
};

/// Reads a UCR anomaly-archive text file: whitespace-separated samples, with
/// (train_end, anomaly_begin, anomaly_end) encoded as the last three
/// underscore-separated integers of the stem.
std::pair<TimeSeries, DatasetMeta> load_ucr(const std::filesystem::path& path);

/// Mean and population standard deviation of values[0, count).
NormStats train_stats(std::span<const double> values, std::size_t count);

/// (x - mean) / std elementwise. std == 0 (constant input) maps to all zeros.
TimeSeries znormalize(const TimeSeries& ts, double mean, double std);

/// Inverse of znormalize: x * std + mean.
TimeSeries denormalize(const TimeSeries& ts, double mean, double std);

/// Dominant-period estimate: round(N / k*) with k* the argmax-power DFT bin of
/// the mean-removed series over k in [1, N/2), clamped to [4, N/4].
std::size_t estimate_period(const TimeSeries& train);

/// Segmentation config from an estimated period: L = round(2.5 * period),
/// stride = max(1, L/4).
SegmentationConfig segmentation_from_period(std::size_t period);

/// Windows at starts {0, stride, 2*stride, ...} with start + L <= N.
/// When the last regular window ends before N, a tail window anchored at
/// N - L is appended so the suffix stays covered.
std::vector<WindowSlice> segment(const TimeSeries& ts, const SegmentationConfig& cfg);

/// Start offsets only (same rule as segment, without copying values).
std::vector<std::size_t> segment_starts(std::size_t n, std::size_t window_len,
                                        std::size_t stride);

} // namespace triad
