#include "triad/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "triad/error.hpp"
#include "triad/fft.hpp"

namespace triad {

namespace {

bool parse_index(const std::string& token, std::size_t& out) {
  if (token.empty()) return false;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc{} && ptr == token.data() + token.size();
}

} // namespace

std::pair<TimeSeries, DatasetMeta> load_ucr(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::io, "cannot open " + path.string());

  const std::string stem = path.stem().string();
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos <= stem.size()) {
    const std::size_t next = stem.find('_', pos);
    tokens.push_back(stem.substr(pos, next == std::string::npos ? next : next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }

  DatasetMeta meta;
  if (tokens.size() < 4 ||
      !parse_index(tokens[tokens.size() - 3], meta.train_end) ||
      !parse_index(tokens[tokens.size() - 2], meta.anomaly_begin) ||
      !parse_index(tokens[tokens.size() - 1], meta.anomaly_end)) {
    raise(ErrorKind::metadata,
          "filename '" + stem + "' does not end in three integer metadata tokens");
  }

  TimeSeries ts;
  ts.name = stem;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      const std::string_view tok(line.data() + i, j - i);
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(value)) {
        raise(ErrorKind::parse, path.string() + ": bad numeric token '" +
                                    std::string(tok) + "' on line " +
                                    std::to_string(line_no));
      }
      ts.values.push_back(value);
      i = j;
    }
  }
  if (ts.values.empty()) raise(ErrorKind::parse, path.string() + ": no samples");

  const std::size_t n = ts.values.size();
  if (!(meta.train_end > 0 && meta.train_end <= meta.anomaly_begin &&
        meta.anomaly_begin <= meta.anomaly_end && meta.anomaly_end < n)) {
    raise(ErrorKind::metadata,
          path.string() + ": metadata (" + std::to_string(meta.train_end) + ", " +
              std::to_string(meta.anomaly_begin) + ", " + std::to_string(meta.anomaly_end) +
              ") inconsistent with N=" + std::to_string(n));
  }
  return {std::move(ts), meta};
}

NormStats train_stats(std::span<const double> values, std::size_t count) {
  if (count == 0 || count > values.size())
    raise(ErrorKind::usage, "train_stats: bad count");
  double mean = 0.0;
  for (std::size_t i = 0; i < count; ++i) mean += values[i];
  mean /= static_cast<double>(count);
  double var = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double d = values[i] - mean;
    var += d * d;
  }
  var /= static_cast<double>(count);
  return {mean, std::sqrt(var)};
}

TimeSeries znormalize(const TimeSeries& ts, double mean, double std) {
  TimeSeries out;
  out.name = ts.name;
  out.values.resize(ts.values.size());
  const double scale = std > 0.0 ? 1.0 / std : 1.0;
  for (std::size_t i = 0; i < ts.values.size(); ++i)
    out.values[i] = (ts.values[i] - mean) * scale;
  return out;
}

TimeSeries denormalize(const TimeSeries& ts, double mean, double std) {
  TimeSeries out;
  out.name = ts.name;
  out.values.resize(ts.values.size());
  const double scale = std > 0.0 ? std : 1.0;
  for (std::size_t i = 0; i < ts.values.size(); ++i)
    out.values[i] = ts.values[i] * scale + mean;
  return out;
}

std::size_t estimate_period(const TimeSeries& train) {
  const std::size_t n = train.size();
  if (n < 16) raise(ErrorKind::insufficient_data, "estimate_period: need >= 16 samples");

  double mean = 0.0;
  for (double v : train.values) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> centered(n);
  for (std::size_t i = 0; i < n; ++i) centered[i] = train.values[i] - mean;

  const auto spectrum = dft_real(centered);
  std::size_t best_k = 0;
  double best_power = 0.0;
  for (std::size_t k = 1; k < n / 2; ++k) {
    const double p = std::norm(spectrum[k]);
    if (p > best_power) {
      best_power = p;
      best_k = k;
    }
  }
  if (best_k == 0 || best_power <= 0.0)
    raise(ErrorKind::degenerate, "estimate_period: spectrum has no dominant bin");

  const auto period = static_cast<std::size_t>(
      std::llround(static_cast<double>(n) / static_cast<double>(best_k)));
  return std::clamp<std::size_t>(period, 4, std::max<std::size_t>(4, n / 4));
}

SegmentationConfig segmentation_from_period(std::size_t period) {
  SegmentationConfig cfg;
  cfg.period = period;
  cfg.window_len = static_cast<std::size_t>(std::llround(2.5 * static_cast<double>(period)));
  cfg.window_len = std::max<std::size_t>(cfg.window_len, 4);
  cfg.stride = std::max<std::size_t>(1, cfg.window_len / 4);
  return cfg;
}

std::vector<std::size_t> segment_starts(std::size_t n, std::size_t window_len,
                                        std::size_t stride) {
  if (window_len < 4) raise(ErrorKind::config, "segment: window length must be >= 4");
  if (stride < 1 || stride > window_len)
    raise(ErrorKind::config, "segment: stride must lie in [1, L]");
  if (n < window_len)
    raise(ErrorKind::insufficient_data, "segment: series shorter than one window");

  std::vector<std::size_t> starts;
  for (std::size_t s = 0; s + window_len <= n; s += stride) starts.push_back(s);
  if (starts.back() + window_len < n) starts.push_back(n - window_len);
  return starts;
}

std::vector<WindowSlice> segment(const TimeSeries& ts, const SegmentationConfig& cfg) {
  const auto starts = segment_starts(ts.size(), cfg.window_len, cfg.stride);
  std::vector<WindowSlice> windows;
  windows.reserve(starts.size());
  for (const std::size_t s : starts) {
    WindowSlice w;
    w.start = s;
    w.values.assign(ts.values.begin() + static_cast<std::ptrdiff_t>(s),
                    ts.values.begin() + static_cast<std::ptrdiff_t>(s + cfg.window_len));
    windows.push_back(std::move(w));
  }
  return windows;
}

} // namespace triad
