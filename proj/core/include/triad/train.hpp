#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "triad/losses.hpp"
#include "triad/nn.hpp"
#include "triad/series.hpp"

namespace triad {

struct LossConfig {
  double alpha = 0.4;
  std::size_t batch = 8;
  std::size_t epochs = 20;
  double lr = 0.001;
  double val_fraction = 0.10;
  std::uint64_t seed = 0;
};

struct EpochLog {
  double train_loss = 0.0;
  double val_loss = 0.0;
};

/// Frozen outcome of one per-dataset training run: three domain encoders with
/// the shared head, plus everything needed to reproduce the preprocessing.
struct TrainedModel {
  nn::ModelWeights weights;
  SegmentationConfig seg;
  NormStats norm;
  LossConfig loss_cfg;
  std::string dataset;
  std::vector<EpochLog> history;
  std::size_t best_epoch = 0;
};

/// Deterministic seed stream derivation (splitmix-style).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c);

/// Contrastive training over the (already normalized) training split.
/// Augmentations are resampled each epoch; the chronologically last
/// val_fraction of windows form the validation set; the checkpoint with the
/// best validation total loss is returned.
TrainedModel train(const TimeSeries& train_split, const LossConfig& cfg,
                   const SegmentationConfig& seg,
                   const nn::EncoderConfig& enc = {});

/// Unit-norm embeddings per domain for a list of windows, frozen weights.
std::array<EmbBatch, 3> embed_windows(const std::vector<WindowSlice>& windows,
                                      const nn::ModelWeights& weights,
                                      std::size_t period);

void save_checkpoint(const std::filesystem::path& path, const TrainedModel& model);
TrainedModel load_checkpoint(const std::filesystem::path& path);

} // namespace triad
