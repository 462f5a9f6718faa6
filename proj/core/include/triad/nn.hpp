#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "triad/features.hpp"

namespace triad::nn {

/// Dense row-major value buffer. Rank is at most 3 here ({B,C,L} activations,
/// {Cout,Cin,k} kernels, vectors, scalars).
struct Array {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  static Array zeros(std::vector<std::size_t> shape);
  static Array scalar(double v) { return {{1}, {v}}; }
  std::size_t size() const { return data.size(); }
};

class Node;
using NodePtr = std::shared_ptr<Node>;

/// One tape entry. Nodes are created in topological order (monotone ids), so
/// reverse-mode traversal is a sort by id.
class Node {
public:
  Array value;
  std::vector<double> grad;
  bool requires_grad = false;  // leaf parameter
  bool needs_grad = false;     // reaches some parameter
  std::uint64_t id = 0;
  std::vector<NodePtr> parents;
  std::function<void(Node&)> backward_fn;

  void ensure_grad() {
    if (grad.size() != value.data.size()) grad.assign(value.data.size(), 0.0);
  }
};

NodePtr make_constant(Array v);
NodePtr make_parameter(Array v);

// ---- ops ------------------------------------------------------------------

/// Zero-padded dilated cross-correlation with same-length output.
/// x: {B, Cin, L}, w: {Cout, Cin, k} (k odd), bias: {Cout} or null.
NodePtr conv1d_same(NodePtr x, NodePtr w, NodePtr bias, std::size_t dilation);

NodePtr silu(NodePtr x);                       // x * sigmoid(x), smooth at zero
NodePtr add(NodePtr a, NodePtr b);             // same shape
NodePtr scale_add(NodePtr a, NodePtr b, double ca, double cb);  // ca*a + cb*b
NodePtr squeeze_channel(NodePtr x);            // {B,1,L} -> {B,L}
NodePtr l2_normalize_rows(NodePtr x);          // {B,L}, each row to unit norm
NodePtr matmul_nt(NodePtr a, NodePtr b);       // {m,k} x {n,k}^T -> {m,n}
NodePtr rowdot(NodePtr a, NodePtr b);          // {B,L},{B,L} -> {B}
NodePtr exp_ew(NodePtr x);
NodePtr log_ew(NodePtr x);
NodePtr div_ew(NodePtr a, NodePtr b);
NodePtr neg(NodePtr x);
NodePtr rowsum(NodePtr x);                     // {m,n} -> {m}
NodePtr diag_part(NodePtr x);                  // {m,m} -> {m}
NodePtr mean_vec(NodePtr x);                   // {m} -> {1}

/// Reverse-mode accumulation from a scalar root into every reachable
/// parameter's grad buffer.
void backward(const NodePtr& root);

// ---- encoder --------------------------------------------------------------

struct EncoderConfig {
  std::size_t depth = 6;    // residual blocks; dilation of block b is 2^b
  std::size_t hidden = 32;  // h_d
  std::size_t kernel = 3;   // odd
};

/// Largest block count whose dilated receptive span stays under 2L.
std::size_t max_depth_for(std::size_t window_len, std::size_t kernel);

struct ConvBlockWeights {
  Array w1, b1, w2, b2;
  std::optional<Array> skip;  // 1x1 projection when input channels != hidden
};

struct EncoderWeights {
  std::vector<ConvBlockWeights> blocks;
};

struct HeadWeights {
  Array w1, b1, w2, b2;  // per-timestep h_d -> h_d -> 1
};

/// Three domain-specific conv stacks plus the head shared across domains.
struct ModelWeights {
  EncoderConfig config;
  std::array<EncoderWeights, 3> domains;
  HeadWeights head;
};

ModelWeights init_model_weights(const EncoderConfig& cfg, std::uint64_t seed);

struct BoundConvBlock {
  NodePtr w1, b1, w2, b2, skip;
};

struct BoundModel {
  EncoderConfig config;
  std::array<std::vector<BoundConvBlock>, 3> domains;
  NodePtr head_w1, head_b1, head_w2, head_b2;
  std::vector<NodePtr> parameters;  // flat view for the optimizer
};

BoundModel bind_model(const ModelWeights& w, bool trainable);
ModelWeights unbind_model(const BoundModel& m);

/// Residual stack + shared head over a feature batch {B, C, L}; rows of the
/// result are unit-norm embeddings {B, L}.
NodePtr encode_batch(const BoundModel& m, Domain domain, NodePtr features);

/// Single-window embedding with frozen weights.
std::vector<double> encode(const DomainFeatures& features, const ModelWeights& w);

/// Packs per-window features into a {B, C, L} constant.
Array pack_features(std::span<const DomainFeatures> batch);

// ---- optimizer -------------------------------------------------------------

struct AdamState {
  std::vector<std::vector<double>> m, v;
  long step = 0;
};

/// Bias-corrected adaptive-moment update; consumes and zeroes node grads.
void adam_step(std::vector<NodePtr>& params, AdamState& state, double lr,
               double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

} // namespace triad::nn
