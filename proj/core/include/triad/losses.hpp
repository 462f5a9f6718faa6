#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "triad/nn.hpp"

namespace triad {

/// Plain-value batch embeddings, one unit-norm row per window.
using EmbBatch = std::vector<std::vector<double>>;

/// Intra-domain loss for batch element i in one domain:
/// -log(pos / (pos + neg)) with pos = sum_{j != i} exp(r_i . r_j) over the
/// originals and neg = sum_j exp(r_i . r'_j) over the augmented counterparts
/// (j = i included).
double intra_loss_one(const EmbBatch& orig, const EmbBatch& aug, std::size_t i);

/// Inter-domain loss for element i of domain d: same positive term, negatives
/// are the other two domains' embeddings of the same window.
double inter_loss_one(const std::array<EmbBatch, 3>& orig, std::size_t i,
                      std::size_t d);

/// Means over batch elements and domains.
double intra_loss_mean(const std::array<EmbBatch, 3>& orig,
                       const std::array<EmbBatch, 3>& aug);
double inter_loss_mean(const std::array<EmbBatch, 3>& orig);

/// alpha * inter + (1 - alpha) * intra.
double total_loss(double intra, double inter, double alpha);

struct LossNodes {
  nn::NodePtr total;
  nn::NodePtr intra;
  nn::NodePtr inter;
};

/// Differentiable version over {B, L} embedding nodes, mean-reduced exactly
/// like the plain-value path.
LossNodes contrastive_loss_graph(const std::array<nn::NodePtr, 3>& orig,
                                 const std::array<nn::NodePtr, 3>& aug,
                                 double alpha);

} // namespace triad
