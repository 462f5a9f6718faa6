#include "triad/losses.hpp"

#include <cmath>

#include "triad/error.hpp"

namespace triad {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double positives(const EmbBatch& orig, std::size_t i) {
  double pos = 0.0;
  for (std::size_t j = 0; j < orig.size(); ++j) {
    if (j == i) continue;
    pos += std::exp(dot(orig[i], orig[j]));
  }
  return pos;
}

void check_batch(std::size_t b) {
  if (b < 2)
    raise(ErrorKind::config, "contrastive loss: batch must hold at least 2 windows");
}

} // namespace

double intra_loss_one(const EmbBatch& orig, const EmbBatch& aug, std::size_t i) {
  check_batch(orig.size());
  const double pos = positives(orig, i);
  double neg = 0.0;
  for (std::size_t j = 0; j < aug.size(); ++j) neg += std::exp(dot(orig[i], aug[j]));
  return -std::log(pos / (pos + neg));
}

double inter_loss_one(const std::array<EmbBatch, 3>& orig, std::size_t i,
                      std::size_t d) {
  check_batch(orig[d].size());
  const double pos = positives(orig[d], i);
  double neg = 0.0;
  for (std::size_t other = 0; other < 3; ++other) {
    if (other == d) continue;
    neg += std::exp(dot(orig[d][i], orig[other][i]));
  }
  return -std::log(pos / (pos + neg));
}

double intra_loss_mean(const std::array<EmbBatch, 3>& orig,
                       const std::array<EmbBatch, 3>& aug) {
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t d = 0; d < 3; ++d) {
    for (std::size_t i = 0; i < orig[d].size(); ++i) {
      acc += intra_loss_one(orig[d], aug[d], i);
      ++count;
    }
  }
  return acc / static_cast<double>(count);
}

double inter_loss_mean(const std::array<EmbBatch, 3>& orig) {
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t d = 0; d < 3; ++d) {
    for (std::size_t i = 0; i < orig[d].size(); ++i) {
      acc += inter_loss_one(orig, i, d);
      ++count;
    }
  }
  return acc / static_cast<double>(count);
}

double total_loss(double intra, double inter, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    raise(ErrorKind::config, "total_loss: alpha must lie in [0, 1]");
  return alpha * inter + (1.0 - alpha) * intra;
}

LossNodes contrastive_loss_graph(const std::array<nn::NodePtr, 3>& orig,
                                 const std::array<nn::NodePtr, 3>& aug,
                                 double alpha) {
  using namespace nn;
  if (!(alpha >= 0.0 && alpha <= 1.0))
    raise(ErrorKind::config, "total_loss: alpha must lie in [0, 1]");
  check_batch(orig[0]->value.shape.at(0));

  std::array<NodePtr, 3> intra_d;
  std::array<NodePtr, 3> inter_d;
  for (std::size_t d = 0; d < 3; ++d) {
    NodePtr e_self = exp_ew(matmul_nt(orig[d], orig[d]));
    NodePtr pos = scale_add(rowsum(e_self), diag_part(e_self), 1.0, -1.0);

    NodePtr neg_intra = rowsum(exp_ew(matmul_nt(orig[d], aug[d])));
    intra_d[d] = mean_vec(neg(log_ew(div_ew(pos, add(pos, neg_intra)))));

    NodePtr c1 = exp_ew(rowdot(orig[d], orig[(d + 1) % 3]));
    NodePtr c2 = exp_ew(rowdot(orig[d], orig[(d + 2) % 3]));
    inter_d[d] = mean_vec(neg(log_ew(div_ew(pos, add(pos, add(c1, c2))))));
  }

  const double third = 1.0 / 3.0;
  LossNodes out;
  out.intra = scale_add(scale_add(intra_d[0], intra_d[1], third, third), intra_d[2],
                        1.0, third);
  out.inter = scale_add(scale_add(inter_d[0], inter_d[1], third, third), inter_d[2],
                        1.0, third);
  out.total = scale_add(out.inter, out.intra, alpha, 1.0 - alpha);
  return out;
}

} // namespace triad
