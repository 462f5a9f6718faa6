#include "triad/nn.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <unordered_set>

#include "triad/error.hpp"

namespace triad::nn {

namespace {

std::atomic<std::uint64_t> g_next_id{1};

NodePtr new_node(Array value, std::vector<NodePtr> parents) {
  auto n = std::make_shared<Node>();
  n->value = std::move(value);
  n->parents = std::move(parents);
  n->id = g_next_id.fetch_add(1, std::memory_order_relaxed);
  for (const auto& p : n->parents) {
    if (p->needs_grad) {
      n->needs_grad = true;
      break;
    }
  }
  return n;
}

void check_shape(bool ok, const char* what) {
  if (!ok) raise(ErrorKind::shape, what);
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

} // namespace

Array Array::zeros(std::vector<std::size_t> shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  Array a;
  a.shape = std::move(shape);
  a.data.assign(n, 0.0);
  return a;
}

NodePtr make_constant(Array v) { return new_node(std::move(v), {}); }

NodePtr make_parameter(Array v) {
  auto n = new_node(std::move(v), {});
  n->requires_grad = true;
  n->needs_grad = true;
  n->ensure_grad();
  return n;
}

NodePtr conv1d_same(NodePtr x, NodePtr w, NodePtr bias, std::size_t dilation) {
  check_shape(x->value.shape.size() == 3, "conv1d: input must be {B, C, L}");
  check_shape(w->value.shape.size() == 3, "conv1d: kernel must be {Cout, Cin, k}");
  const std::size_t batch = x->value.shape[0];
  const std::size_t cin = x->value.shape[1];
  const std::size_t len = x->value.shape[2];
  const std::size_t cout = w->value.shape[0];
  const std::size_t k = w->value.shape[2];
  check_shape(w->value.shape[1] == cin, "conv1d: channel mismatch");
  check_shape(k % 2 == 1, "conv1d: kernel size must be odd");
  if (dilation < 1) raise(ErrorKind::config, "conv1d: dilation must be >= 1");
  if ((k - 1) * dilation + 1 >= 2 * len)
    raise(ErrorKind::config, "conv1d: dilated receptive span must stay under 2L");
  if (bias) check_shape(bias->value.shape == std::vector<std::size_t>{cout},
                        "conv1d: bias must be {Cout}");

  const auto center = static_cast<std::ptrdiff_t>(k / 2);
  const auto dil = static_cast<std::ptrdiff_t>(dilation);
  const auto slen = static_cast<std::ptrdiff_t>(len);

  Array out = Array::zeros({batch, cout, len});
  {
    const double* __restrict xd = x->value.data.data();
    const double* __restrict wd = w->value.data.data();
    const double* bd = bias ? bias->value.data.data() : nullptr;
    double* __restrict od = out.data.data();
    for (std::size_t b = 0; b < batch; ++b) {
      for (std::size_t co = 0; co < cout; ++co) {
        double* __restrict o = od + (b * cout + co) * len;
        const double bv = bd ? bd[co] : 0.0;
        for (std::size_t t = 0; t < len; ++t) o[t] = bv;
        for (std::size_t ci = 0; ci < cin; ++ci) {
          const double* __restrict xr = xd + (b * cin + ci) * len;
          const double* __restrict wr = wd + (co * cin + ci) * k;
          for (std::size_t q = 0; q < k; ++q) {
            const std::ptrdiff_t off = (static_cast<std::ptrdiff_t>(q) - center) * dil;
            const double wv = wr[q];
            const std::ptrdiff_t t0 = off < 0 ? -off : 0;
            const std::ptrdiff_t t1 = off > 0 ? slen - off : slen;
            const double* xo = xr + off;
            for (std::ptrdiff_t t = t0; t < t1; ++t) o[t] += wv * xo[t];
          }
        }
      }
    }
  }

  std::vector<NodePtr> parents{x, w};
  if (bias) parents.push_back(bias);
  auto node = new_node(std::move(out), std::move(parents));
  if (node->needs_grad) {
    node->backward_fn = [batch, cin, cout, len, k, center, dil, slen](Node& self) {
      auto& xn = self.parents[0];
      auto& wn = self.parents[1];
      Node* bn = self.parents.size() > 2 ? self.parents[2].get() : nullptr;
      const double* __restrict g = self.grad.data();
      const double* __restrict xd = xn->value.data.data();
      const double* __restrict wd = wn->value.data.data();

      if (bn && bn->needs_grad) {
        bn->ensure_grad();
        for (std::size_t b = 0; b < batch; ++b)
          for (std::size_t co = 0; co < cout; ++co) {
            const double* gr = g + (b * cout + co) * len;
            double acc = 0.0;
            for (std::size_t t = 0; t < len; ++t) acc += gr[t];
            bn->grad[co] += acc;
          }
      }
      if (wn->needs_grad) {
        wn->ensure_grad();
        double* __restrict dw = wn->grad.data();
        for (std::size_t b = 0; b < batch; ++b)
          for (std::size_t co = 0; co < cout; ++co) {
            const double* __restrict gr = g + (b * cout + co) * len;
            for (std::size_t ci = 0; ci < cin; ++ci) {
              const double* __restrict xr = xd + (b * cin + ci) * len;
              double* __restrict wr = dw + (co * cin + ci) * k;
              for (std::size_t q = 0; q < k; ++q) {
                const std::ptrdiff_t off = (static_cast<std::ptrdiff_t>(q) - center) * dil;
                const std::ptrdiff_t t0 = off < 0 ? -off : 0;
                const std::ptrdiff_t t1 = off > 0 ? slen - off : slen;
                const double* xo = xr + off;
                double acc = 0.0;
                for (std::ptrdiff_t t = t0; t < t1; ++t) acc += gr[t] * xo[t];
                wr[q] += acc;
              }
            }
          }
      }
      if (xn->needs_grad) {
        xn->ensure_grad();
        double* __restrict dx = xn->grad.data();
        for (std::size_t b = 0; b < batch; ++b)
          for (std::size_t co = 0; co < cout; ++co) {
            const double* __restrict gr = g + (b * cout + co) * len;
            for (std::size_t ci = 0; ci < cin; ++ci) {
              double* __restrict xr = dx + (b * cin + ci) * len;
              const double* __restrict wr = wd + (co * cin + ci) * k;
              for (std::size_t q = 0; q < k; ++q) {
                const std::ptrdiff_t off = (static_cast<std::ptrdiff_t>(q) - center) * dil;
                const double wv = wr[q];
                const std::ptrdiff_t t0 = off < 0 ? -off : 0;
                const std::ptrdiff_t t1 = off > 0 ? slen - off : slen;
                double* xo = xr + off;
                for (std::ptrdiff_t t = t0; t < t1; ++t) xo[t] += wv * gr[t];
              }
            }
          }
      }
    };
  }
  return node;
}

NodePtr silu(NodePtr x) {
  Array out = x->value;
  for (double& v : out.data) v = v * sigmoid(v);
  auto node = new_node(std::move(out), {x});
  if (node->needs_grad) {
    node->backward_fn = [](Node& self) {
      auto& xn = self.parents[0];
      if (!xn->needs_grad) return;
      xn->ensure_grad();
      const std::size_t n = self.grad.size();
      for (std::size_t i = 0; i < n; ++i) {
        const double v = xn->value.data[i];
        const double s = sigmoid(v);
        xn->grad[i] += self.grad[i] * s * (1.0 + v * (1.0 - s));
      }
    };
  }
  return node;
}

NodePtr add(NodePtr a, NodePtr b) { return scale_add(a, b, 1.0, 1.0); }

NodePtr scale_add(NodePtr a, NodePtr b, double ca, double cb) {
  check_shape(a->value.shape == b->value.shape, "scale_add: shape mismatch");
  Array out = a->value;
  for (std::size_t i = 0; i < out.data.size(); ++i)
    out.data[i] = ca * out.data[i] + cb * b->value.data[i];
  auto node = new_node(std::move(out), {a, b});
  if (node->needs_grad) {
    node->backward_fn = [ca, cb](Node& self) {
      for (int p = 0; p < 2; ++p) {
        auto& pn = self.parents[static_cast<std::size_t>(p)];
        if (!pn->needs_grad) continue;
        pn->ensure_grad();
        const double c = p == 0 ? ca : cb;
        for (std::size_t i = 0; i < self.grad.size(); ++i)
          pn->grad[i] += c * self.grad[i];
      }
    };
  }
  return node;
}

NodePtr squeeze_channel(NodePtr x) {
  check_shape(x->value.shape.size() == 3 && x->value.shape[1] == 1,
              "squeeze_channel: expected {B, 1, L}");
  Array out;
  out.shape = {x->value.shape[0], x->value.shape[2]};
  out.data = x->value.data;
  auto node = new_node(std::move(out), {x});
  if (node->needs_grad) {
    node->backward_fn = [](Node& self) {
      auto& xn = self.parents[0];
      if (!xn->needs_grad) return;
      xn->ensure_grad();
      for (std::size_t i = 0; i < self.grad.size(); ++i) xn->grad[i] += self.grad[i];
    };
  }
  return node;
}

NodePtr l2_normalize_rows(NodePtr x) {
  check_shape(x->value.shape.size() == 2, "l2_normalize_rows: expected {B, L}");
  const std::size_t rows = x->value.shape[0];
  const std::size_t cols = x->value.shape[1];
  std::vector<double> norms(rows);
  Array out = x->value;
  for (std::size_t r = 0; r < rows; ++r) {
    double ss = 0.0;
    const double* src = x->value.data.data() + r * cols;
    for (std::size_t c = 0; c < cols; ++c) ss += src[c] * src[c];
    const double norm = std::sqrt(ss);
    norms[r] = norm;
    if (norm == 0.0) raise(ErrorKind::degenerate, "l2_normalize_rows: zero row");
    double* dst = out.data.data() + r * cols;
    for (std::size_t c = 0; c < cols; ++c) dst[c] /= norm;
  }
  auto node = new_node(std::move(out), {x});
  if (node->needs_grad) {
    node->backward_fn = [rows, cols, norms = std::move(norms)](Node& self) {
      auto& xn = self.parents[0];
      if (!xn->needs_grad) return;
      xn->ensure_grad();
      for (std::size_t r = 0; r < rows; ++r) {
        const double* y = self.value.data.data() + r * cols;
        const double* g = self.grad.data() + r * cols;
        double* dx = xn->grad.data() + r * cols;
        double dot = 0.0;
        for (std::size_t c = 0; c < cols; ++c) dot += y[c] * g[c];
        const double inv = 1.0 / norms[r];
        for (std::size_t c = 0; c < cols; ++c) dx[c] += (g[c] - y[c] * dot) * inv;
      }
    };
  }
  return node;
}

NodePtr matmul_nt(NodePtr a, NodePtr b) {
  check_shape(a->value.shape.size() == 2 && b->value.shape.size() == 2 &&
                  a->value.shape[1] == b->value.shape[1],
              "matmul_nt: expected {m,k} and {n,k}");
  const std::size_t m = a->value.shape[0];
  const std::size_t n = b->value.shape[0];
  const std::size_t k = a->value.shape[1];
  Array out = Array::zeros({m, n});
  for (std::size_t i = 0; i < m; ++i) {
    const double* ar = a->value.data.data() + i * k;
    for (std::size_t j = 0; j < n; ++j) {
      const double* br = b->value.data.data() + j * k;
      double acc = 0.0;
      for (std::size_t l = 0; l < k; ++l) acc += ar[l] * br[l];
      out.data[i * n + j] = acc;
    }
  }
  auto node = new_node(std::move(out), {a, b});
  if (node->needs_grad) {
    node->backward_fn = [m, n, k](Node& self) {
      auto& an = self.parents[0];
      auto& bn = self.parents[1];
      const double* g = self.grad.data();
      if (an->needs_grad) {
        an->ensure_grad();
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            const double gv = g[i * n + j];
            const double* br = bn->value.data.data() + j * k;
            double* da = an->grad.data() + i * k;
            for (std::size_t l = 0; l < k; ++l) da[l] += gv * br[l];
          }
      }
      if (bn->needs_grad) {
        bn->ensure_grad();
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            const double gv = g[i * n + j];
            const double* ar = an->value.data.data() + i * k;
            double* db = bn->grad.data() + j * k;
            for (std::size_t l = 0; l < k; ++l) db[l] += gv * ar[l];
          }
      }
    };
  }
  return node;
}

NodePtr rowdot(NodePtr a, NodePtr b) {
  check_shape(a->value.shape == b->value.shape && a->value.shape.size() == 2,
              "rowdot: expected equal {B, L}");
  const std::size_t rows = a->value.shape[0];
  const std::size_t cols = a->value.shape[1];
  Array out = Array::zeros({rows});
  for (std::size_t r = 0; r < rows; ++r) {
    const double* ar = a->value.data.data() + r * cols;
    const double* br = b->value.data.data() + r * cols;
    double acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) acc += ar[c] * br[c];
    out.data[r] = acc;
  }
  auto node = new_node(std::move(out), {a, b});
  if (node->needs_grad) {
    node->backward_fn = [rows, cols](Node& self) {
      auto& an = self.parents[0];
      auto& bn = self.parents[1];
      for (int p = 0; p < 2; ++p) {
        auto& pn = p == 0 ? an : bn;
        auto& other = p == 0 ? bn : an;
        if (!pn->needs_grad) continue;
        pn->ensure_grad();
        for (std::size_t r = 0; r < rows; ++r) {
          const double gv = self.grad[r];
          const double* ov = other->value.data.data() + r * cols;
          double* d = pn->grad.data() + r * cols;
          for (std::size_t c = 0; c < cols; ++c) d[c] += gv * ov[c];
        }
      }
    };
  }
  return node;
}

namespace {

template <typename Fwd, typename Bwd>
NodePtr elementwise(NodePtr x, Fwd fwd, Bwd bwd) {
  Array out = x->value;
  for (double& v : out.data) v = fwd(v);
  auto node = new_node(std::move(out), {x});
  if (node->needs_grad) {
    node->backward_fn = [bwd](Node& self) {
      auto& xn = self.parents[0];
      if (!xn->needs_grad) return;
      xn->ensure_grad();
      for (std::size_t i = 0; i < self.grad.size(); ++i)
        xn->grad[i] += self.grad[i] * bwd(xn->value.data[i], self.value.data[i]);
    };
  }
  return node;
}

} // namespace

NodePtr exp_ew(NodePtr x) {
  return elementwise(
      x, [](double v) { return std::exp(v); },
      [](double, double y) { return y; });
}

NodePtr log_ew(NodePtr x) {
  return elementwise(
      x, [](double v) { return std::log(v); },
      [](double v, double) { return 1.0 / v; });
}

NodePtr neg(NodePtr x) {
  return elementwise(
      x, [](double v) { return -v; }, [](double, double) { return -1.0; });
}

NodePtr div_ew(NodePtr a, NodePtr b) {
  check_shape(a->value.shape == b->value.shape, "div_ew: shape mismatch");
  Array out = a->value;
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] /= b->value.data[i];
  auto node = new_node(std::move(out), {a, b});
  if (node->needs_grad) {
    node->backward_fn = [](Node& self) {
      auto& an = self.parents[0];
      auto& bn = self.parents[1];
      if (an->needs_grad) {
        an->ensure_grad();
        for (std::size_t i = 0; i < self.grad.size(); ++i)
          an->grad[i] += self.grad[i] / bn->value.data[i];
      }
      if (bn->needs_grad) {
        bn->ensure_grad();
        for (std::size_t i = 0; i < self.grad.size(); ++i)
          bn->grad[i] -= self.grad[i] * self.value.data[i] / bn->value.data[i];
      }
    };
  }
  return node;
}

NodePtr rowsum(NodePtr x) {
  check_shape(x->value.shape.size() == 2, "rowsum: expected {m, n}");
  const std::size_t m = x->value.shape[0];
  const std::size_t n = x->value.shape[1];
  Array out = Array::zeros({m});
  for (std::size_t i = 0; i < m; ++i) {
    double acc = 0.0;
    const double* r = x->value.data.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) acc += r[j];
    out.data[i] = acc;
  }
  auto node = new_node(std::move(out), {x});
  if (node->needs_grad) {
    node->backward_fn = [m, n](Node& self) {
      auto& xn = self.parents[0];
      if (!xn->needs_grad) return;
      xn->ensure_grad();
      for (std::size_t i = 0; i < m; ++i) {
        const double gv = self.grad[i];
        double* d = xn->grad.data() + i * n;
        for (std::size_t j = 0; j < n; ++j) d[j] += gv;
      }
    };
  }
  return node;
}

NodePtr diag_part(NodePtr x) {
  check_shape(x->value.shape.size() == 2 && x->value.shape[0] == x->value.shape[1],
              "diag_part: expected square matrix");
  const std::size_t m = x->value.shape[0];
  Array out = Array::zeros({m});
  for (std::size_t i = 0; i < m; ++i) out.data[i] = x->value.data[i * m + i];
  auto node = new_node(std::move(out), {x});
  if (node->needs_grad) {
    node->backward_fn = [m](Node& self) {
      auto& xn = self.parents[0];
      if (!xn->needs_grad) return;
      xn->ensure_grad();
      for (std::size_t i = 0; i < m; ++i) xn->grad[i * m + i] += self.grad[i];
    };
  }
  return node;
}

NodePtr mean_vec(NodePtr x) {
  check_shape(x->value.shape.size() == 1, "mean_vec: expected vector");
  const std::size_t m = x->value.shape[0];
  double acc = 0.0;
  for (double v : x->value.data) acc += v;
  auto node = new_node(Array::scalar(acc / static_cast<double>(m)), {x});
  if (node->needs_grad) {
    node->backward_fn = [m](Node& self) {
      auto& xn = self.parents[0];
      if (!xn->needs_grad) return;
      xn->ensure_grad();
      const double g = self.grad[0] / static_cast<double>(m);
      for (std::size_t i = 0; i < m; ++i) xn->grad[i] += g;
    };
  }
  return node;
}

void backward(const NodePtr& root) {
  if (root->value.size() != 1)
    raise(ErrorKind::usage, "backward: root must be a scalar");

  std::vector<Node*> order;
  std::unordered_set<Node*> seen;
  std::vector<Node*> stack{root.get()};
  seen.insert(root.get());
  while (!stack.empty()) {
    Node* n = stack.back();
    stack.pop_back();
    order.push_back(n);
    for (const auto& p : n->parents) {
      if (seen.insert(p.get()).second) stack.push_back(p.get());
    }
  }
  std::sort(order.begin(), order.end(),
            [](const Node* a, const Node* b) { return a->id > b->id; });

  for (Node* n : order) {
    if (n->needs_grad) n->ensure_grad();
  }
  root->grad.assign(1, 1.0);
  for (Node* n : order) {
    if (n->backward_fn && n->needs_grad) n->backward_fn(*n);
  }
}

// ---- encoder ----------------------------------------------------------------

std::size_t max_depth_for(std::size_t window_len, std::size_t kernel) {
  std::size_t depth = 1;
  while ((kernel - 1) * (std::size_t{1} << depth) + 1 < 2 * window_len) ++depth;
  return depth;
}

namespace {

Array random_array(std::vector<std::size_t> shape, std::size_t fan_in,
                   std::mt19937_64& rng) {
  Array a = Array::zeros(std::move(shape));
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (double& v : a.data) v = dist(rng);
  return a;
}

} // namespace

ModelWeights init_model_weights(const EncoderConfig& cfg, std::uint64_t seed) {
  if (cfg.depth < 1 || cfg.hidden < 1 || cfg.kernel % 2 == 0)
    raise(ErrorKind::config, "encoder: depth/hidden >= 1 and odd kernel required");
  std::mt19937_64 rng(seed);
  ModelWeights w;
  w.config = cfg;
  const std::size_t h = cfg.hidden;
  const std::size_t k = cfg.kernel;
  for (std::size_t d = 0; d < 3; ++d) {
    const std::size_t cin0 = channels_for(kDomains[d]);
    EncoderWeights enc;
    for (std::size_t b = 0; b < cfg.depth; ++b) {
      const std::size_t cin = b == 0 ? cin0 : h;
      ConvBlockWeights blk;
      blk.w1 = random_array({h, cin, k}, cin * k, rng);
      blk.b1 = Array::zeros({h});
      blk.w2 = random_array({h, h, k}, h * k, rng);
      blk.b2 = Array::zeros({h});
      if (cin != h) blk.skip = random_array({h, cin, 1}, cin, rng);
      enc.blocks.push_back(std::move(blk));
    }
    w.domains[d] = std::move(enc);
  }
  w.head.w1 = random_array({h, h, 1}, h, rng);
  w.head.b1 = Array::zeros({h});
  w.head.w2 = random_array({1, h, 1}, h, rng);
  w.head.b2 = Array::zeros({1});
  return w;
}

BoundModel bind_model(const ModelWeights& w, bool trainable) {
  auto make = [&](const Array& a) {
    return trainable ? make_parameter(a) : make_constant(a);
  };
  BoundModel m;
  m.config = w.config;
  for (std::size_t d = 0; d < 3; ++d) {
    for (const auto& blk : w.domains[d].blocks) {
      BoundConvBlock b;
      b.w1 = make(blk.w1);
      b.b1 = make(blk.b1);
      b.w2 = make(blk.w2);
      b.b2 = make(blk.b2);
      if (blk.skip) b.skip = make(*blk.skip);
      m.domains[d].push_back(b);
      m.parameters.push_back(b.w1);
      m.parameters.push_back(b.b1);
      m.parameters.push_back(b.w2);
      m.parameters.push_back(b.b2);
      if (b.skip) m.parameters.push_back(b.skip);
    }
  }
  m.head_w1 = make(w.head.w1);
  m.head_b1 = make(w.head.b1);
  m.head_w2 = make(w.head.w2);
  m.head_b2 = make(w.head.b2);
  m.parameters.push_back(m.head_w1);
  m.parameters.push_back(m.head_b1);
  m.parameters.push_back(m.head_w2);
  m.parameters.push_back(m.head_b2);
  return m;
}

ModelWeights unbind_model(const BoundModel& m) {
  ModelWeights w;
  w.config = m.config;
  for (std::size_t d = 0; d < 3; ++d) {
    for (const auto& b : m.domains[d]) {
      ConvBlockWeights blk;
      blk.w1 = b.w1->value;
      blk.b1 = b.b1->value;
      blk.w2 = b.w2->value;
      blk.b2 = b.b2->value;
      if (b.skip) blk.skip = b.skip->value;
      w.domains[d].blocks.push_back(std::move(blk));
    }
  }
  w.head.w1 = m.head_w1->value;
  w.head.b1 = m.head_b1->value;
  w.head.w2 = m.head_w2->value;
  w.head.b2 = m.head_b2->value;
  return w;
}

NodePtr encode_batch(const BoundModel& m, Domain domain, NodePtr features) {
  const auto d = static_cast<std::size_t>(domain);
  NodePtr x = std::move(features);
  std::size_t dilation = 1;
  for (const auto& blk : m.domains[d]) {
    NodePtr h = silu(conv1d_same(x, blk.w1, blk.b1, dilation));
    h = silu(conv1d_same(h, blk.w2, blk.b2, dilation));
    NodePtr skip = blk.skip ? conv1d_same(x, blk.skip, nullptr, 1) : x;
    x = add(h, skip);
    dilation <<= 1;
  }
  NodePtr t = silu(conv1d_same(x, m.head_w1, m.head_b1, 1));
  NodePtr r = conv1d_same(t, m.head_w2, m.head_b2, 1);
  return l2_normalize_rows(squeeze_channel(r));
}

Array pack_features(std::span<const DomainFeatures> batch) {
  if (batch.empty()) raise(ErrorKind::usage, "pack_features: empty batch");
  const std::size_t c = batch.front().channel_count;
  const std::size_t len = batch.front().len;
  Array out = Array::zeros({batch.size(), c, len});
  for (std::size_t b = 0; b < batch.size(); ++b) {
    const auto& f = batch[b];
    if (f.channel_count != c || f.len != len)
      raise(ErrorKind::shape, "pack_features: inconsistent feature shapes");
    std::copy(f.data.begin(), f.data.end(), out.data.begin() + b * c * len);
  }
  return out;
}

std::vector<double> encode(const DomainFeatures& features, const ModelWeights& w) {
  BoundModel m = bind_model(w, false);
  auto x = make_constant(pack_features(std::span(&features, 1)));
  auto r = encode_batch(m, features.domain, x);
  return r->value.data;
}

// ---- optimizer ----------------------------------------------------------------

void adam_step(std::vector<NodePtr>& params, AdamState& state, double lr,
               double beta1, double beta2, double eps) {
  if (state.m.size() != params.size()) {
    state.m.assign(params.size(), {});
    state.v.assign(params.size(), {});
    for (std::size_t i = 0; i < params.size(); ++i) {
      state.m[i].assign(params[i]->value.size(), 0.0);
      state.v[i].assign(params[i]->value.size(), 0.0);
    }
    state.step = 0;
  }
  ++state.step;
  const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto& p = *params[i];
    p.ensure_grad();
    auto& m = state.m[i];
    auto& v = state.v[i];
    for (std::size_t j = 0; j < p.value.size(); ++j) {
      const double g = p.grad[j];
      m[j] = beta1 * m[j] + (1.0 - beta1) * g;
      v[j] = beta2 * v[j] + (1.0 - beta2) * g * g;
      const double mhat = m[j] / bc1;
      const double vhat = v[j] / bc2;
      p.value.data[j] -= lr * mhat / (std::sqrt(vhat) + eps);
      p.grad[j] = 0.0;
    }
  }
}

} // namespace triad::nn
