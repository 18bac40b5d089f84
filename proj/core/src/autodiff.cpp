#include "argimpact/autodiff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace argimpact::autodiff {

std::size_t shape_size(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

namespace {

using detail::Node;

std::shared_ptr<Node> make_node(Shape shape, std::vector<double> values) {
  auto node = std::make_shared<Node>();
  node->shape = std::move(shape);
  node->values = std::move(values);
  return node;
}

/// Builds the result node of an op: output requires grad iff any parent does,
/// and only then keeps the backward closure and parent links.
Tensor make_op(Shape shape, std::vector<double> values,
               std::vector<std::shared_ptr<Node>> parents,
               std::function<void(Node&)> backward_fn) {
  auto node = make_node(std::move(shape), std::move(values));
  bool needs = false;
  for (const auto& p : parents) needs |= p->requires_grad;
  if (needs) {
    node->requires_grad = true;
    node->parents = std::move(parents);
    node->backward_fn = std::move(backward_fn);
  }
  return Tensor(node);
}

void check(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Tensor Tensor::from_values(Shape shape, std::vector<double> values,
                           bool requires_grad) {
  check(shape_size(shape) == values.size(), "from_values: shape/value size mismatch");
  auto node = make_node(std::move(shape), std::move(values));
  node->requires_grad = requires_grad;
  return Tensor(node);
}

Tensor Tensor::zeros(Shape shape, bool requires_grad) {
  const std::size_t n = shape_size(shape);
  return from_values(std::move(shape), std::vector<double>(n, 0.0), requires_grad);
}

Tensor Tensor::full(Shape shape, double value, bool requires_grad) {
  const std::size_t n = shape_size(shape);
  return from_values(std::move(shape), std::vector<double>(n, value), requires_grad);
}

Tensor Tensor::scalar(double value, bool requires_grad) {
  return from_values({1}, {value}, requires_grad);
}

Tensor Tensor::glorot(Rng& rng, std::size_t rows, std::size_t cols,
                      bool requires_grad) {
  const double a = std::sqrt(6.0 / double(rows + cols));
  std::vector<double> values(rows * cols);
  for (double& v : values) v = rng.uniform(-a, a);
  Shape shape = cols == 1 ? Shape{rows} : Shape{rows, cols};
  return from_values(std::move(shape), std::move(values), requires_grad);
}

double Tensor::item() const {
  check(size() == 1, "item: tensor is not scalar");
  return node_->values[0];
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  check(a.rank() == 2, "matmul: first operand must be rank 2");
  const std::size_t m = a.shape()[0];
  const std::size_t k = a.shape()[1];

  const bool vec = b.rank() == 1;
  check(vec || b.rank() == 2, "matmul: second operand must be rank 1 or 2");
  const std::size_t k2 = b.shape()[0];
  const std::size_t n = vec ? 1 : b.shape()[1];
  check(k == k2, "matmul: inner dimensions differ");

  std::vector<double> out(m * n, 0.0);
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = av[i * k + p];
      if (aip == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        out[i * n + j] += aip * bv[p * n + j];
      }
    }
  }

  auto an = a.node();
  auto bn = b.node();
  Shape shape = vec ? Shape{m} : Shape{m, n};
  return make_op(std::move(shape), std::move(out), {an, bn}, [=](Node& node) {
    const auto& g = node.grad;
    if (an->requires_grad) {
      auto& ga = an->grad_ref();
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t p = 0; p < k; ++p) {
          double acc = 0.0;
          for (std::size_t j = 0; j < n; ++j) acc += g[i * n + j] * bn->values[p * n + j];
          ga[i * k + p] += acc;
        }
      }
    }
    if (bn->requires_grad) {
      auto& gb = bn->grad_ref();
      for (std::size_t p = 0; p < k; ++p) {
        for (std::size_t j = 0; j < n; ++j) {
          double acc = 0.0;
          for (std::size_t i = 0; i < m; ++i) acc += an->values[i * k + p] * g[i * n + j];
          gb[p * n + j] += acc;
        }
      }
    }
  });
}

Tensor add(const Tensor& a, const Tensor& b) {
  check(a.shape() == b.shape(), "add: shape mismatch");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.values()[i] + b.values()[i];
  auto an = a.node();
  auto bn = b.node();
  return make_op(a.shape(), std::move(out), {an, bn}, [=](Node& node) {
    if (an->requires_grad) {
      auto& g = an->grad_ref();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += node.grad[i];
    }
    if (bn->requires_grad) {
      auto& g = bn->grad_ref();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += node.grad[i];
    }
  });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  check(a.shape() == b.shape(), "sub: shape mismatch");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.values()[i] - b.values()[i];
  auto an = a.node();
  auto bn = b.node();
  return make_op(a.shape(), std::move(out), {an, bn}, [=](Node& node) {
    if (an->requires_grad) {
      auto& g = an->grad_ref();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += node.grad[i];
    }
    if (bn->requires_grad) {
      auto& g = bn->grad_ref();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] -= node.grad[i];
    }
  });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  check(a.shape() == b.shape(), "mul: shape mismatch");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.values()[i] * b.values()[i];
  auto an = a.node();
  auto bn = b.node();
  return make_op(a.shape(), std::move(out), {an, bn}, [=](Node& node) {
    if (an->requires_grad) {
      auto& g = an->grad_ref();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += node.grad[i] * bn->values[i];
    }
    if (bn->requires_grad) {
      auto& g = bn->grad_ref();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += node.grad[i] * an->values[i];
    }
  });
}

Tensor affine(const Tensor& t, double scale, double shift) {
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = scale * t.values()[i] + shift;
  auto tn = t.node();
  return make_op(t.shape(), std::move(out), {tn}, [=](Node& node) {
    if (!tn->requires_grad) return;
    auto& g = tn->grad_ref();
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += scale * node.grad[i];
  });
}

Tensor concat(const std::vector<Tensor>& parts) {
  check(!parts.empty(), "concat: empty input");
  std::vector<double> out;
  std::vector<std::shared_ptr<Node>> parents;
  for (const Tensor& p : parts) {
    check(p.rank() == 1, "concat: only 1-D tensors");
    out.insert(out.end(), p.values().begin(), p.values().end());
    parents.push_back(p.node());
  }
  const std::size_t total = out.size();
  return make_op({total}, std::move(out), parents, [parents](Node& node) {
    std::size_t at = 0;
    for (const auto& p : parents) {
      if (p->requires_grad) {
        auto& g = p->grad_ref();
        for (std::size_t i = 0; i < g.size(); ++i) g[i] += node.grad[at + i];
      }
      at += p->values.size();
    }
  });
}

Tensor mean_pool(const Tensor& matrix) {
  check(matrix.rank() == 2, "mean_pool: need rank 2");
  const std::size_t n = matrix.shape()[0];
  const std::size_t d = matrix.shape()[1];
  check(n > 0, "mean_pool: empty matrix");
  std::vector<double> out(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) out[j] += matrix.values()[i * d + j];
  }
  for (double& v : out) v /= double(n);
  auto mn = matrix.node();
  return make_op({d}, std::move(out), {mn}, [=](Node& node) {
    if (!mn->requires_grad) return;
    auto& g = mn->grad_ref();
    const double inv = 1.0 / double(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < d; ++j) g[i * d + j] += node.grad[j] * inv;
    }
  });
}

Tensor row(const Tensor& matrix, std::size_t i) {
  check(matrix.rank() == 2, "row: need rank 2");
  const std::size_t n = matrix.shape()[0];
  const std::size_t d = matrix.shape()[1];
  if (i >= n) throw std::out_of_range("row: index out of range");
  std::vector<double> out(matrix.values().begin() + i * d,
                          matrix.values().begin() + (i + 1) * d);
  auto mn = matrix.node();
  return make_op({d}, std::move(out), {mn}, [=](Node& node) {
    if (!mn->requires_grad) return;
    auto& g = mn->grad_ref();
    for (std::size_t j = 0; j < d; ++j) g[i * d + j] += node.grad[j];
  });
}

Tensor tanh_op(const Tensor& t) {
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::tanh(t.values()[i]);
  auto tn = t.node();
  return make_op(t.shape(), std::move(out), {tn}, [=](Node& node) {
    if (!tn->requires_grad) return;
    auto& g = tn->grad_ref();
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double y = node.values[i];
      g[i] += node.grad[i] * (1.0 - y * y);
    }
  });
}

Tensor sigmoid(const Tensor& t) {
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = 1.0 / (1.0 + std::exp(-t.values()[i]));
  }
  auto tn = t.node();
  return make_op(t.shape(), std::move(out), {tn}, [=](Node& node) {
    if (!tn->requires_grad) return;
    auto& g = tn->grad_ref();
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double y = node.values[i];
      g[i] += node.grad[i] * y * (1.0 - y);
    }
  });
}

Tensor dot(const Tensor& u, const Tensor& v) {
  check(u.rank() == 1 && v.rank() == 1, "dot: need 1-D tensors");
  check(u.size() == v.size(), "dot: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u.values()[i] * v.values()[i];
  auto un = u.node();
  auto vn = v.node();
  return make_op({1}, {acc}, {un, vn}, [=](Node& node) {
    const double g = node.grad[0];
    if (un->requires_grad) {
      auto& gu = un->grad_ref();
      for (std::size_t i = 0; i < gu.size(); ++i) gu[i] += g * vn->values[i];
    }
    if (vn->requires_grad) {
      auto& gv = vn->grad_ref();
      for (std::size_t i = 0; i < gv.size(); ++i) gv[i] += g * un->values[i];
    }
  });
}

Tensor softmax(const Tensor& logits) {
  check(logits.rank() == 1, "softmax: need 1-D tensor");
  check(logits.size() > 0, "softmax: empty input");
  std::vector<double> out(logits.size());
  double max_v = logits.values()[0];
  for (double v : logits.values()) max_v = std::max(max_v, v);
  double sum = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::exp(logits.values()[i] - max_v);
    sum += out[i];
  }
  for (double& v : out) v /= sum;
  auto ln = logits.node();
  return make_op(logits.shape(), std::move(out), {ln}, [=](Node& node) {
    if (!ln->requires_grad) return;
    auto& g = ln->grad_ref();
    double inner = 0.0;
    for (std::size_t i = 0; i < node.size(); ++i) inner += node.grad[i] * node.values[i];
    for (std::size_t i = 0; i < node.size(); ++i) {
      g[i] += node.values[i] * (node.grad[i] - inner);
    }
  });
}

Tensor embedding_lookup(const Tensor& table, std::span<const std::size_t> ids) {
  check(table.rank() == 2, "embedding_lookup: table must be rank 2");
  const std::size_t vocab = table.shape()[0];
  const std::size_t d = table.shape()[1];
  std::vector<double> out;
  out.reserve(ids.size() * d);
  for (std::size_t id : ids) {
    if (id >= vocab) throw std::out_of_range("embedding_lookup: id out of range");
    out.insert(out.end(), table.values().begin() + id * d,
               table.values().begin() + (id + 1) * d);
  }
  auto tn = table.node();
  std::vector<std::size_t> idv(ids.begin(), ids.end());
  return make_op({idv.size(), d}, std::move(out), {tn}, [=](Node& node) {
    if (!tn->requires_grad) return;
    auto& g = tn->grad_ref();
    for (std::size_t r = 0; r < idv.size(); ++r) {
      for (std::size_t j = 0; j < d; ++j) {
        g[idv[r] * d + j] += node.grad[r * d + j];
      }
    }
  });
}

Tensor stack(const std::vector<Tensor>& scalars) {
  check(!scalars.empty(), "stack: empty input");
  std::vector<double> out;
  std::vector<std::shared_ptr<Node>> parents;
  for (const Tensor& s : scalars) {
    check(s.size() == 1, "stack: inputs must be scalars");
    out.push_back(s.values()[0]);
    parents.push_back(s.node());
  }
  const std::size_t k = out.size();
  return make_op({k}, std::move(out), parents, [parents](Node& node) {
    for (std::size_t i = 0; i < parents.size(); ++i) {
      if (parents[i]->requires_grad) parents[i]->grad_ref()[0] += node.grad[i];
    }
  });
}

Tensor stack_rows(const std::vector<Tensor>& rows) {
  check(!rows.empty(), "stack_rows: empty input");
  const std::size_t d = rows[0].size();
  std::vector<double> out;
  std::vector<std::shared_ptr<Node>> parents;
  for (const Tensor& r : rows) {
    check(r.rank() == 1 && r.size() == d, "stack_rows: ragged rows");
    out.insert(out.end(), r.values().begin(), r.values().end());
    parents.push_back(r.node());
  }
  return make_op({rows.size(), d}, std::move(out), parents, [parents, d](Node& node) {
    for (std::size_t r = 0; r < parents.size(); ++r) {
      if (!parents[r]->requires_grad) continue;
      auto& g = parents[r]->grad_ref();
      for (std::size_t j = 0; j < d; ++j) g[j] += node.grad[r * d + j];
    }
  });
}

Tensor index(const Tensor& vec, std::size_t i) {
  check(vec.rank() == 1, "index: need 1-D tensor");
  if (i >= vec.size()) throw std::out_of_range("index: out of range");
  auto vn = vec.node();
  return make_op({1}, {vec.values()[i]}, {vn}, [=](Node& node) {
    if (vn->requires_grad) vn->grad_ref()[i] += node.grad[0];
  });
}

Tensor scale_by(const Tensor& vec, const Tensor& scalar) {
  check(scalar.size() == 1, "scale_by: scale must be scalar");
  const double s = scalar.values()[0];
  std::vector<double> out(vec.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * vec.values()[i];
  auto vn = vec.node();
  auto sn = scalar.node();
  return make_op(vec.shape(), std::move(out), {vn, sn}, [=](Node& node) {
    if (vn->requires_grad) {
      auto& g = vn->grad_ref();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += node.grad[i] * sn->values[0];
    }
    if (sn->requires_grad) {
      double acc = 0.0;
      for (std::size_t i = 0; i < node.size(); ++i) acc += node.grad[i] * vn->values[i];
      sn->grad_ref()[0] += acc;
    }
  });
}

Tensor cross_entropy_loss(const Tensor& logits, std::span<const int> labels) {
  static constexpr double kClamp = 1e-12;  // floor before log
  const bool single = logits.rank() == 1;
  check(single || logits.rank() == 2, "cross_entropy_loss: need rank 1 or 2");
  const std::size_t n = single ? 1 : logits.shape()[0];
  const std::size_t c = single ? logits.shape()[0] : logits.shape()[1];
  check(labels.size() == n, "cross_entropy_loss: label count mismatch");

  // Row-wise stable softmax; kept for the backward closure.
  std::vector<double> probs(n * c);
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const int label = labels[i];
    check(label >= 0 && std::size_t(label) < c, "cross_entropy_loss: label out of range");
    double max_v = logits.values()[i * c];
    for (std::size_t j = 1; j < c; ++j) max_v = std::max(max_v, logits.values()[i * c + j]);
    double sum = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
      probs[i * c + j] = std::exp(logits.values()[i * c + j] - max_v);
      sum += probs[i * c + j];
    }
    for (std::size_t j = 0; j < c; ++j) probs[i * c + j] /= sum;
    loss -= std::log(std::max(probs[i * c + label], kClamp));
  }
  loss /= double(n);

  auto ln = logits.node();
  std::vector<int> label_copy(labels.begin(), labels.end());
  return make_op({1}, {loss}, {ln},
                 [ln, probs = std::move(probs), label_copy, n, c](Node& node) {
    if (!ln->requires_grad) return;
    auto& g = ln->grad_ref();
    const double scale = node.grad[0] / double(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        const double onehot = (std::size_t(label_copy[i]) == j) ? 1.0 : 0.0;
        g[i * c + j] += scale * (probs[i * c + j] - onehot);
      }
    }
  });
}

void backward(const Tensor& loss) {
  if (!loss.defined() || loss.size() != 1) {
    throw std::invalid_argument("backward: loss must be a defined scalar");
  }
  Node* root = loss.node().get();
  if (root->backward_done) {
    throw std::logic_error("backward: already called on this graph");
  }
  root->backward_done = true;

  // Iterative post-order DFS; reverse gives a valid topological order.
  std::vector<Node*> order;
  std::unordered_set<Node*> seen;
  std::vector<std::pair<Node*, std::size_t>> stack{{root, 0}};
  seen.insert(root);
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->parents.size()) {
      Node* parent = node->parents[next++].get();
      if (parent->requires_grad && !seen.count(parent)) {
        seen.insert(parent);
        stack.emplace_back(parent, 0);
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  root->grad_ref()[0] = 1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* node = *it;
    if (node->backward_fn && !node->grad.empty()) node->backward_fn(*node);
  }
}

// ---------------------------------------------------------------------------
// Recurrent cells.
// ---------------------------------------------------------------------------

LstmParams LstmParams::init(Rng& rng, std::size_t input, std::size_t hidden) {
  LstmParams p;
  auto w = [&] { return Tensor::glorot(rng, hidden, input); };
  auto u = [&] { return Tensor::glorot(rng, hidden, hidden); };
  auto b = [&] { return Tensor::zeros({hidden}, true); };
  p.wi = w(); p.ui = u(); p.bi = b();
  p.wf = w(); p.uf = u(); p.bf = b();
  p.wo = w(); p.uo = u(); p.bo = b();
  p.wg = w(); p.ug = u(); p.bg = b();
  return p;
}

LstmState lstm_cell(const LstmParams& p, const Tensor& x, const LstmState& s) {
  auto gate = [&](const Tensor& w, const Tensor& u, const Tensor& b) {
    return add(add(matmul(w, x), matmul(u, s.h)), b);
  };
  const Tensor i = sigmoid(gate(p.wi, p.ui, p.bi));
  const Tensor f = sigmoid(gate(p.wf, p.uf, p.bf));
  const Tensor o = sigmoid(gate(p.wo, p.uo, p.bo));
  const Tensor g = tanh_op(gate(p.wg, p.ug, p.bg));
  LstmState next;
  next.c = add(mul(f, s.c), mul(i, g));
  next.h = mul(o, tanh_op(next.c));
  return next;
}

GruParams GruParams::init(Rng& rng, std::size_t input, std::size_t hidden) {
  GruParams p;
  auto w = [&] { return Tensor::glorot(rng, hidden, input); };
  auto u = [&] { return Tensor::glorot(rng, hidden, hidden); };
  auto b = [&] { return Tensor::zeros({hidden}, true); };
  p.wr = w(); p.ur = u(); p.br = b();
  p.wz = w(); p.uz = u(); p.bz = b();
  p.wh = w(); p.uh = u(); p.bh = b();
  return p;
}

Tensor gru_cell(const GruParams& p, const Tensor& x, const Tensor& h) {
  const Tensor r = sigmoid(add(add(matmul(p.wr, x), matmul(p.ur, h)), p.br));
  const Tensor z = sigmoid(add(add(matmul(p.wz, x), matmul(p.uz, h)), p.bz));
  const Tensor candidate =
      tanh_op(add(add(matmul(p.wh, x), matmul(p.uh, mul(r, h))), p.bh));
  // h' = (1-z) . h + z . candidate
  return add(mul(affine(z, -1.0, 1.0), h), mul(z, candidate));
}

BiLstmParams BiLstmParams::init(Rng& rng, std::size_t input, std::size_t hidden) {
  BiLstmParams p;
  p.fwd = LstmParams::init(rng, input, hidden);
  p.bwd = LstmParams::init(rng, input, hidden);
  return p;
}

std::vector<Tensor> bilstm_states(const BiLstmParams& p,
                                  const std::vector<Tensor>& inputs) {
  if (inputs.empty()) throw std::invalid_argument("bilstm_states: empty sequence");
  const std::size_t hidden = p.fwd.hidden_size();
  const std::size_t n = inputs.size();

  std::vector<Tensor> fwd_h(n), bwd_h(n);
  LstmState state{Tensor::zeros({hidden}), Tensor::zeros({hidden})};
  for (std::size_t t = 0; t < n; ++t) {
    state = lstm_cell(p.fwd, inputs[t], state);
    fwd_h[t] = state.h;
  }
  state = LstmState{Tensor::zeros({hidden}), Tensor::zeros({hidden})};
  for (std::size_t t = n; t-- > 0;) {
    state = lstm_cell(p.bwd, inputs[t], state);
    bwd_h[t] = state.h;
  }

  std::vector<Tensor> out(n);
  for (std::size_t t = 0; t < n; ++t) out[t] = concat({fwd_h[t], bwd_h[t]});
  return out;
}

BiGruParams BiGruParams::init(Rng& rng, std::size_t input, std::size_t hidden) {
  BiGruParams p;
  p.fwd = GruParams::init(rng, input, hidden);
  p.bwd = GruParams::init(rng, input, hidden);
  return p;
}

Tensor bigru_final(const BiGruParams& p, const std::vector<Tensor>& inputs) {
  if (inputs.empty()) throw std::invalid_argument("bigru_final: empty sequence");
  const std::size_t hidden = p.fwd.hidden_size();
  Tensor fwd = Tensor::zeros({hidden});
  for (const Tensor& x : inputs) fwd = gru_cell(p.fwd, x, fwd);
  Tensor bwd = Tensor::zeros({hidden});
  for (std::size_t t = inputs.size(); t-- > 0;) bwd = gru_cell(p.bwd, inputs[t], bwd);
  return concat({fwd, bwd});
}

// ---------------------------------------------------------------------------
// NamedParams.
// ---------------------------------------------------------------------------

void NamedParams::add(const std::string& name, const Tensor& t) {
  if (find(name)) throw std::logic_error("NamedParams: duplicate name " + name);
  items.emplace_back(name, t);
}

void NamedParams::add_lstm(const std::string& prefix, const LstmParams& p) {
  add(prefix + ".wi", p.wi); add(prefix + ".ui", p.ui); add(prefix + ".bi", p.bi);
  add(prefix + ".wf", p.wf); add(prefix + ".uf", p.uf); add(prefix + ".bf", p.bf);
  add(prefix + ".wo", p.wo); add(prefix + ".uo", p.uo); add(prefix + ".bo", p.bo);
  add(prefix + ".wg", p.wg); add(prefix + ".ug", p.ug); add(prefix + ".bg", p.bg);
}

void NamedParams::add_gru(const std::string& prefix, const GruParams& p) {
  add(prefix + ".wr", p.wr); add(prefix + ".ur", p.ur); add(prefix + ".br", p.br);
  add(prefix + ".wz", p.wz); add(prefix + ".uz", p.uz); add(prefix + ".bz", p.bz);
  add(prefix + ".wh", p.wh); add(prefix + ".uh", p.uh); add(prefix + ".bh", p.bh);
}

Tensor* NamedParams::find(const std::string& name) {
  for (auto& [n, t] : items) {
    if (n == name) return &t;
  }
  return nullptr;
}

const Tensor* NamedParams::find(const std::string& name) const {
  for (const auto& [n, t] : items) {
    if (n == name) return &t;
  }
  return nullptr;
}

void NamedParams::zero_grads() {
  for (auto& [_, t] : items) t.zero_grad();
}

std::vector<std::vector<double>> NamedParams::snapshot_values() const {
  std::vector<std::vector<double>> out;
  out.reserve(items.size());
  for (const auto& [_, t] : items) {
    out.emplace_back(t.values().begin(), t.values().end());
  }
  return out;
}

void NamedParams::restore_values(const std::vector<std::vector<double>>& snapshot) {
  if (snapshot.size() != items.size()) {
    throw std::logic_error("NamedParams: snapshot size mismatch");
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto vals = items[i].second.values_mut();
    std::copy(snapshot[i].begin(), snapshot[i].end(), vals.begin());
  }
}

}  // namespace argimpact::autodiff
