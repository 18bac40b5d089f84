#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "argimpact/rng.hpp"

namespace argimpact::autodiff {

using Shape = std::vector<std::size_t>;

std::size_t shape_size(const Shape& shape);

namespace detail {

/// One node of the recorded computation. Ops append fresh nodes whose
/// backward closures push gradients into their parents; parameters are
/// parentless leaves that persist across forward passes.
struct Node {
  Shape shape;
  std::vector<double> values;
  std::vector<double> grad;  // empty until backward touches the node
  bool requires_grad = false;
  bool backward_done = false;
  std::vector<std::shared_ptr<Node>> parents;
  std::function<void(Node&)> backward_fn;

  std::size_t size() const { return values.size(); }
  std::vector<double>& grad_ref() {
    if (grad.empty()) grad.assign(values.size(), 0.0);
    return grad;
  }
};

}  // namespace detail

/// Dense row-major tensor handle. Copies share the underlying node; the
/// recorded graph is the chain of parent links from any result back to the
/// leaves, and backward() replays it in reverse topological order.
class Tensor {
 public:
  Tensor() = default;

  static Tensor from_values(Shape shape, std::vector<double> values,
                            bool requires_grad = false);
  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor full(Shape shape, double value, bool requires_grad = false);
  static Tensor scalar(double value, bool requires_grad = false);
  /// Uniform(-a, a) init with a = sqrt(6 / (fan_in + fan_out)).
  static Tensor glorot(Rng& rng, std::size_t rows, std::size_t cols,
                       bool requires_grad = true);

  bool defined() const { return node_ != nullptr; }
  const Shape& shape() const { return node_->shape; }
  std::size_t size() const { return node_->values.size(); }
  std::size_t rank() const { return node_->shape.size(); }
  bool requires_grad() const { return node_->requires_grad; }

  std::span<const double> values() const { return node_->values; }
  std::span<double> values_mut() { return node_->values; }
  double item() const;

  bool has_grad() const { return !node_->grad.empty(); }
  std::span<const double> grad() const { return node_->grad; }
  std::span<double> grad_mut() { return node_->grad_ref(); }
  void zero_grad() { node_->grad.assign(node_->values.size(), 0.0); }

  std::shared_ptr<detail::Node> node() const { return node_; }
  explicit Tensor(std::shared_ptr<detail::Node> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<detail::Node> node_;
};

// ---------------------------------------------------------------------------
// Forward ops. Shape contracts:
//   matmul   [m,k]x[k,n] -> [m,n];  [m,k]x[k] -> [m]
//   add/sub/mul  same shape, elementwise
//   affine   scale*t + shift, elementwise
//   concat   1-D vectors -> 1-D
//   mean_pool [n,d] -> [d]
//   row      [n,d], i -> [d]
//   tanh/sigmoid  elementwise
//   dot      [d].[d] -> scalar
//   softmax  1-D -> 1-D (stable; rows sum to 1)
//   embedding_lookup  [V,d], ids -> [n,d]
//   stack    k scalars -> [k];  stack_rows  n x [d] -> [n,d]
//   index    [k], i -> scalar
//   scale_by [d] * scalar tensor -> [d]
//   cross_entropy_loss  [n,C] or [C] with labels -> scalar mean NLL
// Violations throw std::invalid_argument.
// ---------------------------------------------------------------------------

Tensor matmul(const Tensor& a, const Tensor& b);
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor affine(const Tensor& t, double scale, double shift);
Tensor concat(const std::vector<Tensor>& parts);
Tensor mean_pool(const Tensor& matrix);
Tensor row(const Tensor& matrix, std::size_t i);
Tensor tanh_op(const Tensor& t);
Tensor sigmoid(const Tensor& t);
Tensor dot(const Tensor& u, const Tensor& v);
Tensor softmax(const Tensor& logits);
Tensor embedding_lookup(const Tensor& table, std::span<const std::size_t> ids);
Tensor stack(const std::vector<Tensor>& scalars);
Tensor stack_rows(const std::vector<Tensor>& rows);
Tensor index(const Tensor& vec, std::size_t i);
Tensor scale_by(const Tensor& vec, const Tensor& scalar);
Tensor cross_entropy_loss(const Tensor& logits, std::span<const int> labels);

/// Reverse pass from a scalar loss. Gradients accumulate into every
/// requires_grad leaf reachable from it. Calling it twice on the same loss
/// without rebuilding the graph throws.
void backward(const Tensor& loss);

// ---------------------------------------------------------------------------
// Recurrent cells, composed from the ops above so gradients come for free.
// ---------------------------------------------------------------------------

struct LstmParams {
  Tensor wi, ui, bi;  // input gate
  Tensor wf, uf, bf;  // forget gate
  Tensor wo, uo, bo;  // output gate
  Tensor wg, ug, bg;  // candidate
  static LstmParams init(Rng& rng, std::size_t input, std::size_t hidden);
  std::size_t hidden_size() const { return bi.size(); }
};

struct LstmState {
  Tensor h, c;
};

LstmState lstm_cell(const LstmParams& p, const Tensor& x, const LstmState& s);

struct GruParams {
  Tensor wr, ur, br;  // reset gate
  Tensor wz, uz, bz;  // update gate
  Tensor wh, uh, bh;  // candidate
  static GruParams init(Rng& rng, std::size_t input, std::size_t hidden);
  std::size_t hidden_size() const { return br.size(); }
};

Tensor gru_cell(const GruParams& p, const Tensor& x, const Tensor& h);

struct BiLstmParams {
  LstmParams fwd, bwd;
  static BiLstmParams init(Rng& rng, std::size_t input, std::size_t hidden);
};

/// Per-token states of a 1-layer BiLSTM: element t is [h_fwd(t), h_bwd(t)],
/// dimension 2*hidden.
std::vector<Tensor> bilstm_states(const BiLstmParams& p,
                                  const std::vector<Tensor>& inputs);

struct BiGruParams {
  GruParams fwd, bwd;
  static BiGruParams init(Rng& rng, std::size_t input, std::size_t hidden);
};

/// Concatenated final states of both directions, dimension 2*hidden.
Tensor bigru_final(const BiGruParams& p, const std::vector<Tensor>& inputs);

// ---------------------------------------------------------------------------
// Named parameter collections (checkpointing, optimizers).
// ---------------------------------------------------------------------------

struct NamedParams {
  std::vector<std::pair<std::string, Tensor>> items;

  void add(const std::string& name, const Tensor& t);
  void add_lstm(const std::string& prefix, const LstmParams& p);
  void add_gru(const std::string& prefix, const GruParams& p);
  Tensor* find(const std::string& name);
  const Tensor* find(const std::string& name) const;

  void zero_grads();
  std::vector<std::vector<double>> snapshot_values() const;
  void restore_values(const std::vector<std::vector<double>>& snapshot);
};

}  // namespace argimpact::autodiff
