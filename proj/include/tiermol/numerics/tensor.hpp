//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tiermol/numerics/matrix.hpp"

namespace tiermol {

namespace detail {
  struct TensorNode {
    Matrix value;
    std::optional<Matrix> grad;
    bool requires_grad = false;

    void accumulate(const Matrix &g);
  };
}  // namespace detail

/// Handle to a matrix that may take part in reverse-mode differentiation.
///
/// Copies share the underlying node: a parameter tensor copied into a layer
/// and into an optimizer refers to the same weights and the same gradient.
/// The shape never changes after creation; only entries may be mutated, and
/// only through mutable_data().
class Tensor {
 public:
  Tensor();

  /// Non-tracking tensor. Ops over constants are not recorded.
  static Tensor constant(Matrix value);
  /// Trainable leaf; gradients accumulate into it on backward.
  static Tensor parameter(Matrix value);

  const Matrix &value() const { return node_->value; }
  std::span<double> mutable_data() { return node_->value.data(); }

  Shape shape() const { return node_->value.shape(); }
  std::size_t rows() const { return node_->value.rows(); }
  std::size_t cols() const { return node_->value.cols(); }

  bool requires_grad() const { return node_->requires_grad; }
  bool has_grad() const { return node_->grad.has_value(); }
  /// Throws ContractError when no gradient has been populated.
  const Matrix &grad() const;
  /// Resets the gradient to zeros of the value's shape.
  void zero_grad();
  /// Drops the gradient entirely.
  void clear_grad() { node_->grad.reset(); }

  /// Scalar accessor for 1x1 tensors.
  double item() const;

  bool same_node(const Tensor &other) const { return node_ == other.node_; }

 private:
  friend class Tape;
  explicit Tensor(std::shared_ptr<detail::TensorNode> node)
      : node_(std::move(node)) { }

  std::shared_ptr<detail::TensorNode> node_;
};

/// Ordered record of executed operations. Built afresh for every forward
/// pass; backward() walks it once in reverse and then clears it.
///
/// A tape belongs to one training session and must not be shared between
/// threads.
class Tape {
 public:
  using BackwardFn = std::function<void(const Matrix &grad_out)>;

  /// Wraps a computed value. If any input requires a gradient, the result is
  /// tracked and `backward_fn` is recorded to propagate into the inputs.
  Tensor record(Matrix value, std::initializer_list<Tensor> inputs,
                BackwardFn backward_fn);
  Tensor record(Matrix value, std::span<const Tensor> inputs,
                BackwardFn backward_fn);

  void backward(const Tensor &loss);

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  void clear() { records_.clear(); }

  /// Adds `g` to the gradient of `t` when it is tracked. Used inside backward
  /// functions.
  static void accumulate(const Tensor &t, const Matrix &g);

 private:
  struct Record {
    std::shared_ptr<detail::TensorNode> output;
    BackwardFn backward;
  };

  std::vector<Record> records_;
};

// Differentiable operations. Binary elementwise ops accept identical shapes
// or one 1x1 operand, which is broadcast.

Tensor matmul(Tape &tape, const Tensor &a, const Tensor &b);
Tensor add(Tape &tape, const Tensor &a, const Tensor &b);
Tensor sub(Tape &tape, const Tensor &a, const Tensor &b);
Tensor mul(Tape &tape, const Tensor &a, const Tensor &b);
Tensor scale(Tape &tape, const Tensor &a, double s);
Tensor transpose(Tape &tape, const Tensor &a);

/// Logistic function; the pre-activation is clamped to [-30, 30].
Tensor sigmoid(Tape &tape, const Tensor &a);
/// Subgradient 0 at exactly 0.
Tensor relu(Tape &tape, const Tensor &a);
Tensor exp(Tape &tape, const Tensor &a);
/// Natural log of max(a, 1e-12).
Tensor log(Tape &tape, const Tensor &a);
/// Entrywise clamp into [lo, hi]; zero gradient where clamped.
Tensor clamp(Tape &tape, const Tensor &a, double lo, double hi);

/// 1x1 sum of all entries.
Tensor sum(Tape &tape, const Tensor &a);
/// 1x1 mean of all entries.
Tensor mean(Tape &tape, const Tensor &a);

/// Column-wise concatenation; all parts must share the row count.
Tensor hstack(Tape &tape, std::span<const Tensor> parts);

inline constexpr double kSigmoidClamp = 30.0;
inline constexpr double kLogFloor = 1e-12;

}  // namespace tiermol
