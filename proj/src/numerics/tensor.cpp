//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "tiermol/numerics/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace tiermol {

void detail::TensorNode::accumulate(const Matrix &g) {
  if (!grad) {
    grad = g;
    return;
  }
  auto dst = grad->data();
  auto src = g.data();
  for (std::size_t i = 0; i < dst.size(); ++i)
    dst[i] += src[i];
}

Tensor::Tensor(): node_(std::make_shared<detail::TensorNode>()) { }

Tensor Tensor::constant(Matrix value) {
  auto node = std::make_shared<detail::TensorNode>();
  node->value = std::move(value);
  return Tensor(std::move(node));
}

Tensor Tensor::parameter(Matrix value) {
  auto node = std::make_shared<detail::TensorNode>();
  node->value = std::move(value);
  node->requires_grad = true;
  return Tensor(std::move(node));
}

const Matrix &Tensor::grad() const {
  if (!node_->grad)
    throw ContractError("tensor of shape " + shape().str()
                        + " has no gradient");
  return *node_->grad;
}

void Tensor::zero_grad() {
  node_->grad = Matrix(rows(), cols());
}

double Tensor::item() const {
  if (shape() != Shape { 1, 1 })
    throw ShapeError("item() requires a 1x1 tensor, got " + shape().str());
  return value()(0, 0);
}

Tensor Tape::record(Matrix value, std::initializer_list<Tensor> inputs,
                    BackwardFn backward_fn) {
  return record(std::move(value),
                std::span<const Tensor>(inputs.begin(), inputs.size()),
                std::move(backward_fn));
}

Tensor Tape::record(Matrix value, std::span<const Tensor> inputs,
                    BackwardFn backward_fn) {
  const bool tracked = std::any_of(inputs.begin(), inputs.end(),
                                   [](const Tensor &t) {
                                     return t.requires_grad();
                                   });
  Tensor out = Tensor::constant(std::move(value));
  if (tracked) {
    out.node_->requires_grad = true;
    records_.push_back({ out.node_, std::move(backward_fn) });
  }
  return out;
}

void Tape::accumulate(const Tensor &t, const Matrix &g) {
  if (t.requires_grad())
    t.node_->accumulate(g);
}

void Tape::backward(const Tensor &loss) {
  if (loss.shape() != Shape { 1, 1 })
    throw ContractError("backward: loss must be 1x1, got "
                        + loss.shape().str());
  if (records_.empty())
    throw ContractError("backward: tape is empty");

  loss.node_->accumulate(Matrix(1, 1, 1.0));
  for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
    if (!it->output->grad)
      continue;
    it->backward(*it->output->grad);
  }
  records_.clear();
}

namespace {
  bool is_scalar(const Tensor &t) {
    return t.shape() == Shape { 1, 1 };
  }

  // Resolves the result shape for a binary elementwise op with scalar
  // broadcasting.
  Shape broadcast_shape(const Tensor &a, const Tensor &b, const char *op) {
    if (a.shape() == b.shape())
      return a.shape();
    if (is_scalar(a))
      return b.shape();
    if (is_scalar(b))
      return a.shape();
    throw ShapeError(std::string(op) + ": shape mismatch (" + a.shape().str()
                     + " vs " + b.shape().str() + ")");
  }

  double at(const Matrix &m, std::size_t i) {
    return m.size() == 1 ? m.data()[0] : m.data()[i];
  }

  // Reduces an upstream gradient to the operand's shape (summing when the
  // operand was broadcast).
  Matrix reduce_to(const Tensor &operand, Matrix g) {
    if (operand.shape() == g.shape())
      return g;
    return Matrix(1, 1, sum(g));
  }

  template <class F>
  Matrix map(const Matrix &a, F f) {
    Matrix out(a.rows(), a.cols());
    std::transform(a.data().begin(), a.data().end(), out.data().begin(), f);
    return out;
  }

  double clamped_sigmoid(double x) {
    x = std::clamp(x, -kSigmoidClamp, kSigmoidClamp);
    return 1.0 / (1.0 + std::exp(-x));
  }
}  // namespace

Tensor matmul(Tape &tape, const Tensor &a, const Tensor &b) {
  return tape.record(matmul(a.value(), b.value()), { a, b },
                     [a, b](const Matrix &g) {
                       if (a.requires_grad())
                         Tape::accumulate(a, matmul(g, transpose(b.value())));
                       if (b.requires_grad())
                         Tape::accumulate(b, matmul(transpose(a.value()), g));
                     });
}

Tensor add(Tape &tape, const Tensor &a, const Tensor &b) {
  const Shape s = broadcast_shape(a, b, "add");
  Matrix out(s.rows, s.cols);
  for (std::size_t i = 0; i < out.size(); ++i)
    out.data()[i] = at(a.value(), i) + at(b.value(), i);
  return tape.record(std::move(out), { a, b }, [a, b](const Matrix &g) {
    Tape::accumulate(a, reduce_to(a, g));
    Tape::accumulate(b, reduce_to(b, g));
  });
}

Tensor sub(Tape &tape, const Tensor &a, const Tensor &b) {
  const Shape s = broadcast_shape(a, b, "sub");
  Matrix out(s.rows, s.cols);
  for (std::size_t i = 0; i < out.size(); ++i)
    out.data()[i] = at(a.value(), i) - at(b.value(), i);
  return tape.record(std::move(out), { a, b }, [a, b](const Matrix &g) {
    Tape::accumulate(a, reduce_to(a, g));
    Tape::accumulate(b, reduce_to(b, -1.0 * g));
  });
}

Tensor mul(Tape &tape, const Tensor &a, const Tensor &b) {
  const Shape s = broadcast_shape(a, b, "mul");
  Matrix out(s.rows, s.cols);
  for (std::size_t i = 0; i < out.size(); ++i)
    out.data()[i] = at(a.value(), i) * at(b.value(), i);
  return tape.record(std::move(out), { a, b }, [a, b](const Matrix &g) {
    if (a.requires_grad()) {
      Matrix ga(g.rows(), g.cols());
      for (std::size_t i = 0; i < g.size(); ++i)
        ga.data()[i] = g.data()[i] * at(b.value(), i);
      Tape::accumulate(a, reduce_to(a, std::move(ga)));
    }
    if (b.requires_grad()) {
      Matrix gb(g.rows(), g.cols());
      for (std::size_t i = 0; i < g.size(); ++i)
        gb.data()[i] = g.data()[i] * at(a.value(), i);
      Tape::accumulate(b, reduce_to(b, std::move(gb)));
    }
  });
}

Tensor scale(Tape &tape, const Tensor &a, double s) {
  return tape.record(s * a.value(), { a }, [a, s](const Matrix &g) {
    Tape::accumulate(a, s * g);
  });
}

Tensor transpose(Tape &tape, const Tensor &a) {
  return tape.record(transpose(a.value()), { a }, [a](const Matrix &g) {
    Tape::accumulate(a, transpose(g));
  });
}

Tensor sigmoid(Tape &tape, const Tensor &a) {
  Matrix out = map(a.value(), clamped_sigmoid);
  Matrix s = out;
  return tape.record(std::move(out), { a },
                     [a, s = std::move(s)](const Matrix &g) {
                       Matrix ga(g.rows(), g.cols());
                       for (std::size_t i = 0; i < g.size(); ++i) {
                         const double si = s.data()[i];
                         ga.data()[i] = g.data()[i] * si * (1.0 - si);
                       }
                       Tape::accumulate(a, ga);
                     });
}

Tensor relu(Tape &tape, const Tensor &a) {
  return tape.record(map(a.value(), [](double x) { return x > 0.0 ? x : 0.0; }),
                     { a }, [a](const Matrix &g) {
                       Matrix ga(g.rows(), g.cols());
                       for (std::size_t i = 0; i < g.size(); ++i)
                         ga.data()[i] =
                             a.value().data()[i] > 0.0 ? g.data()[i] : 0.0;
                       Tape::accumulate(a, ga);
                     });
}

Tensor exp(Tape &tape, const Tensor &a) {
  Matrix out = map(a.value(), [](double x) { return std::exp(x); });
  Matrix e = out;
  return tape.record(std::move(out), { a },
                     [a, e = std::move(e)](const Matrix &g) {
                       Matrix ga(g.rows(), g.cols());
                       for (std::size_t i = 0; i < g.size(); ++i)
                         ga.data()[i] = g.data()[i] * e.data()[i];
                       Tape::accumulate(a, ga);
                     });
}

Tensor log(Tape &tape, const Tensor &a) {
  return tape.record(
      map(a.value(), [](double x) { return std::log(std::max(x, kLogFloor)); }),
      { a }, [a](const Matrix &g) {
        Matrix ga(g.rows(), g.cols());
        for (std::size_t i = 0; i < g.size(); ++i) {
          const double x = a.value().data()[i];
          ga.data()[i] = x > kLogFloor ? g.data()[i] / x : 0.0;
        }
        Tape::accumulate(a, ga);
      });
}

Tensor clamp(Tape &tape, const Tensor &a, double lo, double hi) {
  if (!(lo <= hi))
    throw ContractError("clamp: lo must not exceed hi");
  return tape.record(
      map(a.value(), [lo, hi](double x) { return std::clamp(x, lo, hi); }),
      { a }, [a, lo, hi](const Matrix &g) {
        Matrix ga(g.rows(), g.cols());
        for (std::size_t i = 0; i < g.size(); ++i) {
          const double x = a.value().data()[i];
          ga.data()[i] = (x >= lo && x <= hi) ? g.data()[i] : 0.0;
        }
        Tape::accumulate(a, ga);
      });
}

Tensor sum(Tape &tape, const Tensor &a) {
  return tape.record(Matrix(1, 1, sum(a.value())), { a },
                     [a](const Matrix &g) {
                       Tape::accumulate(a, Matrix(a.rows(), a.cols(), g(0, 0)));
                     });
}

Tensor mean(Tape &tape, const Tensor &a) {
  const std::size_t n = a.value().size();
  if (n == 0)
    throw ShapeError("mean: empty tensor");
  const double inv = 1.0 / static_cast<double>(n);
  return tape.record(Matrix(1, 1, sum(a.value()) * inv), { a },
                     [a, inv](const Matrix &g) {
                       Tape::accumulate(
                           a, Matrix(a.rows(), a.cols(), g(0, 0) * inv));
                     });
}

Tensor hstack(Tape &tape, std::span<const Tensor> parts) {
  if (parts.empty())
    throw ShapeError("hstack: no parts");
  const std::size_t rows = parts.front().rows();
  std::size_t cols = 0;
  for (const Tensor &p: parts) {
    if (p.rows() != rows)
      throw ShapeError("hstack: row mismatch (" + parts.front().shape().str()
                       + " vs " + p.shape().str() + ")");
    cols += p.cols();
  }

  Matrix out(rows, cols);
  std::size_t offset = 0;
  for (const Tensor &p: parts) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < p.cols(); ++j)
        out(i, offset + j) = p.value()(i, j);
    offset += p.cols();
  }

  std::vector<Tensor> inputs(parts.begin(), parts.end());
  return tape.record(std::move(out), parts, [inputs](const Matrix &g) {
    std::size_t off = 0;
    for (const Tensor &p: inputs) {
      if (p.requires_grad()) {
        Matrix gp(p.rows(), p.cols());
        for (std::size_t i = 0; i < p.rows(); ++i)
          for (std::size_t j = 0; j < p.cols(); ++j)
            gp(i, j) = g(i, off + j);
        Tape::accumulate(p, gp);
      }
      off += p.cols();
    }
  });
}

}  // namespace tiermol
