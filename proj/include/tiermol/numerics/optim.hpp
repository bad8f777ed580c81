//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tiermol/numerics/tensor.hpp"

namespace tiermol {

/// In-place first-order optimizer over a fixed parameter list. step()
/// requires every parameter to carry a gradient and zeroes the gradients
/// after updating.
class Optimizer {
 public:
  explicit Optimizer(std::vector<Tensor> params, double learning_rate);
  virtual ~Optimizer() = default;

  void step();

  double learning_rate() const { return learning_rate_; }
  std::int64_t step_count() const { return step_count_; }
  const std::vector<Tensor> &params() const { return params_; }

 protected:
  virtual void update(std::size_t index, Tensor &param) = 0;

  std::vector<Tensor> params_;
  double learning_rate_;
  std::int64_t step_count_ = 0;
};

class Sgd final : public Optimizer {
 public:
  using Optimizer::Optimizer;

 private:
  void update(std::size_t index, Tensor &param) override;
};

class Adam final : public Optimizer {
 public:
  Adam(std::vector<Tensor> params, double learning_rate, double beta1 = 0.9,
       double beta2 = 0.999, double epsilon = 1e-8);

  const Matrix &first_moment(std::size_t i) const { return m_[i]; }
  const Matrix &second_moment(std::size_t i) const { return v_[i]; }

 private:
  void update(std::size_t index, Tensor &param) override;

  double beta1_;
  double beta2_;
  double epsilon_;
  std::vector<Matrix> m_;
  std::vector<Matrix> v_;
};

/// Glorot-uniform matrix: entries in +/- sqrt(6 / (fan_in + fan_out)).
Matrix glorot_uniform(std::size_t fan_in, std::size_t fan_out,
                      std::mt19937_64 &rng);

}  // namespace tiermol
