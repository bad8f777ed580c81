//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "tiermol/numerics/optim.hpp"

#include <cmath>

namespace tiermol {

Optimizer::Optimizer(std::vector<Tensor> params, double learning_rate)
    : params_(std::move(params)), learning_rate_(learning_rate) {
  if (!(learning_rate > 0.0))
    throw ContractError("optimizer: learning rate must be positive");
  for (const Tensor &p: params_)
    if (!p.requires_grad())
      throw ContractError("optimizer: parameter does not track gradients");
}

void Optimizer::step() {
  for (std::size_t i = 0; i < params_.size(); ++i)
    if (!params_[i].has_grad())
      throw ContractError("optimizer step: parameter " + std::to_string(i)
                          + " has no gradient");

  ++step_count_;
  for (std::size_t i = 0; i < params_.size(); ++i) {
    update(i, params_[i]);
    params_[i].zero_grad();
  }
}

void Sgd::update(std::size_t /*index*/, Tensor &param) {
  auto w = param.mutable_data();
  auto g = param.grad().data();
  for (std::size_t j = 0; j < w.size(); ++j)
    w[j] -= learning_rate_ * g[j];
}

Adam::Adam(std::vector<Tensor> params, double learning_rate, double beta1,
           double beta2, double epsilon)
    : Optimizer(std::move(params), learning_rate), beta1_(beta1),
      beta2_(beta2), epsilon_(epsilon) {
  m_.reserve(params_.size());
  v_.reserve(params_.size());
  for (const Tensor &p: params_) {
    m_.emplace_back(p.rows(), p.cols());
    v_.emplace_back(p.rows(), p.cols());
  }
}

void Adam::update(std::size_t index, Tensor &param) {
  auto w = param.mutable_data();
  auto g = param.grad().data();
  auto m = m_[index].data();
  auto v = v_[index].data();

  const double t = static_cast<double>(step_count_);
  const double correction1 = 1.0 - std::pow(beta1_, t);
  const double correction2 = 1.0 - std::pow(beta2_, t);

  for (std::size_t j = 0; j < w.size(); ++j) {
    m[j] = beta1_ * m[j] + (1.0 - beta1_) * g[j];
    v[j] = beta2_ * v[j] + (1.0 - beta2_) * g[j] * g[j];
    const double m_hat = m[j] / correction1;
    const double v_hat = v[j] / correction2;
    w[j] -= learning_rate_ * m_hat / (std::sqrt(v_hat) + epsilon_);
  }
}

Matrix glorot_uniform(std::size_t fan_in, std::size_t fan_out,
                      std::mt19937_64 &rng) {
  const double limit =
      std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  std::uniform_real_distribution<double> dist(-limit, limit);
  Matrix m(fan_in, fan_out);
  for (double &v: m.data())
    v = dist(rng);
  return m;
}

}  // namespace tiermol
