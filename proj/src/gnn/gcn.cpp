//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "tiermol/gnn/gcn.hpp"

#include <cmath>
#include <string>

#include "tiermol/numerics/optim.hpp"

namespace tiermol {

Matrix normalize_adjacency(const Matrix &a) {
  if (a.rows() != a.cols())
    throw ShapeError("normalize_adjacency: adjacency must be square, got "
                     + a.shape().str());
  const std::size_t n = a.rows();
  std::vector<double> inv_sqrt_degree(n);
  for (std::size_t i = 0; i < n; ++i) {
    double d = 1.0;
    for (std::size_t j = 0; j < n; ++j)
      d += a(i, j);
    inv_sqrt_degree[i] = 1.0 / std::sqrt(d);
  }

  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out(i, j) = (a(i, j) + (i == j ? 1.0 : 0.0)) * inv_sqrt_degree[i]
                  * inv_sqrt_degree[j];
  return out;
}

Tensor GcnLayer::forward(Tape &tape, const Tensor &a_norm,
                         const Tensor &h) const {
  Tensor out = matmul(tape, matmul(tape, a_norm, h), weight);
  return activation == Activation::Relu ? relu(tape, out) : out;
}

namespace {
  void check_chain(const std::vector<GcnLayer> &layers) {
    for (std::size_t k = 1; k < layers.size(); ++k)
      if (layers[k].weight.rows() != layers[k - 1].weight.cols())
        throw ShapeError("GNN layer " + std::to_string(k) + " expects width "
                         + std::to_string(layers[k].weight.rows())
                         + " but layer " + std::to_string(k - 1)
                         + " produces " + std::to_string(layers[k - 1].weight.cols()));
  }

  void check_input(const Tensor &a_norm, const Tensor &x, std::size_t in_dim) {
    if (a_norm.rows() != a_norm.cols() || a_norm.rows() != x.rows())
      throw ShapeError("GNN: adjacency " + a_norm.shape().str()
                       + " does not match input " + x.shape().str());
    if (x.cols() != in_dim)
      throw ShapeError("GNN: input width " + std::to_string(x.cols())
                       + " but stack expects " + std::to_string(in_dim));
  }

  std::vector<GcnLayer> glorot_layers(std::size_t in_dim, std::size_t out_dim,
                                      std::size_t count, std::mt19937_64 &rng) {
    std::vector<GcnLayer> layers;
    std::size_t width = in_dim;
    for (std::size_t k = 0; k < count; ++k) {
      layers.push_back({ Tensor::parameter(glorot_uniform(width, out_dim, rng)),
                         Activation::Relu });
      width = out_dim;
    }
    return layers;
  }
}  // namespace

GnnStack::GnnStack(std::vector<GcnLayer> layers): layers_(std::move(layers)) {
  if (layers_.empty())
    throw ContractError("GNN stack needs at least one layer");
  if (layers_.size() > kMaxGnnDepth)
    throw ContractError("GNN stack deeper than "
                        + std::to_string(kMaxGnnDepth) + " layers");
  check_chain(layers_);
}

GnnStack GnnStack::glorot(std::size_t in_dim, std::size_t out_dim,
                          std::size_t depth, std::mt19937_64 &rng) {
  if (depth == 0 || depth > kMaxGnnDepth)
    throw ContractError("GNN depth must lie in 1..6");
  std::vector<GcnLayer> layers = glorot_layers(in_dim, out_dim, depth, rng);
  layers.back().activation = Activation::None;
  return GnnStack(std::move(layers));
}

Tensor GnnStack::forward(Tape &tape, const Matrix &adjacency,
                         const Tensor &x) const {
  return forward_normalized(tape, Tensor::constant(normalize_adjacency(adjacency)),
                            x);
}

Tensor GnnStack::forward_normalized(Tape &tape, const Tensor &a_norm,
                                    const Tensor &x) const {
  check_input(a_norm, x, in_dim());
  Tensor h = x;
  for (const GcnLayer &layer: layers_)
    h = layer.forward(tape, a_norm, h);
  return h;
}

std::vector<Tensor> GnnStack::parameters() const {
  std::vector<Tensor> out;
  for (const GcnLayer &layer: layers_)
    out.push_back(layer.weight);
  return out;
}

VariationalGnnStack::VariationalGnnStack(std::vector<GcnLayer> trunk,
                                         GcnLayer mu_head,
                                         GcnLayer log_sigma_head)
    : trunk_(std::move(trunk)), mu_head_(std::move(mu_head)),
      log_sigma_head_(std::move(log_sigma_head)) {
  if (trunk_.size() + 1 > kMaxGnnDepth)
    throw ContractError("GNN stack deeper than "
                        + std::to_string(kMaxGnnDepth) + " layers");
  check_chain(trunk_);
  if (mu_head_.weight.shape() != log_sigma_head_.weight.shape())
    throw ShapeError("mean head " + mu_head_.weight.shape().str()
                     + " and log-sigma head "
                     + log_sigma_head_.weight.shape().str() + " differ");
  if (!trunk_.empty() && trunk_.back().weight.cols() != mu_head_.weight.rows())
    throw ShapeError("heads expect width "
                     + std::to_string(mu_head_.weight.rows())
                     + " but trunk produces "
                     + std::to_string(trunk_.back().weight.cols()));
  mu_head_.activation = Activation::None;
  log_sigma_head_.activation = Activation::None;
}

VariationalGnnStack VariationalGnnStack::glorot(std::size_t in_dim,
                                                std::size_t out_dim,
                                                std::size_t depth,
                                                std::mt19937_64 &rng) {
  if (depth == 0 || depth > kMaxGnnDepth)
    throw ContractError("GNN depth must lie in 1..6");
  std::vector<GcnLayer> trunk = glorot_layers(in_dim, out_dim, depth - 1, rng);
  const std::size_t head_in = trunk.empty() ? in_dim : out_dim;
  GcnLayer mu { Tensor::parameter(glorot_uniform(head_in, out_dim, rng)),
                Activation::None };
  GcnLayer log_sigma { Tensor::parameter(glorot_uniform(head_in, out_dim, rng)),
                       Activation::None };
  return VariationalGnnStack(std::move(trunk), std::move(mu), std::move(log_sigma));
}

std::size_t VariationalGnnStack::in_dim() const {
  return trunk_.empty() ? mu_head_.weight.rows() : trunk_.front().weight.rows();
}

GaussianParams VariationalGnnStack::forward(Tape &tape, const Matrix &adjacency,
                                            const Tensor &x) const {
  return forward_normalized(tape, Tensor::constant(normalize_adjacency(adjacency)),
                            x);
}

GaussianParams VariationalGnnStack::forward_normalized(Tape &tape,
                                                       const Tensor &a_norm,
                                                       const Tensor &x) const {
  check_input(a_norm, x, in_dim());
  Tensor h = x;
  for (const GcnLayer &layer: trunk_)
    h = layer.forward(tape, a_norm, h);
  Tensor mu = mu_head_.forward(tape, a_norm, h);
  Tensor log_sigma = clamp(tape, log_sigma_head_.forward(tape, a_norm, h),
                           kLogSigmaMin, kLogSigmaMax);
  Tensor sigma = exp(tape, log_sigma);
  return { mu, sigma, log_sigma };
}

std::vector<Tensor> VariationalGnnStack::parameters() const {
  std::vector<Tensor> out;
  for (const GcnLayer &layer: trunk_)
    out.push_back(layer.weight);
  out.push_back(mu_head_.weight);
  out.push_back(log_sigma_head_.weight);
  return out;
}

GnnStack VariationalGnnStack::mean_stack() const {
  std::vector<GcnLayer> layers = trunk_;
  layers.push_back(mu_head_);
  return GnnStack(std::move(layers));
}

}  // namespace tiermol
