//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <random>
#include <vector>

#include "tiermol/numerics/tensor.hpp"

namespace tiermol {

inline constexpr double kLogSigmaMin = -10.0;
inline constexpr double kLogSigmaMax = 10.0;
inline constexpr std::size_t kMaxGnnDepth = 6;

enum class Activation { Relu, None };

/// Symmetric GCN normalisation D^-1/2 (A + I) D^-1/2, where D is the degree
/// matrix of A + I. Works unchanged on weighted (coarsened) adjacency.
Matrix normalize_adjacency(const Matrix &a);

struct GcnLayer {
  Tensor weight;  // d_in x d_out
  Activation activation = Activation::Relu;

  /// act(a_norm * h * weight)
  Tensor forward(Tape &tape, const Tensor &a_norm, const Tensor &h) const;
};

/// K stacked GCN layers: H0 = X, Hk = act(A_norm Hk-1 Wk), Z = HK.
class GnnStack {
 public:
  /// Rejects an empty stack, more than six layers, and mismatched widths.
  explicit GnnStack(std::vector<GcnLayer> layers);

  /// Glorot-initialised stack; every layer outputs `out_dim`, hidden layers use
  /// relu and the last layer is linear.
  static GnnStack glorot(std::size_t in_dim, std::size_t out_dim,
                         std::size_t depth, std::mt19937_64 &rng);

  Tensor forward(Tape &tape, const Matrix &adjacency, const Tensor &x) const;
  Tensor forward_normalized(Tape &tape, const Tensor &a_norm,
                            const Tensor &x) const;

  std::size_t depth() const { return layers_.size(); }
  std::size_t in_dim() const { return layers_.front().weight.rows(); }
  std::size_t out_dim() const { return layers_.back().weight.cols(); }
  const std::vector<GcnLayer> &layers() const { return layers_; }
  std::vector<Tensor> parameters() const;

 private:
  std::vector<GcnLayer> layers_;
};

struct GaussianParams {
  Tensor mu;
  Tensor sigma;
  Tensor log_sigma;
};

/// Shared relu trunk (the first K - 1 layers) feeding a linear mean head and
/// a linear log-sigma head. log sigma is clamped to [-10, 10] before exp.
class VariationalGnnStack {
 public:
  VariationalGnnStack(std::vector<GcnLayer> trunk, GcnLayer mu_head,
                      GcnLayer log_sigma_head);

  static VariationalGnnStack glorot(std::size_t in_dim, std::size_t out_dim,
                                    std::size_t depth, std::mt19937_64 &rng);

  GaussianParams forward(Tape &tape, const Matrix &adjacency,
                         const Tensor &x) const;
  GaussianParams forward_normalized(Tape &tape, const Tensor &a_norm,
                                    const Tensor &x) const;

  std::size_t depth() const { return trunk_.size() + 1; }
  std::size_t in_dim() const;
  std::size_t out_dim() const { return mu_head_.weight.cols(); }
  const std::vector<GcnLayer> &trunk() const { return trunk_; }
  const GcnLayer &mu_head() const { return mu_head_; }
  const GcnLayer &log_sigma_head() const { return log_sigma_head_; }
  std::vector<Tensor> parameters() const;

  /// Deterministic stack with the same trunk and the mean head as last layer.
  GnnStack mean_stack() const;

 private:
  std::vector<GcnLayer> trunk_;
  GcnLayer mu_head_;
  GcnLayer log_sigma_head_;
};

/// Per-tier (A, X, Z) flowing through the encoder. Z is empty until the
/// tier's GNN has run.
struct TierState {
  Matrix adjacency;
  Tensor x;
  std::optional<Tensor> z;
};

}  // namespace tiermol
