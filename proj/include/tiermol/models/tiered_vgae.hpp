//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "tiermol/gnn/gcn.hpp"
#include "tiermol/models/loss.hpp"
#include "tiermol/models/tiered_gae.hpp"

namespace tiermol {

/// Source of standard-normal noise for the reparameterisation. Gaussian
/// sources are seeded; zero sources give the posterior means; replay sources
/// hand back a fixed list of draws in order (for frozen-noise checks).
class NoiseSource {
 public:
  static NoiseSource gaussian(std::uint64_t seed);
  static NoiseSource zeros();
  static NoiseSource replay(std::vector<Matrix> draws);

  Matrix draw(std::size_t rows, std::size_t cols);

 private:
  enum class Mode { Gaussian, Zero, Replay };

  explicit NoiseSource(Mode mode): mode_(mode) { }

  Mode mode_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
  std::vector<Matrix> draws_;
  std::size_t cursor_ = 0;
};

struct VariationalEncoding {
  /// Sampled Z per tier; this is what the decoder sees.
  TieredEmbeddings sampled;
  /// Posterior parameters per tier.
  std::array<GaussianParams, 3> posteriors;
  /// The noise used for each tier's sample.
  std::array<Matrix, 3> noise;
};

struct ElboTerms {
  Tensor elbo;  // 1x1, to maximise
  double reconstruction = 0.0;
  double kl = 0.0;  // summed over tiers
};

/// Probabilistic tiered autoencoder. Each tier's variational GNN yields
/// (mu, sigma); pooling consumes mu, the decoder consumes mu + sigma * eps.
class TieredVgae {
 public:
  TieredVgae(ModelConfig config, std::array<VariationalGnnStack, 3> tiers,
             Tensor decoder, Tensor feature_head);

  static TieredVgae initialize(const ModelConfig &config, std::uint64_t seed);

  VariationalEncoding encode(Tape &tape, const ModelInput &input,
                             NoiseSource &noise) const;
  Reconstruction decode(Tape &tape, const TieredEmbeddings &emb) const;

  /// Single-sample estimate of -reconstruction_loss - beta * sum_t KL_t.
  ElboTerms elbo(Tape &tape, const ModelInput &input, NoiseSource &noise,
                 double beta = 1.0, double lambda_x = kDefaultLambdaX) const;

  /// The deterministic model obtained by keeping each tier's trunk and mean
  /// head. Shares parameter tensors with this model.
  TieredGae mean_model() const;

  const ModelConfig &config() const { return config_; }
  const std::array<VariationalGnnStack, 3> &tiers() const { return tiers_; }
  const Tensor &decoder() const { return decoder_; }
  const Tensor &feature_head() const { return feature_head_; }

  std::vector<Tensor> parameters() const;
  std::vector<NamedTensor> named_parameters() const;
  void symmetrize_decoder();

 private:
  ModelConfig config_;
  std::array<VariationalGnnStack, 3> tiers_;
  Tensor decoder_;
  Tensor feature_head_;
};

}  // namespace tiermol
