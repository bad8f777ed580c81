//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tiermol/models/tiered_gae.hpp"
#include "tiermol/models/tiered_vgae.hpp"

namespace tiermol {

enum class OptimizerKind { Sgd, Adam };

struct TrainConfig {
  ModelConfig model;
  double learning_rate = 0.01;
  std::size_t epochs = 200;
  std::uint64_t seed = 42;
  OptimizerKind optimizer = OptimizerKind::Adam;
  /// Final KL weight for the variational model.
  double beta = 1.0;
  double lambda_x = kDefaultLambdaX;
  /// Share of epochs over which beta ramps linearly from 0.
  double warmup_fraction = 0.2;
};

/// Training stopped because the loss became NaN or infinite.
class NumericAbort : public std::runtime_error {
 public:
  NumericAbort(std::size_t epoch, std::size_t molecule);
  /// 1-based epoch in which the loss diverged.
  std::size_t epoch() const { return epoch_; }
  std::size_t molecule() const { return molecule_; }

 private:
  std::size_t epoch_;
  std::size_t molecule_;
};

struct GaeTrainResult {
  TieredGae model;
  /// Mean reconstruction loss per epoch.
  std::vector<double> loss;
};

struct VgaeTrainResult {
  TieredVgae model;
  /// Mean ELBO per epoch, evaluated at the target beta.
  std::vector<double> elbo;
  /// Mean KL (summed over tiers) per epoch.
  std::vector<double> kl;
};

/// KL weight used during the given 0-based epoch.
double beta_schedule(const TrainConfig &config, std::size_t epoch);

/// One optimiser step per molecule per epoch, molecules in dataset order,
/// decoder symmetrised after each step. Deterministic given the seed.
GaeTrainResult train_gae(const std::vector<ModelInput> &dataset,
                         const TrainConfig &config);

/// As train_gae, ascending the ELBO with a linear beta warm-up.
VgaeTrainResult train_vgae(const std::vector<ModelInput> &dataset,
                           const TrainConfig &config);

}  // namespace tiermol
