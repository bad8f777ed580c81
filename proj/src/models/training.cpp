//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "tiermol/models/training.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "tiermol/numerics/optim.hpp"

namespace tiermol {

NumericAbort::NumericAbort(std::size_t epoch, std::size_t molecule)
    : std::runtime_error("non-finite loss in epoch " + std::to_string(epoch)
                         + " on molecule " + std::to_string(molecule)),
      epoch_(epoch), molecule_(molecule) { }

namespace {
  std::unique_ptr<Optimizer> make_optimizer(const TrainConfig &config,
                                            std::vector<Tensor> params) {
    if (config.optimizer == OptimizerKind::Sgd)
      return std::make_unique<Sgd>(std::move(params), config.learning_rate);
    return std::make_unique<Adam>(std::move(params), config.learning_rate);
  }

  void check_dataset(const std::vector<ModelInput> &dataset,
                     const TrainConfig &config) {
    if (dataset.empty())
      throw ContractError("training needs at least one molecule");
    for (const ModelInput &in: dataset)
      if (in.features.cols() != config.model.input_dim)
        throw ShapeError("training: feature width "
                         + std::to_string(in.features.cols())
                         + " but model expects "
                         + std::to_string(config.model.input_dim));
  }

  // Separate stream from weight initialisation.
  constexpr std::uint64_t kNoiseStream = 0x9e3779b97f4a7c15ULL;
}  // namespace

double beta_schedule(const TrainConfig &config, std::size_t epoch) {
  const double warm = config.warmup_fraction * static_cast<double>(config.epochs);
  if (warm < 1.0)
    return config.beta;
  return config.beta * std::min(1.0, static_cast<double>(epoch) / warm);
}

GaeTrainResult train_gae(const std::vector<ModelInput> &dataset,
                         const TrainConfig &config) {
  check_dataset(dataset, config);
  TieredGae model = TieredGae::initialize(config.model, config.seed);
  auto optimizer = make_optimizer(config, model.parameters());

  std::vector<double> trace;
  trace.reserve(config.epochs);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    double total = 0.0;
    for (std::size_t m = 0; m < dataset.size(); ++m) {
      Tape tape;
      const ModelInput &input = dataset[m];
      Reconstruction rec = model.decode(tape, model.encode(tape, input));
      ReconstructionLoss loss = reconstruction_loss(
          tape, rec.adjacency, rec.features, input.adjacency, input.features,
          config.lambda_x);
      const double value = loss.total.item();
      if (!std::isfinite(value))
        throw NumericAbort(epoch + 1, m);
      tape.backward(loss.total);
      optimizer->step();
      model.symmetrize_decoder();
      total += value;
    }
    trace.push_back(total / static_cast<double>(dataset.size()));
  }
  return { std::move(model), std::move(trace) };
}

VgaeTrainResult train_vgae(const std::vector<ModelInput> &dataset,
                           const TrainConfig &config) {
  check_dataset(dataset, config);
  TieredVgae model = TieredVgae::initialize(config.model, config.seed);
  auto optimizer = make_optimizer(config, model.parameters());
  NoiseSource noise = NoiseSource::gaussian(config.seed ^ kNoiseStream);

  std::vector<double> elbo_trace;
  std::vector<double> kl_trace;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    const double beta = beta_schedule(config, epoch);
    double elbo_sum = 0.0;
    double kl_sum = 0.0;
    for (std::size_t m = 0; m < dataset.size(); ++m) {
      Tape tape;
      ElboTerms terms = model.elbo(tape, dataset[m], noise, beta, config.lambda_x);
      if (!std::isfinite(terms.elbo.item()))
        throw NumericAbort(epoch + 1, m);
      Tensor objective = scale(tape, terms.elbo, -1.0);
      tape.backward(objective);
      optimizer->step();
      model.symmetrize_decoder();
      elbo_sum += -terms.reconstruction - config.beta * terms.kl;
      kl_sum += terms.kl;
    }
    const auto count = static_cast<double>(dataset.size());
    elbo_trace.push_back(elbo_sum / count);
    kl_trace.push_back(kl_sum / count);
  }
  return { std::move(model), std::move(elbo_trace), std::move(kl_trace) };
}

}  // namespace tiermol
