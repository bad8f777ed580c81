//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tiermol/cli/commands.hpp"

using namespace tiermol;

int main(int argc, char **argv) {
  CLI::App app { "Tiered latent representations for molecular graphs" };
  app.require_subcommand(1);

  RunConfig config;
  std::vector<std::size_t> dims { 16, 16, 16 };
  std::size_t layers = 3;

  const std::map<std::string, ModelKind> model_map { { "gae", ModelKind::Gae },
                                                     { "vgae", ModelKind::Vgae } };
  const std::map<std::string, OptimizerKind> optimizer_map {
    { "sgd", OptimizerKind::Sgd }, { "adam", OptimizerKind::Adam }
  };
  const std::map<std::string, TierSelector> tier_map {
    { "node", TierSelector::Node }, { "group", TierSelector::Group },
    { "graph", TierSelector::Graph }
  };

  auto *parse = app.add_subcommand("parse", "Parse molecules and report counts");
  auto *part = app.add_subcommand("partition", "Partition molecules into groups");
  auto *train = app.add_subcommand("train", "Train a tiered autoencoder");
  auto *embed = app.add_subcommand("embed", "Embed molecules with a checkpoint");
  auto *interp = app.add_subcommand("interp", "Interpolate graph-tier embeddings");

  for (auto *cmd: { parse, part, train, embed })
    cmd->add_option("--input", config.input, "Molecule file")->required()->check(CLI::ExistingFile);
  for (auto *cmd: { parse, part, embed, interp })
    cmd->add_option("--out", config.out, "Output JSON (default stdout)");
  train->add_option("--out", config.out, "Checkpoint path; loss trace goes beside it as .csv")
      ->required();

  train->add_option("--model", config.model, "gae or vgae")
      ->transform(CLI::CheckedTransformer(model_map, CLI::ignore_case));
  train->add_option("--dims", dims, "Embedding widths D1,D2,D3")
      ->delimiter(',')
      ->expected(3)
      ->check(CLI::PositiveNumber);
  train->add_option("--layers", layers, "GNN layers per tier")->check(CLI::Range(2, 6));
  train->add_option("--lr", config.train.learning_rate, "Learning rate")
      ->check(CLI::PositiveNumber);
  train->add_option("--epochs", config.train.epochs, "Training epochs");
  train->add_option("--seed", config.train.seed, "Random seed");
  train->add_option("--optimizer", config.train.optimizer, "sgd or adam")
      ->transform(CLI::CheckedTransformer(optimizer_map, CLI::ignore_case));
  train->add_option("--beta", config.train.beta, "Final KL weight (vgae)")
      ->check(CLI::NonNegativeNumber);
  train->add_option("--lambda-x", config.train.lambda_x, "Feature reconstruction weight")
      ->check(CLI::NonNegativeNumber);

  for (auto *cmd: { embed, interp })
    cmd->add_option("checkpoint", config.checkpoint, "Checkpoint file")->required();
  embed->add_option("--tier", config.tier, "node, group or graph")
      ->transform(CLI::CheckedTransformer(tier_map, CLI::ignore_case));
  interp->add_option("smiles_a", config.smiles_a, "First endpoint")->required();
  interp->add_option("smiles_b", config.smiles_b, "Second endpoint")->required();
  interp->add_option("--steps", config.steps, "Number of interpolation points")
      ->check(CLI::Range(std::size_t { 2 }, std::size_t { 100000 }));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }
  std::copy(dims.begin(), dims.end(), config.train.model.dims.begin());
  config.train.model.layers = layers;

  if (parse->parsed())
    return cmd_parse(config, std::cout, std::cerr);
  if (part->parsed())
    return cmd_partition(config, std::cout, std::cerr);
  if (train->parsed())
    return cmd_train(config, std::cout, std::cerr);
  if (embed->parsed())
    return cmd_embed(config, std::cout, std::cerr);
  return cmd_interp(config, std::cout, std::cerr);
}
