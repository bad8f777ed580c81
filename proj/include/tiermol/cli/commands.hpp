//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "tiermol/models/training.hpp"

namespace tiermol {

enum class ModelKind { Gae, Vgae };
enum class TierSelector { Node, Group, Graph };

enum ExitCode : int {
  kExitOk = 0,
  kExitParseFailure = 1,
  kExitIo = 2,
  kExitNumericAbort = 3,
  kExitCheckpointMismatch = 4,
};

struct RunConfig {
  std::filesystem::path input;
  /// Empty means stdout for JSON documents; train requires a path.
  std::filesystem::path out;
  ModelKind model = ModelKind::Gae;
  TrainConfig train;
  TierSelector tier = TierSelector::Graph;
  std::size_t steps = 5;
  std::filesystem::path checkpoint;
  std::string smiles_a;
  std::string smiles_b;
};

/// Number of most probable pairs reported per interpolation step.
inline constexpr std::size_t kTopEdges = 5;

/// CSV written next to the checkpoint: same stem, ".csv" extension.
std::filesystem::path loss_trace_path(const std::filesystem::path &checkpoint);

// Each command writes its document to config.out (or `out` when unset),
// diagnostics to `err`, and returns an ExitCode.
int cmd_parse(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_partition(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_train(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_embed(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_interp(const RunConfig &config, std::ostream &out, std::ostream &err);

}  // namespace tiermol
