//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>

#include "tiermol/models/tiered_gae.hpp"
#include "tiermol/models/tiered_vgae.hpp"

namespace tiermol {

inline constexpr int kCheckpointFormatVersion = 1;

using AnyModel = std::variant<TieredGae, TieredVgae>;

class CheckpointError : public std::runtime_error {
 public:
  enum class Kind { Io, VersionMismatch, Malformed, ShapeInconsistency };

  CheckpointError(Kind kind, const std::string &what);
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// JSON document:
///   { "format_version": 1, "model_kind": "gae" | "vgae",
///     "config": { "input_dim": d0, "dims": [d1, d2, d3], "layers": K },
///     "weights": { "<name>": { "shape": [r, c], "data": [[...], ...] } } }
/// Doubles are written in shortest round-trip form, so loading reproduces
/// every weight bit for bit.
std::string checkpoint_to_string(const AnyModel &model);
AnyModel checkpoint_from_string(const std::string &text);

void save_checkpoint(const AnyModel &model, const std::filesystem::path &path);
AnyModel load_checkpoint(const std::filesystem::path &path);

const ModelConfig &model_config(const AnyModel &model);

/// Deterministic embeddings: the variational model contributes its means.
TieredEmbeddings embed(const AnyModel &model, Tape &tape, const ModelInput &input);

/// Decoded edge probabilities for the given embeddings.
Matrix decode_probabilities(const AnyModel &model, const TieredEmbeddings &emb);

}  // namespace tiermol
