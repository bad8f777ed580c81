//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tiermol/gnn/gcn.hpp"
#include "tiermol/models/model_input.hpp"

namespace tiermol {

/// Node, group and graph embeddings of one molecule.
struct TieredEmbeddings {
  Tensor z1;  // N x d1
  Tensor z2;  // M x d2
  Tensor z3;  // 1 x d3
  Matrix membership1;
  Matrix membership2;
};

struct Reconstruction {
  Tensor adjacency;  // N x N probabilities; the diagonal carries no meaning
  Tensor features;   // N x d0
};

/// Broadcasts group and graph context onto every node,
/// Z* = [Z1 | M1 Z2 | 1 Z3], then
///   A_hat = sigmoid(Z* decoder Z*^T),  X_hat = Z* feature_head.
Reconstruction decode_tiered(Tape &tape, const TieredEmbeddings &emb,
                             const Tensor &decoder, const Tensor &feature_head);

/// Z* = [Z1 | M1 Z2 | 1 Z3].
Tensor broadcast_concat(Tape &tape, const TieredEmbeddings &emb);

using NamedTensor = std::pair<std::string, Tensor>;

/// Deterministic tiered graph autoencoder.
///
/// Encoder: GNN(A, F^V) -> Z1; pool through M1; GNN -> Z2; pool through M2;
/// GNN -> Z3. Decoder: bilinear pairwise head over the broadcast
/// concatenation plus a linear feature head.
class TieredGae {
 public:
  TieredGae(ModelConfig config, std::array<GnnStack, 3> tiers, Tensor decoder,
            Tensor feature_head);

  /// Glorot-initialised tiers and feature head; the decoder starts as the
  /// identity so the model begins at the plain inner-product decoder.
  static TieredGae initialize(const ModelConfig &config, std::uint64_t seed);

  TieredEmbeddings encode(Tape &tape, const ModelInput &input) const;
  Reconstruction decode(Tape &tape, const TieredEmbeddings &emb) const;

  const ModelConfig &config() const { return config_; }
  const std::array<GnnStack, 3> &tiers() const { return tiers_; }
  const Tensor &decoder() const { return decoder_; }
  const Tensor &feature_head() const { return feature_head_; }

  std::vector<Tensor> parameters() const;
  std::vector<NamedTensor> named_parameters() const;

  /// Replaces the decoder by (D + D^T) / 2.
  void symmetrize_decoder();

  /// Deep copy: fresh parameter tensors with the same values.
  TieredGae clone() const;

 private:
  ModelConfig config_;
  std::array<GnnStack, 3> tiers_;
  Tensor decoder_;
  Tensor feature_head_;
};

/// In-place (D + D^T) / 2 on a square parameter.
void symmetrize(Tensor &square);

}  // namespace tiermol
