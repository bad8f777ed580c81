//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include "tiermol/gnn/gcn.hpp"
#include "tiermol/numerics/tensor.hpp"

namespace tiermol {

struct CoarsenedGraph {
  Matrix adjacency;  // G x G, weighted
  Tensor x;          // G x d
};

/// Coarsens a tier through a fixed membership matrix M (N x G):
///   X' = M^T Z,  A' = M^T A M.
/// M and A are data; gradients flow only through Z.
CoarsenedGraph diff_group_pool(Tape &tape, const Matrix &adjacency,
                               const Tensor &z, const Matrix &membership);

/// Non-differentiable form of the adjacency coarsening.
Matrix coarsen_adjacency(const Matrix &adjacency, const Matrix &membership);

/// Next tier's (A, X) from a tier whose Z has been computed.
TierState pool_tier(Tape &tape, const TierState &state, const Matrix &membership);

}  // namespace tiermol
