//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "tiermol/pooling/group_pool.hpp"

namespace tiermol {

Matrix coarsen_adjacency(const Matrix &adjacency, const Matrix &membership) {
  if (adjacency.rows() != adjacency.cols()
      || adjacency.rows() != membership.rows())
    throw ShapeError("pool: adjacency " + adjacency.shape().str()
                     + " incompatible with membership "
                     + membership.shape().str());
  return matmul(transpose(membership), matmul(adjacency, membership));
}

CoarsenedGraph diff_group_pool(Tape &tape, const Matrix &adjacency,
                               const Tensor &z, const Matrix &membership) {
  if (z.rows() != membership.rows())
    throw ShapeError("pool: embeddings " + z.shape().str()
                     + " incompatible with membership "
                     + membership.shape().str());
  Matrix a_next = coarsen_adjacency(adjacency, membership);
  Tensor x_next =
      matmul(tape, Tensor::constant(transpose(membership)), z);
  return { std::move(a_next), x_next };
}

TierState pool_tier(Tape &tape, const TierState &state, const Matrix &membership) {
  if (!state.z)
    throw ContractError("pool_tier: tier embeddings have not been computed");
  CoarsenedGraph next = diff_group_pool(tape, state.adjacency, *state.z, membership);
  return { std::move(next.adjacency), next.x, std::nullopt };
}

}  // namespace tiermol
