//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "tiermol/grouping/groups.hpp"
#include "tiermol/molgraph/molecule.hpp"
#include "tiermol/numerics/matrix.hpp"

namespace tiermol {

/// Everything the tiered encoder and the reconstruction loss need for one
/// molecule: A, F^V and the two membership matrices.
struct ModelInput {
  Matrix adjacency;    // N x N
  Matrix features;     // N x d0
  Matrix membership1;  // N x M
  Matrix membership2;  // M x 1

  std::size_t num_atoms() const { return adjacency.rows(); }
  std::size_t num_groups() const { return membership1.cols(); }
};

/// Featurises, partitions and builds memberships.
ModelInput make_model_input(const MolecularGraph &g);
ModelInput make_model_input(const MolecularGraph &g, const GroupSet &gs);

/// Relabels atoms: row i moves to row perm[i] in A, F^V and M1.
ModelInput permute_atoms(const ModelInput &input, const std::vector<int> &perm);

struct ModelConfig {
  std::size_t input_dim = 16;
  std::array<std::size_t, 3> dims { 16, 16, 16 };
  std::size_t layers = 3;

  /// Width of the broadcast concatenation [Z1 | M1 Z2 | 1 Z3].
  std::size_t concat_dim() const { return dims[0] + dims[1] + dims[2]; }
  bool operator==(const ModelConfig &) const = default;
};

/// Checks dims >= 1, input_dim >= 1 and 1 <= layers <= 6.
void validate(const ModelConfig &config);

}  // namespace tiermol
