//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "tiermol/models/model_input.hpp"

#include "tiermol/gnn/gcn.hpp"
#include "tiermol/grouping/membership.hpp"
#include "tiermol/molgraph/features.hpp"

namespace tiermol {

ModelInput make_model_input(const MolecularGraph &g) {
  return make_model_input(g, partition(g));
}

ModelInput make_model_input(const MolecularGraph &g, const GroupSet &gs) {
  return { g.adjacency(), featurize_nodes(g),
           build_membership(gs, g.num_atoms()).matrix,
           graph_membership(gs.size()).matrix };
}

ModelInput permute_atoms(const ModelInput &input, const std::vector<int> &perm) {
  const std::size_t n = input.num_atoms();
  if (perm.size() != n)
    throw ContractError("permutation length does not match atom count");

  ModelInput out { Matrix(n, n), Matrix(n, input.features.cols()),
                   Matrix(n, input.membership1.cols()), input.membership2 };
  for (std::size_t i = 0; i < n; ++i) {
    const auto pi = static_cast<std::size_t>(perm[i]);
    for (std::size_t j = 0; j < n; ++j)
      out.adjacency(pi, static_cast<std::size_t>(perm[j])) = input.adjacency(i, j);
    for (std::size_t c = 0; c < input.features.cols(); ++c)
      out.features(pi, c) = input.features(i, c);
    for (std::size_t c = 0; c < input.membership1.cols(); ++c)
      out.membership1(pi, c) = input.membership1(i, c);
  }
  return out;
}

void validate(const ModelConfig &config) {
  if (config.input_dim == 0)
    throw ContractError("model input width must be at least 1");
  for (std::size_t d: config.dims)
    if (d == 0)
      throw ContractError("embedding dimensions must be at least 1");
  if (config.layers == 0 || config.layers > kMaxGnnDepth)
    throw ContractError("layers per tier must lie in 1..6");
}

}  // namespace tiermol
