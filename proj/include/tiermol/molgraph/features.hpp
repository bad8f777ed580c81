//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <vector>

#include "tiermol/molgraph/molecule.hpp"
#include "tiermol/numerics/matrix.hpp"

namespace tiermol {

/// Node feature columns, in order: element one-hot (H, B, C, N, O, F, P, S,
/// Cl, Br, I), aromatic flag, formal charge, heavy-atom degree, attached H
/// count, in-ring flag.
inline constexpr std::size_t kNodeFeatureDim = 16;

namespace node_feature {
  inline constexpr std::size_t kAromatic = 11;
  inline constexpr std::size_t kCharge = 12;
  inline constexpr std::size_t kHeavyDegree = 13;
  inline constexpr std::size_t kHydrogens = 14;
  inline constexpr std::size_t kInRing = 15;
}  // namespace node_feature

Matrix featurize_nodes(const MolecularGraph &g);

struct EdgeFeatures {
  /// One-hot over single, double, triple, aromatic.
  std::array<double, 4> order {};
  double conjugated = 0.0;
  double same_ring = 0.0;
};

/// One record per bond, in bond order.
std::vector<EdgeFeatures> featurize_edges(const MolecularGraph &g);

}  // namespace tiermol
