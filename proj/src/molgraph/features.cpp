//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "tiermol/molgraph/features.hpp"

namespace tiermol {

Matrix featurize_nodes(const MolecularGraph &g) {
  Matrix f(g.num_atoms(), kNodeFeatureDim);
  for (const Atom &a: g.atoms()) {
    const auto i = static_cast<std::size_t>(a.index);
    f(i, static_cast<std::size_t>(a.element)) = 1.0;
    f(i, node_feature::kAromatic) = a.aromatic ? 1.0 : 0.0;
    f(i, node_feature::kCharge) = static_cast<double>(a.formal_charge);
    f(i, node_feature::kHeavyDegree) = g.heavy_degree(a.index);
    f(i, node_feature::kHydrogens) = g.hydrogen_count(a.index);
    f(i, node_feature::kInRing) = g.in_ring(a.index) ? 1.0 : 0.0;
  }
  return f;
}

std::vector<EdgeFeatures> featurize_edges(const MolecularGraph &g) {
  std::vector<EdgeFeatures> out;
  out.reserve(g.num_bonds());
  for (const Bond &b: g.bonds()) {
    EdgeFeatures e;
    e.order[static_cast<std::size_t>(b.order)] = 1.0;
    e.conjugated = b.conjugated ? 1.0 : 0.0;
    // Both endpoints share a ring exactly when the bond is not a bridge.
    e.same_ring = b.in_ring ? 1.0 : 0.0;
    out.push_back(e);
  }
  return out;
}

}  // namespace tiermol
