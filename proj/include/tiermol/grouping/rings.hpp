//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <vector>

#include "tiermol/molgraph/molecule.hpp"

namespace tiermol {

using AtomCycle = std::vector<int>;

/// Minimum cycle basis of the molecular graph (U - N + 1 rings).
///
/// Candidate cycles are built from BFS shortest paths (Horton's
/// construction) and selected greedily by length with GF(2) independence.
/// Each ring is returned as an ordered walk starting at its smallest atom id
/// and continuing towards the smaller of that atom's two ring neighbours.
/// Rings are ordered by size, then lexicographically by sorted atom ids.
std::vector<AtomCycle> find_rings(const MolecularGraph &g);

}  // namespace tiermol
