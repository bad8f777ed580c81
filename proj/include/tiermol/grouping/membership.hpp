//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <stdexcept>

#include "tiermol/grouping/groups.hpp"
#include "tiermol/numerics/matrix.hpp"

namespace tiermol {

/// Raised when an atom belongs to no group.
class CoverageError : public std::runtime_error {
 public:
  explicit CoverageError(int atom);
  int atom() const { return atom_; }

 private:
  int atom_;
};

/// Row-stochastic assignment of tier-t nodes to tier-(t+1) groups.
struct MembershipMatrix {
  Matrix matrix;
  int tier = 1;
};

/// N x M matrix with entry 1/m_i where atom i lies in m_i groups.
MembershipMatrix build_membership(const GroupSet &gs, std::size_t num_atoms);

/// M x 1 column of ones: every group belongs to the single graph node.
MembershipMatrix graph_membership(std::size_t num_groups);

}  // namespace tiermol
