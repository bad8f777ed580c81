//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "tiermol/grouping/membership.hpp"

#include <string>

namespace tiermol {

CoverageError::CoverageError(int atom)
    : std::runtime_error("atom " + std::to_string(atom)
                         + " is not covered by any group"),
      atom_(atom) { }

MembershipMatrix build_membership(const GroupSet &gs, std::size_t num_atoms) {
  std::vector<int> counts(num_atoms, 0);
  for (const Group &group: gs.groups) {
    for (int a: group.atoms) {
      if (a < 0 || static_cast<std::size_t>(a) >= num_atoms)
        throw ContractError("group references atom " + std::to_string(a)
                            + " outside 0.." + std::to_string(num_atoms));
      ++counts[static_cast<std::size_t>(a)];
    }
  }
  for (std::size_t i = 0; i < num_atoms; ++i)
    if (counts[i] == 0)
      throw CoverageError(static_cast<int>(i));

  Matrix m(num_atoms, gs.size());
  for (std::size_t j = 0; j < gs.size(); ++j)
    for (int a: gs.groups[j].atoms)
      m(static_cast<std::size_t>(a), j) =
          1.0 / static_cast<double>(counts[static_cast<std::size_t>(a)]);
  return { std::move(m), 1 };
}

MembershipMatrix graph_membership(std::size_t num_groups) {
  if (num_groups == 0)
    throw ContractError("graph_membership: need at least one group");
  return { Matrix::ones(num_groups, 1), 2 };
}

}  // namespace tiermol
