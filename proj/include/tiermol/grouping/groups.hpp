//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tiermol/grouping/rings.hpp"
#include "tiermol/molgraph/molecule.hpp"

namespace tiermol {

using AtomSet = std::vector<int>;  // sorted, unique

enum class GroupKind { FunctionalGroup, AromaticRing, Component };

/// "FG", "AromaticRing" or "Component".
std::string_view group_kind_name(GroupKind kind);

struct Group {
  GroupKind kind;
  AtomSet atoms;
};

/// Functional groups first, then aromatic rings, then residual components.
struct GroupSet {
  std::vector<Group> groups;
  std::size_t fg_count = 0;
  std::size_t ring_count = 0;
  std::size_t component_count = 0;

  std::size_t size() const { return groups.size(); }
};

/// Rings from `rings` whose every ring bond is aromatic, each extended with
/// the hydrogens bonded to ring atoms.
std::vector<AtomSet> detect_aromatic_rings(const MolecularGraph &g,
                                           const std::vector<AtomCycle> &rings);

/// Heteroatom-driven functional group detection.
///
/// Marked atoms: (a) non-aromatic heteroatoms; (b) carbons carrying a
/// non-aromatic double or triple bond; (c) all-single-bond carbons bonded to
/// at least two of O, N, S; (d) every atom of a three-membered ring that
/// contains a heteroatom. Bonded marked atoms merge into one group, which then
/// absorbs hydrogens on its atoms and any non-aromatic carbon whose heavy
/// neighbours all lie inside it (with that carbon's hydrogens). Groups are
/// ordered by smallest atom id.
std::vector<AtomSet> identify_functional_groups(const MolecularGraph &g);

/// Splits the molecule into functional groups, aromatic rings and the
/// connected components of whatever atoms neither covers.
GroupSet partition(const MolecularGraph &g);

/// Element summary such as "C6H3" or "CH3O": carbon, then hydrogen, then the
/// rest alphabetically.
std::string group_formula(const MolecularGraph &g, const AtomSet &atoms);

enum class BondRule { MultipleBond, Conjugated, SameRing };
std::string_view bond_rule_name(BondRule rule);

struct BondViolation {
  int bond;
  BondRule rule;

  bool operator==(const BondViolation &) const = default;
};

/// Bonds whose endpoints share no group yet should: multiple or aromatic
/// bonds, conjugated bonds, and ring bonds. One entry per violated rule.
/// Diagnostic only.
std::vector<BondViolation> check_bond_consistency(const MolecularGraph &g,
                                                  const GroupSet &gs);

}  // namespace tiermol
