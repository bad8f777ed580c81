//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include <map>

#include <gtest/gtest.h>

#include "tiermol/molgraph/features.hpp"
#include "tiermol/molgraph/smiles.hpp"

using namespace tiermol;

namespace {

std::map<Element, int> element_counts(const MolecularGraph &g) {
  std::map<Element, int> out;
  for (const Atom &a: g.atoms())
    ++out[a.element];
  return out;
}

SmilesErrorKind error_kind(std::string_view smiles) {
  try {
    parse_smiles(smiles);
  } catch (const SmilesError &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for " << smiles;
  return SmilesErrorKind::Syntax;
}

const char *const kFixtures[] = {
  "C", "CC", "CCO", "O=Cc1ccc(O)c(OC)c1", "c1ccccc1", "C1CCCCC1", "c1ccc2ccccc2c1",
  "CC(=O)Oc1ccccc1C(=O)O", "C=CC=C", "CC#N", "c1ccncc1", "c1cc[nH]c1", "c1ccoc1",
  "CS(=O)(=O)C", "FC(F)(F)c1ccccc1", "[NH4+]", "C[N+](C)(C)C", "CC(=O)[O-]",
  "OP(=O)(O)O", "BrCCCl", "ICC", "B(O)(O)O", "c1ccccc1-c1ccccc1",
};

}  // namespace

TEST(Smiles, Methane) {
  const MolecularGraph g = parse_smiles("C");
  EXPECT_EQ(g.num_atoms(), 5u);
  EXPECT_EQ(g.num_bonds(), 4u);
}

TEST(Smiles, Vanillin) {
  const MolecularGraph g = parse_smiles("O=Cc1ccc(O)c(OC)c1");
  EXPECT_EQ(g.num_atoms(), 19u);
  EXPECT_EQ(g.num_bonds(), 19u);
  EXPECT_EQ(g.ring_count(), 1u);
  const auto counts = element_counts(g);
  EXPECT_EQ(counts.at(Element::C), 8);
  EXPECT_EQ(counts.at(Element::O), 3);
  EXPECT_EQ(counts.at(Element::H), 8);
}

TEST(Smiles, BenzeneAllRingBondsAromatic) {
  const MolecularGraph g = parse_smiles("c1ccccc1");
  EXPECT_EQ(g.num_atoms(), 12u);
  EXPECT_EQ(g.num_bonds(), 12u);
  for (const Bond &b: g.bonds()) {
    const bool ring = g.atom(b.begin).element != Element::H && g.atom(b.end).element != Element::H;
    EXPECT_EQ(b.order == BondOrder::Aromatic, ring);
    EXPECT_EQ(b.in_ring, ring);
  }
}

TEST(Smiles, HydrogensFollowTheirParent) {
  const MolecularGraph g = parse_smiles("CO");
  // C, H, H, H, O, H
  const std::vector<Element> order { Element::C, Element::H, Element::H,
                                     Element::H, Element::O, Element::H };
  ASSERT_EQ(g.num_atoms(), order.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    EXPECT_EQ(g.atom(static_cast<int>(i)).element, order[i]) << i;
  EXPECT_TRUE(g.bond_between(4, 5).has_value());
}

TEST(Smiles, ChargedBracketAtoms) {
  const MolecularGraph ammonium = parse_smiles("[NH4+]");
  EXPECT_EQ(ammonium.num_atoms(), 5u);
  EXPECT_EQ(ammonium.atom(0).formal_charge, 1);
  const MolecularGraph acetate = parse_smiles("CC(=O)[O-]");
  EXPECT_EQ(element_counts(acetate).at(Element::H), 3);
}

TEST(Smiles, HigherValences) {
  EXPECT_EQ(element_counts(parse_smiles("CS(=O)(=O)C")).at(Element::H), 6);
  EXPECT_EQ(element_counts(parse_smiles("OP(=O)(O)O")).at(Element::H), 3);
}

TEST(Smiles, AromaticNitrogenWithHydrogen) {
  const MolecularGraph pyrrole = parse_smiles("c1cc[nH]c1");
  EXPECT_EQ(element_counts(pyrrole).at(Element::H), 5);
  const MolecularGraph pyridine = parse_smiles("c1ccncc1");
  EXPECT_EQ(element_counts(pyridine).at(Element::H), 5);
}

TEST(Smiles, BiphenylLinkIsSingle) {
  const MolecularGraph g = parse_smiles("c1ccccc1c1ccccc1");
  std::size_t singles_between_aromatics = 0;
  for (const Bond &b: g.bonds())
    if (g.atom(b.begin).aromatic && g.atom(b.end).aromatic && b.order == BondOrder::Single)
      ++singles_between_aromatics;
  EXPECT_EQ(singles_between_aromatics, 1u);
}

TEST(Smiles, ErrorKinds) {
  EXPECT_EQ(error_kind(""), SmilesErrorKind::Empty);
  EXPECT_EQ(error_kind("C("), SmilesErrorKind::UnbalancedParenthesis);
  EXPECT_EQ(error_kind("C)C"), SmilesErrorKind::UnbalancedParenthesis);
  EXPECT_EQ(error_kind("C1CC"), SmilesErrorKind::UnmatchedRingClosure);
  EXPECT_EQ(error_kind("[Na+]"), SmilesErrorKind::UnsupportedElement);
  EXPECT_EQ(error_kind("C.C"), SmilesErrorKind::UnsupportedToken);
  EXPECT_EQ(error_kind("F/C=C/F"), SmilesErrorKind::UnsupportedToken);
  EXPECT_EQ(error_kind("C[C@H](O)N"), SmilesErrorKind::UnsupportedToken);
  EXPECT_EQ(error_kind("[13CH4]"), SmilesErrorKind::UnsupportedToken);
  EXPECT_EQ(error_kind("C(C)(C)(C)(C)C"), SmilesErrorKind::ValenceOverflow);
  EXPECT_EQ(error_kind("O=O=O"), SmilesErrorKind::ValenceOverflow);
}

TEST(Smiles, ErrorPosition) {
  try {
    parse_smiles("CC[Xe]");
    FAIL();
  } catch (const SmilesError &e) {
    EXPECT_EQ(e.kind(), SmilesErrorKind::UnsupportedElement);
    EXPECT_EQ(e.position(), 3u);
  }
  try {
    parse_smiles("CC(C");
    FAIL();
  } catch (const SmilesError &e) {
    EXPECT_EQ(e.position(), 2u);
  }
}

TEST(Smiles, FixtureInvariants) {
  for (const char *smiles: kFixtures) {
    SCOPED_TRACE(smiles);
    const MolecularGraph g = parse_smiles(smiles);
    EXPECT_EQ(g.num_bonds(), g.num_atoms() - 1 + g.ring_count());
    const Matrix a = g.adjacency();
    for (std::size_t i = 0; i < g.num_atoms(); ++i) {
      EXPECT_EQ(a(i, i), 0.0);
      for (std::size_t j = 0; j < g.num_atoms(); ++j)
        EXPECT_EQ(a(i, j), a(j, i));
      if (g.atom(static_cast<int>(i)).element == Element::H)
        EXPECT_EQ(g.neighbors(static_cast<int>(i)).size(), 1u);
    }
    for (const Atom &at: g.atoms()) {
      // Neutral non-aromatic atoms consume a standard valence exactly.
      if (at.formal_charge != 0 || at.aromatic)
        continue;
      const int valence = g.half_valence(at.index) / 2;
      switch (at.element) {
      case Element::C: EXPECT_EQ(valence, 4); break;
      case Element::N: EXPECT_EQ(valence, 3); break;
      case Element::O: EXPECT_EQ(valence, 2); break;
      case Element::B: EXPECT_EQ(valence, 3); break;
      case Element::H: case Element::F: case Element::Cl: case Element::Br: case Element::I:
        EXPECT_EQ(valence, 1);
        break;
      case Element::S: EXPECT_TRUE(valence == 2 || valence == 4 || valence == 6); break;
      case Element::P: EXPECT_TRUE(valence == 3 || valence == 5); break;
      }
    }
  }
}

TEST(Smiles, Deterministic) {
  for (const char *smiles: kFixtures) {
    const MolecularGraph a = parse_smiles(smiles);
    const MolecularGraph b = parse_smiles(smiles);
    EXPECT_EQ(a.adjacency(), b.adjacency()) << smiles;
    for (std::size_t i = 0; i < a.num_atoms(); ++i)
      EXPECT_EQ(a.atom(static_cast<int>(i)).element, b.atom(static_cast<int>(i)).element);
  }
}

TEST(MolecularGraph, RejectsInvalidGraphs) {
  const std::vector<Atom> two { { Element::C, 0, false, 0 }, { Element::C, 0, false, 1 } };
  EXPECT_THROW(MolecularGraph({}, {}), ContractError);
  EXPECT_THROW(MolecularGraph(two, {}), ContractError);
  EXPECT_THROW(MolecularGraph(two, { { 0, 0, BondOrder::Single } }), ContractError);
  EXPECT_THROW(MolecularGraph(two, { { 0, 2, BondOrder::Single } }), ContractError);
  EXPECT_THROW(MolecularGraph(two, { { 0, 1, BondOrder::Single }, { 1, 0, BondOrder::Single } }),
               ContractError);
}

TEST(MolecularGraph, ConjugationFlags) {
  const MolecularGraph butadiene = parse_smiles("C=CC=C");
  const auto central = butadiene.bond_between(3, 5);
  ASSERT_TRUE(central.has_value());
  EXPECT_TRUE(butadiene.bond(*central).conjugated);
  const MolecularGraph ethane = parse_smiles("CC");
  for (const Bond &b: ethane.bonds()) {
    EXPECT_FALSE(b.conjugated);
    EXPECT_FALSE(b.in_ring);
  }
}

TEST(Features, MethaneCarbon) {
  const Matrix f = featurize_nodes(parse_smiles("C"));
  ASSERT_EQ(f.cols(), kNodeFeatureDim);
  EXPECT_EQ(f(0, static_cast<std::size_t>(Element::C)), 1.0);
  EXPECT_EQ(f(0, node_feature::kAromatic), 0.0);
  EXPECT_EQ(f(0, node_feature::kCharge), 0.0);
  EXPECT_EQ(f(0, node_feature::kHeavyDegree), 0.0);
  EXPECT_EQ(f(0, node_feature::kHydrogens), 4.0);
  EXPECT_EQ(f(0, node_feature::kInRing), 0.0);
}

TEST(Features, BenzeneCarbon) {
  const Matrix f = featurize_nodes(parse_smiles("c1ccccc1"));
  EXPECT_EQ(f(0, node_feature::kAromatic), 1.0);
  EXPECT_EQ(f(0, node_feature::kInRing), 1.0);
  EXPECT_EQ(f(0, node_feature::kHeavyDegree), 2.0);
  EXPECT_EQ(f(0, node_feature::kHydrogens), 1.0);
}

TEST(Features, ChargedOxygen) {
  const MolecularGraph g = parse_smiles("C[O-]");
  const Matrix f = featurize_nodes(g);
  EXPECT_EQ(f(4, static_cast<std::size_t>(Element::O)), 1.0);
  EXPECT_EQ(f(4, node_feature::kCharge), -1.0);
}

TEST(Features, EdgeRecords) {
  const auto benzene = featurize_edges(parse_smiles("c1ccccc1"));
  EXPECT_EQ(benzene[0].order[static_cast<std::size_t>(BondOrder::Aromatic)], 1.0);
  EXPECT_EQ(benzene[0].same_ring, 1.0);

  const MolecularGraph ethane = parse_smiles("CC");
  const auto cc = featurize_edges(ethane)[static_cast<std::size_t>(*ethane.bond_between(0, 4))];
  EXPECT_EQ(cc.order[static_cast<std::size_t>(BondOrder::Single)], 1.0);
  EXPECT_EQ(cc.conjugated, 0.0);
  EXPECT_EQ(cc.same_ring, 0.0);

  const MolecularGraph butadiene = parse_smiles("C=CC=C");
  const auto mid = featurize_edges(butadiene)[static_cast<std::size_t>(*butadiene.bond_between(3, 5))];
  EXPECT_EQ(mid.conjugated, 1.0);
}
