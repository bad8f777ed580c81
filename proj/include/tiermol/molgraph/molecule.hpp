//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "tiermol/numerics/matrix.hpp"

namespace tiermol {

enum class Element { H, B, C, N, O, F, P, S, Cl, Br, I };

inline constexpr std::size_t kNumElements = 11;
inline constexpr std::array<Element, kNumElements> kAllElements {
  Element::H, Element::B, Element::C,  Element::N,  Element::O, Element::F,
  Element::P, Element::S, Element::Cl, Element::Br, Element::I,
};

std::string_view element_symbol(Element e);
std::optional<Element> element_from_symbol(std::string_view symbol);

inline bool is_heavy(Element e) { return e != Element::H; }
inline bool is_hetero(Element e) { return e != Element::C && e != Element::H; }

enum class BondOrder { Single, Double, Triple, Aromatic };

/// Bond order in units of half bonds (aromatic counts 1.5).
int half_order(BondOrder order);
std::string_view bond_order_name(BondOrder order);

struct Atom {
  Element element = Element::C;
  int formal_charge = 0;
  bool aromatic = false;
  int index = 0;
};

struct Bond {
  int begin = 0;
  int end = 0;
  BondOrder order = BondOrder::Single;
  bool in_ring = false;
  bool conjugated = false;

  int other(int atom) const { return atom == begin ? end : begin; }
  bool is_multiple() const { return order != BondOrder::Single; }
};

struct Neighbor {
  int atom;
  int bond;
};

/// Connected molecular graph with explicit hydrogens. Immutable once built;
/// ring-bond and conjugation flags are derived at construction.
class MolecularGraph {
 public:
  MolecularGraph() = default;
  /// Validates ids, rejects self-loops, duplicate bonds, and disconnected
  /// input (ShapeError / ContractError). Recomputes in_ring and conjugated.
  MolecularGraph(std::vector<Atom> atoms, std::vector<Bond> bonds);

  std::size_t num_atoms() const { return atoms_.size(); }
  std::size_t num_bonds() const { return bonds_.size(); }
  /// U - N + 1 for a connected graph.
  std::size_t ring_count() const { return bonds_.size() + 1 - atoms_.size(); }

  const std::vector<Atom> &atoms() const { return atoms_; }
  const std::vector<Bond> &bonds() const { return bonds_; }
  const Atom &atom(int i) const { return atoms_[static_cast<std::size_t>(i)]; }
  const Bond &bond(int i) const { return bonds_[static_cast<std::size_t>(i)]; }
  const std::vector<Neighbor> &neighbors(int i) const {
    return adjacency_list_[static_cast<std::size_t>(i)];
  }

  /// Index of the bond joining a and b, if any.
  std::optional<int> bond_between(int a, int b) const;

  int heavy_degree(int i) const;
  int hydrogen_count(int i) const;
  /// True if the atom participates in any ring bond.
  bool in_ring(int i) const;
  /// Sum of bond orders in half-bond units.
  int half_valence(int i) const;

  /// N x N symmetric 0/1 adjacency matrix.
  Matrix adjacency() const;

  /// Returns the graph with atom `i` moved to position perm[i].
  MolecularGraph permuted(const std::vector<int> &perm) const;

 private:
  void derive_flags();

  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adjacency_list_;
};

}  // namespace tiermol
