//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "tiermol/molgraph/molecule.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <utility>

namespace tiermol {

namespace {
  constexpr std::array<std::string_view, kNumElements> kSymbols {
    "H", "B", "C", "N", "O", "F", "P", "S", "Cl", "Br", "I",
  };
}  // namespace

std::string_view element_symbol(Element e) {
  return kSymbols[static_cast<std::size_t>(e)];
}

std::optional<Element> element_from_symbol(std::string_view symbol) {
  for (std::size_t i = 0; i < kNumElements; ++i)
    if (kSymbols[i] == symbol)
      return kAllElements[i];
  return std::nullopt;
}

int half_order(BondOrder order) {
  switch (order) {
  case BondOrder::Single:
    return 2;
  case BondOrder::Double:
    return 4;
  case BondOrder::Triple:
    return 6;
  case BondOrder::Aromatic:
    return 3;
  }
  return 2;
}

std::string_view bond_order_name(BondOrder order) {
  switch (order) {
  case BondOrder::Single:
    return "single";
  case BondOrder::Double:
    return "double";
  case BondOrder::Triple:
    return "triple";
  case BondOrder::Aromatic:
    return "aromatic";
  }
  return "single";
}

MolecularGraph::MolecularGraph(std::vector<Atom> atoms, std::vector<Bond> bonds)
    : atoms_(std::move(atoms)), bonds_(std::move(bonds)),
      adjacency_list_(atoms_.size()) {
  if (atoms_.empty())
    throw ContractError("molecular graph must have at least one atom");

  const int n = static_cast<int>(atoms_.size());
  for (int i = 0; i < n; ++i)
    atoms_[static_cast<std::size_t>(i)].index = i;

  std::set<std::pair<int, int>> seen;
  for (std::size_t b = 0; b < bonds_.size(); ++b) {
    const Bond &bond = bonds_[b];
    if (bond.begin < 0 || bond.begin >= n || bond.end < 0 || bond.end >= n)
      throw ContractError("bond " + std::to_string(b)
                          + " references an invalid atom");
    if (bond.begin == bond.end)
      throw ContractError("bond " + std::to_string(b) + " is a self-loop");
    if (!seen.emplace(std::minmax(bond.begin, bond.end)).second)
      throw ContractError("duplicate bond between atoms "
                          + std::to_string(bond.begin) + " and "
                          + std::to_string(bond.end));
    adjacency_list_[static_cast<std::size_t>(bond.begin)].push_back(
        { bond.end, static_cast<int>(b) });
    adjacency_list_[static_cast<std::size_t>(bond.end)].push_back(
        { bond.begin, static_cast<int>(b) });
  }

  std::vector<bool> visited(atoms_.size(), false);
  std::vector<int> stack { 0 };
  visited[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (const Neighbor &nb: neighbors(u)) {
      if (!visited[static_cast<std::size_t>(nb.atom)]) {
        visited[static_cast<std::size_t>(nb.atom)] = true;
        ++reached;
        stack.push_back(nb.atom);
      }
    }
  }
  if (reached != atoms_.size())
    throw ContractError("molecular graph is not connected");

  derive_flags();
}

void MolecularGraph::derive_flags() {
  // Ring bonds are exactly the non-bridges.
  const std::size_t n = atoms_.size();
  std::vector<int> disc(n, -1), low(n, 0);
  int timer = 0;

  std::function<void(int, int)> dfs = [&](int u, int parent_bond) {
    disc[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] =
        timer++;
    for (const Neighbor &nb: neighbors(u)) {
      if (nb.bond == parent_bond)
        continue;
      const auto v = static_cast<std::size_t>(nb.atom);
      if (disc[v] < 0) {
        dfs(nb.atom, nb.bond);
        low[static_cast<std::size_t>(u)] =
            std::min(low[static_cast<std::size_t>(u)], low[v]);
        bonds_[static_cast<std::size_t>(nb.bond)].in_ring =
            low[v] <= disc[static_cast<std::size_t>(u)];
      } else {
        low[static_cast<std::size_t>(u)] =
            std::min(low[static_cast<std::size_t>(u)], disc[v]);
        bonds_[static_cast<std::size_t>(nb.bond)].in_ring = true;
      }
    }
  };
  dfs(0, -1);

  auto carries_multiple = [this](int atom, int except_bond) {
    return std::any_of(neighbors(atom).begin(), neighbors(atom).end(),
                       [&](const Neighbor &nb) {
                         return nb.bond != except_bond
                                && bond(nb.bond).is_multiple();
                       });
  };
  for (std::size_t b = 0; b < bonds_.size(); ++b) {
    Bond &bond = bonds_[b];
    bond.conjugated = bond.order == BondOrder::Single
                      && carries_multiple(bond.begin, static_cast<int>(b))
                      && carries_multiple(bond.end, static_cast<int>(b));
  }
}

std::optional<int> MolecularGraph::bond_between(int a, int b) const {
  for (const Neighbor &nb: neighbors(a))
    if (nb.atom == b)
      return nb.bond;
  return std::nullopt;
}

int MolecularGraph::heavy_degree(int i) const {
  return static_cast<int>(
      std::count_if(neighbors(i).begin(), neighbors(i).end(),
                    [this](const Neighbor &nb) {
                      return is_heavy(atom(nb.atom).element);
                    }));
}

int MolecularGraph::hydrogen_count(int i) const {
  return static_cast<int>(neighbors(i).size()) - heavy_degree(i);
}

bool MolecularGraph::in_ring(int i) const {
  return std::any_of(neighbors(i).begin(), neighbors(i).end(),
                     [this](const Neighbor &nb) {
                       return bond(nb.bond).in_ring;
                     });
}

int MolecularGraph::half_valence(int i) const {
  int total = 0;
  for (const Neighbor &nb: neighbors(i))
    total += half_order(bond(nb.bond).order);
  return total;
}

Matrix MolecularGraph::adjacency() const {
  Matrix a(num_atoms(), num_atoms());
  for (const Bond &b: bonds_) {
    a(static_cast<std::size_t>(b.begin), static_cast<std::size_t>(b.end)) = 1.0;
    a(static_cast<std::size_t>(b.end), static_cast<std::size_t>(b.begin)) = 1.0;
  }
  return a;
}

MolecularGraph MolecularGraph::permuted(const std::vector<int> &perm) const {
  if (perm.size() != atoms_.size())
    throw ContractError("permutation length does not match atom count");
  std::vector<bool> hit(perm.size(), false);
  for (int p: perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= perm.size()
        || hit[static_cast<std::size_t>(p)])
      throw ContractError("not a permutation");
    hit[static_cast<std::size_t>(p)] = true;
  }

  std::vector<Atom> atoms(atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    atoms[static_cast<std::size_t>(perm[i])] = atoms_[i];
  std::vector<Bond> bonds = bonds_;
  for (Bond &b: bonds) {
    b.begin = perm[static_cast<std::size_t>(b.begin)];
    b.end = perm[static_cast<std::size_t>(b.end)];
  }
  return MolecularGraph(std::move(atoms), std::move(bonds));
}

}  // namespace tiermol
