//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "tiermol/grouping/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace tiermol {

std::string_view group_kind_name(GroupKind kind) {
  switch (kind) {
  case GroupKind::FunctionalGroup:
    return "FG";
  case GroupKind::AromaticRing:
    return "AromaticRing";
  case GroupKind::Component:
    return "Component";
  }
  return "Component";
}

std::string_view bond_rule_name(BondRule rule) {
  switch (rule) {
  case BondRule::MultipleBond:
    return "multiple_bond";
  case BondRule::Conjugated:
    return "conjugated";
  case BondRule::SameRing:
    return "same_ring";
  }
  return "multiple_bond";
}

namespace {
  AtomSet sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }

  class DisjointSets {
   public:
    explicit DisjointSets(std::size_t n): parent_(n) {
      std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
      while (parent_[static_cast<std::size_t>(x)] != x) {
        parent_[static_cast<std::size_t>(x)] =
            parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
        x = parent_[static_cast<std::size_t>(x)];
      }
      return x;
    }

    void unite(int a, int b) {
      a = find(a);
      b = find(b);
      if (a != b)
        parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }

   private:
    std::vector<int> parent_;
  };

  bool is_acetal_carbon(const MolecularGraph &g, int i) {
    const Atom &a = g.atom(i);
    if (a.element != Element::C || a.aromatic)
      return false;
    int hetero_single = 0;
    for (const Neighbor &nb: g.neighbors(i)) {
      const Bond &b = g.bond(nb.bond);
      if (b.order != BondOrder::Single)
        return false;
      const Element e = g.atom(nb.atom).element;
      if (e == Element::O || e == Element::N || e == Element::S)
        ++hetero_single;
    }
    return hetero_single >= 2;
  }
}  // namespace

std::vector<AtomSet> detect_aromatic_rings(const MolecularGraph &g,
                                           const std::vector<AtomCycle> &rings) {
  std::vector<AtomSet> out;
  for (const AtomCycle &ring: rings) {
    bool aromatic = true;
    for (std::size_t i = 0; i < ring.size() && aromatic; ++i) {
      const auto b = g.bond_between(ring[i], ring[(i + 1) % ring.size()]);
      aromatic = b && g.bond(*b).order == BondOrder::Aromatic;
    }
    if (!aromatic)
      continue;

    std::vector<int> members(ring.begin(), ring.end());
    for (int atom: ring)
      for (const Neighbor &nb: g.neighbors(atom))
        if (g.atom(nb.atom).element == Element::H)
          members.push_back(nb.atom);
    out.push_back(sorted_unique(std::move(members)));
  }
  return out;
}

std::vector<AtomSet> identify_functional_groups(const MolecularGraph &g) {
  const std::size_t n = g.num_atoms();
  std::vector<bool> marked(n, false);

  for (const Atom &a: g.atoms()) {
    if (is_hetero(a.element) && !a.aromatic)
      marked[static_cast<std::size_t>(a.index)] = true;
  }
  for (const Bond &b: g.bonds()) {
    if (b.order != BondOrder::Double && b.order != BondOrder::Triple)
      continue;
    for (int end: { b.begin, b.end })
      if (g.atom(end).element == Element::C)
        marked[static_cast<std::size_t>(end)] = true;
  }
  for (const Atom &a: g.atoms())
    if (is_acetal_carbon(g, a.index))
      marked[static_cast<std::size_t>(a.index)] = true;
  for (const AtomCycle &ring: find_rings(g)) {
    if (ring.size() != 3)
      continue;
    const bool hetero = std::any_of(ring.begin(), ring.end(), [&](int i) {
      return is_hetero(g.atom(i).element);
    });
    if (hetero)
      for (int i: ring)
        marked[static_cast<std::size_t>(i)] = true;
  }

  DisjointSets sets(n);
  for (const Bond &b: g.bonds())
    if (marked[static_cast<std::size_t>(b.begin)]
        && marked[static_cast<std::size_t>(b.end)])
      sets.unite(b.begin, b.end);

  std::map<int, std::vector<int>> by_root;
  for (std::size_t i = 0; i < n; ++i)
    if (marked[i])
      by_root[sets.find(static_cast<int>(i))].push_back(static_cast<int>(i));

  std::vector<int> owner(n, -1);
  std::vector<std::vector<int>> groups;
  for (auto &[root, atoms]: by_root) {
    for (int a: atoms)
      owner[static_cast<std::size_t>(a)] = static_cast<int>(groups.size());
    groups.push_back(atoms);
  }

  // Terminal carbons whose heavy neighbours all belong to one group.
  for (const Atom &a: g.atoms()) {
    const auto i = static_cast<std::size_t>(a.index);
    if (a.element != Element::C || a.aromatic || marked[i])
      continue;
    int group = -1;
    bool inside = true;
    for (const Neighbor &nb: g.neighbors(a.index)) {
      if (!is_heavy(g.atom(nb.atom).element))
        continue;
      const int o = owner[static_cast<std::size_t>(nb.atom)];
      if (o < 0 || (group >= 0 && o != group)) {
        inside = false;
        break;
      }
      group = o;
    }
    if (inside && group >= 0)
      groups[static_cast<std::size_t>(group)].push_back(a.index);
  }

  std::vector<AtomSet> out;
  for (auto &atoms: groups) {
    std::vector<int> members = atoms;
    for (int atom: atoms)
      for (const Neighbor &nb: g.neighbors(atom))
        if (g.atom(nb.atom).element == Element::H)
          members.push_back(nb.atom);
    out.push_back(sorted_unique(std::move(members)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

GroupSet partition(const MolecularGraph &g) {
  GroupSet gs;
  std::vector<bool> covered(g.num_atoms(), false);

  for (AtomSet &fg: identify_functional_groups(g)) {
    for (int a: fg)
      covered[static_cast<std::size_t>(a)] = true;
    gs.groups.push_back({ GroupKind::FunctionalGroup, std::move(fg) });
    ++gs.fg_count;
  }
  for (AtomSet &ring: detect_aromatic_rings(g, find_rings(g))) {
    for (int a: ring)
      covered[static_cast<std::size_t>(a)] = true;
    gs.groups.push_back({ GroupKind::AromaticRing, std::move(ring) });
    ++gs.ring_count;
  }

  std::vector<bool> visited = covered;
  for (std::size_t start = 0; start < g.num_atoms(); ++start) {
    if (visited[start])
      continue;
    std::vector<int> component;
    std::vector<int> stack { static_cast<int>(start) };
    visited[start] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      component.push_back(u);
      for (const Neighbor &nb: g.neighbors(u)) {
        if (!visited[static_cast<std::size_t>(nb.atom)]) {
          visited[static_cast<std::size_t>(nb.atom)] = true;
          stack.push_back(nb.atom);
        }
      }
    }
    gs.groups.push_back({ GroupKind::Component, sorted_unique(std::move(component)) });
    ++gs.component_count;
  }
  return gs;
}

std::string group_formula(const MolecularGraph &g, const AtomSet &atoms) {
  std::map<std::string, int> counts;
  for (int a: atoms)
    ++counts[std::string(element_symbol(g.atom(a).element))];

  std::string out;
  auto emit = [&](const std::string &sym) {
    auto it = counts.find(sym);
    if (it == counts.end())
      return;
    out += sym;
    if (it->second > 1)
      out += std::to_string(it->second);
    counts.erase(it);
  };
  emit("C");
  emit("H");
  while (!counts.empty())
    emit(counts.begin()->first);
  return out;
}

std::vector<BondViolation> check_bond_consistency(const MolecularGraph &g,
                                                  const GroupSet &gs) {
  std::vector<std::vector<int>> memberships(g.num_atoms());
  for (std::size_t j = 0; j < gs.groups.size(); ++j)
    for (int a: gs.groups[j].atoms)
      memberships[static_cast<std::size_t>(a)].push_back(static_cast<int>(j));

  std::vector<BondViolation> out;
  for (std::size_t b = 0; b < g.num_bonds(); ++b) {
    const Bond &bond = g.bond(static_cast<int>(b));
    const auto &ga = memberships[static_cast<std::size_t>(bond.begin)];
    const auto &gb = memberships[static_cast<std::size_t>(bond.end)];
    const bool shared = std::any_of(ga.begin(), ga.end(), [&](int j) {
      return std::find(gb.begin(), gb.end(), j) != gb.end();
    });
    if (shared)
      continue;

    const int id = static_cast<int>(b);
    if (bond.is_multiple())
      out.push_back({ id, BondRule::MultipleBond });
    if (bond.conjugated)
      out.push_back({ id, BondRule::Conjugated });
    if (bond.in_ring)
      out.push_back({ id, BondRule::SameRing });
  }
  return out;
}

}  // namespace tiermol
