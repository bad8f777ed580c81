//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "tiermol/grouping/rings.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace tiermol {

namespace {
  struct Candidate {
    std::vector<int> atoms;  // sorted
    std::vector<bool> edges;
    std::size_t length;
  };

  // BFS tree over ring bonds only; parent[v] = -1 for the root and for
  // unreachable atoms.
  std::vector<int> bfs_parents(const MolecularGraph &g, int root,
                               std::vector<int> &dist) {
    const std::size_t n = g.num_atoms();
    std::vector<int> parent(n, -1);
    dist.assign(n, -1);
    dist[static_cast<std::size_t>(root)] = 0;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (const Neighbor &nb: g.neighbors(u)) {
        if (!g.bond(nb.bond).in_ring)
          continue;
        const auto v = static_cast<std::size_t>(nb.atom);
        if (dist[v] < 0) {
          dist[v] = dist[static_cast<std::size_t>(u)] + 1;
          parent[v] = u;
          q.push(nb.atom);
        }
      }
    }
    return parent;
  }

  std::vector<int> path_to_root(const std::vector<int> &parent, int v) {
    std::vector<int> path { v };
    while (parent[static_cast<std::size_t>(path.back())] >= 0)
      path.push_back(parent[static_cast<std::size_t>(path.back())]);
    return path;
  }

  AtomCycle order_cycle(const MolecularGraph &g, const Candidate &c) {
    auto cycle_neighbors = [&](int u) {
      std::vector<int> out;
      for (const Neighbor &nb: g.neighbors(u))
        if (c.edges[static_cast<std::size_t>(nb.bond)])
          out.push_back(nb.atom);
      std::sort(out.begin(), out.end());
      return out;
    };

    const int start = c.atoms.front();
    AtomCycle cycle { start };
    int prev = start;
    int cur = cycle_neighbors(start).front();
    while (cur != start) {
      cycle.push_back(cur);
      const std::vector<int> nbs = cycle_neighbors(cur);
      const int next = nbs[0] == prev ? nbs[1] : nbs[0];
      prev = cur;
      cur = next;
    }
    return cycle;
  }
}  // namespace

std::vector<AtomCycle> find_rings(const MolecularGraph &g) {
  const std::size_t target = g.ring_count();
  if (target == 0)
    return {};

  const std::size_t n = g.num_atoms();
  const std::size_t m = g.num_bonds();
  std::vector<Candidate> candidates;
  std::set<std::vector<bool>> seen;

  for (std::size_t root = 0; root < n; ++root) {
    if (!g.in_ring(static_cast<int>(root)))
      continue;
    std::vector<int> dist;
    const std::vector<int> parent = bfs_parents(g, static_cast<int>(root), dist);

    for (std::size_t b = 0; b < m; ++b) {
      const Bond &bond = g.bond(static_cast<int>(b));
      if (!bond.in_ring)
        continue;
      if (dist[static_cast<std::size_t>(bond.begin)] < 0
          || dist[static_cast<std::size_t>(bond.end)] < 0)
        continue;

      const std::vector<int> pa = path_to_root(parent, bond.begin);
      const std::vector<int> pb = path_to_root(parent, bond.end);
      // The two paths may only meet at the root.
      std::set<int> in_a(pa.begin(), pa.end() - 1);
      bool disjoint = std::none_of(pb.begin(), pb.end() - 1,
                                   [&](int v) { return in_a.count(v) > 0; });
      if (!disjoint)
        continue;

      Candidate c;
      c.edges.assign(m, false);
      c.edges[b] = true;
      auto add_path = [&](const std::vector<int> &p) {
        for (std::size_t i = 0; i + 1 < p.size(); ++i)
          c.edges[static_cast<std::size_t>(*g.bond_between(p[i], p[i + 1]))] = true;
      };
      add_path(pa);
      add_path(pb);
      c.length = static_cast<std::size_t>(std::count(c.edges.begin(), c.edges.end(), true));
      if (c.length < 3 || !seen.insert(c.edges).second)
        continue;

      c.atoms.assign(pa.begin(), pa.end());
      c.atoms.insert(c.atoms.end(), pb.begin(), pb.end() - 1);
      std::sort(c.atoms.begin(), c.atoms.end());
      candidates.push_back(std::move(c));
    }
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate &a, const Candidate &b) {
              if (a.length != b.length)
                return a.length < b.length;
              return a.atoms < b.atoms;
            });

  // Greedy selection with an incrementally reduced GF(2) basis keyed by pivot.
  std::vector<std::vector<bool>> basis;
  std::vector<std::size_t> pivots;
  std::vector<AtomCycle> rings;
  for (const Candidate &c: candidates) {
    std::vector<bool> v = c.edges;
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (v[pivots[k]])
        for (std::size_t e = 0; e < m; ++e)
          v[e] = v[e] != basis[k][e];
    auto pivot = std::find(v.begin(), v.end(), true);
    if (pivot == v.end())
      continue;
    pivots.push_back(static_cast<std::size_t>(pivot - v.begin()));
    basis.push_back(std::move(v));
    rings.push_back(order_cycle(g, c));
    if (rings.size() == target)
      break;
  }
  return rings;
}

}  // namespace tiermol
