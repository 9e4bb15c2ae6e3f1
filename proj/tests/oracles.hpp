#pragma once

// Test-only reference implementations. Everything here brute-forces the
// definitions directly (orderings, forests, partial maps), staying
// independent of the library's solvers so it can vouch for them.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "tmpk/covering.hpp"
#include "tmpk/graph.hpp"

namespace oracles {

using Mask = std::uint64_t;

inline std::vector<Mask> adjacency_masks(const tmpk::Graph& g) {
  std::vector<Mask> adj(g.n(), 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= Mask(1) << v;
    adj[v] |= Mask(1) << u;
  }
  return adj;
}

inline bool mask_connected(const std::vector<Mask>& adj, Mask s) {
  if (!s) return false;
  Mask comp = s & (~s + 1);
  Mask frontier = comp;
  while (frontier) {
    Mask nb = 0;
    for (Mask f = frontier; f;) {
      int u = __builtin_ctzll(f);
      f &= f - 1;
      nb |= adj[u];
    }
    frontier = nb & s & ~comp;
    comp |= frontier;
  }
  return comp == s;
}

// vertex separation over all layouts
inline int naive_pathwidth(const tmpk::Graph& g) {
  int n = g.n();
  if (n == 0) return -1;
  auto adj = adjacency_masks(g);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  int best = n;
  do {
    Mask placed = 0;
    int cost = 0;
    for (int v : perm) {
      placed |= Mask(1) << v;
      int boundary = 0;
      for (Mask rest = placed; rest;) {
        int u = __builtin_ctzll(rest);
        rest &= rest - 1;
        if (adj[u] & ~placed) ++boundary;
      }
      cost = std::max(cost, boundary);
    }
    best = std::min(best, cost);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// max fill-in degree over all elimination orders
inline int naive_treewidth(const tmpk::Graph& g) {
  int n = g.n();
  if (n == 0) return -1;
  auto base = adjacency_masks(g);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  int best = n;
  do {
    auto adj = base;
    Mask gone = 0;
    int cost = 0;
    for (int v : perm) {
      Mask nb = adj[v] & ~gone;
      cost = std::max(cost, __builtin_popcountll(nb));
      for (Mask rest = nb; rest;) {
        int u = __builtin_ctzll(rest);
        rest &= rest - 1;
        adj[u] |= nb & ~(Mask(1) << u);
      }
      gone |= Mask(1) << v;
    }
    best = std::min(best, cost);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// all parent arrays, keeping valid forests whose closure covers the edges
inline int naive_treedepth(const tmpk::Graph& g) {
  int n = g.n();
  if (n == 0) return 0;
  std::vector<int> parent(n, -1);
  int best = n + 1;
  auto valid_and_height = [&]() -> int {
    std::vector<int> depth(n, -1);
    for (int v = 0; v < n; ++v) {
      int u = v, steps = 0;
      while (u != -1) {
        u = parent[u];
        if (++steps > n) return -1;  // cycle
      }
    }
    int height = 0;
    for (int v = 0; v < n; ++v) {
      int u = v, d = 0;
      while (u != -1) {
        ++d;
        u = parent[u];
      }
      depth[v] = d;
      height = std::max(height, d);
    }
    auto ancestor = [&](int a, int v) {
      while (v != -1) {
        if (v == a) return true;
        v = parent[v];
      }
      return false;
    };
    for (auto [u, v] : g.edges())
      if (!ancestor(u, v) && !ancestor(v, u)) return -1;
    (void)depth;
    return height;
  };
  std::vector<int> choice(n, -2);
  auto rec = [&](auto&& self, int v) -> void {
    if (v == n) {
      int height = valid_and_height();
      if (height > 0) best = std::min(best, height);
      return;
    }
    for (int p = -1; p < n; ++p) {
      if (p == v) continue;
      parent[v] = p;
      self(self, v + 1);
    }
  };
  rec(rec, 0);
  return best;
}

// reference minor search: enumerate every map host vertex -> pattern vertex
// or unused, validate at the leaves
inline bool naive_has_tree_minor(const tmpk::Graph& g, const tmpk::RootedTree& pattern,
                                 const std::optional<std::vector<int>>& touch) {
  int n = g.n();
  int k = pattern.vertex_count();
  if (k > n) return false;
  auto adj = adjacency_masks(g);
  std::vector<Mask> sets(k, 0);
  Mask touch_mask = 0;
  if (touch)
    for (int v : *touch) touch_mask |= Mask(1) << v;

  auto valid = [&]() {
    for (int x = 0; x < k; ++x)
      if (!sets[x] || !mask_connected(adj, sets[x])) return false;
    if (touch && !(sets[pattern.root] & touch_mask)) return false;
    for (auto [x, y] : pattern.tree.edges()) {
      bool witnessed = false;
      for (Mask rest = sets[x]; rest && !witnessed;) {
        int u = __builtin_ctzll(rest);
        rest &= rest - 1;
        witnessed = (adj[u] & sets[y]) != 0;
      }
      if (!witnessed) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, int v) -> bool {
    if (v == n) return valid();
    // unused
    if (self(self, v + 1)) return true;
    for (int x = 0; x < k; ++x) {
      sets[x] |= Mask(1) << v;
      if (self(self, v + 1)) return true;
      sets[x] &= ~(Mask(1) << v);
    }
    return false;
  };
  return rec(rec, 0);
}

// all simple paths by DFS
inline int naive_longest_path(const tmpk::Graph& g) {
  int best = g.n() > 0 ? 1 : 0;
  auto adj = adjacency_masks(g);
  auto rec = [&](auto&& self, int v, Mask used, int len) -> void {
    best = std::max(best, len);
    for (Mask rest = adj[v] & ~used; rest;) {
      int u = __builtin_ctzll(rest);
      rest &= rest - 1;
      self(self, u, used | (Mask(1) << u), len + 1);
    }
  };
  for (int v = 0; v < g.n(); ++v) rec(rec, v, Mask(1) << v, 1);
  return best;
}

// ---------------------------------------------------------------------------
// families of connected subgraphs for covering tests

enum class FamilyKind { Edge, Triangle, PathThree };

inline bool family_valid(const tmpk::Graph& g, const std::vector<Mask>& adj, Mask s,
                         FamilyKind kind) {
  if (!s || !mask_connected(adj, s)) return false;
  switch (kind) {
    case FamilyKind::Edge:
      for (Mask rest = s; rest;) {
        int u = __builtin_ctzll(rest);
        rest &= rest - 1;
        if (adj[u] & s) return true;
      }
      return false;
    case FamilyKind::Triangle:
      for (Mask rest = s; rest;) {
        int u = __builtin_ctzll(rest);
        rest &= rest - 1;
        for (Mask r2 = adj[u] & s & ~((Mask(2) << u) - 1); r2;) {
          int v = __builtin_ctzll(r2);
          r2 &= r2 - 1;
          if (adj[u] & adj[v] & s) return true;
        }
      }
      return false;
    case FamilyKind::PathThree:
      for (Mask rest = s; rest;) {
        int u = __builtin_ctzll(rest);
        rest &= rest - 1;
        if (__builtin_popcountll(adj[u] & s) >= 2) return true;
      }
      return false;
  }
  return false;
}

// complete finder: scan subsets of the region in ascending mask order
inline tmpk::MemberFinder make_complete_finder(const tmpk::Graph& g, FamilyKind kind) {
  auto adj = adjacency_masks(g);
  return [&g, adj, kind](const std::vector<int>& avail) -> std::optional<std::vector<int>> {
    int a = static_cast<int>(avail.size());
    std::vector<Mask> local(a, 0);
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < a; ++j)
        if (adj[avail[i]] & (Mask(1) << avail[j])) local[i] |= Mask(1) << j;
    Mask full = (a >= 64) ? ~Mask(0) : ((Mask(1) << a) - 1);
    for (Mask s = 1; s <= full && s != 0; ++s)
      if (family_valid(g, local, s, kind)) {
        std::vector<int> member;
        for (Mask rest = s; rest;) {
          int i = __builtin_ctzll(rest);
          rest &= rest - 1;
          member.push_back(avail[i]);
        }
        return member;
      }
    return std::nullopt;
  };
}

// inclusion-minimal members over the whole graph
inline std::vector<Mask> minimal_members(const tmpk::Graph& g, FamilyKind kind) {
  auto adj = adjacency_masks(g);
  std::vector<Mask> valid;
  Mask full = (g.n() >= 64) ? ~Mask(0) : ((Mask(1) << g.n()) - 1);
  for (Mask s = 1; s <= full && s != 0; ++s)
    if (family_valid(g, adj, s, kind)) valid.push_back(s);
  std::vector<Mask> minimal;
  for (Mask s : valid) {
    bool is_min = true;
    for (Mask t : valid)
      if (t != s && (t & s) == t) {
        is_min = false;
        break;
      }
    if (is_min) minimal.push_back(s);
  }
  return minimal;
}

inline bool packing_exists(const tmpk::Graph& g, FamilyKind kind, int ell) {
  auto members = minimal_members(g, kind);
  auto rec = [&](auto&& self, size_t start, Mask used, int count) -> bool {
    if (count == ell) return true;
    for (size_t i = start; i < members.size(); ++i)
      if (!(members[i] & used) && self(self, i + 1, used | members[i], count + 1)) return true;
    return false;
  };
  return rec(rec, 0, 0, 0);
}

}  // namespace oracles
