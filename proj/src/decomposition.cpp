#include "tmpk/decomposition.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "tmpk/errors.hpp"

namespace tmpk {

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& bag : bags) w = std::max(w, static_cast<int>(bag.size()) - 1);
  return w;
}

int PathDecomposition::width() const {
  int w = -1;
  for (const auto& bag : bags) w = std::max(w, static_cast<int>(bag.size()) - 1);
  return w;
}

TreeDecomposition PathDecomposition::as_tree() const {
  TreeDecomposition td;
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < static_cast<int>(bags.size()); ++i) edges.emplace_back(i, i + 1);
  td.index_tree = Graph::from_edges(static_cast<int>(bags.size()), std::move(edges));
  td.bags = bags;
  return td;
}

PathDecomposition PathDecomposition::stripped() const {
  PathDecomposition out;
  for (const auto& bag : bags)
    if (!bag.empty()) out.bags.push_back(bag);
  return out;
}

std::vector<std::string> tree_decomposition_violations(const Graph& g, const TreeDecomposition& td) {
  std::vector<std::string> out;
  int k = td.node_count();
  if (static_cast<int>(td.bags.size()) != k) {
    out.push_back("bag count differs from index tree size");
    return out;
  }
  if (k == 0) {
    if (g.n() > 0) out.push_back("empty decomposition for a non-empty graph");
    return out;
  }
  if (!td.index_tree.is_tree()) {
    out.push_back("index graph is not a tree");
    return out;
  }
  for (int x = 0; x < k; ++x)
    for (int v : td.bags[x])
      if (v < 0 || v >= g.n()) {
        out.push_back("bag " + std::to_string(x) + " contains out-of-range vertex " + std::to_string(v));
        return out;
      }

  for (auto [u, v] : g.edges()) {
    bool covered = false;
    for (int x = 0; x < k && !covered; ++x)
      covered = std::binary_search(td.bags[x].begin(), td.bags[x].end(), u) &&
                std::binary_search(td.bags[x].begin(), td.bags[x].end(), v);
    if (!covered)
      out.push_back("edge (" + std::to_string(u) + "," + std::to_string(v) + ") not covered by any bag");
  }

  // occupancy of every vertex must induce a non-empty connected subtree
  for (int v = 0; v < g.n(); ++v) {
    std::vector<int> occ;
    for (int x = 0; x < k; ++x)
      if (std::binary_search(td.bags[x].begin(), td.bags[x].end(), v)) occ.push_back(x);
    if (occ.empty()) {
      out.push_back("vertex " + std::to_string(v) + " appears in no bag");
      continue;
    }
    std::vector<char> in_occ(k, 0), seen(k, 0);
    for (int x : occ) in_occ[x] = 1;
    std::deque<int> queue{occ.front()};
    seen[occ.front()] = 1;
    int reached = 1;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int y : td.index_tree.neighbors(x))
        if (in_occ[y] && !seen[y]) {
          seen[y] = 1;
          ++reached;
          queue.push_back(y);
        }
    }
    if (reached != static_cast<int>(occ.size()))
      out.push_back("vertex " + std::to_string(v) + " has disconnected occupancy");
  }
  return out;
}

std::vector<std::string> path_decomposition_violations(const Graph& g, const PathDecomposition& pd) {
  return tree_decomposition_violations(g, pd.as_tree());
}

int EliminationForest::vertex_height() const {
  int n = static_cast<int>(parent.size());
  std::vector<int> depth(n, -1);
  int best = 0;
  for (int v = 0; v < n; ++v) {
    // walk up, memoizing depths
    std::vector<int> chain;
    int u = v;
    while (u != -1 && depth[u] < 0) {
      chain.push_back(u);
      u = parent[u];
    }
    int base = (u == -1) ? 0 : depth[u];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth[*it] = ++base;
    best = std::max(best, depth[v]);
  }
  return best;
}

std::vector<std::string> elimination_forest_violations(const Graph& g, const EliminationForest& f) {
  std::vector<std::string> out;
  int n = g.n();
  if (static_cast<int>(f.parent.size()) != n) {
    out.push_back("forest does not span the vertex set");
    return out;
  }
  // acyclicity: walking up from any vertex must terminate
  for (int v = 0; v < n; ++v) {
    int u = v, steps = 0;
    while (u != -1) {
      if (f.parent[u] < -1 || f.parent[u] >= n) {
        out.push_back("bad parent pointer at vertex " + std::to_string(u));
        return out;
      }
      u = f.parent[u];
      if (++steps > n) {
        out.push_back("cycle in parent pointers reachable from vertex " + std::to_string(v));
        return out;
      }
    }
  }
  auto ancestor = [&](int a, int v) {
    while (v != -1) {
      if (v == a) return true;
      v = f.parent[v];
    }
    return false;
  };
  for (auto [u, v] : g.edges())
    if (!ancestor(u, v) && !ancestor(v, u))
      out.push_back("edge (" + std::to_string(u) + "," + std::to_string(v) +
                    ") joins unrelated forest vertices");
  return out;
}

// ---------------------------------------------------------------------------
// exact pathwidth: vertex-separation subset DP.
// dp[S] = min over layouts placing exactly S first of the max boundary seen;
// the boundary of S is |{u in S : u has a neighbor outside S}| and does not
// depend on the order within S, so dp[S] = max(boundary(S), min_v dp[S\{v}]).

namespace {

using Mask = std::uint64_t;

int popcount(Mask m) { return __builtin_popcountll(m); }

std::vector<Mask> adjacency_masks(const Graph& g) {
  std::vector<Mask> adj(g.n(), 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= Mask(1) << v;
    adj[v] |= Mask(1) << u;
  }
  return adj;
}

}  // namespace

std::pair<int, PathDecomposition> exact_pathwidth(const Graph& g, int cap) {
  int n = g.n();
  if (n > cap)
    throw CapExceeded("exact_pathwidth: n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  if (n == 0) return {-1, PathDecomposition{}};

  auto adj = adjacency_masks(g);
  Mask full = (n == 64) ? ~Mask(0) : ((Mask(1) << n) - 1);
  std::vector<std::uint8_t> dp(full + 1, 0);
  auto boundary = [&](Mask s) {
    int b = 0;
    for (Mask rest = s; rest;) {
      int v = __builtin_ctzll(rest);
      rest &= rest - 1;
      if (adj[v] & ~s) ++b;
    }
    return b;
  };
  for (Mask s = 1; s <= full; ++s) {
    int best = n + 1;
    for (Mask rest = s; rest;) {
      int v = __builtin_ctzll(rest);
      rest &= rest - 1;
      best = std::min(best, static_cast<int>(dp[s & ~(Mask(1) << v)]));
    }
    dp[s] = static_cast<std::uint8_t>(std::max(best, boundary(s)));
  }
  int width = dp[full];

  // recover a layout backwards: the last vertex of an optimal layout of S is
  // any v minimizing dp[S\{v}]
  std::vector<int> layout(n);
  Mask s = full;
  for (int i = n - 1; i >= 0; --i) {
    int pick = -1, best = n + 1;
    for (Mask rest = s; rest;) {
      int v = __builtin_ctzll(rest);
      rest &= rest - 1;
      int c = dp[s & ~(Mask(1) << v)];
      if (c < best) {
        best = c;
        pick = v;
      }
    }
    layout[i] = pick;
    s &= ~(Mask(1) << pick);
  }

  // bags: B_i = {v_i} + {u placed before i with a neighbor not yet placed}
  PathDecomposition pd;
  Mask placed = 0;
  for (int i = 0; i < n; ++i) {
    std::vector<int> bag{layout[i]};
    for (Mask rest = placed; rest;) {
      int u = __builtin_ctzll(rest);
      rest &= rest - 1;
      if (adj[u] & ~placed) bag.push_back(u);
    }
    std::sort(bag.begin(), bag.end());
    pd.bags.push_back(std::move(bag));
    placed |= Mask(1) << layout[i];
  }
  pd = pd.stripped();
  return {width, pd};
}

// ---------------------------------------------------------------------------
// exact treewidth: elimination-ordering subset DP. For the set S of already
// eliminated vertices, eliminating v next costs the number of vertices
// outside S+{v} reachable from v through S.

namespace {

int elimination_degree(const std::vector<Mask>& adj, Mask s, int v) {
  Mask seen = Mask(1) << v;
  Mask frontier = seen;
  Mask out = 0;
  while (frontier) {
    Mask nb = 0;
    for (Mask rest = frontier; rest;) {
      int u = __builtin_ctzll(rest);
      rest &= rest - 1;
      nb |= adj[u];
    }
    nb &= ~seen;
    out |= nb & ~s;
    frontier = nb & s;
    seen |= nb;
  }
  return popcount(out & ~(Mask(1) << v));
}

// tree decomposition from an elimination order by recursive fill-in
TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<int>& order) {
  int n = g.n();
  std::vector<Mask> work = adjacency_masks(g);
  // eliminate in order, recording bag {v} + current fill-in neighborhood
  std::vector<std::pair<int, Mask>> elim;  // (v, neighborhood at elimination)
  for (int v : order) {
    Mask nb = work[v];
    elim.emplace_back(v, nb);
    for (Mask rest = nb; rest;) {
      int u = __builtin_ctzll(rest);
      rest &= rest - 1;
      work[u] |= nb;
      work[u] &= ~(Mask(1) << u);
    }
    for (int u = 0; u < n; ++u) work[u] &= ~(Mask(1) << v);
  }

  // build bags back to front; each bag attaches to the first later bag that
  // contains its neighborhood (a clique there), or becomes the root
  int k = static_cast<int>(elim.size());
  std::vector<std::vector<int>> bags(k);
  std::vector<Mask> bag_masks(k, 0);
  for (int i = 0; i < k; ++i) {
    auto [v, nb] = elim[i];
    bag_masks[i] = nb | (Mask(1) << v);
    for (Mask rest = bag_masks[i]; rest;) {
      int u = __builtin_ctzll(rest);
      rest &= rest - 1;
      bags[i].push_back(u);
    }
  }
  std::vector<Edge> tree_edges;
  for (int i = 0; i < k; ++i) {
    Mask nb = elim[i].second;
    if (!nb) {
      if (i + 1 < k) tree_edges.emplace_back(i, i + 1);
      continue;
    }
    for (int j = i + 1; j < k; ++j)
      if ((nb & bag_masks[j]) == nb) {
        tree_edges.emplace_back(i, j);
        break;
      }
  }
  TreeDecomposition td;
  td.bags = std::move(bags);
  td.index_tree = Graph::from_edges(k, std::move(tree_edges));
  return td;
}

}  // namespace

std::pair<int, TreeDecomposition> exact_treewidth(const Graph& g, int cap) {
  int n = g.n();
  if (n > cap)
    throw CapExceeded("exact_treewidth: n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  if (n == 0) return {-1, TreeDecomposition{}};

  auto adj = adjacency_masks(g);
  Mask full = (Mask(1) << n) - 1;
  std::vector<std::uint8_t> dp(full + 1, 0);
  for (Mask s = 1; s <= full; ++s) {
    int best = n + 1;
    for (Mask rest = s; rest;) {
      int v = __builtin_ctzll(rest);
      rest &= rest - 1;
      Mask prev = s & ~(Mask(1) << v);
      best = std::min(best, std::max(static_cast<int>(dp[prev]), elimination_degree(adj, prev, v)));
    }
    dp[s] = static_cast<std::uint8_t>(best);
  }
  int width = dp[full];

  std::vector<int> order(n);
  Mask s = full;
  for (int i = n - 1; i >= 0; --i) {
    int pick = -1, best = n + 2;
    for (Mask rest = s; rest;) {
      int v = __builtin_ctzll(rest);
      rest &= rest - 1;
      Mask prev = s & ~(Mask(1) << v);
      int c = std::max(static_cast<int>(dp[prev]), elimination_degree(adj, prev, v));
      if (c < best) {
        best = c;
        pick = v;
      }
    }
    order[i] = pick;
    s &= ~(Mask(1) << pick);
  }
  auto td = decomposition_from_order(g, order);
  return {width, td};
}

// ---------------------------------------------------------------------------
// exact treedepth: component/root recursion with memoization on vertex masks.

namespace {

struct TdSolver {
  const std::vector<Mask>& adj;
  std::unordered_map<Mask, int> memo;

  explicit TdSolver(const std::vector<Mask>& a) : adj(a) {}

  int lookup(Mask m) {
    auto it = memo.find(m);
    return it == memo.end() ? -1 : it->second;
  }
  void store(Mask m, int v) { memo.emplace(m, v); }

  std::vector<Mask> components_of(Mask s) {
    std::vector<Mask> comps;
    Mask rest = s;
    while (rest) {
      int v = __builtin_ctzll(rest);
      Mask comp = Mask(1) << v;
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
      comps.push_back(comp);
      rest &= ~comp;
    }
    return comps;
  }

  int depth_of(Mask s) {
    if (!s) return 0;
    if (popcount(s) == 1) return 1;
    int cached = lookup(s);
    if (cached >= 0) return cached;
    auto comps = components_of(s);
    int result;
    if (comps.size() > 1) {
      result = 0;
      for (Mask c : comps) result = std::max(result, depth_of(c));
    } else {
      result = popcount(s);  // trivial upper bound: chain
      for (Mask rest = s; rest;) {
        int v = __builtin_ctzll(rest);
        rest &= rest - 1;
        result = std::min(result, 1 + depth_of(s & ~(Mask(1) << v)));
      }
    }
    store(s, result);
    return result;
  }

  // rebuilds an optimal forest using the memo table
  void build(Mask s, int parent, std::vector<int>& out) {
    if (!s) return;
    auto comps = components_of(s);
    if (comps.size() > 1) {
      for (Mask c : comps) build(c, parent, out);
      return;
    }
    if (popcount(s) == 1) {
      out[__builtin_ctzll(s)] = parent;
      return;
    }
    int target = depth_of(s);
    for (Mask rest = s; rest;) {
      int v = __builtin_ctzll(rest);
      rest &= rest - 1;
      if (1 + depth_of(s & ~(Mask(1) << v)) == target) {
        out[v] = parent;
        build(s & ~(Mask(1) << v), v, out);
        return;
      }
    }
  }
};

}  // namespace

std::pair<int, EliminationForest> exact_treedepth(const Graph& g, int cap) {
  int n = g.n();
  if (n > cap)
    throw CapExceeded("exact_treedepth: n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  EliminationForest f;
  f.parent.assign(n, -1);
  if (n == 0) return {0, f};
  auto adj = adjacency_masks(g);
  TdSolver solver(adj);
  Mask full = (Mask(1) << n) - 1;
  int depth = solver.depth_of(full);
  solver.build(full, -1, f.parent);
  return {depth, f};
}

// ---------------------------------------------------------------------------
// PACE-style .td I/O

void write_td(std::ostream& out, const TreeDecomposition& td, int graph_n) {
  int maxbag = 0;
  for (const auto& bag : td.bags) maxbag = std::max(maxbag, static_cast<int>(bag.size()));
  out << "s td " << td.node_count() << " " << maxbag << " " << graph_n << "\n";
  for (int x = 0; x < td.node_count(); ++x) {
    out << "b " << (x + 1);
    for (int v : td.bags[x]) out << " " << (v + 1);
    out << "\n";
  }
  for (auto [x, y] : td.index_tree.edges()) out << (x + 1) << " " << (y + 1) << "\n";
}

TreeDecomposition read_td(std::istream& in) {
  std::string line;
  long long nbags = -1, maxbag = -1, graph_n = -1;
  TreeDecomposition td;
  std::vector<Edge> tree_edges;
  std::vector<char> seen_bag;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == 'c' || line[pos] == '#') continue;
    std::istringstream ss(line);
    if (nbags < 0) {
      std::string s, t;
      if (!(ss >> s >> t >> nbags >> maxbag >> graph_n) || s != "s" || t != "td" || nbags < 0)
        throw ParseError("td line " + std::to_string(lineno) + ": expected 's td <bags> <maxbagsize> <n>'");
      td.bags.assign(nbags, {});
      seen_bag.assign(nbags, 0);
      continue;
    }
    if (line[pos] == 'b') {
      std::string b;
      long long id;
      if (!(ss >> b >> id) || id < 1 || id > nbags)
        throw ParseError("td line " + std::to_string(lineno) + ": bad bag line");
      if (seen_bag[id - 1]) throw ParseError("td line " + std::to_string(lineno) + ": duplicate bag id");
      seen_bag[id - 1] = 1;
      long long v;
      while (ss >> v) {
        if (v < 1 || v > graph_n)
          throw ParseError("td line " + std::to_string(lineno) + ": bag vertex out of range");
        td.bags[id - 1].push_back(static_cast<int>(v - 1));
      }
      std::sort(td.bags[id - 1].begin(), td.bags[id - 1].end());
      td.bags[id - 1].erase(std::unique(td.bags[id - 1].begin(), td.bags[id - 1].end()),
                            td.bags[id - 1].end());
      continue;
    }
    long long x, y;
    if (!(ss >> x >> y) || x < 1 || y < 1 || x > nbags || y > nbags)
      throw ParseError("td line " + std::to_string(lineno) + ": bad decomposition edge");
    tree_edges.emplace_back(static_cast<int>(x - 1), static_cast<int>(y - 1));
  }
  if (nbags < 0) throw ParseError("td: missing header");
  try {
    td.index_tree = Graph::from_edges(static_cast<int>(nbags), std::move(tree_edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("td: ") + e.what());
  }
  if (!td.index_tree.is_tree() && td.node_count() > 0)
    throw ParseError("td: decomposition edges do not form a tree");
  return td;
}

TreeDecomposition read_td_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open td file: " + path);
  return read_td(in);
}

TreeDecomposition restrict_decomposition(const TreeDecomposition& td, const std::vector<int>& to_new) {
  TreeDecomposition out;
  out.index_tree = td.index_tree;
  out.bags.resize(td.bags.size());
  for (size_t x = 0; x < td.bags.size(); ++x) {
    for (int v : td.bags[x]) {
      int w = (v < static_cast<int>(to_new.size())) ? to_new[v] : -1;
      if (w >= 0) out.bags[x].push_back(w);
    }
    std::sort(out.bags[x].begin(), out.bags[x].end());
    out.bags[x].erase(std::unique(out.bags[x].begin(), out.bags[x].end()), out.bags[x].end());
  }
  return out;
}

}  // namespace tmpk
