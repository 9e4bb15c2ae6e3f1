#include "tmpk/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "tmpk/errors.hpp"

namespace tmpk {

Graph Graph::from_edges(int n, std::vector<Edge> edges) {
  if (n < 0) throw std::invalid_argument("graph: negative vertex count");
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("graph: endpoint out of range");
    if (u == v) throw std::invalid_argument("graph: self-loop");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("graph: duplicate edge");
  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  g.adj_.assign(n, {});
  for (auto [u, v] : g.edges_) {
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
  return g;
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::vector<int>> Graph::components() const {
  std::vector<std::vector<int>> comps;
  std::vector<char> seen(n_, 0);
  for (int s = 0; s < n_; ++s) {
    if (seen[s]) continue;
    std::vector<int> comp;
    std::deque<int> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      comp.push_back(v);
      for (int w : adj_[v])
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool Graph::is_connected() const {
  if (n_ <= 1) return true;
  return components().size() == 1;
}

bool Graph::is_tree() const {
  return is_connected() && m() == n_ - 1;
}

std::vector<int> Graph::bfs_dist(int src) const {
  std::vector<int> dist(n_, -1);
  if (src < 0 || src >= n_) return dist;
  dist[src] = 0;
  std::deque<int> queue{src};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj_[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

Graph::Induced Graph::induced(const std::vector<int>& keep) const {
  Induced out;
  out.to_old = keep;
  out.to_new.assign(n_, -1);
  for (int i = 0; i < static_cast<int>(keep.size()); ++i) {
    int v = keep[i];
    if (v < 0 || v >= n_ || out.to_new[v] != -1)
      throw std::invalid_argument("induced: keep must be a sorted vertex set");
    if (i > 0 && keep[i - 1] >= v)
      throw std::invalid_argument("induced: keep must be sorted");
    out.to_new[v] = i;
  }
  std::vector<Edge> es;
  for (auto [u, v] : edges_)
    if (out.to_new[u] >= 0 && out.to_new[v] >= 0)
      es.emplace_back(out.to_new[u], out.to_new[v]);
  out.graph = Graph::from_edges(static_cast<int>(keep.size()), std::move(es));
  return out;
}

Graph read_graph(std::istream& in) {
  std::string line;
  long long n = -1, m = -1;
  std::vector<Edge> edges;
  long long seen_edges = 0;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ss(line);
    if (n < 0) {
      if (!(ss >> n >> m) || n < 0 || m < 0)
        throw ParseError("graph line " + std::to_string(lineno) + ": expected 'n m' header");
      std::string rest;
      if (ss >> rest) throw ParseError("graph line " + std::to_string(lineno) + ": trailing tokens");
      continue;
    }
    long long u, v;
    if (!(ss >> u >> v))
      throw ParseError("graph line " + std::to_string(lineno) + ": expected 'u v'");
    std::string rest;
    if (ss >> rest) throw ParseError("graph line " + std::to_string(lineno) + ": trailing tokens");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ParseError("graph line " + std::to_string(lineno) + ": endpoint out of range");
    if (u == v) throw ParseError("graph line " + std::to_string(lineno) + ": self-loop");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    ++seen_edges;
  }
  if (n < 0) throw ParseError("graph: missing 'n m' header");
  if (seen_edges != m)
    throw ParseError("graph: header announced " + std::to_string(m) + " edges, found " +
                     std::to_string(seen_edges));
  try {
    return Graph::from_edges(static_cast<int>(n), std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("graph: ") + e.what());
  }
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file: " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.n() << " " << g.m() << "\n";
  for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

int RootedTree::height() const {
  int h = 0;
  for (int d : depth) h = std::max(h, d);
  return h;
}

bool RootedTree::is_ancestor(int a, int v) const {
  while (v != -1) {
    if (v == a) return true;
    v = parent[v];
  }
  return false;
}

RootedTree root_tree_at(const Graph& tree, int root) {
  if (!tree.is_tree()) throw std::invalid_argument("root_tree_at: not a tree");
  if (root < 0 || root >= tree.n()) throw std::invalid_argument("root_tree_at: bad root");
  RootedTree rt;
  rt.tree = tree;
  rt.root = root;
  rt.parent.assign(tree.n(), -1);
  rt.children.assign(tree.n(), {});
  rt.depth.assign(tree.n(), 0);
  std::deque<int> queue{root};
  std::vector<char> seen(tree.n(), 0);
  seen[root] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : tree.neighbors(v))
      if (!seen[w]) {
        seen[w] = 1;
        rt.parent[w] = v;
        rt.depth[w] = rt.depth[v] + 1;
        rt.children[v].push_back(w);
        queue.push_back(w);
      }
  }
  return rt;
}

RootedTree complete_dary_tree(int h, int d) {
  if (h < 0) throw std::invalid_argument("complete_dary_tree: negative radius");
  if (d < 1) throw std::invalid_argument("complete_dary_tree: d must be positive");
  std::vector<Edge> edges;
  std::vector<int> level{0};
  int next = 1;
  for (int depth = 0; depth < h; ++depth) {
    std::vector<int> next_level;
    for (int v : level)
      for (int k = 0; k < d; ++k) {
        edges.emplace_back(v, next);
        next_level.push_back(next);
        ++next;
      }
    level = std::move(next_level);
  }
  return root_tree_at(Graph::from_edges(next, std::move(edges)), 0);
}

TreeParams tree_params(const Graph& t) {
  if (!t.is_tree()) throw std::invalid_argument("tree_params: not a tree");
  if (t.n() == 0) throw std::invalid_argument("tree_params: empty tree");
  TreeParams p{t.n(), 0, 0, 0};
  int best_ecc = t.n();
  for (int v = 0; v < t.n(); ++v) {
    p.d = std::max(p.d, t.degree(v));
    auto dist = t.bfs_dist(v);
    int ecc = *std::max_element(dist.begin(), dist.end());
    if (ecc < best_ecc) {
      best_ecc = ecc;
      p.center = v;
    }
  }
  p.h = best_ecc;
  return p;
}

Graph strong_product(const Graph& a, const Graph& b) {
  int nb = b.n();
  std::vector<Edge> edges;
  for (int v = 0; v < a.n(); ++v)
    for (auto [x, y] : b.edges()) edges.emplace_back(product_vertex(v, x, nb), product_vertex(v, y, nb));
  for (auto [v, w] : a.edges())
    for (int x = 0; x < nb; ++x) edges.emplace_back(product_vertex(v, x, nb), product_vertex(w, x, nb));
  for (auto [v, w] : a.edges())
    for (auto [x, y] : b.edges()) {
      edges.emplace_back(product_vertex(v, x, nb), product_vertex(w, y, nb));
      edges.emplace_back(product_vertex(v, y, nb), product_vertex(w, x, nb));
    }
  return Graph::from_edges(a.n() * nb, std::move(edges));
}

Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(n, std::move(edges));
}

Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, std::move(edges));
}

std::vector<std::string> partition_violations(int n, const std::vector<std::vector<int>>& parts) {
  std::vector<std::string> out;
  std::vector<int> owner(n, -1);
  for (int i = 0; i < static_cast<int>(parts.size()); ++i) {
    if (parts[i].empty()) out.push_back("part " + std::to_string(i) + " is empty");
    for (int v : parts[i]) {
      if (v < 0 || v >= n) {
        out.push_back("part " + std::to_string(i) + " contains out-of-range vertex " + std::to_string(v));
        continue;
      }
      if (owner[v] != -1)
        out.push_back("vertex " + std::to_string(v) + " appears in parts " + std::to_string(owner[v]) +
                      " and " + std::to_string(i));
      owner[v] = i;
    }
  }
  for (int v = 0; v < n; ++v)
    if (owner[v] == -1) out.push_back("vertex " + std::to_string(v) + " not covered by any part");
  return out;
}

Partition Partition::from_parts(int n, std::vector<std::vector<int>> parts) {
  auto bad = partition_violations(n, parts);
  if (!bad.empty()) throw std::invalid_argument("invalid partition: " + bad.front());
  Partition p;
  p.n_ = n;
  p.parts_ = std::move(parts);
  p.part_of_.assign(n, -1);
  for (auto& part : p.parts_) std::sort(part.begin(), part.end());
  for (int i = 0; i < p.size(); ++i)
    for (int v : p.parts_[i]) p.part_of_[v] = i;
  return p;
}

int Partition::width() const {
  size_t w = 0;
  for (const auto& part : parts_) w = std::max(w, part.size());
  return static_cast<int>(w);
}

Graph quotient(const Graph& g, const Partition& p) {
  if (p.n() != g.n()) throw std::invalid_argument("quotient: partition is for a different graph");
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) {
    int a = p.part_of(u), b = p.part_of(v);
    if (a != b) edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph::from_edges(p.size(), std::move(edges));
}

Contraction contract_connected_set(const Graph& g, const std::vector<int>& s) {
  if (s.empty()) throw std::invalid_argument("contract_connected_set: empty set");
  std::vector<char> in_s(g.n(), 0);
  for (int v : s) {
    if (v < 0 || v >= g.n()) throw std::invalid_argument("contract_connected_set: bad vertex");
    in_s[v] = 1;
  }
  // connectivity of g[s]
  std::deque<int> queue{s.front()};
  std::vector<char> seen(g.n(), 0);
  seen[s.front()] = 1;
  int reached = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : g.neighbors(v))
      if (in_s[w] && !seen[w]) {
        seen[w] = 1;
        ++reached;
        queue.push_back(w);
      }
  }
  if (reached != static_cast<int>(s.size()))
    throw std::invalid_argument("contract_connected_set: set not connected");

  int rep = *std::min_element(s.begin(), s.end());
  Contraction out;
  out.map_old_to_new.assign(g.n(), -1);
  int next = 0;
  for (int v = 0; v < g.n(); ++v) {
    if (in_s[v])
      out.map_old_to_new[v] = -2;  // resolved after rep gets its slot
    else if (v < rep)
      out.map_old_to_new[v] = next++;
  }
  int rep_id = next++;
  for (int v = rep + 1; v < g.n(); ++v)
    if (!in_s[v]) out.map_old_to_new[v] = next++;
  for (int v = 0; v < g.n(); ++v)
    if (out.map_old_to_new[v] == -2) out.map_old_to_new[v] = rep_id;

  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) {
    int a = out.map_old_to_new[u], b = out.map_old_to_new[v];
    if (a != b) edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  out.graph = Graph::from_edges(next, std::move(edges));
  return out;
}

std::vector<std::vector<int>> bfs_layers(const Graph& g, int r) {
  if (r < 0 || r >= g.n()) throw std::invalid_argument("bfs_layers: root out of range");
  auto dist = g.bfs_dist(r);
  int maxd = 0;
  for (int v = 0; v < g.n(); ++v) maxd = std::max(maxd, dist[v]);
  std::vector<std::vector<int>> layers(maxd + 1);
  for (int v = 0; v < g.n(); ++v)
    if (dist[v] >= 0) layers[dist[v]].push_back(v);
  return layers;
}

}  // namespace tmpk
