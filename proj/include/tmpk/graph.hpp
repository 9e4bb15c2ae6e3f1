#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace tmpk {

using Vertex = int;
using Edge = std::pair<int, int>;  // stored normalized with first < second

// Simple finite undirected graph over dense vertex ids [0, n).
// Immutable after construction; transformations return new graphs together
// with explicit vertex mappings so certificates can be lifted backward.
class Graph {
 public:
  Graph() = default;

  // Throws std::invalid_argument on loops, duplicates, or out-of-range ids.
  static Graph from_edges(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  bool has_edge(int u, int v) const;
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Components sorted internally and ordered by smallest vertex.
  std::vector<std::vector<int>> components() const;
  bool is_connected() const;  // vacuously true for n <= 1
  bool is_tree() const;
  // Distances from src, -1 for unreachable vertices.
  std::vector<int> bfs_dist(int src) const;

  struct Induced;
  // keep must be sorted and duplicate-free.
  Induced induced(const std::vector<int>& keep) const;

 private:
  int n_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<Edge> edges_;
};

struct Graph::Induced {
  Graph graph;
  std::vector<int> to_old;  // new id -> old id
  std::vector<int> to_new;  // old id -> new id, -1 when dropped
};

// Text format: first non-comment line "n m", then m lines "u v" with
// 0-indexed endpoints. Lines starting with '#' are ignored. Duplicate or
// loop lines are ParseErrors.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);

struct RootedTree {
  Graph tree;
  int root = 0;
  std::vector<int> parent;                 // -1 at the root
  std::vector<std::vector<int>> children;  // ascending per vertex
  std::vector<int> depth;

  int vertex_count() const { return tree.n(); }
  int height() const;  // max depth
  bool is_ancestor(int a, int v) const;
};

// Throws std::invalid_argument unless `tree` is a tree containing root.
RootedTree root_tree_at(const Graph& tree, int root);

// Complete d-ary tree with every vertex of depth < h having exactly d
// children and all leaves at depth h. Vertices labeled in BFS order.
RootedTree complete_dary_tree(int h, int d);

struct TreeParams {
  int t;       // vertex count
  int h;       // radius
  int d;       // maximum degree
  int center;  // lowest-id vertex attaining the radius
};
TreeParams tree_params(const Graph& t);

// Strong product; vertex (a, b) gets id a * B.n() + b.
Graph strong_product(const Graph& a, const Graph& b);
inline int product_vertex(int av, int bv, int bn) { return av * bn + bv; }
Graph complete_graph(int n);
Graph path_graph(int n);

// Empty when `parts` is a valid partition of [0, n), else the violations.
std::vector<std::string> partition_violations(int n, const std::vector<std::vector<int>>& parts);

class Partition {
 public:
  // Throws std::invalid_argument when the parts do not partition [0, n).
  static Partition from_parts(int n, std::vector<std::vector<int>> parts);

  int n() const { return n_; }
  int size() const { return static_cast<int>(parts_.size()); }
  int width() const;
  const std::vector<std::vector<int>>& parts() const { return parts_; }
  const std::vector<int>& part(int i) const { return parts_[i]; }
  int part_of(int v) const { return part_of_[v]; }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> parts_;  // each sorted
  std::vector<int> part_of_;
};

Graph quotient(const Graph& g, const Partition& p);

struct Contraction {
  Graph graph;
  std::vector<int> map_old_to_new;
};
// Contracts the connected set s into a single vertex placed at the rank of
// min(s); all other vertices keep their relative order.
Contraction contract_connected_set(const Graph& g, const std::vector<int>& s);

// BFS layers of the component of r: V_0 = {r}, V_i = vertices at distance i.
std::vector<std::vector<int>> bfs_layers(const Graph& g, int r);

struct MinorModel {
  RootedTree pattern;
  std::vector<std::vector<int>> branch_sets;  // per pattern vertex, sorted
};

}  // namespace tmpk
