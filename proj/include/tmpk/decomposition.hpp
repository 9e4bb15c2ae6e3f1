#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "tmpk/graph.hpp"

namespace tmpk {

// Tree-indexed bag family. Node 0 is the root by convention; empty bags are
// permitted (restrictions and contractions may empty a bag without changing
// the index tree, which keeps node ids stable for provenance tracking).
struct TreeDecomposition {
  Graph index_tree;
  std::vector<std::vector<int>> bags;  // bags[x] sorted

  int node_count() const { return index_tree.n(); }
  int width() const;
};

struct PathDecomposition {
  std::vector<std::vector<int>> bags;

  int width() const;
  TreeDecomposition as_tree() const;
  // Removes empty bags; identity on decompositions without them.
  PathDecomposition stripped() const;
};

std::vector<std::string> tree_decomposition_violations(const Graph& g, const TreeDecomposition& td);
std::vector<std::string> path_decomposition_violations(const Graph& g, const PathDecomposition& pd);

// Rooted forest on V(G) as a parent array (-1 at roots). Witnesses a
// tree-depth bound when every edge of G joins an ancestor-descendant pair.
struct EliminationForest {
  std::vector<int> parent;

  int vertex_height() const;
};

std::vector<std::string> elimination_forest_violations(const Graph& g, const EliminationForest& f);

inline constexpr int kDefaultPathwidthCap = 20;
inline constexpr int kDefaultTreewidthCap = 16;
inline constexpr int kDefaultTreedepthCap = 14;

// Exact solvers, feasible at desk scale only; all throw CapExceeded above
// their cap and never fall back to a heuristic.
std::pair<int, PathDecomposition> exact_pathwidth(const Graph& g, int cap = kDefaultPathwidthCap);
std::pair<int, TreeDecomposition> exact_treewidth(const Graph& g, int cap = kDefaultTreewidthCap);
std::pair<int, EliminationForest> exact_treedepth(const Graph& g, int cap = kDefaultTreedepthCap);

// PACE-2017 style serialization: header "s td <#bags> <maxbagsize> <n>",
// bag lines "b <id> <v...>" with 1-indexed vertices, then index-tree edges.
void write_td(std::ostream& out, const TreeDecomposition& td, int graph_n);
TreeDecomposition read_td(std::istream& in);
TreeDecomposition read_td_file(const std::string& path);

// Bag-wise restriction under an old->new vertex relabeling (-1 = dropped).
// The index tree and node ids are preserved.
TreeDecomposition restrict_decomposition(const TreeDecomposition& td, const std::vector<int>& to_new);

}  // namespace tmpk
