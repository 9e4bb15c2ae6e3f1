#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tmpk/covering.hpp"
#include "tmpk/decomposition.hpp"
#include "tmpk/graph.hpp"
#include "tmpk/minors.hpp"

namespace tmpk {

struct PathPartitionResult {
  Partition partition;
  Graph quotient_graph;
  EliminationForest quotient_forest;              // over part indices
  std::vector<std::vector<int>> part_provenance;  // <= 2 node ids of D per part
};

struct PathOutcome {
  std::optional<PathPartitionResult> partition;
  std::optional<std::vector<int>> long_path;  // simple path on >= 2h+1 vertices

  bool is_partition() const { return partition.has_value(); }
};

// Tree-depth decomposition for graphs with no path on 2h+1 vertices: a
// partition whose quotient carries an elimination forest of vertex-height
// <= h with every part inside at most two bags of d_in, or a long-path
// certificate. h = 1 turns K_1/K_2 components into parts; h >= 2 packs
// three disjoint (2h-1)-vertex paths into a certificate or recurses on
// G - S for a two-bag hitting set S.
PathOutcome decompose_excluded_path(const Graph& g, const TreeDecomposition& d_in, int h,
                                    int longest_path_cap = kDefaultLongestPathCap);

// The certificate builder: three disjoint paths on the same odd vertex
// count k, connected host — returns a simple path on >= k+2 vertices by
// routing a connector between two of the paths and taking their far ends.
std::vector<int> three_paths_to_long_path(const Graph& g, const std::vector<int>& p1,
                                          const std::vector<int>& p2, const std::vector<int>& p3);

std::vector<std::string> path_partition_violations(const Graph& g, const TreeDecomposition& d_in,
                                                   const PathPartitionResult& res, int h);
std::vector<std::string> long_path_violations(const Graph& g, const std::vector<int>& path, int h);

}  // namespace tmpk
