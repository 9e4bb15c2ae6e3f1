#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tmpk/covering.hpp"
#include "tmpk/decomposition.hpp"
#include "tmpk/graph.hpp"
#include "tmpk/minors.hpp"

namespace tmpk {

struct TreePartitionResult {
  Partition partition;
  Graph quotient_graph;
  PathDecomposition quotient_decomposition;       // bags hold part indices
  std::vector<std::vector<int>> part_provenance;  // node ids of D per part
  int root_part = -1;
  int root_vertex = -1;
};

// Exactly one of the alternatives is set and validated against the input
// graph the outcome was produced for.
struct DecomposeOutcome {
  std::optional<TreePartitionResult> partition;
  std::optional<MinorModel> model;

  bool is_partition() const { return partition.has_value(); }
};

struct ExcludedTreeOptions {
  MinorSearchOptions search;
};

// h = 1 base case: the BFS layers from r become the parts when every layer
// beyond the root has at most d-1 vertices, else a T_{1,d} model built from
// the first oversized layer. Part provenance is attached by the driver.
DecomposeOutcome layering_base_case(const Graph& g, int r, int d);

// The certifying dichotomy for connected g: a partition with {r} as a part
// whose quotient has a path-decomposition of width <= 2h-1 (first bag
// containing {r}), every part inside at most d+h-2 bags of d_in — or a
// T_{h,d} model in g.
DecomposeOutcome decompose_excluded_tree(const Graph& g, const TreeDecomposition& d_in, int r,
                                         int h, int d, const ExcludedTreeOptions& opts = {});

// Wrapper accepting disconnected graphs; r defaults to vertex 0 and the
// component of r leads the concatenated quotient decomposition.
DecomposeOutcome decompose_excluded_tree_any(const Graph& g, const TreeDecomposition& d_in,
                                             std::optional<int> r, int h, int d,
                                             const ExcludedTreeOptions& opts = {});

// From a complete (d+1)-ary model whose vertices all lie in branch sets,
// build a complete d-ary model of the same depth whose root branch set is
// the merged ancestor chain of the first branch set meeting `touch`.
MinorModel lift_rooted_model(const Graph& host, const MinorModel& model,
                             const std::vector<int>& touch);

struct HittingTrim {
  std::vector<int> x;                       // minimal hitting set, ascending
  std::vector<std::vector<int>> witnesses;  // member through v, per v in x
};
// Precondition: finder finds nothing in V(g) - r - x0.
HittingTrim trim_to_minimal_hitting_set(const Graph& g, int r, const std::vector<int>& x0,
                                        const MemberFinder& finder);

// A component recursion's partition lifted to the caller's vertex ids.
struct SubResult {
  std::vector<std::vector<int>> parts;
  std::vector<std::vector<int>> provenance;
  std::vector<std::vector<int>> bags;  // local part indices, path order
};

// z-side recursion output for assemble: a partition of the contracted graph
// G' whose root part is {r'}, plus the G'->g vertex mapping (-1 at r').
struct ZSide {
  TreePartitionResult result;
  std::vector<int> to_old;
};

// One recursion step's bag algebra: P = {{r}} u {X} u P_1 u ... u P_p u
// (P' minus the r'-part); every bag from a P_i gets the r- and X-parts
// added, and the r'-part is replaced by X throughout P''s decomposition.
// When every neighbor of r sits inside X (no subs), a bag {{r}, X} is
// prepended so the first bag keeps the root part. Validates the assembled
// result and throws InternalError on any failure.
TreePartitionResult assemble_tree_partition(const Graph& g, const TreeDecomposition& d_in, int r,
                                            const std::vector<int>& x,
                                            const std::vector<int>& x_nodes,
                                            const std::vector<SubResult>& subs,
                                            const std::optional<ZSide>& zside, int h, int d);

std::vector<std::string> tree_partition_violations(const Graph& g, const TreeDecomposition& d_in,
                                                   const TreePartitionResult& res, int h, int d);

struct TheoremResult {
  DecomposeOutcome outcome;  // model side already restricted to t
  TreeParams params;
  int part_bound;  // (d+h-2) * (width(D)+1)
  TreeDecomposition used_decomposition;
};

// Theorem-level wrapper for an arbitrary tree t (at least 3 vertices):
// derives (t,h,d), takes or computes a path-decomposition of g, runs the
// T_{h,d} dichotomy, and on the model side restricts to a t-model via a
// greedy center-rooted embedding of t into T_{h,d}.
TheoremResult decompose_excluded_tree_theorem(const Graph& g, const Graph& t,
                                              std::optional<TreeDecomposition> d_in = {},
                                              std::optional<int> r = {},
                                              const ExcludedTreeOptions& opts = {},
                                              int pathwidth_cap = kDefaultPathwidthCap);

}  // namespace tmpk
