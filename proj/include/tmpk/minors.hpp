#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tmpk/graph.hpp"

namespace tmpk {

// Optional requirement that the root branch set intersect a vertex set.
struct RootConstraint {
  std::optional<std::vector<int>> required_touch;
};

struct MinorSearchOptions {
  std::uint64_t max_steps = 0;  // 0 = default_search_steps()
  int arena_cap = 64;
};

// Default step budget; TMPK_MAX_STEPS overrides.
std::uint64_t default_search_steps();

// Exhaustive backtracking search for a model of the rooted tree `pattern`
// inside host[available]. Returns a model (minimal under greedy branch-set
// shrinking) or nullopt only after the search space is exhausted. Running
// out of budget throws BudgetExceeded; |available| beyond the arena cap
// throws CapExceeded.
std::optional<MinorModel> find_rooted_tree_model(const Graph& host, const RootedTree& pattern,
                                                 const RootConstraint& constraint,
                                                 const std::vector<int>& available,
                                                 const MinorSearchOptions& opts = {});

std::vector<std::string> model_violations(const Graph& host, const MinorModel& model);

inline constexpr int kDefaultLongestPathCap = 18;

// Exact longest path by subset DP; throws CapExceeded when the graph (or
// region) is larger than cap.
std::vector<int> longest_path(const Graph& g, int cap = kDefaultLongestPathCap);
std::vector<int> longest_path_within(const Graph& g, const std::vector<int>& available,
                                     int cap = kDefaultLongestPathCap);

// Complete search for a path on exactly k vertices within g[available].
std::optional<std::vector<int>> find_path_on_k(const Graph& g, const std::vector<int>& available,
                                               int k, int cap = kDefaultLongestPathCap);

}  // namespace tmpk
