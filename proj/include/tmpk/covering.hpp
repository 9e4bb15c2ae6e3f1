#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tmpk/decomposition.hpp"
#include "tmpk/graph.hpp"

namespace tmpk {

// Query capability for a family of connected subgraphs: given an available
// vertex set (sorted), return a member contained in it or nullopt. The
// finder must be complete — nullopt only when no member exists within the
// region. Heuristic finders break the packing/hitting dichotomy.
using MemberFinder = std::function<std::optional<std::vector<int>>(const std::vector<int>&)>;

struct PackingOrHitting {
  bool is_packing = false;
  std::vector<std::vector<int>> packing;  // ell disjoint members
  std::vector<int> hitting_set;           // union of the named bags
  std::vector<int> hitting_nodes;         // <= ell-1 decomposition node ids
};

// Constructive packing-versus-hitting: scan decomposition nodes deepest
// first (ties by node id); query the finder on the subtree bag union minus
// the bags chosen so far; record the first success and add that node's bag.
// Stops with a packing after ell successes or with a hitting set when a full
// sweep finds nothing. The decomposition is rooted at node 0.
PackingOrHitting packing_or_hitting(const Graph& g, const TreeDecomposition& d,
                                    const MemberFinder& finder, int ell);

std::vector<std::string> packing_or_hitting_violations(const Graph& g, const TreeDecomposition& d,
                                                       const MemberFinder& finder, int ell,
                                                       const PackingOrHitting& result);

}  // namespace tmpk
