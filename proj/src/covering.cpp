#include "tmpk/covering.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "tmpk/errors.hpp"

namespace tmpk {

namespace {

std::vector<int> node_depths(const Graph& index_tree) {
  std::vector<int> depth(index_tree.n(), -1);
  if (index_tree.n() == 0) return depth;
  depth[0] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int y : index_tree.neighbors(x))
      if (depth[y] < 0) {
        depth[y] = depth[x] + 1;
        queue.push_back(y);
      }
  }
  return depth;
}

// union of bags over the subtree rooted at each node, as sorted vectors
std::vector<std::vector<int>> subtree_regions(const TreeDecomposition& d,
                                              const std::vector<int>& depth) {
  int k = d.node_count();
  std::vector<int> order(k);
  for (int x = 0; x < k; ++x) order[x] = x;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return depth[a] > depth[b]; });
  std::vector<std::vector<int>> region(k);
  for (int x : order) {
    region[x] = d.bags[x];
    for (int y : d.index_tree.neighbors(x))
      if (depth[y] == depth[x] + 1) {
        std::vector<int> merged;
        std::set_union(region[x].begin(), region[x].end(), region[y].begin(), region[y].end(),
                       std::back_inserter(merged));
        region[x] = std::move(merged);
      }
  }
  return region;
}

std::vector<int> set_minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

PackingOrHitting packing_or_hitting(const Graph& g, const TreeDecomposition& d,
                                    const MemberFinder& finder, int ell) {
  if (ell < 1) throw std::invalid_argument("packing_or_hitting: ell must be positive");
  auto bad = tree_decomposition_violations(g, d);
  if (!bad.empty())
    throw std::invalid_argument("packing_or_hitting: invalid decomposition: " + bad.front());

  auto depth = node_depths(d.index_tree);
  auto region = subtree_regions(d, depth);
  int k = d.node_count();
  std::vector<int> scan(k);
  for (int x = 0; x < k; ++x) scan[x] = x;
  std::sort(scan.begin(), scan.end(), [&](int a, int b) {
    if (depth[a] != depth[b]) return depth[a] > depth[b];
    return a < b;
  });

  PackingOrHitting result;
  std::vector<int> chosen;  // sorted union of chosen bags
  while (true) {
    bool found = false;
    for (int x : scan) {
      auto avail = set_minus(region[x], chosen);
      auto member = finder(avail);
      if (!member) continue;
      std::sort(member->begin(), member->end());
      result.packing.push_back(*member);
      result.hitting_nodes.push_back(x);
      std::vector<int> merged;
      std::set_union(chosen.begin(), chosen.end(), d.bags[x].begin(), d.bags[x].end(),
                     std::back_inserter(merged));
      chosen = std::move(merged);
      found = true;
      break;
    }
    if (static_cast<int>(result.packing.size()) == ell) {
      result.is_packing = true;
      result.hitting_nodes.clear();
      return result;
    }
    if (!found) {
      result.is_packing = false;
      result.packing.clear();
      result.hitting_set = std::move(chosen);
      return result;
    }
  }
}

std::vector<std::string> packing_or_hitting_violations(const Graph& g, const TreeDecomposition& d,
                                                       const MemberFinder& finder, int ell,
                                                       const PackingOrHitting& result) {
  std::vector<std::string> out;
  if (result.is_packing) {
    if (static_cast<int>(result.packing.size()) != ell)
      out.push_back("packing has " + std::to_string(result.packing.size()) + " members, expected " +
                    std::to_string(ell));
    std::vector<char> used(g.n(), 0);
    for (size_t i = 0; i < result.packing.size(); ++i) {
      for (int v : result.packing[i]) {
        if (v < 0 || v >= g.n()) {
          out.push_back("packing member " + std::to_string(i) + " has out-of-range vertex");
          return out;
        }
        if (used[v])
          out.push_back("packing members overlap at vertex " + std::to_string(v));
        used[v] = 1;
      }
      // membership: the finder restricted to the member must succeed
      auto again = finder(result.packing[i]);
      if (!again)
        out.push_back("packing member " + std::to_string(i) + " is not a family member");
    }
    return out;
  }
  if (static_cast<int>(result.hitting_nodes.size()) > ell - 1)
    out.push_back("hitting uses " + std::to_string(result.hitting_nodes.size()) +
                  " bags, allowed at most " + std::to_string(ell - 1));
  std::vector<int> expected;
  for (int x : result.hitting_nodes) {
    if (x < 0 || x >= d.node_count()) {
      out.push_back("hitting names node " + std::to_string(x) + " outside the decomposition");
      return out;
    }
    std::vector<int> merged;
    std::set_union(expected.begin(), expected.end(), d.bags[x].begin(), d.bags[x].end(),
                   std::back_inserter(merged));
    expected = std::move(merged);
  }
  if (expected != result.hitting_set)
    out.push_back("hitting set is not the union of the named bags");
  std::vector<int> all(g.n());
  for (int v = 0; v < g.n(); ++v) all[v] = v;
  auto rest = set_minus(all, result.hitting_set);
  if (auto member = finder(rest)) {
    std::string witness;
    for (int v : *member) witness += " " + std::to_string(v);
    out.push_back("hitting set misses member:" + witness);
  }
  return out;
}

}  // namespace tmpk
