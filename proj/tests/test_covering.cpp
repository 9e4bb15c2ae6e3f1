#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "testgen.hpp"
#include "tmpk/covering.hpp"
#include "tmpk/decomposition.hpp"

using namespace tmpk;

namespace {

TreeDecomposition path_bags(std::vector<std::vector<int>> bags) {
  PathDecomposition pd;
  pd.bags = std::move(bags);
  return pd.as_tree();
}

}  // namespace

TEST_CASE("edges of a path pack in pairs") {
  auto p4 = path_graph(4);
  auto d = path_bags({{0, 1}, {1, 2}, {2, 3}});
  auto finder = oracles::make_complete_finder(p4, oracles::FamilyKind::Edge);
  auto result = packing_or_hitting(p4, d, finder, 2);
  CHECK(result.is_packing);
  REQUIRE(result.packing.size() == 2);
  std::vector<std::vector<int>> sorted = result.packing;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<std::vector<int>>{{0, 1}, {2, 3}});
  CHECK(packing_or_hitting_violations(p4, d, finder, 2, result).empty());
}

TEST_CASE("star edges all share the hub") {
  auto star = testgen::star_graph(3);
  auto d = path_bags({{0, 1}, {0, 2}, {0, 3}});
  auto finder = oracles::make_complete_finder(star, oracles::FamilyKind::Edge);
  auto result = packing_or_hitting(star, d, finder, 2);
  CHECK(!result.is_packing);
  CHECK(result.hitting_nodes.size() <= 1);
  CHECK(std::binary_search(result.hitting_set.begin(), result.hitting_set.end(), 0));
  CHECK(packing_or_hitting_violations(star, d, finder, 2, result).empty());
}

TEST_CASE("three-vertex paths of P5 admit no triple packing") {
  auto p5 = path_graph(5);
  auto d = path_bags({{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  auto finder = oracles::make_complete_finder(p5, oracles::FamilyKind::PathThree);
  CHECK(!oracles::packing_exists(p5, oracles::FamilyKind::PathThree, 2));
  auto result = packing_or_hitting(p5, d, finder, 3);
  CHECK(!result.is_packing);
  CHECK(result.hitting_nodes.size() <= 2);
  CHECK(packing_or_hitting_violations(p5, d, finder, 3, result).empty());
}

TEST_CASE("ell = 1 finds a member or certifies emptiness with no bags") {
  auto p3 = path_graph(3);
  auto d = path_bags({{0, 1}, {1, 2}});
  auto edge_finder = oracles::make_complete_finder(p3, oracles::FamilyKind::Edge);
  auto found = packing_or_hitting(p3, d, edge_finder, 1);
  CHECK(found.is_packing);
  CHECK(packing_or_hitting_violations(p3, d, edge_finder, 1, found).empty());

  auto triangle_finder = oracles::make_complete_finder(p3, oracles::FamilyKind::Triangle);
  auto empty = packing_or_hitting(p3, d, triangle_finder, 1);
  CHECK(!empty.is_packing);
  CHECK(empty.hitting_nodes.empty());
  CHECK(empty.hitting_set.empty());
  CHECK(packing_or_hitting_violations(p3, d, triangle_finder, 1, empty).empty());
}

TEST_CASE("hitting validator spots tampering") {
  auto star = testgen::star_graph(3);
  auto d = path_bags({{0, 1}, {0, 2}, {0, 3}});
  auto finder = oracles::make_complete_finder(star, oracles::FamilyKind::Edge);
  auto result = packing_or_hitting(star, d, finder, 2);

  auto missing_member = result;
  missing_member.hitting_set = {1};  // no longer the named bags, and misses edges
  auto bad = packing_or_hitting_violations(star, d, finder, 2, missing_member);
  CHECK(!bad.empty());

  auto p4 = path_graph(4);
  auto d4 = path_bags({{0, 1}, {1, 2}, {2, 3}});
  auto finder4 = oracles::make_complete_finder(p4, oracles::FamilyKind::Edge);
  auto packing = packing_or_hitting(p4, d4, finder4, 2);
  auto overlapped = packing;
  overlapped.packing[1] = overlapped.packing[0];
  auto overlap_bad = packing_or_hitting_violations(p4, d4, finder4, 2, overlapped);
  REQUIRE(!overlap_bad.empty());
  CHECK(overlap_bad.front().find("overlap") != std::string::npos);
}

TEST_CASE("random instances agree with brute force") {
  std::mt19937_64 rng(42);
  const oracles::FamilyKind kinds[] = {oracles::FamilyKind::Edge, oracles::FamilyKind::Triangle,
                                       oracles::FamilyKind::PathThree};
  for (int trial = 0; trial < 60; ++trial) {
    int n = 5 + static_cast<int>(rng() % 6);
    auto g = testgen::random_graph(n, 0.25 + 0.05 * (trial % 4), rng);
    auto d = exact_treewidth(g).second;
    auto kind = kinds[trial % 3];
    int ell = 2 + static_cast<int>(trial % 2);
    auto finder = oracles::make_complete_finder(g, kind);
    auto result = packing_or_hitting(g, d, finder, ell);
    CHECK(packing_or_hitting_violations(g, d, finder, ell, result).empty());
    if (result.is_packing) {
      CHECK(oracles::packing_exists(g, kind, ell));
    } else {
      CHECK(static_cast<int>(result.hitting_nodes.size()) <= ell - 1);
    }
  }
}
