#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "testgen.hpp"
#include "tmpk/errors.hpp"
#include "tmpk/minors.hpp"

using namespace tmpk;

namespace {

std::vector<int> all_vertices(const Graph& g) {
  std::vector<int> all(g.n());
  std::iota(all.begin(), all.end(), 0);
  return all;
}

}  // namespace

TEST_CASE("model search on fixed instances") {
  auto p3_pattern = root_tree_at(path_graph(3), 0);
  auto host = path_graph(3);
  auto model = find_rooted_tree_model(host, p3_pattern, {}, all_vertices(host));
  REQUIRE(model.has_value());
  CHECK(model_violations(host, *model).empty());
  for (const auto& set : model->branch_sets) CHECK(set.size() == 1);

  auto star = complete_dary_tree(1, 3);
  for (int n = 1; n <= 8; ++n) {
    auto path = path_graph(n);
    CHECK(!find_rooted_tree_model(path, star, {}, all_vertices(path)).has_value());
  }

  auto k4 = complete_graph(4);
  auto star_model = find_rooted_tree_model(k4, star, {}, all_vertices(k4));
  REQUIRE(star_model.has_value());
  CHECK(model_violations(k4, *star_model).empty());
}

TEST_CASE("model validator catches tampering") {
  auto k4 = complete_graph(4);
  auto star = complete_dary_tree(1, 3);
  auto model = *find_rooted_tree_model(k4, star, {}, all_vertices(k4));
  CHECK(model_violations(k4, model).empty());

  auto overlapping = model;
  overlapping.branch_sets[1] = overlapping.branch_sets[2];
  auto bad = model_violations(k4, overlapping);
  REQUIRE(!bad.empty());
  CHECK(bad.front().find("share vertex") != std::string::npos);

  // a missing witness names the failing pattern edge
  auto p4 = path_graph(4);
  MinorModel witnessless;
  witnessless.pattern = root_tree_at(path_graph(2), 0);
  witnessless.branch_sets = {{0}, {3}};
  auto missing = model_violations(p4, witnessless);
  REQUIRE(!missing.empty());
  CHECK(missing.front().find("(0,1)") != std::string::npos);
}

TEST_CASE("root constraint") {
  auto host = path_graph(3);
  auto p2 = root_tree_at(path_graph(2), 0);
  RootConstraint touch_end;
  touch_end.required_touch = std::vector<int>{2};
  auto model = find_rooted_tree_model(host, p2, touch_end, all_vertices(host));
  REQUIRE(model.has_value());
  CHECK(std::binary_search(model->branch_sets[0].begin(), model->branch_sets[0].end(), 2));

  RootConstraint unreachable;
  unreachable.required_touch = std::vector<int>{};
  CHECK(!find_rooted_tree_model(host, p2, unreachable, all_vertices(host)).has_value());
}

TEST_CASE("search is confined to the available region") {
  auto host = Graph::from_edges(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {2, 3}});
  auto p3 = root_tree_at(path_graph(3), 0);
  auto inside = find_rooted_tree_model(host, p3, {}, {0, 1, 2});
  REQUIRE(inside.has_value());
  for (const auto& set : inside->branch_sets)
    for (int v : set) CHECK(v <= 2);
  CHECK(!find_rooted_tree_model(host, p3, {}, {0, 1, 3}).has_value());
}

TEST_CASE("agreement with the partial-map reference search") {
  std::mt19937_64 rng(606);
  std::vector<RootedTree> patterns;
  patterns.push_back(root_tree_at(path_graph(2), 0));
  patterns.push_back(root_tree_at(path_graph(3), 1));
  patterns.push_back(complete_dary_tree(1, 3));
  patterns.push_back(root_tree_at(path_graph(4), 0));
  patterns.push_back(root_tree_at(Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 3}, {1, 4}}), 0));

  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    int n = 4 + static_cast<int>(rng() % 4);  // 4..7
    auto g = testgen::random_graph(n, 0.25 + 0.05 * (trial % 4), rng);
    const auto& pattern = patterns[trial % patterns.size()];
    std::optional<std::vector<int>> touch;
    if (trial % 3 == 0) touch = std::vector<int>{0};
    RootConstraint constraint;
    constraint.required_touch = touch;
    auto fast = find_rooted_tree_model(g, pattern, constraint, all_vertices(g));
    bool reference = oracles::naive_has_tree_minor(g, pattern, touch);
    CHECK(fast.has_value() == reference);
    if (fast) CHECK(model_violations(g, *fast).empty());
    ++checked;
  }
  CHECK(checked == 40);

  // a couple of n = 8 instances against the reference
  for (int trial = 0; trial < 3; ++trial) {
    auto g = testgen::random_graph(8, 0.25, rng);
    const auto& pattern = patterns[2];
    auto fast = find_rooted_tree_model(g, pattern, {}, all_vertices(g));
    CHECK(fast.has_value() == oracles::naive_has_tree_minor(g, pattern, std::nullopt));
  }
}

TEST_CASE("restricting a model to a pattern subtree keeps it valid") {
  std::mt19937_64 rng(707);
  auto pattern = complete_dary_tree(1, 3);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = testgen::random_connected_graph(7, 0.5, rng);
    auto model = find_rooted_tree_model(g, pattern, {}, all_vertices(g));
    if (!model) continue;
    // drop the last leaf: root with two children
    MinorModel smaller;
    smaller.pattern = complete_dary_tree(1, 2);
    smaller.branch_sets = {model->branch_sets[0], model->branch_sets[1], model->branch_sets[2]};
    CHECK(model_violations(g, smaller).empty());
  }
}

TEST_CASE("too-small hosts are rejected quickly") {
  auto t22 = complete_dary_tree(2, 2);
  std::mt19937_64 rng(808);
  for (int n = 1; n < t22.vertex_count(); ++n) {
    auto g = testgen::random_graph(n, 0.6, rng);
    CHECK(!find_rooted_tree_model(g, t22, {}, all_vertices(g)).has_value());
  }
}

TEST_CASE("budget exhaustion is an error, not a verdict") {
  auto g = complete_graph(8);
  auto pattern = complete_dary_tree(2, 2);
  MinorSearchOptions opts;
  opts.max_steps = 3;
  CHECK_THROWS_AS(find_rooted_tree_model(g, pattern, {}, all_vertices(g), opts), BudgetExceeded);
}

TEST_CASE("longest path fixed instances") {
  CHECK(longest_path(path_graph(5)).size() == 5);

  auto k1_k2 = testgen::disjoint_union({complete_graph(1), complete_graph(2)});
  CHECK(longest_path(k1_k2).size() == 2);

  auto c5 = testgen::cycle_graph(5);
  CHECK(oracles::naive_longest_path(c5) == 5);
  auto found = longest_path(c5);
  CHECK(found.size() == 5);
  for (size_t i = 1; i < found.size(); ++i) CHECK(c5.has_edge(found[i - 1], found[i]));

  CHECK_THROWS_AS(longest_path(complete_graph(5), 4), CapExceeded);
}

TEST_CASE("longest path agrees with the enumeration oracle") {
  std::mt19937_64 rng(909);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    auto g = testgen::random_graph(n, 0.35, rng);
    CHECK(static_cast<int>(longest_path(g).size()) == oracles::naive_longest_path(g));
  }
}

TEST_CASE("longest path is monotone under edge addition") {
  std::mt19937_64 rng(1010);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 4 + static_cast<int>(rng() % 5);
    auto g = testgen::random_graph(n, 0.3, rng);
    size_t before = longest_path(g).size();
    // add one absent edge if any
    std::vector<Edge> edges = g.edges();
    bool added = false;
    for (int u = 0; u < n && !added; ++u)
      for (int v = u + 1; v < n && !added; ++v)
        if (!g.has_edge(u, v)) {
          edges.emplace_back(u, v);
          added = true;
        }
    if (!added) continue;
    CHECK(longest_path(Graph::from_edges(n, edges)).size() >= before);
  }
}

TEST_CASE("find_path_on_k is complete") {
  std::mt19937_64 rng(1111);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 3 + static_cast<int>(rng() % 6);
    auto g = testgen::random_graph(n, 0.4, rng);
    int longest = oracles::naive_longest_path(g);
    for (int k = 1; k <= n; ++k) {
      auto path = find_path_on_k(g, all_vertices(g), k);
      CHECK(path.has_value() == (k <= longest));
      if (path) {
        CHECK(static_cast<int>(path->size()) == k);
        for (size_t i = 1; i < path->size(); ++i) CHECK(g.has_edge((*path)[i - 1], (*path)[i]));
      }
    }
  }
}
