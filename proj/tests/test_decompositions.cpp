#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "testgen.hpp"
#include "tmpk/decomposition.hpp"
#include "tmpk/errors.hpp"

using namespace tmpk;

TEST_CASE("tree decomposition validator") {
  auto p3 = path_graph(3);
  TreeDecomposition ok;
  ok.bags = {{0, 1}, {1, 2}};
  ok.index_tree = Graph::from_edges(2, {{0, 1}});
  CHECK(tree_decomposition_violations(p3, ok).empty());
  CHECK(ok.width() == 1);

  auto k3 = complete_graph(3);
  auto missing = tree_decomposition_violations(k3, ok);
  REQUIRE(!missing.empty());
  CHECK(missing.front().find("(0,2)") != std::string::npos);

  TreeDecomposition single;
  single.bags = {{0, 1, 2}};
  single.index_tree = Graph::from_edges(1, {});
  CHECK(tree_decomposition_violations(k3, single).empty());
  CHECK(single.width() == 2);

  TreeDecomposition split;  // disconnected occupancy of vertex 1
  split.bags = {{0, 1}, {0}, {1, 2}};
  split.index_tree = Graph::from_edges(3, {{0, 1}, {1, 2}});
  auto bad = tree_decomposition_violations(p3, split);
  REQUIRE(!bad.empty());
  CHECK(bad.front().find("disconnected occupancy") != std::string::npos);
}

TEST_CASE("exact pathwidth on fixed graphs") {
  CHECK(exact_pathwidth(path_graph(5)).first == 1);
  CHECK(exact_pathwidth(complete_graph(4)).first == 3);

  auto c4 = testgen::cycle_graph(4);
  int reference = oracles::naive_pathwidth(c4);
  CHECK(reference == 2);
  CHECK(exact_pathwidth(c4).first == reference);

  CHECK(exact_pathwidth(Graph{}).first == -1);
  CHECK_THROWS_AS(exact_pathwidth(complete_graph(4), 3), CapExceeded);
}

TEST_CASE("exact treewidth on fixed graphs") {
  CHECK(exact_treewidth(path_graph(6)).first == 1);
  CHECK(exact_treewidth(testgen::star_graph(4)).first == 1);
  CHECK(exact_treewidth(complete_graph(4)).first == 3);

  auto c4 = testgen::cycle_graph(4);
  int reference = oracles::naive_treewidth(c4);
  CHECK(reference == 2);
  CHECK(exact_treewidth(c4).first == reference);
  CHECK_THROWS_AS(exact_treewidth(complete_graph(4), 3), CapExceeded);
}

TEST_CASE("exact treedepth on fixed graphs") {
  CHECK(exact_treedepth(Graph::from_edges(3, {})).first == 1);
  for (int n = 2; n <= 6; ++n) CHECK(exact_treedepth(complete_graph(n)).first == n);

  auto p4 = path_graph(4);
  int reference = oracles::naive_treedepth(p4);
  CHECK(reference == 3);
  CHECK(exact_treedepth(p4).first == reference);
  CHECK_THROWS_AS(exact_treedepth(complete_graph(4), 3), CapExceeded);
}

TEST_CASE("elimination forest validator") {
  auto p2 = path_graph(2);
  EliminationForest chain{{-1, 0}};
  CHECK(elimination_forest_violations(p2, chain).empty());
  CHECK(chain.vertex_height() == 2);

  auto p3 = path_graph(3);
  EliminationForest rooted_mid{{1, -1, 1}};
  CHECK(elimination_forest_violations(p3, rooted_mid).empty());
  CHECK(rooted_mid.vertex_height() == 2);

  auto k3 = complete_graph(3);
  EliminationForest too_flat{{-1, 0, 0}};
  auto bad = elimination_forest_violations(k3, too_flat);
  REQUIRE(!bad.empty());
  CHECK(bad.front().find("(1,2)") != std::string::npos);
}

TEST_CASE("solver outputs pass their validators") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    auto g = testgen::random_graph(n, 0.35, rng);
    auto [pw, pd] = exact_pathwidth(g);
    CHECK(path_decomposition_violations(g, pd).empty());
    CHECK(pd.width() == pw);
    auto [tw, td] = exact_treewidth(g);
    CHECK(tree_decomposition_violations(g, td).empty());
    CHECK(td.width() == tw);
    auto [depth, forest] = exact_treedepth(g);
    CHECK(elimination_forest_violations(g, forest).empty());
    CHECK(forest.vertex_height() == depth);
  }
}

TEST_CASE("width measures are ordered") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + static_cast<int>(rng() % 7);
    auto g = testgen::random_graph(n, 0.4, rng);
    int tw = exact_treewidth(g).first;
    int pw = exact_pathwidth(g).first;
    int td = exact_treedepth(g).first;
    CHECK(tw <= pw);
    CHECK(pw <= td - 1);
  }
}

TEST_CASE("pathwidth matches the all-orderings reference") {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 1 + static_cast<int>(rng() % 7);
    auto g = testgen::random_graph(n, 0.4, rng);
    CHECK(exact_pathwidth(g).first == oracles::naive_pathwidth(g));
  }
}

TEST_CASE("complete graphs") {
  for (int n = 1; n <= 8; ++n) {
    CHECK(exact_pathwidth(complete_graph(n)).first == n - 1);
    CHECK(exact_treedepth(complete_graph(n)).first == n);
  }
}

TEST_CASE("treewidth bags embed into the graph correctly on fixed cases") {
  // the fill-in construction must reproduce optimal width, not only validity
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 2 + static_cast<int>(rng() % 6);
    auto g = testgen::random_graph(n, 0.45, rng);
    auto [tw, td] = exact_treewidth(g);
    CHECK(td.width() == tw);
    CHECK(tree_decomposition_violations(g, td).empty());
  }
}

TEST_CASE("pace td round trip") {
  auto g = testgen::cycle_graph(5);
  auto [tw, td] = exact_treewidth(g);
  std::ostringstream out;
  write_td(out, td, g.n());
  std::istringstream in(out.str());
  auto back = read_td(in);
  CHECK(back.bags == td.bags);
  CHECK(back.index_tree.edges() == td.index_tree.edges());
  CHECK(tree_decomposition_violations(g, back).empty());

  auto [pw, pd] = exact_pathwidth(g);
  std::ostringstream pout;
  write_td(pout, pd.as_tree(), g.n());
  std::istringstream pin(pout.str());
  CHECK(tree_decomposition_violations(g, read_td(pin)).empty());

  std::istringstream bad_header("s xx 1 1 1\nb 1 1\n");
  CHECK_THROWS_AS(read_td(bad_header), ParseError);
  std::istringstream bad_bag("s td 1 1 2\nb 5 1\n");
  CHECK_THROWS_AS(read_td(bad_bag), ParseError);
  std::istringstream comments("c pace comment\ns td 1 2 2\nb 1 1 2\n");
  CHECK(read_td(comments).bags == std::vector<std::vector<int>>{{0, 1}});
}

TEST_CASE("restriction keeps node ids and validity") {
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 4 + static_cast<int>(rng() % 5);
    auto g = testgen::random_connected_graph(n, 0.4, rng);
    auto td = exact_treewidth(g).second;
    std::vector<int> keep;
    for (int v = 0; v < n; ++v)
      if (rng() % 2) keep.push_back(v);
    if (keep.empty()) keep.push_back(0);
    auto ind = g.induced(keep);
    auto restricted = restrict_decomposition(td, ind.to_new);
    CHECK(restricted.node_count() == td.node_count());
    CHECK(tree_decomposition_violations(ind.graph, restricted).empty());
  }
}
