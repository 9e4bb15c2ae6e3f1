#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <sstream>

#include "doctest.h"
#include "testgen.hpp"
#include "tmpk/errors.hpp"
#include "tmpk/graph.hpp"

using namespace tmpk;

TEST_CASE("complete d-ary trees") {
  auto single = complete_dary_tree(0, 3);
  CHECK(single.vertex_count() == 1);

  auto star = complete_dary_tree(1, 3);
  CHECK(star.vertex_count() == 4);
  CHECK(star.tree.degree(star.root) == 3);

  auto t22 = complete_dary_tree(2, 2);
  CHECK(t22.vertex_count() == 7);
  CHECK(t22.tree.degree(t22.root) == 2);
  CHECK(t22.height() == 2);
}

TEST_CASE("tree params") {
  auto p5 = tree_params(path_graph(5));
  CHECK(p5.t == 5);
  CHECK(p5.h == 2);
  CHECK(p5.d == 2);
  CHECK(p5.center == 2);

  auto star = tree_params(testgen::star_graph(3));
  CHECK(star.t == 4);
  CHECK(star.h == 1);
  CHECK(star.d == 3);
  CHECK(star.center == 0);

  auto t23 = tree_params(complete_dary_tree(2, 3).tree);
  CHECK(t23.t == 13);
  CHECK(t23.h == 2);
  CHECK(t23.d == 3);
  CHECK(t23.center == 0);

  CHECK_THROWS_AS(tree_params(complete_graph(3)), std::invalid_argument);
}

TEST_CASE("tree params of complete trees match the closed form") {
  for (int h = 1; h <= 3; ++h)
    for (int d = 2; d <= 3; ++d) {
      auto tree = complete_dary_tree(h, d);
      auto params = tree_params(tree.tree);
      long long expect_n = 0, power = 1;
      for (int i = 0; i <= h; ++i) {
        expect_n += power;
        power *= d;
      }
      CHECK(params.t == expect_n);
      CHECK(params.h == h);
      CHECK(params.d == d);
      CHECK(params.center == tree.root);
    }
}

TEST_CASE("strong product") {
  auto b = Graph::from_edges(4, {{0, 1}, {1, 2}, {1, 3}});
  auto identity = strong_product(complete_graph(1), b);
  CHECK(identity.n() == b.n());
  CHECK(identity.edges() == b.edges());

  auto k4 = strong_product(path_graph(2), complete_graph(2));
  CHECK(k4.n() == 4);
  CHECK(k4.m() == 6);

  // recount P3 x K2 by the three adjacency clauses
  auto p3 = path_graph(3);
  auto k2 = complete_graph(2);
  auto product = strong_product(p3, k2);
  int expect = 0;
  for (int v = 0; v < 3; ++v)
    for (int x = 0; x < 2; ++x)
      for (int w = v; w < 3; ++w)
        for (int y = 0; y < 2; ++y) {
          if (v == w && x >= y) continue;
          bool adj = (v == w && k2.has_edge(x, y)) || (x == y && p3.has_edge(v, w)) ||
                     (p3.has_edge(v, w) && k2.has_edge(x, y));
          if (adj) ++expect;
        }
  CHECK(expect == 11);
  CHECK(product.n() == 6);
  CHECK(product.m() == expect);
}

TEST_CASE("product vertex counts multiply and cliques stay cliques") {
  std::mt19937_64 rng(7);
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      auto product = strong_product(complete_graph(m), complete_graph(n));
      CHECK(product.n() == m * n);
      CHECK(product.m() == m * n * (m * n - 1) / 2);
    }
  for (int trial = 0; trial < 10; ++trial) {
    auto a = testgen::random_graph(4, 0.4, rng);
    auto b = testgen::random_graph(3, 0.5, rng);
    CHECK(strong_product(a, b).n() == a.n() * b.n());
  }
}

TEST_CASE("quotient") {
  auto p4 = path_graph(4);
  auto halves = quotient(p4, Partition::from_parts(4, {{0, 1}, {2, 3}}));
  CHECK(halves.n() == 2);
  CHECK(halves.edges() == std::vector<Edge>{{0, 1}});

  auto paired = quotient(complete_graph(4), Partition::from_parts(4, {{0, 1}, {2, 3}}));
  CHECK(paired.edges() == std::vector<Edge>{{0, 1}});

  CHECK_THROWS_AS(Partition::from_parts(4, {{0, 1}, {1, 2, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(Partition::from_parts(4, {{0, 1}, {}, {2, 3}}), std::invalid_argument);
}

TEST_CASE("quotient by singletons is the identity") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    auto g = testgen::random_graph(n, 0.4, rng);
    std::vector<std::vector<int>> parts;
    for (int v = 0; v < n; ++v) parts.push_back({v});
    auto q = quotient(g, Partition::from_parts(n, parts));
    CHECK(q.n() == g.n());
    CHECK(q.edges() == g.edges());
  }
}

TEST_CASE("contract connected set") {
  auto p3 = contract_connected_set(path_graph(3), {1});
  CHECK(p3.graph.n() == 3);
  CHECK(p3.graph.edges() == path_graph(3).edges());

  auto tri = contract_connected_set(complete_graph(3), {0, 1});
  CHECK(tri.graph.n() == 2);
  CHECK(tri.graph.edges() == std::vector<Edge>{{0, 1}});

  auto mid = contract_connected_set(path_graph(5), {1, 2, 3});
  CHECK(mid.graph.n() == 3);
  CHECK(mid.graph.edges() == path_graph(3).edges());

  CHECK_THROWS_AS(contract_connected_set(path_graph(5), {}), std::invalid_argument);
  CHECK_THROWS_AS(contract_connected_set(path_graph(5), {0, 4}), std::invalid_argument);
}

TEST_CASE("contraction shrinks by |S|-1 and keeps connectivity") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 4 + static_cast<int>(rng() % 5);
    auto g = testgen::random_connected_graph(n, 0.4, rng);
    // grow a random connected set from a seed
    std::vector<int> set{static_cast<int>(rng() % n)};
    for (int grow = 0; grow < 2; ++grow) {
      std::vector<int> frontier;
      for (int v : set)
        for (int w : g.neighbors(v))
          if (std::find(set.begin(), set.end(), w) == set.end()) frontier.push_back(w);
      if (frontier.empty()) break;
      set.push_back(frontier[rng() % frontier.size()]);
    }
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    auto contracted = contract_connected_set(g, set);
    CHECK(contracted.graph.n() == g.n() - static_cast<int>(set.size()) + 1);
    CHECK(contracted.graph.is_connected());
  }
}

TEST_CASE("bfs layers") {
  auto p5_layers = bfs_layers(path_graph(5), 0);
  REQUIRE(p5_layers.size() == 5);
  for (const auto& layer : p5_layers) CHECK(layer.size() == 1);

  auto k4_layers = bfs_layers(complete_graph(4), 2);
  REQUIRE(k4_layers.size() == 2);
  CHECK(k4_layers[0] == std::vector<int>{2});
  CHECK(k4_layers[1] == std::vector<int>{0, 1, 3});

  auto star_layers = bfs_layers(testgen::star_graph(3), 0);
  REQUIRE(star_layers.size() == 2);
  CHECK(star_layers[0] == std::vector<int>{0});
  CHECK(star_layers[1].size() == 3);
}

TEST_CASE("bfs layers separate edges by at most one level") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 3 + static_cast<int>(rng() % 8);
    auto g = testgen::random_connected_graph(n, 0.35, rng);
    auto layers = bfs_layers(g, 0);
    std::vector<int> level(n, -1);
    for (size_t i = 0; i < layers.size(); ++i)
      for (int v : layers[i]) level[v] = static_cast<int>(i);
    for (auto [u, v] : g.edges()) CHECK(std::abs(level[u] - level[v]) <= 1);
  }
}

TEST_CASE("graph text format") {
  std::istringstream in("# comment\n4 3\n0 1\n# inner comment\n1 2\n2 3\n");
  auto g = read_graph(in);
  CHECK(g.n() == 4);
  CHECK(g.edges() == path_graph(4).edges());

  std::ostringstream out;
  write_graph(out, g);
  std::istringstream back(out.str());
  CHECK(read_graph(back).edges() == g.edges());

  std::istringstream loop("2 1\n1 1\n");
  CHECK_THROWS_AS(read_graph(loop), ParseError);
  std::istringstream dup("2 2\n0 1\n1 0\n");
  CHECK_THROWS_AS(read_graph(dup), ParseError);
  std::istringstream short_list("3 2\n0 1\n");
  CHECK_THROWS_AS(read_graph(short_list), ParseError);
  std::istringstream bad_header("x y\n");
  CHECK_THROWS_AS(read_graph(bad_header), ParseError);
  std::istringstream range("2 1\n0 5\n");
  CHECK_THROWS_AS(read_graph(range), ParseError);
}

TEST_CASE("induced subgraph mapping") {
  auto g = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  auto ind = g.induced({1, 2, 3});
  CHECK(ind.graph.n() == 3);
  CHECK(ind.graph.edges() == path_graph(3).edges());
  CHECK(ind.to_old == std::vector<int>{1, 2, 3});
  CHECK(ind.to_new[0] == -1);
  CHECK(ind.to_new[2] == 1);
}
