#pragma once

// Deterministic instance generation shared by the unit and acceptance suites.

#include <random>
#include <stdexcept>
#include <vector>

#include "tmpk/graph.hpp"

namespace testgen {

inline double unit_draw(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

inline tmpk::Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::vector<tmpk::Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (unit_draw(rng) < p) edges.emplace_back(u, v);
  return tmpk::Graph::from_edges(n, std::move(edges));
}

inline tmpk::Graph random_connected_graph(int n, double p, std::mt19937_64& rng) {
  for (int tries = 0; tries < 200000; ++tries) {
    auto g = random_graph(n, p, rng);
    if (g.is_connected()) return g;
  }
  throw std::runtime_error("random_connected_graph: no connected sample");
}

// disjoint union placing each block on fresh vertex ids
inline tmpk::Graph disjoint_union(const std::vector<tmpk::Graph>& blocks) {
  std::vector<tmpk::Edge> edges;
  int base = 0;
  for (const auto& block : blocks) {
    for (auto [u, v] : block.edges()) edges.emplace_back(base + u, base + v);
    base += block.n();
  }
  return tmpk::Graph::from_edges(base, std::move(edges));
}

inline tmpk::Graph star_graph(int leaves) {
  std::vector<tmpk::Edge> edges;
  for (int v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return tmpk::Graph::from_edges(leaves + 1, std::move(edges));
}

inline tmpk::Graph cycle_graph(int n) {
  std::vector<tmpk::Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  if (n >= 3) edges.emplace_back(0, n - 1);
  return tmpk::Graph::from_edges(n, std::move(edges));
}

}  // namespace testgen
