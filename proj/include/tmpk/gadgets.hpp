#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tmpk/graph.hpp"
#include "tmpk/minors.hpp"

namespace tmpk {

struct GadgetGraph {
  Graph graph;
  std::vector<int> spine;  // the designated path, in path order
};

// Recursive lower-bound construction: a path on c+1 vertices at h = 1; for
// h >= 2 a spine path with c+1 edges where every spine edge carries 2c
// disjoint copies of the (h-1)-gadget joined completely to its endpoints.
GadgetGraph lower_bound_graph(int h, int c);
unsigned long long lower_bound_graph_size(int h, int c);

struct GadgetCheck {
  std::string name;
  std::string status;  // ok | failed | skipped
  std::string detail;
};

struct GadgetReport {
  int h = 0;
  int c = 0;
  int spine_edge_count = 0;        // the "length c+1" reading used for h >= 2
  int base_path_vertex_count = 0;  // the "path on c+1 vertices" reading at h = 1
  std::vector<GadgetCheck> checks;

  bool all_ok_or_skipped() const;
};

struct GadgetOptions {
  MinorSearchOptions search;
  int partition_enum_cap = 9;  // Bell-number growth bounds the width-c sweep
  std::uint64_t clique_budget = 50'000'000;
};

// Verifies the construction's claims at oracle scale: T_{h,3}-minor-freeness
// and the 2h-clique property of every width-<=c quotient. Checks that would
// exceed a cap or budget degrade to "skipped" with a notice, never silently.
GadgetReport verify_gadget_claims(const Graph& g, int h, int c, const GadgetOptions& opts = {});

// Random connected graph resampled until the T_{h,d} oracle finds no minor;
// deterministic for a fixed seed. Throws BudgetExceeded when max_attempts
// resamples never pass the screen.
Graph random_screened_instance(int h, int d, int n, double edge_probability, std::uint64_t seed,
                               int max_attempts = 20000, const MinorSearchOptions& search = {});

// Exact maximum clique (branch and bound with a greedy coloring bound).
int max_clique(const Graph& g, std::uint64_t budget = 50'000'000);

}  // namespace tmpk
