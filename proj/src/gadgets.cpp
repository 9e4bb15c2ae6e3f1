#include "tmpk/gadgets.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "tmpk/errors.hpp"

namespace tmpk {

unsigned long long lower_bound_graph_size(int h, int c) {
  if (h < 1 || c < 1) throw std::invalid_argument("lower_bound_graph: h, c must be positive");
  unsigned long long n = static_cast<unsigned long long>(c) + 1;
  for (int level = 2; level <= h; ++level) {
    unsigned long long copies = static_cast<unsigned long long>(c + 1) * (2ull * c);
    unsigned long long next = (c + 2) + copies * n;
    if (n != 0 && copies != 0 && (next - (c + 2)) / copies != n)
      throw CapExceeded("lower_bound_graph_size: overflow");
    n = next;
  }
  return n;
}

GadgetGraph lower_bound_graph(int h, int c) {
  if (h < 1 || c < 1) throw std::invalid_argument("lower_bound_graph: h, c must be positive");
  if (lower_bound_graph_size(h, c) > 10'000'000ull)
    throw CapExceeded("lower_bound_graph: construction would exceed 10M vertices");

  if (h == 1) {
    GadgetGraph out;
    out.graph = path_graph(c + 1);
    out.spine.resize(c + 1);
    std::iota(out.spine.begin(), out.spine.end(), 0);
    return out;
  }

  GadgetGraph sub = lower_bound_graph(h - 1, c);
  int sub_n = sub.graph.n();
  std::vector<Edge> edges;
  int spine_len = c + 2;  // c+1 edges
  for (int i = 0; i + 1 < spine_len; ++i) edges.emplace_back(i, i + 1);
  int next = spine_len;
  for (int i = 0; i + 1 < spine_len; ++i) {
    for (int copy = 0; copy < 2 * c; ++copy) {
      int base = next;
      next += sub_n;
      for (auto [u, v] : sub.graph.edges()) edges.emplace_back(base + u, base + v);
      for (int k = 0; k < sub_n; ++k) {
        edges.emplace_back(i, base + k);
        edges.emplace_back(i + 1, base + k);
      }
    }
  }
  GadgetGraph out;
  out.graph = Graph::from_edges(next, std::move(edges));
  out.spine.resize(spine_len);
  std::iota(out.spine.begin(), out.spine.end(), 0);
  return out;
}

// ---------------------------------------------------------------------------
// exact max clique

namespace {

using Mask = std::uint64_t;

struct CliqueSolver {
  const std::vector<Mask>& adj;
  std::uint64_t budget;
  std::uint64_t steps = 0;
  int best = 0;

  void tick() {
    if (++steps > budget) throw BudgetExceeded("max_clique: step budget exhausted");
  }

  void expand(int rsize, Mask p) {
    tick();
    if (!p) {
      best = std::max(best, rsize);
      return;
    }
    // greedy coloring: vertices of color q can never extend a clique past
    // rsize + q, so process high colors first and cut on the bound
    std::vector<std::pair<int, int>> order;  // (color, vertex)
    Mask rest = p;
    int color = 0;
    while (rest) {
      ++color;
      Mask avail = rest;
      while (avail) {
        int v = __builtin_ctzll(avail);
        order.push_back({color, v});
        rest &= ~(Mask(1) << v);
        avail &= ~(Mask(1) << v);
        avail &= ~adj[v];
      }
    }
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      auto [col, v] = order[i];
      if (rsize + col <= best) return;
      expand(rsize + 1, p & adj[v]);
      p &= ~(Mask(1) << v);
    }
  }
};

}  // namespace

int max_clique(const Graph& g, std::uint64_t budget) {
  if (g.n() > 64) throw CapExceeded("max_clique: more than 64 vertices");
  if (g.n() == 0) return 0;
  std::vector<Mask> adj(g.n(), 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= Mask(1) << v;
    adj[v] |= Mask(1) << u;
  }
  CliqueSolver solver{adj, budget};
  Mask all = (g.n() == 64) ? ~Mask(0) : ((Mask(1) << g.n()) - 1);
  solver.expand(0, all);
  return solver.best;
}

// ---------------------------------------------------------------------------

namespace {

// enumerate all partitions of [0, n) with parts of size <= width; returns
// false from the callback to stop early
template <typename Callback>
bool enumerate_bounded_partitions(int n, int width, std::vector<std::vector<int>>& parts,
                                  int v, const Callback& cb) {
  if (v == n) return cb(parts);
  for (auto& part : parts) {
    if (static_cast<int>(part.size()) >= width) continue;
    part.push_back(v);
    if (!enumerate_bounded_partitions(n, width, parts, v + 1, cb)) return false;
    part.pop_back();
  }
  parts.push_back({v});
  if (!enumerate_bounded_partitions(n, width, parts, v + 1, cb)) return false;
  parts.pop_back();
  return true;
}

}  // namespace

bool GadgetReport::all_ok_or_skipped() const {
  for (const auto& check : checks)
    if (check.status == "failed") return false;
  return true;
}

GadgetReport verify_gadget_claims(const Graph& g, int h, int c, const GadgetOptions& opts) {
  if (h < 1 || c < 1) throw std::invalid_argument("verify_gadget_claims: h, c must be positive");
  GadgetReport report;
  report.h = h;
  report.c = c;
  report.spine_edge_count = c + 1;
  report.base_path_vertex_count = c + 1;

  {
    GadgetCheck check{"t_h3_minor_free", "", ""};
    if (g.n() > opts.search.arena_cap) {
      check.status = "skipped";
      check.detail = "host has " + std::to_string(g.n()) + " vertices, oracle cap is " +
                     std::to_string(opts.search.arena_cap);
    } else {
      std::vector<int> all(g.n());
      std::iota(all.begin(), all.end(), 0);
      try {
        auto model = find_rooted_tree_model(g, complete_dary_tree(h, 3), RootConstraint{}, all,
                                            opts.search);
        check.status = model ? "failed" : "ok";
        if (model) check.detail = "oracle found a T_{h,3} model";
      } catch (const BudgetExceeded& e) {
        check.status = "skipped";
        check.detail = e.what();
      }
    }
    report.checks.push_back(std::move(check));
  }

  {
    GadgetCheck check{"quotient_clique_2h", "", ""};
    if (c == 1) {
      // width-1 partitions are singleton partitions, so the host is g itself
      try {
        int omega = max_clique(g, opts.clique_budget);
        check.status = omega >= 2 * h ? "ok" : "failed";
        check.detail = "clique number " + std::to_string(omega) + ", required " +
                       std::to_string(2 * h) + " (singleton-partition host is g itself)";
      } catch (const std::runtime_error& e) {
        check.status = "skipped";
        check.detail = e.what();
      }
    } else if (g.n() > opts.partition_enum_cap) {
      check.status = "skipped";
      check.detail = "exhaustive width-" + std::to_string(c) + " partition sweep capped at n = " +
                     std::to_string(opts.partition_enum_cap);
    } else {
      std::vector<std::vector<int>> parts;
      long long counted = 0;
      bool all_ok = enumerate_bounded_partitions(
          g.n(), c, parts, 0, [&](const std::vector<std::vector<int>>& ps) {
            ++counted;
            auto partition = Partition::from_parts(g.n(), ps);
            Graph q = quotient(g, partition);
            return max_clique(q, opts.clique_budget) >= 2 * h;
          });
      check.status = all_ok ? "ok" : "failed";
      check.detail = all_ok ? "all " + std::to_string(counted) + " width-<=" + std::to_string(c) +
                                  " partitions give a 2h-clique quotient"
                            : "found a width-" + std::to_string(c) +
                                  " partition whose quotient misses the clique";
    }
    report.checks.push_back(std::move(check));
  }
  return report;
}

Graph random_screened_instance(int h, int d, int n, double edge_probability, std::uint64_t seed,
                               int max_attempts, const MinorSearchOptions& search) {
  if (n < 1) throw std::invalid_argument("random_screened_instance: n must be positive");
  std::mt19937_64 rng(seed);
  auto coin = [&]() { return (rng() >> 11) * 0x1.0p-53 < edge_probability; };
  RootedTree pattern = complete_dary_tree(h, d);
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin()) edges.emplace_back(u, v);
    Graph g = Graph::from_edges(n, std::move(edges));
    if (!g.is_connected()) continue;
    if (!find_rooted_tree_model(g, pattern, RootConstraint{}, all, search)) return g;
  }
  throw BudgetExceeded("random_screened_instance: resample budget exhausted (parameters too dense)");
}

}  // namespace tmpk
