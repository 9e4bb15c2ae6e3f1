#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "tmpk/errors.hpp"
#include "tmpk/minors.hpp"

namespace tmpk {

namespace {

using Mask = std::uint64_t;

struct PathArena {
  std::vector<int> to_old;
  std::vector<std::uint32_t> adj;  // arena adjacency as 32-bit masks
  int a = 0;
};

PathArena build_arena(const Graph& g, const std::vector<int>& available, int cap, const char* who) {
  int a = static_cast<int>(available.size());
  if (a > cap)
    throw CapExceeded(std::string(who) + ": region of " + std::to_string(a) +
                      " vertices exceeds cap " + std::to_string(cap));
  std::vector<int> to_new(g.n(), -1);
  for (int i = 0; i < a; ++i) {
    int v = available[i];
    if (v < 0 || v >= g.n() || to_new[v] != -1 || (i > 0 && available[i - 1] >= v))
      throw std::invalid_argument(std::string(who) + ": available must be a sorted vertex set");
    to_new[v] = i;
  }
  PathArena arena;
  arena.a = a;
  arena.to_old = available;
  arena.adj.assign(a, 0);
  for (int i = 0; i < a; ++i)
    for (int w : g.neighbors(available[i]))
      if (to_new[w] >= 0) arena.adj[i] |= std::uint32_t(1) << to_new[w];
  return arena;
}

// dp[S] = bitmask of endpoints e such that some simple path with vertex set S
// ends at e. Scanning S in increasing numeric order visits subsets first.
std::vector<int> reconstruct(const PathArena& arena, const std::vector<std::uint32_t>& dp,
                             std::uint32_t set, int endpoint) {
  std::vector<int> path;
  std::uint32_t s = set;
  int e = endpoint;
  while (true) {
    path.push_back(arena.to_old[e]);
    std::uint32_t rest = s & ~(std::uint32_t(1) << e);
    if (!rest) break;
    std::uint32_t prev = arena.adj[e] & rest & dp[rest];
    e = __builtin_ctz(prev);
    s = rest;
  }
  std::reverse(path.begin(), path.end());
  if (!path.empty() && path.front() > path.back()) std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::vector<int> longest_path_within(const Graph& g, const std::vector<int>& available, int cap) {
  auto arena = build_arena(g, available, cap, "longest_path");
  int a = arena.a;
  if (a == 0) return {};
  std::uint32_t full = (a == 32) ? ~std::uint32_t(0) : ((std::uint32_t(1) << a) - 1);
  std::vector<std::uint32_t> dp(std::size_t(full) + 1, 0);
  for (int v = 0; v < a; ++v) dp[std::uint32_t(1) << v] = std::uint32_t(1) << v;
  std::uint32_t best_set = 1;
  int best_size = 1;
  for (std::uint32_t s = 1; s <= full && s != 0; ++s) {
    std::uint32_t ends = dp[s];
    if (!ends) continue;
    int size = __builtin_popcount(s);
    if (size > best_size) {
      best_size = size;
      best_set = s;
    }
    for (std::uint32_t rest = ends; rest;) {
      int e = __builtin_ctz(rest);
      rest &= rest - 1;
      std::uint32_t ext = arena.adj[e] & ~s;
      for (std::uint32_t er = ext; er;) {
        int u = __builtin_ctz(er);
        er &= er - 1;
        dp[s | (std::uint32_t(1) << u)] |= std::uint32_t(1) << u;
      }
    }
  }
  int endpoint = __builtin_ctz(dp[best_set]);
  return reconstruct(arena, dp, best_set, endpoint);
}

std::vector<int> longest_path(const Graph& g, int cap) {
  std::vector<int> all(g.n());
  std::iota(all.begin(), all.end(), 0);
  return longest_path_within(g, all, cap);
}

std::optional<std::vector<int>> find_path_on_k(const Graph& g, const std::vector<int>& available,
                                               int k, int cap) {
  if (k <= 0) throw std::invalid_argument("find_path_on_k: k must be positive");
  auto arena = build_arena(g, available, cap, "find_path_on_k");
  int a = arena.a;
  if (k > a) return std::nullopt;
  std::uint32_t full = (a == 32) ? ~std::uint32_t(0) : ((std::uint32_t(1) << a) - 1);
  std::vector<std::uint32_t> dp(std::size_t(full) + 1, 0);
  for (int v = 0; v < a; ++v) {
    if (k == 1) return std::vector<int>{arena.to_old[v]};
    dp[std::uint32_t(1) << v] = std::uint32_t(1) << v;
  }
  for (std::uint32_t s = 1; s <= full && s != 0; ++s) {
    std::uint32_t ends = dp[s];
    if (!ends) continue;
    int size = __builtin_popcount(s);
    if (size >= k) return reconstruct(arena, dp, s, __builtin_ctz(ends));
    for (std::uint32_t rest = ends; rest;) {
      int e = __builtin_ctz(rest);
      rest &= rest - 1;
      std::uint32_t ext = arena.adj[e] & ~s;
      for (std::uint32_t er = ext; er;) {
        int u = __builtin_ctz(er);
        er &= er - 1;
        dp[s | (std::uint32_t(1) << u)] |= std::uint32_t(1) << u;
      }
    }
  }
  return std::nullopt;
}

}  // namespace tmpk
