#include "tmpk/minors.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>

#include "tmpk/errors.hpp"

namespace tmpk {

std::uint64_t default_search_steps() {
  static std::uint64_t cached = [] {
    if (const char* env = std::getenv("TMPK_MAX_STEPS")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t(200'000'000);
  }();
  return cached;
}

namespace {

using Mask = std::uint64_t;

int popcount(Mask m) { return __builtin_popcountll(m); }

// AHU-style canonical shape codes; equal code = isomorphic rooted subtree.
std::vector<int> shape_codes(const RootedTree& t) {
  int n = t.vertex_count();
  std::vector<int> verts(n);
  std::iota(verts.begin(), verts.end(), 0);
  std::sort(verts.begin(), verts.end(), [&](int a, int b) { return t.depth[a] > t.depth[b]; });
  std::map<std::vector<int>, int> table;
  std::vector<int> code(n, -1);
  for (int v : verts) {
    std::vector<int> key;
    for (int c : t.children[v]) key.push_back(code[c]);
    std::sort(key.begin(), key.end());
    auto [it, fresh] = table.emplace(std::move(key), static_cast<int>(table.size()));
    code[v] = it->second;
  }
  return code;
}

struct PatternInfo {
  int k = 0;
  std::vector<int> order;       // position -> pattern vertex, preorder
  std::vector<int> vertex_pos;  // pattern vertex -> position
  std::vector<int> parent_pos;  // -1 at the root position
  std::vector<std::vector<int>> child_positions;
  std::vector<int> elder_twin;  // previous same-shape sibling's position, -1 if none
};

PatternInfo analyze_pattern(const RootedTree& t) {
  PatternInfo info;
  info.k = t.vertex_count();
  info.order.reserve(info.k);
  std::vector<int> stack{t.root};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    info.order.push_back(v);
    for (auto it = t.children[v].rbegin(); it != t.children[v].rend(); ++it) stack.push_back(*it);
  }
  info.vertex_pos.assign(info.k, -1);
  for (int p = 0; p < info.k; ++p) info.vertex_pos[info.order[p]] = p;
  info.parent_pos.assign(info.k, -1);
  info.child_positions.assign(info.k, {});
  for (int p = 0; p < info.k; ++p) {
    int v = info.order[p];
    if (t.parent[v] >= 0) {
      int pp = info.vertex_pos[t.parent[v]];
      info.parent_pos[p] = pp;
      info.child_positions[pp].push_back(p);
    }
  }
  // interchangeable siblings: same parent, same subtree shape
  auto code = shape_codes(t);
  info.elder_twin.assign(info.k, -1);
  for (int v = 0; v < info.k; ++v) {
    const auto& ch = t.children[v];
    for (size_t i = 1; i < ch.size(); ++i)
      for (size_t j = i; j-- > 0;)
        if (code[ch[j]] == code[ch[i]]) {
          info.elder_twin[info.vertex_pos[ch[i]]] = info.vertex_pos[ch[j]];
          break;
        }
  }
  return info;
}

struct ModelSearch {
  const PatternInfo& pat;
  const std::vector<Mask>& adj;  // arena adjacency
  Mask all;
  std::optional<Mask> touch;
  std::uint64_t budget;
  std::uint64_t steps = 0;
  std::vector<Mask> branch;
  std::vector<int> seed_of;

  ModelSearch(const PatternInfo& p, const std::vector<Mask>& a, Mask all_mask,
              std::optional<Mask> touch_mask, std::uint64_t b)
      : pat(p), adj(a), all(all_mask), touch(touch_mask), budget(b) {
    branch.assign(pat.k, 0);
    seed_of.assign(pat.k, -1);
  }

  void tick() {
    if (++steps > budget) throw BudgetExceeded("find_rooted_tree_model: step budget exhausted");
  }

  Mask neighborhood(Mask s) const {
    Mask nb = 0;
    for (Mask rest = s; rest;) {
      int v = __builtin_ctzll(rest);
      rest &= rest - 1;
      nb |= adj[v];
    }
    return nb & ~s;
  }

  bool connected(Mask s) const {
    if (!s) return false;
    Mask comp = s & (~s + 1);  // lowest bit
    Mask frontier = comp;
    while (frontier) {
      Mask nb = 0;
      for (Mask f = frontier; f;) {
        int u = __builtin_ctzll(f);
        f &= f - 1;
        nb |= adj[u];
      }
      frontier = nb & s & ~comp;
      comp |= frontier;
    }
    return comp == s;
  }

  bool solve(int pos, Mask used) {
    tick();
    if (pos == pat.k) return true;
    Mask free = all & ~used;
    int free_count = popcount(free);
    int remaining = pat.k - pos;
    if (free_count < remaining) return false;
    Mask attach;
    if (pos == 0)
      attach = touch ? (*touch & free) : free;
    else
      attach = neighborhood(branch[pat.parent_pos[pos]]) & free;
    Mask seeds = attach;
    if (int e = pat.elder_twin[pos]; e >= 0) {
      int lower = seed_of[e];
      seeds &= (lower >= 63) ? 0 : ~((Mask(2) << lower) - 1);
    }
    int maxsize = free_count - (remaining - 1);
    for (Mask srest = seeds; srest;) {
      int v = __builtin_ctzll(srest);
      srest &= srest - 1;
      seed_of[pos] = v;
      Mask banned = attach & ((Mask(1) << v) - 1);
      if (grow(pos, used, Mask(1) << v, banned, maxsize)) return true;
    }
    return false;
  }

  // enumerate connected supersets of s within free vertices, each exactly once
  bool grow(int pos, Mask used, Mask s, Mask banned, int maxsize) {
    tick();
    branch[pos] = s;
    bool feasible = true;
    if (!pat.child_positions[pos].empty()) {
      Mask cands = neighborhood(s) & all & ~used & ~s;
      if (popcount(cands) < static_cast<int>(pat.child_positions[pos].size())) feasible = false;
    }
    if (feasible && solve(pos + 1, used | s)) return true;
    if (popcount(s) >= maxsize) return false;
    Mask ext = neighborhood(s) & all & ~used & ~banned;
    for (Mask rest = ext; rest;) {
      int u = __builtin_ctzll(rest);
      rest &= rest - 1;
      if (grow(pos, used, s | (Mask(1) << u), banned, maxsize)) return true;
      banned |= Mask(1) << u;
    }
    return false;
  }

  void shrink() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int pos = 0; pos < pat.k; ++pos) {
        Mask s = branch[pos];
        for (int v = 63; v >= 0; --v) {
          if (!(s & (Mask(1) << v)) || popcount(s) == 1) continue;
          Mask cand = s & ~(Mask(1) << v);
          if (!connected(cand)) continue;
          if (pos == 0 && touch && !(cand & *touch)) continue;
          if (pos > 0 && !(neighborhood(branch[pat.parent_pos[pos]]) & cand)) continue;
          bool ok = true;
          for (int c : pat.child_positions[pos])
            if (!(neighborhood(cand) & branch[c])) {
              ok = false;
              break;
            }
          if (!ok) continue;
          s = cand;
          branch[pos] = s;
          changed = true;
        }
      }
    }
  }
};

}  // namespace

std::optional<MinorModel> find_rooted_tree_model(const Graph& host, const RootedTree& pattern,
                                                 const RootConstraint& constraint,
                                                 const std::vector<int>& available,
                                                 const MinorSearchOptions& opts) {
  int a = static_cast<int>(available.size());
  if (a > opts.arena_cap || a > 64)
    throw CapExceeded("find_rooted_tree_model: region of " + std::to_string(a) +
                      " vertices exceeds the arena cap");
  if (pattern.vertex_count() == 0)
    throw std::invalid_argument("find_rooted_tree_model: empty pattern");
  if (pattern.vertex_count() > a) return std::nullopt;

  std::vector<int> to_new(host.n(), -1);
  for (int i = 0; i < a; ++i) {
    int v = available[i];
    if (v < 0 || v >= host.n() || to_new[v] != -1 || (i > 0 && available[i - 1] >= v))
      throw std::invalid_argument("find_rooted_tree_model: available must be a sorted vertex set");
    to_new[v] = i;
  }
  std::vector<Mask> adj(a, 0);
  for (int i = 0; i < a; ++i)
    for (int w : host.neighbors(available[i]))
      if (to_new[w] >= 0) adj[i] |= Mask(1) << to_new[w];

  std::optional<Mask> touch;
  if (constraint.required_touch) {
    Mask t = 0;
    for (int v : *constraint.required_touch) {
      if (v < 0 || v >= host.n()) throw std::invalid_argument("find_rooted_tree_model: bad touch set");
      if (to_new[v] >= 0) t |= Mask(1) << to_new[v];
    }
    if (!t) return std::nullopt;  // root can never meet the required set
    touch = t;
  }

  PatternInfo pat = analyze_pattern(pattern);
  Mask all = (a == 64) ? ~Mask(0) : ((Mask(1) << a) - 1);
  std::uint64_t budget = opts.max_steps ? opts.max_steps : default_search_steps();
  ModelSearch search(pat, adj, all, touch, budget);
  if (!search.solve(0, 0)) return std::nullopt;
  search.shrink();

  MinorModel model;
  model.pattern = pattern;
  model.branch_sets.assign(pattern.vertex_count(), {});
  for (int pos = 0; pos < pat.k; ++pos) {
    std::vector<int> set;
    for (Mask rest = search.branch[pos]; rest;) {
      int i = __builtin_ctzll(rest);
      rest &= rest - 1;
      set.push_back(available[i]);
    }
    model.branch_sets[pat.order[pos]] = std::move(set);
  }
  return model;
}

std::vector<std::string> model_violations(const Graph& host, const MinorModel& model) {
  std::vector<std::string> out;
  int k = model.pattern.vertex_count();
  if (static_cast<int>(model.branch_sets.size()) != k) {
    out.push_back("branch set count differs from pattern size");
    return out;
  }
  std::vector<int> owner(host.n(), -1);
  for (int x = 0; x < k; ++x) {
    const auto& set = model.branch_sets[x];
    if (set.empty()) {
      out.push_back("branch set " + std::to_string(x) + " is empty");
      continue;
    }
    for (int v : set) {
      if (v < 0 || v >= host.n()) {
        out.push_back("branch set " + std::to_string(x) + " has out-of-range vertex");
        return out;
      }
      if (owner[v] != -1)
        out.push_back("branch sets " + std::to_string(owner[v]) + " and " + std::to_string(x) +
                      " share vertex " + std::to_string(v));
      owner[v] = x;
    }
    // connectivity of host[set]
    std::vector<int> frontier{set.front()};
    std::vector<char> seen(host.n(), 0);
    seen[set.front()] = 1;
    int reached = 1;
    while (!frontier.empty()) {
      int v = frontier.back();
      frontier.pop_back();
      for (int w : host.neighbors(v))
        if (!seen[w] && std::binary_search(set.begin(), set.end(), w)) {
          seen[w] = 1;
          ++reached;
          frontier.push_back(w);
        }
    }
    if (reached != static_cast<int>(set.size()))
      out.push_back("branch set " + std::to_string(x) + " is not connected");
  }
  for (auto [x, y] : model.pattern.tree.edges()) {
    bool witnessed = false;
    for (int v : model.branch_sets[x]) {
      for (int w : host.neighbors(v))
        if (w >= 0 && std::binary_search(model.branch_sets[y].begin(), model.branch_sets[y].end(), w)) {
          witnessed = true;
          break;
        }
      if (witnessed) break;
    }
    if (!witnessed)
      out.push_back("pattern edge (" + std::to_string(x) + "," + std::to_string(y) +
                    ") has no witnessing host edge");
  }
  return out;
}

}  // namespace tmpk
