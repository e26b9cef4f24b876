#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hamrobust/graph.hpp"
#include "hamrobust/partition.hpp"
#include "hamrobust/path_system.hpp"

namespace hamrobust {

// Brute-force ground truth.  Oracles never call builders.

enum class SearchStatus { Found, None, Indeterminate };

struct CycleResult {
  SearchStatus status = SearchStatus::Indeterminate;
  std::vector<int> cycle;  // vertex sequence, closed implicitly
  long long work = 0;
};

inline bool is_valid_cycle(const Graph& g, const std::vector<int>& cycle) {
  if (cycle.size() < 3) return false;
  std::vector<char> seen(g.n(), 0);
  for (int v : cycle) {
    if (v < 0 || v >= g.n() || seen[v]) return false;
    seen[v] = 1;
  }
  for (std::size_t i = 0; i < cycle.size(); ++i)
    if (!g.has_edge(cycle[i], cycle[(i + 1) % cycle.size()])) return false;
  return true;
}

namespace detail {

// Bitmask DP for a Hamilton cycle on <= 24 vertices.  dp[mask] holds the
// set of endpoints v reachable from vertex 0 along a path with vertex set
// `mask` (0 in mask).  Definitive in both directions.
inline CycleResult hamilton_dp(const Graph& g) {
  int n = g.n();
  CycleResult out;
  if (n < 3) {
    out.status = SearchStatus::None;
    return out;
  }
  std::vector<std::uint32_t> adj(n, 0);
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u)
      if (g.has_edge(v, u)) adj[v] |= 1u << u;
  for (int v = 0; v < n; ++v)
    if (std::popcount(adj[v]) < 2) {
      out.status = SearchStatus::None;
      return out;
    }
  std::vector<std::uint32_t> dp(1u << n, 0);
  dp[1] = 1;  // path {0} ending at 0
  std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    std::uint32_t ends = dp[mask];
    if (!ends || !(mask & 1)) continue;
    ++out.work;
    while (ends) {
      int v = std::countr_zero(ends);
      ends &= ends - 1;
      std::uint32_t nxt = adj[v] & ~mask;
      while (nxt) {
        int w = std::countr_zero(nxt);
        nxt &= nxt - 1;
        dp[mask | (1u << w)] |= 1u << w;
      }
    }
  }
  std::uint32_t closers = dp[full] & adj[0];
  if (!closers) {
    out.status = SearchStatus::None;
    return out;
  }
  // Reconstruct.
  int v = std::countr_zero(closers);
  std::uint32_t mask = full;
  std::vector<int> rev{v};
  while (v != 0) {
    std::uint32_t prev_mask = mask & ~(1u << v);
    std::uint32_t cands = dp[prev_mask] & adj[v];
    int u = std::countr_zero(cands);
    rev.push_back(u);
    mask = prev_mask;
    v = u;
  }
  std::reverse(rev.begin(), rev.end());
  out.cycle = rev;
  out.status = SearchStatus::Found;
  return out;
}

// Branch-and-bound Hamilton search for larger graphs; definitive None only
// when the search space is exhausted within budget.
inline CycleResult hamilton_bnb(const Graph& g, long long budget) {
  int n = g.n();
  CycleResult out;
  std::vector<std::vector<int>> adj(n);
  for (int v = 0; v < n; ++v) adj[v] = g.neighbour_list(v);
  std::vector<char> visited(n, 0);
  std::vector<int> path{0};
  visited[0] = 1;
  bool exhausted = true;
  std::function<bool(int)> dfs = [&](int v) -> bool {
    if (++out.work > budget) {
      exhausted = false;
      return false;
    }
    if (static_cast<int>(path.size()) == n) return g.has_edge(v, 0);
    // prune: any unvisited vertex must keep two usable connections
    for (int w = 0; w < n; ++w) {
      if (visited[w]) continue;
      int avail = 0;
      for (int x : adj[w])
        if (!visited[x] || x == v || x == 0) ++avail;
      if (avail < 2) return false;
    }
    for (int w : adj[v]) {
      if (visited[w]) continue;
      visited[w] = 1;
      path.push_back(w);
      if (dfs(w)) return true;
      path.pop_back();
      visited[w] = 0;
      if (!exhausted) return false;
    }
    return false;
  };
  if (dfs(0)) {
    out.cycle = path;
    out.status = SearchStatus::Found;
  } else {
    out.status = exhausted ? SearchStatus::None : SearchStatus::Indeterminate;
  }
  return out;
}

}  // namespace detail

// Hamilton cycle, definitive for n <= 24 (bitmask DP), branch-and-bound with
// an explicit node budget beyond.
inline CycleResult find_hamilton(const Graph& g, long long budget = 50'000'000) {
  if (g.n() <= 24) return detail::hamilton_dp(g);
  return detail::hamilton_bnb(g, budget);
}

// Longest cycle, exhaustive for n <= 18 by descending-length subset DP.
struct LongestCycleResult {
  SearchStatus status = SearchStatus::Indeterminate;  // Found = definitive maximum
  std::vector<int> cycle;                             // best cycle found
  long long work = 0;
};

inline LongestCycleResult longest_cycle(const Graph& g, long long budget = 200'000'000) {
  int n = g.n();
  if (n > 18) throw InputError("longest_cycle: exhaustive search supported for n <= 18");
  // acyclic check: strip degree-<=1 vertices
  {
    Graph h = g;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < n; ++v)
        if (h.degree(v) == 1) {
          int u = h.neighbour_list(v)[0];
          h.remove_edge(v, u);
          changed = true;
        }
    }
    if (h.edge_total() == 0) throw InputError("longest_cycle: graph is acyclic");
  }
  LongestCycleResult out;
  for (int len = n; len >= 3; --len) {
    // All len-subsets via Gosper's hack.
    std::uint32_t subset = (1u << len) - 1;
    std::uint32_t limit = 1u << n;
    while (subset < limit) {
      VertexSet s(n);
      for (int v = 0; v < n; ++v)
        if (subset & (1u << v)) s.add(v);
      Graph h = induced_subgraph(g, s);
      // quick filters
      bool viable = true;
      s.for_each([&](int v) {
        if (h.degree(v) < 2) viable = false;
      });
      if (viable) {
        // Hamilton cycle on the subset: relabel into 0..len-1.
        auto ids = s.to_vector();
        Graph small(len);
        for (int i = 0; i < len; ++i)
          for (int j = i + 1; j < len; ++j)
            if (h.has_edge(ids[i], ids[j])) small.add_edge(i, j);
        CycleResult r = detail::hamilton_dp(small);
        out.work += r.work + (1 << len) / 64 + 1;
        if (r.status == SearchStatus::Found) {
          for (int v : r.cycle) out.cycle.push_back(ids[v]);
          out.status = SearchStatus::Found;
          return out;
        }
        if (out.work > budget) {
          out.status = SearchStatus::Indeterminate;
          return out;
        }
      }
      // Gosper
      std::uint32_t c = subset & -subset;
      std::uint32_t r2 = subset + c;
      subset = (((r2 ^ subset) >> 2) / c) | r2;
    }
  }
  out.status = SearchStatus::None;  // no cycle at all (unreachable: acyclic rejected)
  return out;
}

// A subgraph is dominating when the uncovered vertices form an independent set.
inline bool check_dominating(const Graph& g, const std::vector<int>& cycle) {
  if (!is_valid_cycle(g, cycle)) throw InputError("check_dominating: not a cycle of g");
  VertexSet on(g.n());
  for (int v : cycle) on.add(v);
  VertexSet rest = on.complement();
  return edge_count(g, rest) == 0;
}

// ---------------------------------------------------------------------------
// Hamilton cycle through a prescribed path system ("tour completion").
// Exhaustive DFS with forced-edge bookkeeping; definitive when the search
// finishes inside the budget (comfortably so for n <= 16).
inline CycleResult complete_to_hamilton(const Graph& g, const PathSystem& p,
                                        long long budget = 100'000'000) {
  int n = g.n();
  CycleResult out;
  if (auto why = p.validate(n)) throw InputError("complete_to_hamilton: " + *why);
  for (auto [u, v] : p.edges())
    if (!g.has_edge(u, v)) throw InputError("complete_to_hamilton: system edge missing from graph");
  if (n < 3) {
    out.status = SearchStatus::None;
    return out;
  }
  std::vector<std::vector<int>> forced(n);
  for (auto [u, v] : p.edges()) {
    forced[u].push_back(v);
    forced[v].push_back(u);
  }
  std::vector<std::vector<int>> adj(n);
  for (int v = 0; v < n; ++v) adj[v] = g.neighbour_list(v);
  std::vector<char> visited(n, 0);
  std::vector<int> path{0};
  visited[0] = 1;
  bool exhausted = true;

  auto forced_unsatisfied = [&](int v, int arrived_from) {
    // forced edges at v other than the arrival edge
    std::vector<int> rest;
    for (int w : forced[v])
      if (w != arrived_from) rest.push_back(w);
    return rest;
  };

  std::function<bool(int, int)> dfs = [&](int v, int arrived_from) -> bool {
    if (++out.work > budget) {
      exhausted = false;
      return false;
    }
    std::vector<int> must = forced_unsatisfied(v, arrived_from);
    if (static_cast<int>(path.size()) == n) {
      if (!g.has_edge(v, 0)) return false;
      // closing edge must absorb any remaining forced edges at v and 0
      if (must.size() > 1) return false;
      if (must.size() == 1 && must[0] != 0) return false;
      for (int w : forced[0])
        if (w != path[1] && w != v) return false;
      return true;
    }
    if (must.size() > 1) return false;  // cannot serve two more forced edges
    // prune: every unvisited vertex needs two usable connections
    for (int w = 0; w < n; ++w) {
      if (visited[w]) continue;
      int avail = 0;
      for (int x : adj[w])
        if (!visited[x] || x == v || x == 0) ++avail;
      if (avail < 2) return false;
    }
    std::vector<int> cands;
    if (!must.empty()) {
      if (visited[must[0]]) return false;
      cands.push_back(must[0]);
    } else {
      for (int w : adj[v])
        if (!visited[w]) cands.push_back(w);
    }
    for (int w : cands) {
      visited[w] = 1;
      path.push_back(w);
      if (dfs(w, v)) return true;
      path.pop_back();
      visited[w] = 0;
      if (!exhausted) return false;
    }
    return false;
  };

  // Vertex 0's own forced edges constrain the first step.
  std::vector<int> first;
  if (!forced[0].empty()) first = forced[0];
  else first = adj[0];
  for (int w : first) {
    visited[w] = 1;
    path.push_back(w);
    if (dfs(w, 0)) {
      out.cycle = path;
      out.status = SearchStatus::Found;
      return out;
    }
    path.pop_back();
    visited[w] = 0;
    if (!exhausted) break;
  }
  out.status = exhausted ? SearchStatus::None : SearchStatus::Indeterminate;
  return out;
}

// ---------------------------------------------------------------------------
// Lexicographically-first path system satisfying a predicate, by DFS over
// the graph's edge list in index order.
struct PathSystemSearch {
  SearchStatus status = SearchStatus::Indeterminate;
  PathSystem system;
  long long work = 0;
};

inline PathSystemSearch exhaustive_path_system(const Graph& g,
                                               const std::function<bool(const PathSystem&)>& pred,
                                               int max_edges, long long budget = 50'000'000) {
  PathSystemSearch out;
  auto edges = g.edge_list();
  int m = static_cast<int>(edges.size());
  std::vector<int> deg(g.n(), 0);
  std::map<int, int> parent;  // union-find over touched vertices
  std::function<int(int)> find = [&](int x) {
    auto it = parent.find(x);
    if (it == parent.end()) { parent[x] = x; return x; }
    while (parent[x] != x) x = parent[x];
    return x;
  };
  PathSystem current;
  bool exhausted = true;

  std::function<bool(int)> dfs = [&](int idx) -> bool {
    if (++out.work > budget) {
      exhausted = false;
      return false;
    }
    if (pred(current)) {
      out.system = current;
      return true;
    }
    if (current.size() >= max_edges) return false;
    for (int e = idx; e < m; ++e) {
      auto [u, v] = edges[e];
      if (deg[u] >= 2 || deg[v] >= 2) continue;
      int ru = find(u), rv = find(v);
      if (ru == rv) continue;  // would close a cycle
      // apply
      current.add_edge(u, v);
      ++deg[u];
      ++deg[v];
      auto saved_parent = parent;
      parent[ru] = rv;
      if (dfs(e + 1)) return true;
      parent = saved_parent;
      --deg[u];
      --deg[v];
      current.remove_edge(u, v);
      if (!exhausted) return false;
    }
    return false;
  };
  if (dfs(0)) out.status = SearchStatus::Found;
  else out.status = exhausted ? SearchStatus::None : SearchStatus::Indeterminate;
  return out;
}

// Smallest-extension search: add up to max_extra graph edges to `base` so
// that the result is a V-tour at parameter gamma; iterative deepening keeps
// the first hit minimal in (size, lex) order.
inline PathSystemSearch extend_to_v_tour(const Graph& g, const PartitionSpec& spec,
                                         const PathSystem& base, double gamma, int max_extra = 6,
                                         long long budget = 50'000'000) {
  PathSystemSearch out;
  auto edges = g.edge_list();
  int m = static_cast<int>(edges.size());
  PathSystem current = base;
  bool exhausted = true;
  long long used = 0;

  std::function<bool(int, int)> dfs = [&](int idx, int remaining) -> bool {
    if (++used > budget) {
      exhausted = false;
      return false;
    }
    if (current.is_valid(g.n()) && check_v_tour(g, spec, current, gamma).overall()) {
      out.system = current;
      return true;
    }
    if (remaining == 0) return false;
    for (int e = idx; e < m; ++e) {
      auto [u, v] = edges[e];
      if (current.has_edge(u, v)) continue;
      if (current.degree_of(u) >= 2 || current.degree_of(v) >= 2) continue;
      current.add_edge(u, v);
      if (current.is_valid(g.n())) {
        if (dfs(e + 1, remaining - 1)) return true;
      }
      current.remove_edge(u, v);
      if (!exhausted) return false;
    }
    return false;
  };
  for (int k = 0; k <= max_extra; ++k) {
    current = base;
    if (dfs(0, k)) {
      out.status = SearchStatus::Found;
      out.work = used;
      return out;
    }
    if (!exhausted) break;
  }
  out.work = used;
  out.status = exhausted ? SearchStatus::None : SearchStatus::Indeterminate;
  return out;
}

}  // namespace hamrobust
