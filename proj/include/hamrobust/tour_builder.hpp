#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hamrobust/balancer.hpp"
#include "hamrobust/graph.hpp"
#include "hamrobust/matching.hpp"
#include "hamrobust/oracles.hpp"
#include "hamrobust/partition.hpp"
#include "hamrobust/path_system.hpp"
#include "hamrobust/robustness.hpp"

namespace hamrobust {

// ---------------------------------------------------------------------------
// Bounded search for small connecting path systems: subsets of the
// cross-edge list of size 3 or 4 whose reduced multigraph is an Euler tour
// and whose per-class contact profile (c1, c2) satisfies c1 + 2c2 in {2,4},
// c2 <= 1.  Classes are the parts handed in (a W class counts as one part).

struct TourSearchStats {
  long long nodes = 0;
  bool budget_exhausted = false;
};

namespace detail {

inline void enumerate_connecting_systems(const Graph& g, const std::vector<VertexSet>& parts,
                                         long long budget, TourSearchStats& stats,
                                         const std::function<bool(const PathSystem&)>& visit) {
  int n = g.n();
  std::vector<int> cls(n, -1);
  for (int c = 0; c < static_cast<int>(parts.size()); ++c)
    parts[c].for_each([&](int v) { cls[v] = c; });
  std::vector<std::pair<int, int>> cross;
  for (auto [u, v] : g.edge_list())
    if (cls[u] != -1 && cls[v] != -1 && cls[u] != cls[v]) cross.emplace_back(u, v);

  int m = static_cast<int>(cross.size());
  std::vector<int> deg(n, 0);
  std::map<int, int> parent;
  std::function<int(int)> find = [&](int x) {
    auto it = parent.find(x);
    if (it == parent.end()) { parent[x] = x; return x; }
    while (parent[x] != x) x = parent[x];
    return x;
  };
  PathSystem current;
  bool stop = false;

  std::function<void(int)> dfs = [&](int idx) {
    if (stop) return;
    if (++stats.nodes > budget) {
      stats.budget_exhausted = true;
      stop = true;
      return;
    }
    if (current.size() >= 3) {
      if (visit(current)) {
        stop = true;
        return;
      }
    }
    if (current.size() >= 4) return;
    for (int e = idx; e < m && !stop; ++e) {
      auto [u, v] = cross[e];
      if (deg[u] >= 2 || deg[v] >= 2) continue;
      int ru = find(u), rv = find(v);
      if (ru == rv) continue;
      current.add_edge(u, v);
      ++deg[u];
      ++deg[v];
      auto saved = parent;
      parent[ru] = rv;
      dfs(e + 1);
      parent = saved;
      --deg[u];
      --deg[v];
      current.remove_edge(u, v);
    }
  };
  dfs(0);
}

inline bool connecting_profile_ok(const Graph& g, const std::vector<VertexSet>& parts,
                                  const PathSystem& p) {
  PartitionSpec ps;
  ps.expander = parts;
  if (!check_euler_tour(reduced_multigraph(p, ps, g.n()))) return false;
  for (const auto& part : parts) {
    auto [c1, c2] = degree_profile(p, part);
    int sum = c1 + 2 * c2;
    if ((sum != 2 && sum != 4) || c2 > 1) return false;
  }
  return true;
}

}  // namespace detail

// First (lexicographic) qualifying path system for a <=3-part partition.
inline Expected<PathSystem> clique_tour_search(const Graph& g, const std::vector<VertexSet>& parts,
                                               long long budget = 5'000'000) {
  if (parts.size() < 2 || parts.size() > 3)
    throw InputError("clique_tour_search: two or three parts expected");
  for (const auto& p : parts)
    if (p.count() < 3) throw PreconditionError("clique_tour_search: every part needs >= 3 vertices");
  TourSearchStats stats;
  std::optional<PathSystem> found;
  detail::enumerate_connecting_systems(g, parts, budget, stats, [&](const PathSystem& p) {
    if (detail::connecting_profile_ok(g, parts, p)) {
      found = p;
      return true;
    }
    return false;
  });
  if (found) return *found;
  if (stats.budget_exhausted) return fail("search_budget", "clique tour search budget exhausted");
  return fail("lemma_cliquetour", "no connecting system of at most four cross edges exists");
}

// ---------------------------------------------------------------------------
// join_components: refine one merged class back into two using one or two
// matching edges, keeping the Euler tour.
inline Expected<PathSystem> join_components(const Graph& g, const std::vector<VertexSet>& refined,
                                            int merged_i, int merged_j, const PathSystem& p_prime,
                                            const Matching& m) {
  int n = g.n();
  const VertexSet& u = refined[merged_i];
  const VertexSet& v = refined[merged_j];
  VertexSet uv = u | v;
  long long contact = (p_prime.vertex_set(n) & uv).count();
  if (m.size() < contact + 2)
    throw PreconditionError("join_components: matching smaller than |V(P') ∩ (U ∪ V)| + 2");
  for (auto [x, y] : m.edges) {
    bool ok = (u.contains(x) && v.contains(y)) || (u.contains(y) && v.contains(x));
    if (!ok) throw PreconditionError("join_components: matching not between the merged parts");
  }
  PartitionSpec ps;
  ps.expander = refined;
  ReducedMultigraph r = reduced_multigraph(p_prime, ps, n);
  auto deg = r.degrees();
  int du = deg[merged_i], dv = deg[merged_j];
  if ((du + dv) % 2 != 0)
    return fail("prop_plusmatching", "merged degree parity broken (P' is not an Euler tour over the merge)");
  VertexSet used = p_prime.vertex_set(n);
  std::vector<std::pair<int, int>> free_edges;
  for (auto [x, y] : m.edges)
    if (!used.contains(x) && !used.contains(y)) free_edges.emplace_back(x, y);
  if (free_edges.size() < 2)
    return fail("prop_plusmatching", "fewer than two matching edges avoid the path system");
  PathSystem p = p_prime;
  p.add_edge(free_edges[0].first, free_edges[0].second);
  if (du % 2 == 0) p.add_edge(free_edges[1].first, free_edges[1].second);
  if (!check_euler_tour(reduced_multigraph(p, ps, n)))
    return fail("prop_plusmatching", "refined system is not an Euler tour");
  for (int c = 0; c < static_cast<int>(refined.size()); ++c) {
    long long before = (p_prime.vertex_set(n) & refined[c]).count();
    long long after = (p.vertex_set(n) & refined[c]).count();
    if (after > before + 2) return fail("prop_plusmatching", "contact grew by more than two");
  }
  return p;
}

// ---------------------------------------------------------------------------
// tour_40: V-tour for four robust expander components.
struct TourOutcome {
  PathSystem system;
  VTourReport report;
  std::string route;  // "case1" or "case2"
  std::vector<std::string> warnings;
};

inline Expected<TourOutcome> tour_40(const Graph& g, const PartitionSpec& spec,
                                     long long budget = 50'000'000) {
  if (spec.k() != 4 || spec.ell() != 0) throw InputError("tour_40: shape (4,0) required");
  int n = g.n();
  if (!spec.covers(n)) throw InputError("tour_40: spec must partition V(G)");
  TourOutcome out;
  auto dopt = regular_degree(g);
  if (!dopt) out.warnings.push_back("graph is not regular");
  else if (*dopt * 4 < n) out.warnings.push_back("D >= n/4 fails (desk-scale instance)");

  const auto& parts = spec.expander;

  // Case selection.  The longest-cycle route is exact only at small n; at
  // larger n the dense-pair condition is tested directly (a cycle with
  // e_C(U,V) >= 12 yields a matching of size >= 6 by König, so the direct
  // test subsumes it).
  std::optional<std::pair<int, int>> dense_pair;
  Matching dense_matching;
  std::optional<std::vector<int>> cycle;
  if (n <= 18) {
    auto lc = longest_cycle(g, budget);
    if (lc.status == SearchStatus::Found) {
      cycle = lc.cycle;
      Graph cg(n);
      for (std::size_t i = 0; i < cycle->size(); ++i)
        cg.add_edge((*cycle)[i], (*cycle)[(i + 1) % cycle->size()]);
      for (int i = 0; i < 4 && !dense_pair; ++i)
        for (int j = i + 1; j < 4 && !dense_pair; ++j)
          if (edge_count(cg, parts[i], parts[j]) >= 12) {
            dense_pair = {i, j};
            dense_matching = max_matching_between(cg, parts[i], parts[j]);
          }
    }
  }
  if (!dense_pair && !cycle) {
    for (int i = 0; i < 4 && !dense_pair; ++i)
      for (int j = i + 1; j < 4 && !dense_pair; ++j) {
        Matching m = max_matching_between(g, parts[i], parts[j]);
        if (m.size() >= 6) {
          dense_pair = {i, j};
          dense_matching = m;
        }
      }
  }

  if (dense_pair) {
    auto [i, j] = *dense_pair;
    std::vector<VertexSet> merged;
    merged.push_back(parts[i] | parts[j]);
    for (int c = 0; c < 4; ++c)
      if (c != i && c != j) merged.push_back(parts[c]);
    auto pp = clique_tour_search(g, merged, budget);
    if (!pp) return pp.failure();
    // Refined order: parts[i], parts[j], then the other two.
    std::vector<VertexSet> refined{parts[i], parts[j]};
    for (int c = 0; c < 4; ++c)
      if (c != i && c != j) refined.push_back(parts[c]);
    auto joined = join_components(g, refined, 0, 1, pp.value(), dense_matching);
    if (!joined) return joined.failure();
    out.system = joined.value();
    out.route = "case1";
  } else if (cycle) {
    // Case 2: strip intra-class cycle edges from a dominating longest cycle.
    PathSystem p;
    for (std::size_t i = 0; i < cycle->size(); ++i) {
      int u = (*cycle)[i], v = (*cycle)[(i + 1) % cycle->size()];
      bool internal = false;
      for (const auto& part : parts)
        if (part.contains(u) && part.contains(v)) internal = true;
      if (!internal) p.add_edge(u, v);
    }
    out.system = p;
    out.route = "case2";
  } else {
    return fail("tour_40", n <= 18 ? "no longest cycle within budget"
                                   : "no dense pair and the longest-cycle oracle needs n <= 18");
  }
  out.report = check_v_tour(g, spec, out.system, 33.0 / n);
  if (!out.report.overall()) return fail("tour_40_validation", out.report.detail);
  return out;
}

// ---------------------------------------------------------------------------
// tour_02: the (0,2) pipeline — a 2-balanced, W1W2-connected path system,
// optionally completed to a V-tour by the exhaustive oracle.
struct Tour02Outcome {
  PathSystem system;          // 2-balanced system with a W1W2-path
  std::optional<PathSystem> vtour;  // oracle completion when requested
  std::string route;
  std::vector<std::string> warnings;
  // the normalization used internally (|A_i| >= |B_i|, classes ordered)
  VertexSet a1, b1, a2, b2;
};

inline Expected<Tour02Outcome> tour_02(const Graph& g, const PartitionSpec& spec, bool complete = false,
                                       long long budget = 50'000'000) {
  if (spec.k() != 0 || spec.ell() != 2) throw InputError("tour_02: shape (0,2) required");
  int n = g.n();
  if (!spec.covers(n)) throw InputError("tour_02: spec must partition V(G)");
  Tour02Outcome out;
  auto dopt = regular_degree(g);
  if (!dopt) throw PreconditionError("tour_02: graph must be regular");

  auto balanced = two_balanced_system(g, spec);
  if (!balanced) return balanced.failure();
  PathSystem p = balanced.value().system;

  // Recover the normalization two_balanced_system used.
  PartitionSpec norm = spec;
  for (auto& [a, b] : norm.bipartite)
    if (a.count() < b.count()) std::swap(a, b);
  if (edge_count(g, norm.bipartite[0].first, norm.bipartite[1].second) >
      edge_count(g, norm.bipartite[0].second, norm.bipartite[1].first))
    std::swap(norm.bipartite[0], norm.bipartite[1]);
  out.a1 = norm.bipartite[0].first;
  out.b1 = norm.bipartite[0].second;
  out.a2 = norm.bipartite[1].first;
  out.b2 = norm.bipartite[1].second;
  VertexSet w1 = out.a1 | out.b1, w2 = out.a2 | out.b2;

  if (p.count_between(w1, w2) == 0) {
    // Interior matchings only; 3-connectivity supplies the W1W2 link.
    Matching m1, m2;
    for (auto [u, v] : p.edges()) {
      if (out.a1.contains(u) && out.a1.contains(v)) m1.add(u, v);
      else if (out.a2.contains(u) && out.a2.contains(v)) m2.add(u, v);
      else return fail("tour_02", "disconnected balanced system has edges outside the A-interiors");
    }
    auto connected = connectify_balanced(g, out.a1, out.b1, out.a2, out.b2, m1, m2,
                                         std::sqrt(spec.params.rho));
    if (!connected) return connected.failure();
    p = connected.value();
    out.route = balanced.value().route + "+ensureconnected";
  } else {
    out.route = balanced.value().route;
  }

  if (!check_t_balanced(p, out.a1, out.b1, out.a2, out.b2, 2))
    return fail("tour_02_validation", "assembled system is not 2-balanced");
  bool w1w2 = false;
  for (const auto& path : p.paths(n)) {
    bool f1 = w1.contains(path.front()), l1 = w1.contains(path.back());
    bool f2 = w2.contains(path.front()), l2 = w2.contains(path.back());
    if ((f1 && l2) || (f2 && l1)) w1w2 = true;
  }
  if (!w1w2) return fail("tour_02_validation", "assembled system lacks a W1W2-path");
  out.system = p;

  if (complete) {
    if (n > 16) {
      out.warnings.push_back("oracle V-tour completion needs n <= 16; skipped");
    } else {
      double gamma = std::min(1.0, 54.0 * std::sqrt(spec.params.rho));
      auto ext = extend_to_v_tour(g, norm, p, gamma, 6, budget);
      if (ext.status == SearchStatus::Found) out.vtour = ext.system;
      else out.warnings.push_back("oracle V-tour completion did not finish");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Basic connectors for the (2,1) shape.

struct ConnectorEntry {
  PathSystem system;
  HalfInt bal;
  std::pair<int, int> profile;
};

struct ConnectorCatalog {
  std::vector<ConnectorEntry> entries;  // lex-first per (bal, profile)
  bool budget_exhausted = false;

  bool empty() const { return entries.empty(); }

  // Selection rule of the sparse case: maximal bal, then maximal a1.
  std::optional<ConnectorEntry> best_max_bal_a1() const {
    std::optional<ConnectorEntry> best;
    for (const auto& e : entries)
      if (!best || best->bal < e.bal ||
          (best->bal == e.bal && best->profile.first < e.profile.first))
        best = e;
    return best;
  }

  // Minimize |bal - target| (ties towards larger bal).
  std::optional<ConnectorEntry> best_near(long long target) const {
    std::optional<ConnectorEntry> best;
    auto dist = [&](const HalfInt& b) { return (b - HalfInt::whole(target)).abs(); };
    for (const auto& e : entries) {
      if (!best) { best = e; continue; }
      HalfInt de = dist(e.bal), db = dist(best->bal);
      if (de < db || (de == db && best->bal < e.bal)) best = e;
    }
    return best;
  }

  std::optional<ConnectorEntry> with_bal(long long value) const {
    for (const auto& e : entries)
      if (e.bal == HalfInt::whole(value)) return e;
    return std::nullopt;
  }
};

inline ConnectorCatalog enumerate_basic_connectors(const Graph& g, const PartitionSpec& spec,
                                                   long long budget = 5'000'000) {
  if (spec.k() != 2 || spec.ell() != 1) throw InputError("basic connectors need shape (2,1)");
  std::vector<VertexSet> parts{spec.expander[0], spec.expander[1],
                               spec.bipartite[0].first | spec.bipartite[0].second};
  ConnectorCatalog cat;
  TourSearchStats stats;
  detail::enumerate_connecting_systems(g, parts, budget, stats, [&](const PathSystem& p) {
    auto rep = check_basic_connector(g, spec, p);
    if (!rep.overall()) return false;
    for (const auto& e : cat.entries)
      if (e.bal == rep.bal && e.profile == rep.profile) return false;  // keep lex-first
    cat.entries.push_back({p, rep.bal, rep.profile});
    return false;  // keep enumerating
  });
  cat.budget_exhausted = stats.budget_exhausted;
  return cat;
}

inline Expected<ConnectorEntry> basic_connector_search(const Graph& g, const PartitionSpec& spec,
                                                       long long budget = 5'000'000) {
  ConnectorCatalog cat = enumerate_basic_connectors(g, spec, budget);
  if (auto best = cat.best_max_bal_a1()) return *best;
  if (cat.budget_exhausted) return fail("search_budget", "connector enumeration budget exhausted");
  return fail("prop_BC", "no basic connector exists (graph is presumably not 3-connected)");
}

}  // namespace hamrobust

#include "hamrobust/tour_builder_21.hpp"
