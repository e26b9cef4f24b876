#include "hamrobust/matching.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "hamrobust/generators.hpp"

using namespace hamrobust;

namespace {

// Independent maximum-matching oracle: bitmask DP over vertices (n <= ~20).
int brute_max_matching(const Graph& g) {
  int n = g.n();
  std::vector<int> memo(1 << n, -1);
  std::function<int(int)> best = [&](int mask) -> int {
    if (memo[mask] != -1) return memo[mask];
    int v = -1;
    for (int i = 0; i < n; ++i)
      if (!(mask & (1 << i))) { v = i; break; }
    if (v == -1) return memo[mask] = 0;
    int r = best(mask | (1 << v));  // leave v unmatched
    for (int u = v + 1; u < n; ++u)
      if (!(mask & (1 << u)) && g.has_edge(v, u)) r = std::max(r, 1 + best(mask | (1 << v) | (1 << u)));
    return memo[mask] = r;
  };
  return best(0);
}

Graph random_bipartite(int na, int nb, int percent, Rng& rng, VertexSet& a, VertexSet& b) {
  int n = na + nb;
  Graph g(n);
  a = VertexSet(n);
  b = VertexSet(n);
  for (int i = 0; i < na; ++i) a.add(i);
  for (int i = na; i < n; ++i) b.add(i);
  for (int i = 0; i < na; ++i)
    for (int j = na; j < n; ++j)
      if (rng.below(100) < static_cast<std::uint64_t>(percent)) g.add_edge(i, j);
  return g;
}

}  // namespace

TEST_CASE("hopcroft-karp agrees with DP oracle") {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    VertexSet a, b;
    Graph g = random_bipartite(2 + rng.below_int(5), 2 + rng.below_int(5), 20 + rng.below_int(70), rng, a, b);
    Matching m = max_matching_between(g, a, b);
    REQUIRE(m.vertex_disjoint());
    CHECK(m.size() == brute_max_matching(g));
  }
}

TEST_CASE("general maximum matching agrees with DP oracle") {
  Rng rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 3 + rng.below_int(8);
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.below(100) < 40) g.add_edge(u, v);
    CHECK(max_matching(g).size() == brute_max_matching(g));
  }
}

TEST_CASE("konig_matching basic cases") {
  Graph single(2);
  single.add_edge(0, 1);
  CHECK(konig_matching(single, 1).size() == 1);

  Graph c6 = cycle_graph(6);
  CHECK(konig_matching(c6, 2).size() == 3);

  // Degree precondition.
  Graph star(4);
  star.add_edge(0, 1);
  star.add_edge(0, 2);
  star.add_edge(0, 3);
  CHECK_THROWS_AS(konig_matching(star, 2), PreconditionError);
}

TEST_CASE("konig bound always achieved on random bipartite graphs") {
  Rng rng(33);
  for (int trial = 0; trial < 500; ++trial) {
    VertexSet a, b;
    Graph g = random_bipartite(2 + rng.below_int(8), 2 + rng.below_int(8), 15 + rng.below_int(70), rng, a, b);
    long long e = g.edge_total();
    if (e == 0) continue;
    long long delta = max_degree_between(g, a, b);
    Matching m = konig_matching_between(g, a, b, delta);
    CHECK(m.size() == ceil_div(e, delta));
  }
}

TEST_CASE("matching_extend grows to the König bound and keeps covered vertices") {
  Graph path(3);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  Matching m0;
  m0.add(0, 1);
  Matching m1 = matching_extend(path, m0, 2);
  CHECK(m1.size() == 1);
  CHECK(m1.covers(0));
  CHECK(m1.covers(1));

  Graph c6 = cycle_graph(6);
  Matching empty;
  CHECK(matching_extend(c6, empty, 2).size() == 3);

  Rng rng(34);
  for (int trial = 0; trial < 300; ++trial) {
    VertexSet a, b;
    Graph g = random_bipartite(2 + rng.below_int(7), 2 + rng.below_int(7), 25 + rng.below_int(60), rng, a, b);
    long long e = g.edge_total();
    if (e == 0) continue;
    long long delta = max_degree_between(g, a, b);
    long long target = ceil_div(e, delta);
    // random submatching below the target
    Matching seed;
    Matching full = max_matching_between(g, a, b);
    for (auto [u, v] : full.edges)
      if (seed.size() < target && rng.below(2) == 0) seed.add(u, v);
    Matching grown = matching_extend_between(g, a, b, seed, delta);
    REQUIRE(grown.vertex_disjoint());
    CHECK(grown.size() == target);
    for (auto [u, v] : seed.edges) {
      CHECK(grown.covers(u));
      CHECK(grown.covers(v));
    }
  }
}

TEST_CASE("spread_matching places prescribed side counts") {
  // (bv,bw) = (0,0) -> empty.
  Graph g(6);
  VertexSet u = VertexSet::of(6, {0, 1});
  VertexSet v = VertexSet::of(6, {2, 3});
  VertexSet w = VertexSet::of(6, {4, 5});
  g.add_edge(0, 2);
  g.add_edge(0, 4);
  g.add_edge(1, 3);
  CHECK(spread_matching(g, u, v, w, 0, 0, 2).size() == 0);

  // star into V only
  Graph star(5);
  VertexSet su = VertexSet::of(5, {0});
  VertexSet sv = VertexSet::of(5, {1, 2, 3});
  VertexSet sw = VertexSet::of(5, {4});
  star.add_edge(0, 1);
  star.add_edge(0, 2);
  star.add_edge(0, 3);
  Matching ms = spread_matching(star, su, sv, sw, 1, 0, 3);
  CHECK(ms.size() == 1);

  Rng rng(35);
  int done = 0;
  for (int trial = 0; trial < 400 && done < 200; ++trial) {
    int nu = 2 + rng.below_int(5), nv = 2 + rng.below_int(4), nw = 2 + rng.below_int(4);
    int n = nu + nv + nw;
    Graph h(n);
    VertexSet U(n), V(n), W(n);
    for (int i = 0; i < nu; ++i) U.add(i);
    for (int i = nu; i < nu + nv; ++i) V.add(i);
    for (int i = nu + nv; i < n; ++i) W.add(i);
    U.for_each([&](int a) {
      (V | W).for_each([&](int b) {
        if (rng.below(100) < 45) h.add_edge(a, b);
      });
    });
    long long e = edge_count(h, U, V | W);
    if (e == 0) continue;
    long long delta = max_degree_between(h, U, V | W);
    long long cap_all = ceil_div(e, delta);
    long long cap_v = ceil_div(edge_count(h, U, V), delta);
    long long cap_w = ceil_div(edge_count(h, U, W), delta);
    // maximal feasible pair
    long long bv = std::min(cap_v, cap_all);
    long long bw = std::min(cap_w, cap_all - bv);
    Matching m = spread_matching(h, U, V, W, bv, bw, delta);
    REQUIRE(m.vertex_disjoint());
    long long cv = 0, cw = 0;
    for (auto [a, b] : m.edges) {
      if (V.contains(a) || V.contains(b)) ++cv;
      if (W.contains(a) || W.contains(b)) ++cw;
    }
    CHECK(cv == bv);
    CHECK(cw == bw);
    ++done;
  }
  CHECK(done >= 100);
}

TEST_CASE("sparse_avoiding_matching avoids perfect restriction") {
  // Three disjoint edges, K = endpoints of the first.
  Graph g(6);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  g.add_edge(4, 5);
  VertexSet k = VertexSet::of(6, {0, 1});
  Matching m = sparse_avoiding_matching(g, k, 1, 6);  // target ceil(3/6) = 1
  CHECK(m.size() == 1);
  CHECK(!restriction_perfect_on(m, k));

  // K empty: any matching of the right size.
  Matching m2 = sparse_avoiding_matching(g, VertexSet(6), 1, 6);
  CHECK(m2.size() == 1);

  Rng rng(36);
  int done = 0;
  for (int trial = 0; trial < 200 && done < 60; ++trial) {
    int n = 8 + rng.below_int(8);
    Graph h(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.below(100) < 18) h.add_edge(u, v);
    int cap = 0;
    for (int v = 0; v < n; ++v) cap = std::max(cap, h.degree(v));
    if (cap == 0) continue;
    long long e = h.edge_total();
    if (e < 2 * cap) continue;
    long long delta = 4 * cap;  // plenty of slack
    VertexSet kk(n);
    for (int v = 0; v < n; ++v)
      if (rng.below(3) == 0) kk.add(v);
    Matching mm;
    try {
      mm = sparse_avoiding_matching(h, kk, cap, delta);
    } catch (const PreconditionError&) {
      continue;  // slack genuinely insufficient on this draw
    }
    CHECK(mm.size() == ceil_div(e, delta));
    CHECK(!restriction_perfect_on(mm, kk));
    ++done;
  }
  CHECK(done >= 30);
}

TEST_CASE("three_matchings basic and randomized") {
  // m empty, zero targets -> empty system.
  Graph g(8);
  VertexSet u = VertexSet::of(8, {0, 1, 2, 3});
  VertexSet v = VertexSet::of(8, {4, 5, 6, 7});
  auto r = three_matchings(g, u, v, Matching{}, 0, 0, 10, 0.05);
  REQUIRE(r.ok());
  CHECK(r.value().empty());

  // one cross edge plus one available U-edge -> 2-edge system with UV-path.
  Graph h(8);
  h.add_edge(0, 4);  // cross
  h.add_edge(1, 2);  // inside U
  Matching m;
  m.add(0, 4);
  auto r2 = three_matchings(h, u, v, m, 1, 0, 2, 0.6);
  REQUIRE(r2.ok());
  CHECK(r2.value().size() == 2);
  bool has_uv = false;
  for (const auto& path : r2.value().paths(8)) {
    bool fu = u.contains(path.front()), bu = u.contains(path.back());
    bool fv = v.contains(path.front()), bv = v.contains(path.back());
    if ((fu && bv) || (fv && bu)) has_uv = true;
  }
  CHECK(has_uv);

  Rng rng(37);
  int done = 0;
  for (int trial = 0; trial < 400 && done < 80; ++trial) {
    int nu = 6 + rng.below_int(8), nv = 6 + rng.below_int(8);
    int n = nu + nv;
    Graph gg(n);
    VertexSet U(n), V(n);
    for (int i = 0; i < nu; ++i) U.add(i);
    for (int i = nu; i < n; ++i) V.add(i);
    long long delta = 40;
    double rho = 0.25;
    // sparse interiors
    for (int a = 0; a < nu; ++a)
      for (int b = a + 1; b < nu; ++b)
        if (rng.below(100) < 12) gg.add_edge(a, b);
    for (int a = nu; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng.below(100) < 12) gg.add_edge(a, b);
    // a small cross matching
    Matching mm;
    int mw = rng.below_int(3);
    for (int i = 0; i < mw && i < nu && i < nv; ++i) {
      gg.add_edge(i, nu + i);
      mm.add(i, nu + i);
    }
    long long eu = edge_count(gg, U), ev = edge_count(gg, V);
    if (eu > rho * delta * delta || ev > rho * delta * delta) continue;
    long long au = rng.below(1 + std::max<long long>(0, ceil_eps(eu / static_cast<double>(delta), 0.25)));
    long long av = rng.below(1 + std::max<long long>(0, ceil_eps(ev / static_cast<double>(delta), 0.25)));
    auto res = three_matchings(gg, U, V, mm, au, av, delta, rho);
    if (!res.ok()) continue;  // structured failures allowed; successes must validate
    const PathSystem& p = res.value();
    REQUIRE(p.is_valid(n));
    CHECK(p.count_inside(U) == au);
    CHECK(p.count_inside(V) == av);
    // P[U,V] == mm
    for (auto [a, b] : p.edges()) {
      bool cross = (U.contains(a) && V.contains(b)) || (U.contains(b) && V.contains(a));
      if (cross) CHECK(mm.as_path_system().has_edge(a, b));
    }
    CHECK(p.count_between(U, V) == mm.size());
    if (!mm.empty()) {
      bool uvpath = false;
      for (const auto& path : p.paths(n)) {
        bool fu = U.contains(path.front()), bu = U.contains(path.back());
        bool fv = V.contains(path.front()), bv = V.contains(path.back());
        if ((fu && bv) || (fv && bu)) uvpath = true;
      }
      CHECK(uvpath);
    }
    ++done;
  }
  CHECK(done >= 40);
}

TEST_CASE("matching_or_hubs small certified cases") {
  // two disjoint edges, ell = 0 -> outcome (i)
  Graph two(4);
  two.add_edge(0, 1);
  two.add_edge(2, 3);
  auto r = matching_or_hubs(two, 0, 6, 3);
  REQUIRE(r.kind == MatchingOrHubs::Kind::MatchingPlusEdge);
  CHECK(r.matching.size() == 1);
  CHECK(!r.matching.covers(r.extra_edge.first));

  // star K_{1,3} with ell = 1: no matching of size 2, centre is the hub.
  Graph star(4);
  star.add_edge(0, 1);
  star.add_edge(0, 2);
  star.add_edge(0, 3);
  auto r2 = matching_or_hubs(star, 1, 6, 3);
  REQUIRE(r2.kind == MatchingOrHubs::Kind::Hubs);
  REQUIRE(r2.hubs.size() == 1);
  CHECK(r2.hubs[0] == 0);
  CHECK(r2.hubs_cover_all_edges);

  // triangle at (6,3,1): neither outcome exists (desk-scale counterexample
  // to the asymptotic statement).
  Graph tri = complete_graph(3);
  auto r3 = matching_or_hubs(tri, 1, 6, 3);
  CHECK(r3.kind == MatchingOrHubs::Kind::Neither);
}

TEST_CASE("matching_or_hubs certified on random graphs") {
  Rng rng(38);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 4 + rng.below_int(7);
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.below(100) < 35) g.add_edge(u, v);
    int maxdeg = 0;
    for (int v = 0; v < n; ++v) maxdeg = std::max(maxdeg, g.degree(v));
    if (maxdeg > 6) continue;
    long long ell = rng.below(3);
    if (g.edge_total() < (ell - 1) * 6 + 3) continue;
    auto r = matching_or_hubs(g, ell, 6, 3);
    if (r.kind == MatchingOrHubs::Kind::MatchingPlusEdge) {
      CHECK(r.matching.size() == ell + 1);
      CHECK(r.matching.vertex_disjoint());
      for (auto [u, v] : r.matching.edges) CHECK(g.has_edge(u, v));
      CHECK(g.has_edge(r.extra_edge.first, r.extra_edge.second));
      CHECK(!r.matching.covers(r.extra_edge.first));
    } else if (r.kind == MatchingOrHubs::Kind::Hubs) {
      CHECK(static_cast<long long>(r.hubs.size()) == ell);
      for (int h : r.hubs) CHECK(g.degree(h) >= 3);
    }
  }
}

TEST_CASE("extend_matching_casei") {
  // X = {0,1}, Y = {2..6}; M = {02, 13}; M' = {23}? overlaps; build the
  // perfect-restriction scenario: M' perfectly matches V(M)∩Y = {2,3}.
  VertexSet x = VertexSet::of(8, {0, 1});
  VertexSet y = VertexSet::of(8, {2, 3, 4, 5, 6, 7});
  Matching m;
  m.add(0, 2);
  m.add(1, 3);
  Matching mprime;
  mprime.add(2, 3);  // perfectly matches {2,3}
  auto r = extend_matching_casei(8, x, y, m, mprime, {4, 5});
  REQUIRE(r.ok());
  const PathSystem& p = r.value();
  CHECK(p.count_inside(y) == 1);
  int xy_paths = 0;
  for (const auto& path : p.paths(8)) {
    bool fx = x.contains(path.front()), bx = x.contains(path.back());
    bool fy = y.contains(path.front()), by = y.contains(path.back());
    if ((fx && by) || (fy && bx)) ++xy_paths;
  }
  CHECK(xy_paths >= 2);

  // If M ∪ M' already has an XY-path we just take the union.
  Matching mp2;
  mp2.add(4, 5);
  auto r2 = extend_matching_casei(8, x, y, m, mp2, {6, 7});
  REQUIRE(r2.ok());
  CHECK(r2.value().count_inside(y) == 1);

  CHECK_THROWS_AS(extend_matching_casei(8, x, y, Matching{}, mprime, {4, 5}), PreconditionError);
}

TEST_CASE("hub_paths cherries and pendants") {
  // no hubs, m one edge -> P = m
  Graph g(8);
  VertexSet x = VertexSet::of(8, {0, 1});
  VertexSet y = VertexSet::of(8, {2, 3, 4, 5, 6, 7});
  g.add_edge(0, 2);
  Matching m;
  m.add(0, 2);
  auto r = hub_paths(g, x, y, m, {}, 0);
  REQUIRE(r.ok());
  CHECK(r.value().size() == 1);

  // one hub not in V(m), r = 1 -> a cherry trimmed to e_P(Y) = 2.
  Graph h(8);
  h.add_edge(0, 2);
  h.add_edge(3, 4);
  h.add_edge(3, 5);
  h.add_edge(3, 6);
  Matching m2;
  m2.add(0, 2);
  auto r2 = hub_paths(h, x, y, m2, {3}, 1);
  REQUIRE(r2.ok());
  CHECK(r2.value().count_inside(y) == 2);

  // hub inside V(m): pendant edge only.
  Graph h3(8);
  h3.add_edge(0, 2);
  h3.add_edge(2, 5);
  h3.add_edge(2, 6);
  Matching m3;
  m3.add(0, 2);
  auto r3 = hub_paths(h3, x, y, m3, {2}, 0);
  REQUIRE(r3.ok());
  CHECK(r3.value().count_inside(y) == 1);
  // the m-edge still lies on an XY-path (x endpoint 0, y endpoint the pendant)
  bool ok_path = false;
  for (const auto& path : r3.value().paths(8)) {
    bool fx = x.contains(path.front()), bx = x.contains(path.back());
    bool fy = y.contains(path.front()), by = y.contains(path.back());
    if ((fx && by) || (fy && bx)) ok_path = true;
  }
  CHECK(ok_path);
}
