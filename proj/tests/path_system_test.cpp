#include "hamrobust/path_system.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "hamrobust/generators.hpp"

using namespace hamrobust;

namespace {

// Independent validity oracle: every component is a path (degrees <= 2 and
// |edges| = |vertices| - 1 per component).
bool brute_is_path_system(const std::vector<std::pair<int, int>>& edges, int n) {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    if (u == v || u < 0 || v < 0 || u >= n || v >= n) return false;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (int v = 0; v < n; ++v)
    if (adj[v].size() > 2) return false;
  std::vector<int> comp(n, -1);
  int c = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] != -1 || adj[s].empty()) continue;
    std::vector<int> stack{s};
    comp[s] = c;
    int vcount = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      ++vcount;
      for (int u : adj[v])
        if (comp[u] == -1) {
          comp[u] = c;
          stack.push_back(u);
        }
    }
    int ecount = 0;
    for (auto [u, v] : edges)
      if (comp[u] == c) ++ecount;
    if (ecount != vcount - 1) return false;
    ++c;
  }
  return true;
}

PartitionSpec three_class_spec(int n, const std::vector<int>& v1, const std::vector<int>& v2,
                               const std::vector<int>& a, const std::vector<int>& b) {
  PartitionSpec spec;
  spec.expander = {VertexSet::from(n, v1), VertexSet::from(n, v2)};
  spec.bipartite = {{VertexSet::from(n, a), VertexSet::from(n, b)}};
  spec.params = {0.05, 0.1, 0.2, 0.3};
  return spec;
}

}  // namespace

TEST_CASE("path system validator equals brute-force decomposition") {
  Rng rng(101);
  int n = 10;
  for (int trial = 0; trial < 400; ++trial) {
    int m = rng.below_int(11);
    std::vector<std::pair<int, int>> edges;
    PathSystem p;
    for (int i = 0; i < m; ++i) {
      int u = rng.below_int(n), v = rng.below_int(n);
      if (u == v) continue;
      edges.emplace_back(std::min(u, v), std::max(u, v));
      p.add_edge(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    CHECK(p.is_valid(n) == brute_is_path_system(edges, n));
  }
}

TEST_CASE("reduced multigraph basics") {
  int n = 8;
  auto spec = three_class_spec(n, {0, 1}, {2, 3}, {4, 5}, {6, 7});

  PathSystem single;
  single.add_edge(0, 2);  // V1 - V2
  auto r = reduced_multigraph(single, spec, n);
  REQUIRE(r.edges.size() == 1);
  CHECK(r.edges[0] == std::make_pair(0, 1));

  PathSystem loop;  // a - u - a' with a,a' in A, u in V1 -> loop at W
  loop.add_edge(4, 0);
  loop.add_edge(0, 5);
  auto r2 = reduced_multigraph(loop, spec, n);
  REQUIRE(r2.edges.size() == 1);
  CHECK(r2.edges[0] == std::make_pair(2, 2));
}

TEST_CASE("euler tour verdicts") {
  ReducedMultigraph tri{3, {{0, 1}, {1, 2}, {0, 2}}};
  CHECK(check_euler_tour(tri));

  ReducedMultigraph single{3, {{0, 1}}};
  CHECK(!check_euler_tour(single));

  ReducedMultigraph two_loops{2, {{0, 0}, {1, 1}}};
  CHECK(!check_euler_tour(two_loops));
}

TEST_CASE("euler verdict agrees with explicit Hierholzer walk") {
  Rng rng(102);
  for (int trial = 0; trial < 600; ++trial) {
    int classes = 2 + rng.below_int(3);
    int m = 1 + rng.below_int(8);
    ReducedMultigraph r;
    r.class_count = classes;
    for (int i = 0; i < m; ++i) {
      int a = rng.below_int(classes), b = rng.below_int(classes);
      if (a > b) std::swap(a, b);
      r.edges.emplace_back(a, b);
    }
    auto walk = hierholzer_tour(r);
    CHECK(check_euler_tour(r) == walk.has_value());
    if (walk) {
      // walk uses every edge exactly once
      CHECK(walk->size() == r.edges.size() + 1);
      CHECK(walk->front() == walk->back());
    }
  }
}

TEST_CASE("degree profile") {
  VertexSet a = VertexSet::of(8, {4, 5});
  PathSystem matching;
  matching.add_edge(4, 0);
  matching.add_edge(5, 1);
  CHECK(degree_profile(matching, a) == std::make_pair(2, 0));

  PathSystem through;
  through.add_edge(0, 4);
  through.add_edge(4, 1);
  CHECK(degree_profile(through, a) == std::make_pair(0, 1));
}

TEST_CASE("balance functional") {
  int n = 6;
  VertexSet a = VertexSet::of(n, {0, 1}), b = VertexSet::of(n, {2, 3}), u = VertexSet::of(n, {4, 5});
  PathSystem inside_a;
  inside_a.add_edge(0, 1);
  CHECK(balance_of(inside_a, a, b, u) == HalfInt::whole(1));

  PathSystem cancel;
  cancel.add_edge(0, 4);
  cancel.add_edge(2, 5);
  CHECK(balance_of(cancel, a, b, u) == HalfInt::whole(0));

  PathSystem half;
  half.add_edge(0, 4);
  CHECK(half.count_between(a, u) == 1);
  CHECK(balance_of(half, a, b, u).twice == 1);  // exact half-integer value 1/2
}

TEST_CASE("ceil_eps") {
  CHECK(ceil_eps(2.25, 0.25) == 2);
  CHECK(ceil_eps(2.3, 0.25) == 3);
  CHECK(ceil_eps(0.0, 0.25) == 0);
  CHECK(ceil_eps(Rat(9, 4), Rat(1, 4)) == 2);
}

TEST_CASE("character_of") {
  // e(A) = 25, e(A,U) = 33, Delta = 10, eps = 1/4 -> (3, 4).
  int na = 12, nu = 12;
  Graph g(na + nu);
  VertexSet a(na + nu), u(na + nu);
  for (int i = 0; i < na; ++i) a.add(i);
  for (int i = na; i < na + nu; ++i) u.add(i);
  int added = 0;
  for (int d = 1; d < na && added < 25; ++d)
    for (int i = 0; i < na && added < 25; ++i) {
      int j = (i + d) % na;
      if (!g.has_edge(i, j)) {
        g.add_edge(i, j);
        ++added;
      }
    }
  REQUIRE(added == 25);
  added = 0;
  for (int d = 0; d < nu && added < 33; ++d)
    for (int i = 0; i < na && added < 33; ++i) {
      g.add_edge(i, na + (i + d) % nu);
      ++added;
    }
  REQUIRE(edge_count(g, a) == 25);
  REQUIRE(edge_count(g, a, u) == 33);
  Character ch = character_of(g, a, u, 10.0, 0.25);
  CHECK(ch.ell_a == 3);
  CHECK(ch.m_au == 4);

  Graph empty(4);
  VertexSet ea = VertexSet::of(4, {0, 1}), eu = VertexSet::of(4, {2, 3});
  Character ch0 = character_of(empty, ea, eu, 10.0, 0.25);
  CHECK(ch0.ell_a == 0);
  CHECK(ch0.m_au == 0);

  // Degree-cap precondition.
  Graph star(5);
  for (int i = 1; i < 5; ++i) star.add_edge(0, i);
  VertexSet sa = VertexSet::of(5, {0, 1, 2, 3, 4});
  CHECK_THROWS_AS(character_of(star, sa, VertexSet(5), 3.0, 0.25), PreconditionError);
}

TEST_CASE("character lower bound on edges (derived identity)") {
  // Whenever Delta'/Delta <= eps, e(A) >= (ell-1)*Delta + Delta'.
  Rng rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    int na = 6 + rng.below_int(6);
    Graph g(na + 4);
    VertexSet a(na + 4), u(na + 4);
    for (int i = 0; i < na; ++i) a.add(i);
    for (int i = na; i < na + 4; ++i) u.add(i);
    for (int i = 0; i < na; ++i)
      for (int j = i + 1; j < na; ++j)
        if (rng.below(100) < 30) g.add_edge(i, j);
    double delta = std::max(1, max_degree_inside(g, a));
    double eps = 0.25;
    double delta_prime = eps * delta;
    Character ch = character_of(g, a, u, delta, eps);
    CHECK(static_cast<double>(edge_count(g, a)) >= (ch.ell_a - 1) * delta + delta_prime - 1e-9);
  }
}

TEST_CASE("fact2 / regbal identity on regular graphs") {
  Rng rng(104);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 8 + 2 * rng.below_int(10);
    int d = 3 + rng.below_int(std::max(1, n / 2 - 3));
    if ((n * d) % 2 != 0) continue;
    Graph g;
    try {
      g = random_regular(n, d, trial + 500);
    } catch (const ConstructionError&) {
      continue;
    }
    VertexSet a(n), b(n), u(n);
    for (int v = 0; v < n; ++v) {
      switch (rng.below(3)) {
        case 0: a.add(v); break;
        case 1: b.add(v); break;
        default: u.add(v); break;
      }
    }
    long long lhs = 2 * (edge_count(g, a) - edge_count(g, b)) + edge_count(g, a, u) - edge_count(g, b, u);
    CHECK(lhs == static_cast<long long>(d) * (a.count() - b.count()));
  }
}

TEST_CASE("matching size bound ell + m/2 >= |A| - |B| on regular graphs") {
  Rng rng(105);
  int done = 0;
  for (int trial = 0; trial < 2500 && done < 60; ++trial) {
    int n = 10 + 2 * rng.below_int(8);
    int d = 4 + 2 * rng.below_int(3);
    if (d >= n) continue;
    Graph g;
    try {
      g = random_regular(n, d, trial + 900);
    } catch (const ConstructionError&) {
      continue;
    }
    // Keep A small so the D/2 degree caps usually hold.
    VertexSet a(n), b(n), u(n);
    for (int v = 0; v < n; ++v) {
      switch (rng.below(6)) {
        case 0: a.add(v); break;
        case 1: b.add(v); break;
        default: u.add(v); break;
      }
    }
    if (a.count() < b.count()) std::swap(a, b);
    if (max_degree_inside(g, a) > d / 2.0 || max_degree_between(g, a, u) > d / 2.0) continue;
    Character ch = character_of(g, a, u, d / 2.0, 0.25);
    CHECK(ch.ell_a + ch.m_au / 2 >= a.count() - b.count());
    ++done;
  }
  CHECK(done >= 12);
}

TEST_CASE("check_d_balanced") {
  // Any D-regular graph with any ordered partition is D-balanced.
  Graph g = random_regular(12, 4, 77);
  VertexSet a1 = VertexSet::of(12, {0, 1, 2}), b1 = VertexSet::of(12, {3, 4});
  VertexSet a2 = VertexSet::of(12, {5, 6, 7, 8}), b2 = VertexSet::of(12, {9, 10, 11});
  CHECK(check_d_balanced(g, a1, b1, a2, b2, 4));

  Graph empty(8);
  VertexSet p1 = VertexSet::of(8, {0, 1}), q1 = VertexSet::of(8, {2, 3});
  VertexSet p2 = VertexSet::of(8, {4, 5}), q2 = VertexSet::of(8, {6, 7});
  CHECK(check_d_balanced(empty, p1, q1, p2, q2, 5));

  VertexSet r1 = VertexSet::of(8, {0, 1, 2}), s1 = VertexSet::of(8, {3});
  CHECK(!check_d_balanced(empty, r1, s1, p2, q2, 5));
}

TEST_CASE("v-tour checker clauses") {
  int n = 8;
  // Two expander classes only.
  PartitionSpec spec;
  spec.expander = {VertexSet::of(n, {0, 1, 2, 3}), VertexSet::of(n, {4, 5, 6, 7})};
  spec.params = {0.05, 0.1, 0.2, {}};
  Graph g(n);
  g.add_edge(0, 4);
  g.add_edge(1, 5);
  PathSystem p;
  p.add_edge(0, 4);
  p.add_edge(1, 5);
  auto rep = check_v_tour(g, spec, p, 0.5);
  CHECK(rep.euler);
  CHECK(rep.overall());

  // A tour missing a class fails.
  PartitionSpec spec3;
  spec3.expander = {VertexSet::of(n, {0, 1, 2}), VertexSet::of(n, {3, 4, 5}), VertexSet::of(n, {6, 7})};
  spec3.params = spec.params;
  auto rep3 = check_v_tour(g, spec3, p, 0.5);
  CHECK(!rep3.euler);
  CHECK(!rep3.overall());
}

TEST_CASE("basic connector checker") {
  int n = 11;
  auto spec = three_class_spec(n, {0, 1}, {2, 3}, {4, 5, 6, 7}, {8, 9, 10});
  Graph g(n);

  PathSystem good;  // 2 A-V1 edges + 2 A-V2 edges
  good.add_edge(0, 4);
  good.add_edge(1, 5);
  good.add_edge(2, 6);
  good.add_edge(3, 7);
  auto rep = check_basic_connector(g, spec, good);
  CHECK(rep.overall());
  CHECK(rep.bal == HalfInt::whole(2));
  CHECK(rep.profile == std::make_pair(4, 0));

  PathSystem lone;
  lone.add_edge(0, 4);
  auto rep2 = check_basic_connector(g, spec, lone);
  CHECK(!rep2.bc1);
  CHECK(!rep2.overall());
}

TEST_CASE("p123 checker") {
  int n = 10;
  auto spec = three_class_spec(n, {0, 1}, {2, 3}, {4, 5, 6}, {7, 8, 9});
  Graph g(n);
  Character ch;
  ch.ell_a = 0;
  ch.m_au = 0;

  PathSystem empty;
  auto rep = check_p123(g, spec, empty, ch);
  CHECK(rep.p2);   // |A| = |B| and bal = 0
  CHECK(!rep.p3);  // no Euler tour

  PathSystem oversized;  // ell+m+7 edges with ell=m=0, inside V1 ∪ V2 ∪ W arbitrarily
  oversized.add_edge(0, 2);
  oversized.add_edge(1, 3);
  oversized.add_edge(4, 0);
  oversized.add_edge(5, 1);
  oversized.add_edge(6, 2);
  oversized.add_edge(7, 3);
  oversized.add_edge(8, 9);
  auto rep2 = check_p123(g, spec, oversized, ch);
  CHECK(!rep2.p1);
}

TEST_CASE("path system JSON round trip") {
  PathSystem p;
  p.add_edge(3, 1);
  p.add_edge(5, 2);
  ordered_json j = to_json(p);
  PathSystem q = path_system_from_json(j);
  CHECK(p.edges() == q.edges());
  CHECK(j.dump() == "{\"edges\":[[1,3],[2,5]]}");
}
