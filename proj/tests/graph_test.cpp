#include "hamrobust/graph.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "hamrobust/generators.hpp"

using namespace hamrobust;

namespace {

Graph petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

// Independent oracle: smallest vertex set whose removal disconnects the
// graph (or n-1 for complete graphs), by subset enumeration.
int brute_force_connectivity(const Graph& g) {
  int n = g.n();
  for (int k = 0; k <= n - 2; ++k) {
    for (int mask = 0; mask < (1 << n); ++mask) {
      if (std::popcount(static_cast<unsigned>(mask)) != k) continue;
      VertexSet s(n);
      for (int v = 0; v < n; ++v)
        if (mask & (1 << v)) s.add(v);
      int rest = n - k;
      if (rest < 2) continue;
      if (component_count_without(g, s) >= 2) return k;
    }
  }
  return n - 1;
}

}  // namespace

TEST_CASE("edge_count on the 4-cycle") {
  Graph g = cycle_graph(4);
  CHECK(edge_count(g, VertexSet::full(4)) == 4);
  CHECK(edge_count(g, VertexSet::of(4, {0}), VertexSet::of(4, {2, 3})) == 1);
}

TEST_CASE("handshake identity on a random 3-regular graph") {
  Graph g = random_regular(12, 3, 7);
  VertexSet all = VertexSet::full(12);
  long long degsum = 0;
  for (int v = 0; v < 12; ++v) degsum += g.degree_in(v, all);
  CHECK(degsum == 2 * edge_count(g, all));

  // Restricted handshake on an arbitrary subset.
  VertexSet s = VertexSet::of(12, {0, 2, 3, 7, 8, 11});
  long long inner = 0;
  s.for_each([&](int v) { inner += g.degree_in(v, s); });
  CHECK(inner == 2 * edge_count(g, s));
}

TEST_CASE("edge_count splits over disjoint unions") {
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 6 + rng.below_int(10);
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.below(100) < 40) g.add_edge(u, v);
    VertexSet s(n), t(n);
    for (int v = 0; v < n; ++v) {
      switch (rng.below(3)) {
        case 0: s.add(v); break;
        case 1: t.add(v); break;
        default: break;
      }
    }
    CHECK(edge_count(g, s | t) == edge_count(g, s) + edge_count(g, t) + edge_count(g, s, t));
  }
}

TEST_CASE("edge_count with overlapping sets counts inner edges once") {
  // Triangle; S = {0,1}, T = {1,2}.  Edges: 01 (S-side only), 12 (T inner
  // touching S∩T), 02 (one endpoint in each).  Edge 01: 0 in S, 1 in T -> in.
  // Edge 12: 1 in S, 2 in T -> in.  Edge 02: 0 in S, 2 in T -> in.
  Graph g = complete_graph(3);
  CHECK(edge_count(g, VertexSet::of(3, {0, 1}), VertexSet::of(3, {1, 2})) == 3);
  // S = T = whole triangle: every edge has one endpoint in S and one in T,
  // counted once each.
  CHECK(edge_count(g, VertexSet::full(3), VertexSet::full(3)) == 3);
}

TEST_CASE("neighbourhood basics") {
  Graph p(3);
  p.add_edge(0, 1);
  p.add_edge(1, 2);
  CHECK(neighbourhood(p, VertexSet::of(3, {1})) == VertexSet::of(3, {0, 2}));
  CHECK(neighbourhood(p, VertexSet(3)).empty());

  Graph pg = petersen();
  CHECK(neighbourhood(pg, VertexSet::of(10, {0})).count() == 3);
}

TEST_CASE("vertex connectivity on small named graphs") {
  CHECK(vertex_connectivity(complete_graph(5)) == 4);
  CHECK(vertex_connectivity(cycle_graph(4)) == 2);
  CHECK(vertex_connectivity(petersen()) == 3);
  CHECK(brute_force_connectivity(petersen()) == 3);
  CHECK_THROWS_AS(vertex_connectivity(Graph(1)), InputError);
}

TEST_CASE("vertex connectivity matches subset-enumeration oracle") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 4 + rng.below_int(5);
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.below(100) < 55) g.add_edge(u, v);
    if (n < 2) continue;
    CHECK(vertex_connectivity(g) == brute_force_connectivity(g));
  }
}

TEST_CASE("minimum vertex cut disconnects") {
  Rng rng(11);
  int checked = 0;
  for (int trial = 0; trial < 40 && checked < 10; ++trial) {
    int n = 5 + rng.below_int(4);
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.below(100) < 50) g.add_edge(u, v);
    int kappa = vertex_connectivity(g);
    if (kappa == 0 || kappa >= n - 1) continue;
    auto cut = minimum_vertex_cut(g);
    REQUIRE(static_cast<int>(cut.size()) == kappa);
    CHECK(component_count_without(g, VertexSet::from(n, cut)) >= 2);
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("regular_degree") {
  CHECK(regular_degree(complete_graph(4)) == 3);
  Graph p(3);
  p.add_edge(0, 1);
  p.add_edge(1, 2);
  CHECK(!regular_degree(p).has_value());
}

TEST_CASE("edge list round trip and whitespace tolerance") {
  Graph g = petersen();
  std::string text = write_edge_list(g);
  Graph h = read_edge_list(text);
  CHECK(g == h);

  Graph k = read_edge_list("3\t2\n 0   1\n1\t\t2\n");
  CHECK(k.n() == 3);
  CHECK(k.has_edge(0, 1));
  CHECK(k.has_edge(1, 2));
  CHECK(!k.has_edge(0, 2));

  CHECK_THROWS_AS(read_edge_list("2 1\n0 2\n"), InputError);
  CHECK_THROWS_AS(read_edge_list("2 x\n"), InputError);
  CHECK_THROWS_AS(read_edge_list("4 2\n0 1\n"), InputError);
}

TEST_CASE("k-regular complete graph connectivity identity") {
  for (int n = 2; n <= 7; ++n) CHECK(vertex_connectivity(complete_graph(n)) == n - 1);
}
