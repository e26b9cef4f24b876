#include "hamrobust/oracles.hpp"

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

}  // namespace

TEST_CASE("find_hamilton on named graphs") {
  Graph c5 = cycle_graph(5);
  auto r = find_hamilton(c5);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(is_valid_cycle(c5, r.cycle));
  CHECK(r.cycle.size() == 5);

  auto rp = find_hamilton(petersen());
  CHECK(rp.status == SearchStatus::None);

  auto [g17, d17] = build_extremal_gn(17);
  CHECK(find_hamilton(g17).status == SearchStatus::None);

  Graph k6 = complete_graph(6);
  auto rk = find_hamilton(k6);
  REQUIRE(rk.status == SearchStatus::Found);
  CHECK(check_dominating(k6, rk.cycle));
}

TEST_CASE("longest cycle") {
  Graph k4 = complete_graph(4);
  auto r = longest_cycle(k4);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(r.cycle.size() == 4);

  Graph two_tri(5);
  two_tri.add_edge(0, 1);
  two_tri.add_edge(1, 2);
  two_tri.add_edge(0, 2);
  two_tri.add_edge(0, 3);
  two_tri.add_edge(3, 4);
  two_tri.add_edge(0, 4);
  auto r2 = longest_cycle(two_tri);
  REQUIRE(r2.status == SearchStatus::Found);
  CHECK(r2.cycle.size() == 3);

  Graph tree(4);
  tree.add_edge(0, 1);
  tree.add_edge(1, 2);
  tree.add_edge(2, 3);
  CHECK_THROWS_AS(longest_cycle(tree), InputError);
}

TEST_CASE("longest cycles on dense regular instances are dominating") {
  int done = 0;
  for (int seed = 0; seed < 30 && done < 8; ++seed) {
    Graph g;
    try {
      g = random_regular(12, 4, seed + 4000);
    } catch (const ConstructionError&) {
      continue;
    }
    if (vertex_connectivity(g) < 3) continue;
    auto r = longest_cycle(g);
    REQUIRE(r.status == SearchStatus::Found);
    CHECK(check_dominating(g, r.cycle));
    ++done;
  }
  CHECK(done >= 5);
}

TEST_CASE("check_dominating") {
  Graph k4 = complete_graph(4);
  CHECK(check_dominating(k4, {0, 1, 2}));  // single leftover vertex

  Graph dtri(6);
  dtri.add_edge(0, 1);
  dtri.add_edge(1, 2);
  dtri.add_edge(0, 2);
  dtri.add_edge(3, 4);
  dtri.add_edge(4, 5);
  dtri.add_edge(3, 5);
  CHECK(!check_dominating(dtri, {0, 1, 2}));
  CHECK_THROWS_AS(check_dominating(dtri, {0, 1, 3}), InputError);
}

TEST_CASE("complete_to_hamilton") {
  Graph c6 = cycle_graph(6);
  auto r = complete_to_hamilton(c6, PathSystem{});
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(r.cycle.size() == 6);

  // Forced chord in C6 + chord: no Hamilton cycle uses the chord.
  Graph g = cycle_graph(6);
  g.add_edge(0, 3);
  PathSystem chord;
  chord.add_edge(0, 3);
  auto r2 = complete_to_hamilton(g, chord);
  CHECK(r2.status == SearchStatus::None);

  // Forced path along the cycle works.
  PathSystem seg;
  seg.add_edge(1, 2);
  seg.add_edge(2, 3);
  auto r3 = complete_to_hamilton(g, seg);
  REQUIRE(r3.status == SearchStatus::Found);
  CHECK(is_valid_cycle(g, r3.cycle));
}

TEST_CASE("find_hamilton agrees with complete_to_hamilton(empty)") {
  Rng rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 5 + rng.below_int(8);
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.below(100) < 40) g.add_edge(u, v);
    auto a = find_hamilton(g);
    auto b = complete_to_hamilton(g, PathSystem{});
    CHECK(a.status == b.status);
    if (a.status == SearchStatus::Found) {
      CHECK(is_valid_cycle(g, a.cycle));
      CHECK(is_valid_cycle(g, b.cycle));
      CHECK(check_dominating(g, a.cycle));
    }
  }
}

TEST_CASE("exhaustive_path_system") {
  Graph g = complete_graph(5);
  // lexicographically-first single edge
  auto r = exhaustive_path_system(
      g, [](const PathSystem& p) { return p.size() == 1; }, 2);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(r.system.edges() == std::vector<std::pair<int, int>>{{0, 1}});

  // max_edges = 0 with a nonempty requirement: definitive none.
  auto r2 = exhaustive_path_system(
      g, [](const PathSystem& p) { return p.size() >= 1; }, 0);
  CHECK(r2.status == SearchStatus::None);

  // first 2-edge system: {01, 23} (02 shares vertex structure is fine but
  // lex order prefers 01 then the smallest compatible edge 02 -> path)
  auto r3 = exhaustive_path_system(
      g, [](const PathSystem& p) { return p.size() == 2; }, 2);
  REQUIRE(r3.status == SearchStatus::Found);
  CHECK(r3.system.size() == 2);
  CHECK(r3.system.has_edge(0, 1));
  CHECK(r3.system.has_edge(0, 2));
}

TEST_CASE("extend_to_v_tour completes a cross edge into a tour") {
  // Two complete blocks joined by two cross edges; base system has one.
  int n = 12;
  Graph g(n);
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b) {
      g.add_edge(a, b);
      g.add_edge(a + 6, b + 6);
    }
  g.add_edge(0, 6);
  g.add_edge(1, 7);
  PartitionSpec spec;
  spec.expander = {VertexSet::of(n, {0, 1, 2, 3, 4, 5}), VertexSet::of(n, {6, 7, 8, 9, 10, 11})};
  spec.params = {0.05, 0.05, 0.2, {}};
  PathSystem base;
  base.add_edge(0, 6);
  REQUIRE(!check_v_tour(g, spec, base, 0.5).overall());
  auto r = extend_to_v_tour(g, spec, base, 0.5, 3);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(r.system.size() == 2);
  CHECK(check_v_tour(g, spec, r.system, 0.5).overall());
}
