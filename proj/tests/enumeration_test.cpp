#include "hamrobust/enumeration.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace hamrobust;

TEST_CASE("canonical code is an isomorphism invariant") {
  // C5 under two different labellings.
  PackedGraph a;
  a.n = 5;
  for (int i = 0; i < 5; ++i) a.add_edge(i, (i + 1) % 5);
  PackedGraph b;
  b.n = 5;
  int perm[5] = {3, 1, 4, 0, 2};
  for (int i = 0; i < 5; ++i) b.add_edge(perm[i], perm[(i + 1) % 5]);
  CHECK(canonical_code(a) == canonical_code(b));

  // P4 vs K_{1,3}: same degree sum, different graphs.
  PackedGraph p4;
  p4.n = 4;
  p4.add_edge(0, 1);
  p4.add_edge(1, 2);
  p4.add_edge(2, 3);
  PackedGraph star;
  star.n = 4;
  star.add_edge(0, 1);
  star.add_edge(0, 2);
  star.add_edge(0, 3);
  CHECK(canonical_code(p4) != canonical_code(star));
}

TEST_CASE("graph counts up to isomorphism match the known sequence") {
  const long long expected[] = {0, 1, 2, 4, 11, 34, 156, 1044, 12346};
  for (int n = 1; n <= 8; ++n) {
    auto graphs = graphs_up_to_iso(n);
    CHECK(static_cast<long long>(graphs.size()) == expected[n]);
  }
}

TEST_CASE("representatives are pairwise non-isomorphic and canonical") {
  auto graphs = graphs_up_to_iso(6);
  std::unordered_set<std::uint64_t> codes;
  for (const auto& g : graphs) {
    auto code = canonical_code(g);
    CHECK(!codes.count(code));
    codes.insert(code);
    // unpack/pack sanity
    Graph gg = g.unpack();
    CHECK(gg.n() == 6);
    CHECK(gg.edge_total() == g.edge_count());
  }
}
