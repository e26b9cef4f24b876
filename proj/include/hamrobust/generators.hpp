#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "hamrobust/graph.hpp"
#include "hamrobust/partition.hpp"

namespace hamrobust {

inline Graph complete_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

inline Graph cycle_graph(int n) {
  if (n < 3) throw InputError("cycle_graph: n >= 3 required");
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

// ---------------------------------------------------------------------------
// Classical decompositions of complete graphs, used to realize prescribed
// near-regular degree sequences deterministically.

// Hamilton decomposition of K_s for odd s (Walecki): (s-1)/2 cycles, each a
// Hamilton cycle, together covering every edge exactly once.
inline std::vector<std::vector<int>> walecki_cycles(int s) {
  if (s < 3 || s % 2 == 0) throw InputError("walecki_cycles: s must be odd and >= 3");
  int m = (s - 1) / 2;
  int hub = s - 1;  // vertices 0..s-2 on a cycle of length 2m, plus hub
  std::vector<int> offs;
  offs.push_back(0);
  for (int t = 1; t < m; ++t) {
    offs.push_back(t);
    offs.push_back(-t);
  }
  offs.push_back(m);
  std::vector<std::vector<int>> cycles;
  for (int j = 0; j < m; ++j) {
    std::vector<int> seq{hub};
    for (int o : offs) seq.push_back(((j + o) % (2 * m) + 2 * m) % (2 * m));
    cycles.push_back(seq);
  }
  return cycles;
}

// Round-robin 1-factorization of K_s for even s: s-1 perfect matchings.
inline std::vector<std::vector<std::pair<int, int>>> one_factorization(int s) {
  if (s < 2 || s % 2 == 1) throw InputError("one_factorization: s must be even and >= 2");
  int m = s / 2;
  std::vector<std::vector<std::pair<int, int>>> factors;
  for (int r = 0; r < s - 1; ++r) {
    std::vector<std::pair<int, int>> f;
    f.emplace_back(s - 1, r);
    for (int i = 1; i < m; ++i) {
      int u = (r + i) % (s - 1);
      int v = ((r - i) % (s - 1) + (s - 1)) % (s - 1);
      f.emplace_back(u, v);
    }
    factors.push_back(f);
  }
  return factors;
}

// ---------------------------------------------------------------------------
// Deterministic near-regular block builders.  Planted blocks must actually
// expand, so interiors are circulant-based (striped) rather than arbitrary
// realizations of the degree sequence.

// D-regular circulant on s vertices (offsets 1..D/2, plus the antipodal
// offset when D is odd and s even).
inline std::vector<std::pair<int, int>> circulant_edges(int s, int d, const std::string& context) {
  if (d < 0 || d >= s) throw ConstructionError(context + ": circulant needs 0 <= D < s");
  if (d % 2 == 1 && s % 2 == 1) throw ConstructionError(context + ": sD odd");
  std::vector<std::pair<int, int>> edges;
  for (int o = 1; o <= d / 2; ++o)
    for (int v = 0; v < s; ++v) {
      int u = (v + o) % s;
      if (v < u) edges.emplace_back(v, u);
      else edges.emplace_back(u, v);
    }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (d % 2 == 1)
    for (int v = 0; v < s / 2; ++v) edges.emplace_back(v, v + s / 2);
  return edges;
}

// Bipartite graph with prescribed side degrees, built by striped augmenting
// paths (earliest arcs follow the diagonals of A x B, so the result is
// banded and expands well).
inline std::vector<std::pair<int, int>> striped_bipartite_edges(const std::vector<int>& da,
                                                                const std::vector<int>& db,
                                                                const std::string& context) {
  int a = static_cast<int>(da.size()), b = static_cast<int>(db.size());
  long long sa = std::accumulate(da.begin(), da.end(), 0LL);
  long long sb = std::accumulate(db.begin(), db.end(), 0LL);
  if (sa != sb) throw ConstructionError(context + ": bipartite degree sums differ");
  for (int i = 0; i < a; ++i)
    if (da[i] < 0 || da[i] > b) throw ConstructionError(context + ": A-side demand infeasible");
  for (int j = 0; j < b; ++j)
    if (db[j] < 0 || db[j] > a) throw ConstructionError(context + ": B-side demand infeasible");
  std::vector<std::vector<char>> used(a, std::vector<char>(b, 0));
  std::vector<int> ra = da, rb = db;
  // Striped greedy pass.
  for (int off = 0; off < b; ++off)
    for (int i = 0; i < a; ++i) {
      if (ra[i] == 0) continue;
      int j = b == 0 ? 0 : (i + off) % b;
      if (rb[j] > 0 && !used[i][j]) {
        used[i][j] = 1;
        --ra[i];
        --rb[j];
      }
    }
  // Augmenting repair for any remaining demand: alternating path
  // a0 -> free b -> ... flipping used edges.
  for (int i = 0; i < a; ++i) {
    while (ra[i] > 0) {
      std::vector<int> par_a(a, -2), par_b(b, -2);
      std::vector<int> qa{i};
      par_a[i] = -1;
      int found_b = -1;
      while (!qa.empty() && found_b == -1) {
        std::vector<int> qb;
        for (int x : qa)
          for (int j = 0; j < b && found_b == -1; ++j) {
            if (used[x][j] || par_b[j] != -2) continue;
            par_b[j] = x;
            if (rb[j] > 0) found_b = j;
            else qb.push_back(j);
          }
        qa.clear();
        if (found_b != -1) break;
        for (int j : qb)
          for (int x = 0; x < a; ++x) {
            if (!used[x][j] || par_a[x] != -2) continue;
            par_a[x] = j;
            qa.push_back(x);
          }
      }
      if (found_b == -1) throw ConstructionError(context + ": bipartite demand not realizable");
      int j = found_b;
      --rb[j];
      --ra[i];
      for (;;) {
        int x = par_b[j];
        used[x][j] = 1;
        if (par_a[x] == -1) break;
        j = par_a[x];
        used[x][j] = 0;
      }
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j)
      if (used[i][j]) edges.emplace_back(i, j);
  return edges;
}

// ---------------------------------------------------------------------------
// The extremal family G_n.

struct ExtremalDescriptor {
  int n = 0;
  int degree = 0;
  int size_v1 = 0, size_v2 = 0, size_a = 0, size_b = 0;
  int size_a1 = 0, size_a2 = 0;
  VertexSet v1, v2, a, b, a1, a2;

  PartitionSpec natural_partition(const RobustParams& params) const {
    PartitionSpec spec;
    spec.expander = {v1, v2};
    spec.bipartite = {{a, b}};
    spec.params = params;
    return spec;
  }
};

namespace detail {

struct ExtremalRow {
  int degree, v1, v2;
  int parity_a1, parity_a2;  // 0 = even, 1 = odd
};

inline ExtremalRow extremal_row(int n) {
  int r = n % 8;
  if (r == 0) r = 8;
  int k = (n - r) / 8;
  switch (r) {
    case 1: return {2 * k, 2 * k + 1, 2 * k + 1, 0, 0};
    case 2: return {2 * k, 2 * k + 2, 2 * k + 1, 0, 0};
    case 3: return {2 * k, 2 * k + 2, 2 * k + 2, 0, 0};
    case 4: return {2 * k, 2 * k + 3, 2 * k + 2, 0, 0};
    case 5: return {2 * k, 2 * k + 3, 2 * k + 3, 0, 0};
    case 6: return {2 * k + 1, 2 * k + 3, 2 * k + 2, 1, 0};
    case 7: return {2 * k, 2 * k + 4, 2 * k + 4, 0, 0};
    default: return {2 * k + 1, 2 * k + 4, 2 * k + 3, 0, 1};
  }
}

// Internal graph on s vertices in which the first |deficit_count| vertices
// (after the construction picks them) have degree d-1 and the rest degree d,
// for odd d.  Returns (edges, deficit vertices).
inline std::pair<std::vector<std::pair<int, int>>, std::vector<int>> odd_regular_with_deficit(
    int s, int d, int deficit_count) {
  std::vector<std::pair<int, int>> edges;
  std::vector<int> deficit;
  if ((s - deficit_count) % 2 != 0)
    throw ConstructionError("odd-degree block: |V_i| and |A_i| parity mismatch");
  int t = (s - deficit_count) / 2;  // full-degree vertices come in matched pairs
  if (s % 2 == 1) {
    if (s < d + 2) throw ConstructionError("odd-degree block: |V_i| < D+2");
    auto cycles = walecki_cycles(s);
    int full = (d - 1) / 2;
    if (full + 1 > static_cast<int>(cycles.size()))
      throw ConstructionError("odd-degree block: not enough Hamilton cycles");
    for (int c = 0; c < full; ++c)
      for (int i = 0; i < s; ++i) edges.emplace_back(cycles[c][i], cycles[c][(i + 1) % s]);
    const auto& extra = cycles[full];
    for (int i = 0; i < t; ++i) edges.emplace_back(extra[2 * i], extra[2 * i + 1]);
    for (int i = 2 * t; i < s; ++i) deficit.push_back(extra[i]);
  } else {
    if (s < d + 1) throw ConstructionError("odd-degree block: |V_i| < D+1");
    auto factors = one_factorization(s);
    if (d > static_cast<int>(factors.size()))
      throw ConstructionError("odd-degree block: not enough 1-factors");
    for (int f = 0; f < d - 1; ++f)
      for (auto [u, v] : factors[f]) edges.emplace_back(u, v);
    const auto& extra = factors[d - 1];
    for (int i = 0; i < t; ++i) edges.emplace_back(extra[i].first, extra[i].second);
    for (int i = t; i < s / 2; ++i) {
      deficit.push_back(extra[i].first);
      deficit.push_back(extra[i].second);
    }
  }
  std::sort(deficit.begin(), deficit.end());
  return {edges, deficit};
}

}  // namespace detail

// G_n: the D-regular non-Hamiltonian graph with D the largest integer
// <= ceil(n/4)-1 such that nD is even.  Classes V1,V2 (dense blocks), A
// (joined completely to B), B; A_i is perfectly matched into V_i.
inline std::pair<Graph, ExtremalDescriptor> build_extremal_gn(int n) {
  if (n < 9) throw ConstructionError("extremal construction: n >= 9 required (degenerate table rows below)");
  auto row = detail::extremal_row(n);
  int D = row.degree;
  {
    // Cross-check the table against the defining rule for D.
    int rule = (n + 3) / 4 - 1;
    while (rule > 0 && (static_cast<long long>(n) * rule) % 2 != 0) --rule;
    if (rule != D) throw ConstructionError("extremal construction: table degree disagrees with rule");
  }
  int size_a = D, size_b = D - 1;
  if (size_b < 0) throw ConstructionError("extremal construction: |B| < 0");
  if (row.v1 + row.v2 + size_a + size_b != n)
    throw ConstructionError("extremal construction: table sizes do not sum to n");
  if (row.v1 < D + 1 || row.v2 < D + 1)
    throw ConstructionError("extremal construction: |V_i| < D+1");

  // Split A = A1 ∪ A2 with |D/2 - |A1|| minimal subject to the parity row;
  // ties resolved towards |A1| >= |A2|.
  int best_a1 = -1;
  for (int a1 = 0; a1 <= D; ++a1) {
    int a2 = D - a1;
    if (a1 % 2 != row.parity_a1 || a2 % 2 != row.parity_a2) continue;
    if (best_a1 == -1) { best_a1 = a1; continue; }
    int cur = std::abs(D - 2 * a1), best = std::abs(D - 2 * best_a1);
    if (cur < best || (cur == best && a1 > best_a1)) best_a1 = a1;
  }
  if (best_a1 == -1) throw ConstructionError("extremal construction: no feasible parity split of A");
  int a1 = best_a1, a2 = D - best_a1;

  ExtremalDescriptor d;
  d.n = n;
  d.degree = D;
  d.size_v1 = row.v1;
  d.size_v2 = row.v2;
  d.size_a = size_a;
  d.size_b = size_b;
  d.size_a1 = a1;
  d.size_a2 = a2;

  int ofs_v1 = 0, ofs_v2 = row.v1, ofs_a = row.v1 + row.v2, ofs_b = ofs_a + size_a;
  d.v1 = VertexSet(n);
  d.v2 = VertexSet(n);
  d.a = VertexSet(n);
  d.b = VertexSet(n);
  d.a1 = VertexSet(n);
  d.a2 = VertexSet(n);
  for (int i = 0; i < row.v1; ++i) d.v1.add(ofs_v1 + i);
  for (int i = 0; i < row.v2; ++i) d.v2.add(ofs_v2 + i);
  for (int i = 0; i < size_a; ++i) d.a.add(ofs_a + i);
  for (int i = 0; i < size_b; ++i) d.b.add(ofs_b + i);
  for (int i = 0; i < a1; ++i) d.a1.add(ofs_a + i);
  for (int i = a1; i < size_a; ++i) d.a2.add(ofs_a + i);

  Graph g(n);
  for (int i = 0; i < size_a; ++i)
    for (int j = 0; j < size_b; ++j) g.add_edge(ofs_a + i, ofs_b + j);

  auto build_block = [&](int ofs, int s, int ai_size, int a_ofs) {
    if (ai_size > s) throw ConstructionError("extremal construction: |A_i| > |V_i|");
    std::vector<int> ports;  // vertices matched into A_i, local ids
    if (D % 2 == 0) {
      // Circulant D-regular block, remove |A_i|/2 chords, rewire into A_i.
      if (ai_size % 2 != 0) throw ConstructionError("extremal construction: |A_i| odd in even-D row");
      for (int v = 0; v < s; ++v)
        for (int o = 1; o <= D / 2; ++o) {
          int u = (v + o) % s;
          if (!g.has_edge(ofs + v, ofs + u)) g.add_edge(ofs + v, ofs + u);
        }
      for (int i = 0; i < ai_size / 2; ++i) {
        g.remove_edge(ofs + 2 * i, ofs + 2 * i + 1);
        ports.push_back(2 * i);
        ports.push_back(2 * i + 1);
      }
      std::sort(ports.begin(), ports.end());
    } else {
      auto [edges, deficit] = detail::odd_regular_with_deficit(s, D, ai_size);
      for (auto [u, v] : edges) g.add_edge(ofs + u, ofs + v);
      ports = deficit;
    }
    for (int i = 0; i < ai_size; ++i) g.add_edge(ofs + ports[i], a_ofs + i);
  };

  build_block(ofs_v1, row.v1, a1, ofs_a);
  build_block(ofs_v2, row.v2, a2, ofs_a + a1);

  auto deg = regular_degree(g);
  if (!deg || *deg != D) throw ConstructionError("extremal construction: regularity check failed");
  return {g, d};
}

// ---------------------------------------------------------------------------
// The 2-connected three-clique example: three K_{3k} blocks, a perfect
// matching removed between A_i and B_i inside each, a joined to every A_i
// and b to every B_i.  Vertices a = 9k, b = 9k+1.
inline Graph build_three_clique(int k) {
  if (k < 1) throw InputError("build_three_clique: k >= 1 required");
  int n = 9 * k + 2;
  Graph g(n);
  int va = 9 * k, vb = 9 * k + 1;
  int sizes[3] = {k, k - 1, k};
  for (int c = 0; c < 3; ++c) {
    int ofs = 3 * k * c;
    for (int i = 0; i < 3 * k; ++i)
      for (int j = i + 1; j < 3 * k; ++j) g.add_edge(ofs + i, ofs + j);
    int ai = sizes[c];
    for (int i = 0; i < ai; ++i) {
      g.remove_edge(ofs + i, ofs + ai + i);  // A_i = first ai, B_i = next ai
      g.add_edge(va, ofs + i);
      g.add_edge(vb, ofs + ai + i);
    }
  }
  auto deg = regular_degree(g);
  if (!deg || *deg != 3 * k - 1) throw ConstructionError("three-clique construction: regularity check failed");
  return g;
}

// ---------------------------------------------------------------------------
// Pairing-model random regular graph with rejection.
inline Graph random_regular(int n, int d, std::uint64_t seed, int max_attempts = 4000) {
  if (n <= 0 || d < 0 || d >= n || (static_cast<long long>(n) * d) % 2 != 0)
    throw InputError("random_regular: need 0 <= d < n with nd even");
  Rng rng(seed ^ 0xabcdef12345ULL);
  std::vector<int> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * d);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    stubs.clear();
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < d; ++i) stubs.push_back(v);
    rng.shuffle(stubs);
    Graph g(n);
    bool ok = true;
    for (std::size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v || g.has_edge(u, v)) ok = false;
      else g.add_edge(u, v);
    }
    if (ok) return g;
  }
  throw ConstructionError("random_regular: rejection budget exceeded");
}

// ---------------------------------------------------------------------------
// Planted robust partitions: D-regular graphs assembled from dense blocks
// with a prescribed set of cross edges, so the (weak) robust partition is
// known by construction.

struct PlantBipartite {
  int size_a = 0;
  int size_b = 0;
  int a_internal_edges = 0;    // balancing edges inside A
  bool a_internal_path = false;  // realize them as a path instead of a matching
};

// side: 0 = the expander class itself / the A-side of a bipartite class;
//       1 = the B-side of a bipartite class.
struct CrossBlock {
  int class1 = 0, side1 = 0;
  int class2 = 0, side2 = 0;
  int count = 0;
};

struct PlantPlan {
  int degree = 0;
  std::vector<int> expander_sizes;
  std::vector<PlantBipartite> bipartite;
  std::vector<CrossBlock> cross;
  RobustParams params;
};

inline std::pair<Graph, PartitionSpec> plant_partitioned(const PlantPlan& plan, std::uint64_t seed) {
  int D = plan.degree;
  if (D <= 0) throw InputError("plant_partitioned: degree must be positive");
  int k = static_cast<int>(plan.expander_sizes.size());
  int ell = static_cast<int>(plan.bipartite.size());

  // Vertex layout: expander classes, then A then B per bipartite class.
  struct Side { int offset; int size; };
  std::vector<Side> sideA(k + ell), sideB(k + ell);
  int n = 0;
  for (int i = 0; i < k; ++i) {
    sideA[i] = {n, plan.expander_sizes[i]};
    sideB[i] = {n, 0};
    n += plan.expander_sizes[i];
  }
  for (int j = 0; j < ell; ++j) {
    sideA[k + j] = {n, plan.bipartite[j].size_a};
    n += plan.bipartite[j].size_a;
    sideB[k + j] = {n, plan.bipartite[j].size_b};
    n += plan.bipartite[j].size_b;
  }

  Graph g(n);
  std::vector<int> stub_count(n, 0);
  std::vector<int> next_stub(2 * (k + ell), 0);  // per (class,side) rotating pointer

  auto side_of = [&](int cls, int side) -> Side { return side == 0 ? sideA[cls] : sideB[cls]; };
  auto take_stub = [&](int cls, int side) -> int {
    Side s = side_of(cls, side);
    if (s.size == 0) throw ConstructionError("plant: cross edge references empty side");
    int slot = next_stub[2 * cls + side]++;
    if (slot >= 2 * s.size) throw ConstructionError("plant: more than two cross edges per vertex");
    return s.offset + (slot % s.size);
  };

  for (const auto& cb : plan.cross) {
    if (cb.class1 < 0 || cb.class1 >= k + ell || cb.class2 < 0 || cb.class2 >= k + ell)
      throw InputError("plant: cross block class out of range");
    if (cb.class1 == cb.class2) throw InputError("plant: cross block within one class");
    for (int i = 0; i < cb.count; ++i) {
      int u = take_stub(cb.class1, cb.side1);
      int v = take_stub(cb.class2, cb.side2);
      if (g.has_edge(u, v)) throw ConstructionError("plant: duplicate cross edge");
      g.add_edge(u, v);
      ++stub_count[u];
      ++stub_count[v];
    }
  }

  // A-internal balancing edges, placed at the tail of each A side.
  for (int j = 0; j < ell; ++j) {
    const auto& bp = plan.bipartite[j];
    Side a = sideA[k + j];
    int e = bp.a_internal_edges;
    if (e == 0) continue;
    if (bp.a_internal_path) {
      if (e + 1 > a.size) throw ConstructionError("plant: A-internal path longer than A");
      for (int i = 0; i < e; ++i) g.add_edge(a.offset + a.size - 1 - i, a.offset + a.size - 2 - i);
    } else {
      if (2 * e > a.size) throw ConstructionError("plant: A-internal matching larger than A");
      for (int i = 0; i < e; ++i) g.add_edge(a.offset + a.size - 1 - 2 * i, a.offset + a.size - 2 - 2 * i);
    }
  }

  // Dense interiors with the remaining degree demand.  Expander classes use
  // a circulant minus a matching on the port vertices (ports sit in front
  // and carry exactly one cross edge each); bipartite classes use a striped
  // biregular-ish fill.
  for (int i = 0; i < k; ++i) {
    Side s = sideA[i];
    std::string ctx = "plant expander class " + std::to_string(i);
    int ports = 0;
    for (int v = 0; v < s.size; ++v) {
      int cross = g.degree(s.offset + v);
      if (cross > 1) throw ConstructionError(ctx + ": at most one cross edge per expander vertex");
      if (cross == 1) {
        if (v != ports) throw ConstructionError(ctx + ": ports must be the leading vertices");
        ++ports;
      }
    }
    if (ports == s.size) {
      // Every vertex carries a cross edge: interior is (D-1)-regular.
      if (D - 1 >= s.size) throw ConstructionError(ctx + ": class too small for degree");
      for (auto [u, v] : circulant_edges(s.size, D - 1, ctx)) g.add_edge(s.offset + u, s.offset + v);
    } else {
      if (D >= s.size) throw ConstructionError(ctx + ": class too small for degree");
      if (ports % 2 != 0) throw ConstructionError(ctx + ": odd port count (degree parity)");
      for (auto [u, v] : circulant_edges(s.size, D, ctx)) {
        bool port_pair = u + 1 == v && u % 2 == 0 && v < ports;
        if (port_pair) continue;  // ports keep an offset-1 deficit for their cross edge
        g.add_edge(s.offset + u, s.offset + v);
      }
    }
    for (int v = 0; v < s.size; ++v)
      if (g.degree(s.offset + v) != D) throw ConstructionError(ctx + ": degree bookkeeping failed");
  }
  for (int j = 0; j < ell; ++j) {
    Side a = sideA[k + j], b = sideB[k + j];
    std::vector<int> da(a.size), db(b.size);
    for (int v = 0; v < a.size; ++v) {
      da[v] = D - g.degree(a.offset + v);
      if (da[v] < 0 || da[v] > b.size)
        throw ConstructionError("plant: bipartite class " + std::to_string(j) + " A-side demand infeasible");
    }
    for (int v = 0; v < b.size; ++v) {
      db[v] = D - g.degree(b.offset + v);
      if (db[v] < 0 || db[v] > a.size)
        throw ConstructionError("plant: bipartite class " + std::to_string(j) + " B-side demand infeasible");
    }
    for (auto [u, v] : striped_bipartite_edges(da, db, "plant bipartite class " + std::to_string(j)))
      g.add_edge(a.offset + u, b.offset + v);
  }

  auto deg = regular_degree(g);
  if (!deg || *deg != D) throw ConstructionError("plant: assembled graph is not D-regular");

  // Seeded vertex relabelling for variety; structure is preserved.
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + 1);
  rng.shuffle(perm);
  Graph h(n);
  for (auto [u, v] : g.edge_list()) h.add_edge(perm[u], perm[v]);

  PartitionSpec spec;
  spec.params = plan.params;
  auto relabel = [&](Side s) {
    VertexSet out(n);
    for (int v = 0; v < s.size; ++v) out.add(perm[s.offset + v]);
    return out;
  };
  for (int i = 0; i < k; ++i) spec.expander.push_back(relabel(sideA[i]));
  for (int j = 0; j < ell; ++j) spec.bipartite.emplace_back(relabel(sideA[k + j]), relabel(sideB[k + j]));
  return {h, spec};
}

}  // namespace hamrobust
