#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include "hamrobust/graph.hpp"
#include "hamrobust/path_system.hpp"

namespace hamrobust {

// ---------------------------------------------------------------------------
// Matching: a set of pairwise vertex-disjoint edges.

struct Matching {
  std::vector<std::pair<int, int>> edges;  // normalized u < v, sorted

  Matching() = default;
  explicit Matching(std::vector<std::pair<int, int>> e) : edges(std::move(e)) { normalize(); }

  void normalize() {
    for (auto& [u, v] : edges)
      if (u > v) std::swap(u, v);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }

  void add(int u, int v) {
    if (u > v) std::swap(u, v);
    edges.emplace_back(u, v);
    normalize();
  }

  int size() const { return static_cast<int>(edges.size()); }
  bool empty() const { return edges.empty(); }

  bool vertex_disjoint() const {
    std::vector<int> vs;
    for (auto [u, v] : edges) {
      vs.push_back(u);
      vs.push_back(v);
    }
    std::sort(vs.begin(), vs.end());
    return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
  }

  bool covers(int v) const {
    for (auto [a, b] : edges)
      if (a == v || b == v) return true;
    return false;
  }

  VertexSet vertex_set(int n) const {
    VertexSet s(n);
    for (auto [u, v] : edges) {
      s.add(u);
      s.add(v);
    }
    return s;
  }

  PathSystem as_path_system() const {
    PathSystem p;
    for (auto [u, v] : edges) p.add_edge(u, v);
    return p;
  }

  // First `k` edges in lexicographic order.
  Matching trimmed(int k) const {
    Matching m = *this;
    if (k < 0) k = 0;
    if (static_cast<int>(m.edges.size()) > k) m.edges.resize(k);
    return m;
  }
};

// ---------------------------------------------------------------------------
// Maximum matchings.

// Hopcroft-Karp on the bipartite view G[X,Y] (only XY-edges).
inline Matching max_matching_between(const Graph& g, const VertexSet& x, const VertexSet& y) {
  if (x.intersects(y)) throw InputError("max_matching_between: sides intersect");
  std::vector<int> xs = x.to_vector(), ys = y.to_vector();
  std::map<int, int> xid, yid;
  for (int i = 0; i < static_cast<int>(xs.size()); ++i) xid[xs[i]] = i;
  for (int i = 0; i < static_cast<int>(ys.size()); ++i) yid[ys[i]] = i;
  std::vector<std::vector<int>> adj(xs.size());
  for (int i = 0; i < static_cast<int>(xs.size()); ++i)
    for (int j = 0; j < static_cast<int>(ys.size()); ++j)
      if (g.has_edge(xs[i], ys[j])) adj[i].push_back(j);

  int nx = static_cast<int>(xs.size()), ny = static_cast<int>(ys.size());
  std::vector<int> mx(nx, -1), my(ny, -1), dist(nx);
  const int INF = 1 << 29;
  auto bfs = [&]() {
    std::vector<int> q;
    for (int i = 0; i < nx; ++i) {
      dist[i] = mx[i] == -1 ? 0 : INF;
      if (mx[i] == -1) q.push_back(i);
    }
    bool found = false;
    for (std::size_t h = 0; h < q.size(); ++h) {
      int i = q[h];
      for (int j : adj[i]) {
        int k = my[j];
        if (k == -1) found = true;
        else if (dist[k] == INF) {
          dist[k] = dist[i] + 1;
          q.push_back(k);
        }
      }
    }
    return found;
  };
  std::function<bool(int)> dfs = [&](int i) {
    for (int j : adj[i]) {
      int k = my[j];
      if (k == -1 || (dist[k] == dist[i] + 1 && dfs(k))) {
        mx[i] = j;
        my[j] = i;
        return true;
      }
    }
    dist[i] = INF;
    return false;
  };
  while (bfs())
    for (int i = 0; i < nx; ++i)
      if (mx[i] == -1) dfs(i);
  Matching m;
  for (int i = 0; i < nx; ++i)
    if (mx[i] != -1) m.edges.emplace_back(std::min(xs[i], ys[mx[i]]), std::max(xs[i], ys[mx[i]]));
  m.normalize();
  return m;
}

// General maximum matching (Edmonds, via Boost.Graph).
inline Matching max_matching(const Graph& g) {
  using BG = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BG bg(g.n());
  for (auto [u, v] : g.edge_list()) boost::add_edge(u, v, bg);
  std::vector<boost::graph_traits<BG>::vertex_descriptor> mate(g.n());
  bool ok = boost::checked_edmonds_maximum_cardinality_matching(bg, &mate[0]);
  if (!ok) throw InputError("max_matching: matching verification failed");
  Matching m;
  for (int v = 0; v < g.n(); ++v) {
    auto w = mate[v];
    if (w != boost::graph_traits<BG>::null_vertex() && static_cast<int>(w) > v)
      m.edges.emplace_back(v, static_cast<int>(w));
  }
  m.normalize();
  return m;
}

inline Matching max_matching_inside(const Graph& g, const VertexSet& s) {
  return max_matching(induced_subgraph(g, s));
}

// Bipartition by 2-colouring; error when an odd cycle exists.
inline std::pair<VertexSet, VertexSet> bipartition_of(const Graph& g) {
  std::vector<int> col(g.n(), -1);
  VertexSet a(g.n()), b(g.n());
  for (int s = 0; s < g.n(); ++s) {
    if (col[s] != -1) continue;
    col[s] = 0;
    std::vector<int> q{s};
    for (std::size_t h = 0; h < q.size(); ++h) {
      int v = q[h];
      for (int u = 0; u < g.n(); ++u) {
        if (!g.has_edge(v, u)) continue;
        if (col[u] == -1) {
          col[u] = col[v] ^ 1;
          q.push_back(u);
        } else if (col[u] == col[v]) {
          throw PreconditionError("graph is not bipartite");
        }
      }
    }
  }
  for (int v = 0; v < g.n(); ++v) (col[v] == 0 ? a : b).add(v);
  return {a, b};
}

// ---------------------------------------------------------------------------
// Matching of size exactly ceil(e/Delta) in a bipartite graph (König bound),
// found as a maximum matching trimmed down.
inline Matching konig_matching_between(const Graph& g, const VertexSet& x, const VertexSet& y,
                                       Rat delta) {
  if (delta <= Rat(0)) throw InputError("konig_matching: delta must be positive");
  if (Rat(max_degree_between(g, x, y)) > delta)
    throw PreconditionError("konig_matching: max degree exceeds delta");
  long long e = edge_count(g, x, y);
  long long target = (Rat(e) / delta).ceil();
  Matching m = max_matching_between(g, x, y);
  if (m.size() < target)
    throw PreconditionError("konig_matching: König bound violated (internal)");
  return m.trimmed(static_cast<int>(target));
}

inline Matching konig_matching(const Graph& g, Rat delta) {
  auto [x, y] = bipartition_of(g);
  return konig_matching_between(g, x, y, delta);
}

// ---------------------------------------------------------------------------
// matching_extend: grow a matching to size exactly ceil(e/Delta) while
// keeping all currently covered vertices covered (Berge augmentation).
inline Matching matching_extend_between(const Graph& g, const VertexSet& x, const VertexSet& y,
                                        const Matching& m, Rat delta,
                                        long long target_override = -1) {
  if (delta <= Rat(0)) throw InputError("matching_extend: delta must be positive");
  if (Rat(max_degree_between(g, x, y)) > delta)
    throw PreconditionError("matching_extend: max degree exceeds delta");
  for (auto [u, v] : m.edges) {
    bool xy = (x.contains(u) && y.contains(v)) || (x.contains(v) && y.contains(u));
    if (!xy || !g.has_edge(u, v)) throw PreconditionError("matching_extend: M not inside G[X,Y]");
  }
  if (!m.vertex_disjoint()) throw PreconditionError("matching_extend: M is not a matching");
  long long e = edge_count(g, x, y);
  long long bound = (Rat(e) / delta).ceil();
  long long target = target_override >= 0 ? target_override : bound;
  if (target_override >= 0 && target_override > bound)
    throw PreconditionError("matching_extend: target above König bound");
  if (m.size() > target) throw PreconditionError("matching_extend: e(M) > target size");

  std::vector<int> xs = x.to_vector(), ys = y.to_vector();
  std::map<int, int> xid, yid;
  for (int i = 0; i < static_cast<int>(xs.size()); ++i) xid[xs[i]] = i;
  for (int i = 0; i < static_cast<int>(ys.size()); ++i) yid[ys[i]] = i;
  int nx = static_cast<int>(xs.size()), ny = static_cast<int>(ys.size());
  std::vector<int> mx(nx, -1), my(ny, -1);
  for (auto [u, v] : m.edges) {
    int a = x.contains(u) ? u : v;
    int b = x.contains(u) ? v : u;
    mx[xid[a]] = yid[b];
    my[yid[b]] = xid[a];
  }
  int size = m.size();
  while (size < target) {
    // One augmenting-path phase (plain DFS from each free X vertex).
    std::vector<bool> visited(ny, false);
    std::function<bool(int)> aug = [&](int i) -> bool {
      for (int j = 0; j < ny; ++j) {
        if (visited[j] || !g.has_edge(xs[i], ys[j])) continue;
        visited[j] = true;
        if (my[j] == -1 || aug(my[j])) {
          mx[i] = j;
          my[j] = i;
          return true;
        }
      }
      return false;
    };
    bool grown = false;
    for (int i = 0; i < nx && !grown; ++i) {
      if (mx[i] != -1) continue;
      std::fill(visited.begin(), visited.end(), false);
      if (aug(i)) {
        grown = true;
        ++size;
      }
    }
    if (!grown)
      throw PreconditionError("matching_extend: could not reach ceil(e/Delta) (König bound violated)");
  }
  Matching out;
  for (int i = 0; i < nx; ++i)
    if (mx[i] != -1) out.edges.emplace_back(std::min(xs[i], ys[mx[i]]), std::max(xs[i], ys[mx[i]]));
  out.normalize();
  return out;
}

inline Matching matching_extend(const Graph& g, const Matching& m, Rat delta) {
  auto [x, y] = bipartition_of(g);
  return matching_extend_between(g, x, y, m, delta);
}

// ---------------------------------------------------------------------------
// spread_matching: a matching in the bipartite graph G[U, V ∪ W] with
// exactly b_V edges into V and b_W edges into W.
inline Matching spread_matching(const Graph& g, const VertexSet& u, const VertexSet& v,
                                const VertexSet& w, long long bv, long long bw, Rat delta) {
  if (bv < 0 || bw < 0) throw InputError("spread_matching: negative targets");
  if (v.intersects(w) || u.intersects(v) || u.intersects(w))
    throw InputError("spread_matching: sides must be disjoint");
  VertexSet vw = v | w;
  if (Rat(max_degree_between(g, u, vw)) > delta)
    throw PreconditionError("spread_matching: max degree exceeds delta");
  long long e_all = edge_count(g, u, vw);
  long long e_v = edge_count(g, u, v);
  long long e_w = edge_count(g, u, w);
  long long cap_all = (Rat(e_all) / delta).ceil(), cap_v = (Rat(e_v) / delta).ceil(),
            cap_w = (Rat(e_w) / delta).ceil();
  if (bv + bw > cap_all) throw PreconditionError("spread_matching: b_V + b_W > ceil(e/Delta)");
  if (bv > cap_v) throw PreconditionError("spread_matching: b_V > ceil(e(U,V)/Delta)");
  if (bw > cap_w) throw PreconditionError("spread_matching: b_W > ceil(e(U,W)/Delta)");

  // Raise the targets until they sum to cap_all (then one of them is tight).
  long long BV = bv, BW = bw;
  long long slack = cap_all - BV - BW;
  long long raise_v = std::min(slack, cap_v - BV);
  BV += raise_v;
  slack -= raise_v;
  long long raise_w = std::min(slack, cap_w - BW);
  BW += raise_w;
  slack -= raise_w;
  if (slack != 0)
    throw PreconditionError("spread_matching: caps cannot reach ceil(e/Delta) (internal)");

  // Work with the tight side playing the role of "V" in the proof.
  bool swapped = BV != cap_v;  // then BW == cap_w
  const VertexSet& V1 = swapped ? w : v;
  const VertexSet& W1 = swapped ? v : w;
  long long B1 = swapped ? BW : BV;
  long long B2 = swapped ? BV : BW;

  Matching mprime = max_matching_between(g, u, vw).trimmed(static_cast<int>(cap_all));
  if (mprime.size() < cap_all)
    throw PreconditionError("spread_matching: maximum matching below König bound (internal)");
  auto side_edges = [&](const Matching& m, const VertexSet& side) {
    Matching out;
    for (auto [a, b] : m.edges)
      if (side.contains(a) || side.contains(b)) out.edges.push_back({a, b});
    out.normalize();
    return out;
  };
  Matching m1 = side_edges(mprime, V1);
  Matching m2 = side_edges(mprime, W1);
  long long k = B1 - m1.size();

  Matching j1, j2;
  if (k == 0) {
    j1 = m1;
    j2 = m2;
  } else if (k > 0) {
    j1 = matching_extend_between(g, u, V1, m1, delta, B1);
    // j1 covers V(m1) and adds exactly k new U-vertices, so at least B2
    // edges of m2 stay disjoint from it.
    VertexSet used = j1.vertex_set(g.n());
    for (auto [a, b] : m2.edges) {
      if (used.contains(a) || used.contains(b)) continue;
      if (j2.size() < B2) j2.edges.push_back({a, b});
    }
    j2.normalize();
  } else {
    j2 = matching_extend_between(g, u, W1, m2, delta, B2);
    VertexSet used = j2.vertex_set(g.n());
    for (auto [a, b] : m1.edges) {
      if (used.contains(a) || used.contains(b)) continue;
      if (j1.size() < B1) j1.edges.push_back({a, b});
    }
    j1.normalize();
  }
  j1 = j1.trimmed(static_cast<int>(B1));
  j2 = j2.trimmed(static_cast<int>(B2));
  if (j1.size() != B1 || j2.size() != B2)
    throw PreconditionError("spread_matching: could not realize raised targets (internal)");

  // Trim back to the requested counts.
  long long want1 = swapped ? bw : bv;
  long long want2 = swapped ? bv : bw;
  j1 = j1.trimmed(static_cast<int>(want1));
  j2 = j2.trimmed(static_cast<int>(want2));
  Matching out;
  out.edges = j1.edges;
  for (auto e : j2.edges) out.edges.push_back(e);
  out.normalize();
  if (!out.vertex_disjoint()) throw PreconditionError("spread_matching: result not a matching (internal)");
  long long cv = 0, cw = 0;
  for (auto [a, b] : out.edges) {
    if (v.contains(a) || v.contains(b)) ++cv;
    if (w.contains(a) || w.contains(b)) ++cw;
  }
  if (cv != bv || cw != bw)
    throw PreconditionError("spread_matching: side counts wrong (internal)");
  return out;
}

// ---------------------------------------------------------------------------
// sparse_avoiding_matching: matching of size ceil(e/Delta) whose restriction
// to K does not perfectly match K.  The degree slack (Delta(G) <= cap with
// cap well below delta) is what guarantees existence; the search itself is
// exact: for some k in K, a maximum matching of G minus the K-internal
// edges at k reaches the target, and its restriction then misses k.
inline bool restriction_perfect_on(const Matching& m, const VertexSet& k) {
  if (k.empty()) return false;  // treated as acceptable by convention
  VertexSet covered(k.universe());
  for (auto [a, b] : m.edges)
    if (k.contains(a) && k.contains(b)) {
      covered.add(a);
      covered.add(b);
    }
  return covered == k;
}

inline Matching sparse_avoiding_matching(const Graph& g, const VertexSet& k, long long cap,
                                         Rat delta) {
  if (cap <= 0 || delta <= Rat(0)) throw InputError("sparse_avoiding_matching: positive caps required");
  int maxdeg = 0;
  for (int v = 0; v < g.n(); ++v) maxdeg = std::max(maxdeg, g.degree(v));
  if (maxdeg > cap) throw PreconditionError("sparse_avoiding_matching: max degree exceeds cap");
  long long e = g.edge_total();
  long long target = (Rat(e) / delta).ceil();
  if (k.empty()) {
    Matching m = max_matching(g);
    if (m.size() < target)
      throw PreconditionError("sparse_avoiding_matching: maximum matching below target");
    return m.trimmed(static_cast<int>(target));
  }
  for (int k0 : k.to_vector()) {
    Graph h = g;
    k.for_each([&](int other) {
      if (other != k0 && h.has_edge(k0, other)) h.remove_edge(k0, other);
    });
    Matching m = max_matching(h);
    if (m.size() < target) continue;
    m = m.trimmed(static_cast<int>(target));
    if (!restriction_perfect_on(m, k)) return m;
  }
  throw PreconditionError("sparse_avoiding_matching: no avoiding matching of the target size exists");
}

// ---------------------------------------------------------------------------
// three_matchings (with the sparse variant folded in): a path system P with
// P[U,V] = M, P[U] and P[V] matchings of prescribed sizes, containing a
// UV-path whenever M is non-empty.
inline Expected<PathSystem> three_matchings(const Graph& g, const VertexSet& u, const VertexSet& v,
                                            const Matching& m, long long a_u, long long a_v,
                                            Rat delta, double rho) {
  if (u.intersects(v)) throw InputError("three_matchings: U and V intersect");
  if (a_u < 0 || a_v < 0) throw InputError("three_matchings: negative targets");
  for (auto [x, y] : m.edges) {
    bool uv = (u.contains(x) && v.contains(y)) || (u.contains(y) && v.contains(x));
    if (!uv) throw PreconditionError("three_matchings: M not between U and V");
  }
  long long eu = edge_count(g, u), ev = edge_count(g, v);
  double deltad = delta.to_double();
  if (Rat(max_degree_inside(g, u)) > delta || Rat(max_degree_inside(g, v)) > delta)
    throw PreconditionError("three_matchings: interior max degree exceeds Delta");
  if (a_u > ceil_eps(Rat(eu) / delta, Rat(1, 4)) || a_v > ceil_eps(Rat(ev) / delta, Rat(1, 4)))
    throw PreconditionError("three_matchings: targets exceed ceil_eps(e/Delta)");
  if (m.size() > rho * deltad + 1e-9)
    throw PreconditionError("three_matchings: e(M) > rho*Delta");
  if (eu > rho * deltad * deltad + 1e-9 || ev > rho * deltad * deltad + 1e-9)
    throw PreconditionError("three_matchings: interior edge counts exceed rho*Delta^2");

  // eta sits strictly between rho and 1; capping it at 1/8 keeps the
  // sparse-side slack (sqrt(2*eta) >= 4*eta) valid at desk scale.  A vertex
  // of degree one is never treated as high-degree.
  double eta = std::min(0.125, std::sqrt(rho));
  long long hub_threshold = std::max<long long>(2, snapped_ceil(eta * deltad));

  // Split off high-degree vertices; the sparse machinery runs on the rest.
  auto split = [&](const VertexSet& side) {
    VertexSet high(g.n()), low(g.n());
    side.for_each([&](int x) {
      if (g.degree_in(x, side) >= hub_threshold) high.add(x);
      else low.add(x);
    });
    return std::make_pair(high, low);
  };
  auto [uh, u0] = split(u);
  auto [vh, v0] = split(v);

  Graph h(g.n());
  for (auto [x, y] : g.edge_list()) {
    if ((u0.contains(x) && u0.contains(y)) || (v0.contains(x) && v0.contains(y))) h.add_edge(x, y);
  }
  for (auto [x, y] : m.edges) h.add_edge(x, y);

  long long eu0 = edge_count(h, u0), ev0 = edge_count(h, v0);
  long long cap = 2 * hub_threshold;  // Delta(H) <= 2*eta*Delta
  double small_cut = std::sqrt(2 * eta) * deltad;

  Matching mu0, mv0;
  auto trimmed_max_inside = [&](const VertexSet& side, long long tgt) -> Expected<Matching> {
    Matching mm = max_matching_inside(h, side);
    (void)0;
    if (mm.size() < tgt)
      return fail("lemma_sparsethreematchings",
                  "interior maximum matching smaller than ceil(e/Delta)");
    return mm.trimmed(static_cast<int>(tgt));
  };

  if (m.empty()) {
    auto r1 = trimmed_max_inside(u0, (Rat(eu0) / delta).ceil());
    if (!r1) return r1.failure();
    auto r2 = trimmed_max_inside(v0, (Rat(ev0) / delta).ceil());
    if (!r2) return r2.failure();
    mu0 = r1.value();
    mv0 = r2.value();
  } else {
    // Order sides so the smaller interior is handled first.
    bool u_small = eu0 <= ev0;
    const VertexSet& small_side = u_small ? u0 : v0;
    const VertexSet& big_side = u_small ? v0 : u0;
    const VertexSet& small_full = u_small ? u : v;
    const VertexSet& big_full = u_small ? v : u;
    long long e_small = u_small ? eu0 : ev0;
    long long e_big = u_small ? ev0 : eu0;
    Matching m_small, m_big;
    if (e_big < small_cut) {
      // both interiors negligible: empty matchings suffice
    } else if (e_small < small_cut) {
      VertexSet kk = m.vertex_set(g.n()) & big_side;
      try {
        m_big = sparse_avoiding_matching(induced_subgraph(h, big_side), kk, cap, delta);
      } catch (const PreconditionError& ex) {
        return fail("lemma_sparsethreematchings", ex.what());
      }
    } else {
      VertexSet ku = m.vertex_set(g.n()) & small_side;
      try {
        m_small = sparse_avoiding_matching(induced_subgraph(h, small_side), ku, cap, delta);
      } catch (const PreconditionError& ex) {
        return fail("lemma_sparsethreematchings", ex.what());
      }
      // Fact "obvious": M ∪ m_small has a UV-path; locate it.
      PathSystem probe = m.as_path_system().unite(m_small.as_path_system());
      int v0_end = -1;
      for (const auto& path : probe.paths(g.n())) {
        bool eu_side = small_full.contains(path.front()) || small_full.contains(path.back());
        bool ev_side = big_full.contains(path.front()) || big_full.contains(path.back());
        if (eu_side && ev_side)
          v0_end = big_full.contains(path.front()) ? path.front() : path.back();
        if (v0_end != -1) break;
      }
      if (v0_end == -1)
        return fail("lemma_sparsethreematchings", "expected UV-path missing after avoiding matching");
      // Y: big-side endpoints of big-big paths; remove their edges before
      // choosing the big-side matching so no cycle can close.
      VertexSet banned(g.n());
      banned.add(v0_end);
      for (const auto& path : probe.paths(g.n())) {
        if (big_full.contains(path.front()) && big_full.contains(path.back())) {
          banned.add(path.front());
          banned.add(path.back());
        }
      }
      Graph pruned = induced_subgraph(h, big_side);
      banned.for_each([&](int x) {
        for (int y = 0; y < g.n(); ++y)
          if (pruned.has_edge(x, y)) pruned.remove_edge(x, y);
      });
      Matching mm = max_matching(pruned);
      long long tgt = (Rat(e_big) / delta).ceil();
      if (mm.size() < tgt)
        return fail("lemma_sparsethreematchings", "big-side matching short after pruning");
      m_big = mm.trimmed(static_cast<int>(tgt));
    }
    mu0 = u_small ? m_small : m_big;
    mv0 = u_small ? m_big : m_small;
  }

  PathSystem p = m.as_path_system().unite(mu0.as_path_system()).unite(mv0.as_path_system());

  // Pendant edges for the high-degree vertices.
  auto attach_pendants = [&](const VertexSet& high, const VertexSet& low) -> std::optional<std::string> {
    VertexSet blocked = p.vertex_set(g.n());
    std::optional<std::string> err;
    high.for_each([&](int x) {
      if (err) return;
      int pick = -1;
      for (int y : g.neighbour_list(x)) {
        if (!low.contains(y) || blocked.contains(y)) continue;
        pick = y;
        break;
      }
      if (pick == -1) {
        err = "no free pendant neighbour for high-degree vertex " + std::to_string(x);
        return;
      }
      p.add_edge(x, pick);
      blocked.add(pick);
    });
    return err;
  };
  if (auto err = attach_pendants(uh, u0)) return fail("lemma_threematchings", *err);
  if (auto err = attach_pendants(vh, v0)) return fail("lemma_threematchings", *err);

  // Trim interiors to the exact targets; removing interior edges preserves
  // the matching property and keeps some UV-path intact.
  auto trim_side = [&](const VertexSet& side, long long tgt) -> bool {
    std::vector<std::pair<int, int>> inside;
    for (auto [x, y] : p.edges())
      if (side.contains(x) && side.contains(y)) inside.emplace_back(x, y);
    if (static_cast<long long>(inside.size()) < tgt) return false;
    for (long long i = static_cast<long long>(inside.size()) - 1; i >= tgt; --i)
      p.remove_edge(inside[i].first, inside[i].second);
    return true;
  };
  if (!trim_side(u, a_u)) return fail("lemma_threematchings", "U-interior below target a_U");
  if (!trim_side(v, a_v)) return fail("lemma_threematchings", "V-interior below target a_V");

  // Final validation.
  if (auto why = p.validate(g.n())) return fail("lemma_threematchings", "invalid system: " + *why);
  long long pu = p.count_inside(u), pv = p.count_inside(v);
  if (pu != a_u || pv != a_v) return fail("lemma_threematchings", "interior sizes wrong");
  for (auto [x, y] : p.edges()) {
    if ((u.contains(x) && v.contains(y)) || (u.contains(y) && v.contains(x)))
      if (!m.as_path_system().has_edge(x, y))
        return fail("lemma_threematchings", "extraneous UV edge");
  }
  if (!m.empty()) {
    bool has_uv = false;
    for (const auto& path : p.paths(g.n())) {
      bool eu_side = u.contains(path.front()) || u.contains(path.back());
      bool ev_side = v.contains(path.front()) || v.contains(path.back());
      bool front_u = u.contains(path.front()), back_u = u.contains(path.back());
      bool front_v = v.contains(path.front()), back_v = v.contains(path.back());
      if ((front_u && back_v) || (front_v && back_u)) has_uv = true;
      (void)eu_side;
      (void)ev_side;
    }
    if (!has_uv) return fail("lemma_threematchings", "no UV-path despite non-empty M");
  }
  return p;
}

// ---------------------------------------------------------------------------
// matching_or_hubs: either a matching of size ell+1 plus an edge with a
// fresh endpoint, or ell vertices of degree >= delta_prime.
struct MatchingOrHubs {
  enum class Kind { MatchingPlusEdge, Hubs, Neither };
  Kind kind = Kind::Neither;
  Matching matching;
  std::pair<int, int> extra_edge{-1, -1};  // first endpoint outside V(matching)
  std::vector<int> hubs;
  bool hubs_cover_all_edges = false;
  std::string note;
};

inline MatchingOrHubs matching_or_hubs(const Graph& g, long long ell, double delta,
                                       double delta_prime) {
  if (ell < 0) throw InputError("matching_or_hubs: ell must be nonnegative");
  int maxdeg = 0;
  for (int v = 0; v < g.n(); ++v) maxdeg = std::max(maxdeg, g.degree(v));
  if (maxdeg > delta + 1e-9) throw PreconditionError("matching_or_hubs: max degree exceeds Delta");
  long long e = g.edge_total();
  if (static_cast<double>(e) < (ell - 1) * delta + delta_prime - 1e-9)
    throw PreconditionError("matching_or_hubs: edge-count hypothesis fails");

  MatchingOrHubs out;
  auto edges = g.edge_list();

  Matching big = max_matching(g);
  if (big.size() >= ell + 2) {
    out.kind = MatchingOrHubs::Kind::MatchingPlusEdge;
    out.matching = big.trimmed(static_cast<int>(ell + 1));
    auto [a, b] = big.edges[ell + 1];
    out.extra_edge = {a, b};
    return out;
  }
  if (big.size() == ell + 1) {
    VertexSet covered = big.vertex_set(g.n());
    for (auto [a, b] : edges) {
      int fresh = !covered.contains(a) ? a : (!covered.contains(b) ? b : -1);
      if (fresh != -1) {
        out.kind = MatchingOrHubs::Kind::MatchingPlusEdge;
        out.matching = big;
        out.extra_edge = {fresh, fresh == a ? b : a};
        return out;
      }
    }
    // Some other matching of size ell+1 may leave a fresh endpoint:
    // (i) holds iff nu(G - u) >= ell+1 for some vertex u with an edge.
    for (int x = 0; x < g.n(); ++x) {
      if (g.degree(x) == 0) continue;
      VertexSet rest = VertexSet::full(g.n());
      rest.remove(x);
      Matching mm = max_matching_inside(g, rest);
      if (mm.size() >= ell + 1) {
        out.kind = MatchingOrHubs::Kind::MatchingPlusEdge;
        out.matching = mm.trimmed(static_cast<int>(ell + 1));
        out.extra_edge = {x, g.neighbour_list(x).front()};
        return out;
      }
    }
  }
  std::vector<int> hubs;
  for (int v = 0; v < g.n(); ++v)
    if (g.degree(v) >= delta_prime - 1e-9) hubs.push_back(v);
  if (static_cast<long long>(hubs.size()) >= ell) {
    out.kind = MatchingOrHubs::Kind::Hubs;
    out.hubs.assign(hubs.begin(), hubs.begin() + ell);
    out.hubs_cover_all_edges = true;
    VertexSet hs = VertexSet::from(g.n(), out.hubs);
    for (auto [a, b] : edges)
      if (!hs.contains(a) && !hs.contains(b)) out.hubs_cover_all_edges = false;
    return out;
  }
  out.kind = MatchingOrHubs::Kind::Neither;
  out.note = "neither outcome exists at these desk-scale parameters (max matching " +
             std::to_string(big.size()) + ", hubs " + std::to_string(hubs.size()) + ")";
  return out;
}

// ---------------------------------------------------------------------------
// extend_matching_casei: from an even matching M in G[X,Y], a matching M' of
// size ell+1 in G[Y] and an edge uv in G[Y] with u outside V(M'), build a
// path system P ⊆ M ∪ M' ∪ {uv} with P[X,Y] = M, e_P(Y) = ell+1 and at
// least two XY-paths.
inline Expected<PathSystem> extend_matching_casei(int n, const VertexSet& x, const VertexSet& y,
                                                  const Matching& m, const Matching& mprime,
                                                  std::pair<int, int> uv) {
  if (m.empty() || m.size() % 2 != 0)
    throw PreconditionError("extend_matching_casei: M must be non-empty and even");
  if (mprime.covers(uv.first))
    throw PreconditionError("extend_matching_casei: u must avoid V(M')");
  long long ell = mprime.size() - 1;

  auto count_xy_paths = [&](const PathSystem& p) {
    int c = 0;
    for (const auto& path : p.paths(n)) {
      bool fx = x.contains(path.front()), bx = x.contains(path.back());
      bool fy = y.contains(path.front()), by = y.contains(path.back());
      if ((fx && by) || (fy && bx)) ++c;
    }
    return c;
  };

  PathSystem joined = m.as_path_system().unite(mprime.as_path_system());
  if (joined.is_valid(n) && count_xy_paths(joined) >= 1) {
    if (count_xy_paths(joined) < 2)
      return fail("prop_casei", "odd number of XY-paths (internal)");
    return joined;
  }
  // M'[V(M) ∩ Y] is a perfect matching; swap one of its edges for uv.
  VertexSet my = m.vertex_set(n) & y;
  std::pair<int, int> f{-1, -1};
  for (auto [a, b] : mprime.edges)
    if (my.contains(a) && my.contains(b)) {
      if (a == uv.second || b == uv.second) { f = {a, b}; break; }
      if (f.first == -1) f = {a, b};
    }
  if (f.first == -1) return fail("prop_casei", "expected perfect restriction matching missing");
  PathSystem p = m.as_path_system().unite(mprime.as_path_system());
  p.remove_edge(f.first, f.second);
  p.add_edge(uv.first, uv.second);
  if (auto why = p.validate(n)) return fail("prop_casei", "invalid system: " + *why);
  if (p.count_inside(y) != ell + 1) return fail("prop_casei", "e_P(Y) != ell+1");
  if (count_xy_paths(p) < 2) return fail("prop_casei", "fewer than two XY-paths");
  return p;
}

// ---------------------------------------------------------------------------
// hub_paths: attach length-2 paths (or pendant edges, for hubs already in
// V(M)) at hub vertices in Y, so that e_P(Y) = ell + r, P[X,Y] = M and every
// M-edge lies in its own XY-path.
inline Expected<PathSystem> hub_paths(const Graph& g, const VertexSet& x, const VertexSet& y,
                                      const Matching& m, const std::vector<int>& hubs, long long r) {
  int n = g.n();
  long long ell = static_cast<long long>(hubs.size());
  long long outside = 0;
  for (int h : hubs)
    if (!m.covers(h)) ++outside;
  if (outside < r) throw PreconditionError("hub_paths: fewer than r hubs outside V(M)");

  PathSystem p = m.as_path_system();
  VertexSet blocked = m.vertex_set(n);
  for (int h : hubs) blocked.add(h);
  for (int h : hubs) {
    int want = m.covers(h) ? 1 : 2;
    int got = 0;
    for (int w : g.neighbour_list(h)) {
      if (got == want) break;
      if (!y.contains(w) || blocked.contains(w)) continue;
      p.add_edge(h, w);
      blocked.add(w);
      ++got;
    }
    if (got != want)
      return fail("prop_2paths", "insufficient hub degree at vertex " + std::to_string(h));
  }
  // Trim Y-interior down to ell + r.
  std::vector<std::pair<int, int>> inside;
  for (auto [a, b] : p.edges())
    if (y.contains(a) && y.contains(b)) inside.emplace_back(a, b);
  long long target = ell + r;
  if (static_cast<long long>(inside.size()) < target)
    return fail("prop_2paths", "hub construction below target");
  for (long long i = static_cast<long long>(inside.size()) - 1; i >= target; --i)
    p.remove_edge(inside[i].first, inside[i].second);

  if (auto why = p.validate(n)) return fail("prop_2paths", "invalid system: " + *why);
  if (p.count_inside(y) != target) return fail("prop_2paths", "e_P(Y) != ell+r");
  // Every M-edge on a distinct XY-path.
  int m_paths = 0;
  for (const auto& path : p.paths(n)) {
    int m_edges = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      if (m.as_path_system().has_edge(path[i], path[i + 1])) ++m_edges;
    if (m_edges > 1) return fail("prop_2paths", "two M-edges share a path");
    if (m_edges == 1) ++m_paths;
  }
  if (m_paths != m.size()) return fail("prop_2paths", "an M-edge left its path");
  return p;
}

}  // namespace hamrobust
