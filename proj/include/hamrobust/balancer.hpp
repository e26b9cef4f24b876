#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "hamrobust/graph.hpp"
#include "hamrobust/matching.hpp"
#include "hamrobust/partition.hpp"
#include "hamrobust/path_system.hpp"

namespace hamrobust {

// ---------------------------------------------------------------------------
// Rounding.  Given reals a1,a2,b,c with b,c >= 0 and
//   2 a1 + b - c = 2 x1,   2 a2 + b + c = 2 x2   (x1, x2 nonnegative ints),
// produce integers a1',a2',b',c' satisfying the same identities with
//   0 <= b' <= ceil(b), 0 <= c' <= ceil(c), b'+c' <= ceil(b+c),
//   |a_i'| <= ceil_eps(|a_i|), sign(a_i') = sign(a_i).
// Exact rational arithmetic end to end; the five-row case table of the
// proof drives the choice.

struct BalancedQuadruple {
  long long a1p = 0, a2p = 0, bp = 0, cp = 0;
  int table_row = 0;  // 1..5
};

inline BalancedQuadruple round_balanced(const Rat& a1, const Rat& a2, const Rat& b, const Rat& c,
                                        long long x1, long long x2, const Rat& eps) {
  if (!(eps > Rat(0) && eps < Rat(1, 2))) throw InputError("round_balanced: eps must lie in (0,1/2)");
  if (b < Rat(0) || c < Rat(0)) throw InputError("round_balanced: b, c must be nonnegative");
  if (x1 < 0 || x2 < 0) throw InputError("round_balanced: x1, x2 must be nonnegative");
  if (Rat(2) * a1 + b - c != Rat(2 * x1) || Rat(2) * a2 + b + c != Rat(2 * x2))
    throw InputError("round_balanced: input identities fail");

  // Work in halves: T_i = floor(2 a_i) = 2 A_i, Bt = 2B, Ct = 2C.
  long long t1 = (Rat(2) * a1).floor();
  long long t2 = (Rat(2) * a2).floor();
  long long cbc = (b + c).ceil();   // ceil(b+c)
  long long cbm = (b - c).ceil();   // ceil(b-c)
  long long bt = cbc + cbm;         // 2B
  long long ct = cbc - cbm;         // 2C

  long long a1t, a2t, bt2, ct2;  // doubled outputs
  int row;
  bool even_sum = (cbc % 2 == 0), even_diff = (cbm % 2 + 2) % 2 == 0;
  if (even_sum && even_diff) {
    row = 1;
    a1t = t1; a2t = t2; bt2 = bt; ct2 = ct;
  } else if (even_sum && !even_diff) {
    row = 2;
    a1t = t1 + 1; a2t = t2; bt2 = bt - 1; ct2 = ct + 1;
  } else if (!even_sum && even_diff) {
    row = 3;
    a1t = t1; a2t = t2 + 1; bt2 = bt - 1; ct2 = ct - 1;
  } else if (b > Rat(0)) {
    row = 4;
    a1t = t1 + 1; a2t = t2 + 1; bt2 = bt - 2; ct2 = ct;
  } else {
    row = 5;
    a1t = t1 - 1; a2t = t2 + 1; bt2 = bt; ct2 = ct - 2;
  }
  if (a1t % 2 != 0 || a2t % 2 != 0 || bt2 % 2 != 0 || ct2 % 2 != 0)
    throw ConstructionError("round_balanced: case table produced non-integers");
  BalancedQuadruple q;
  q.a1p = a1t / 2;
  q.a2p = a2t / 2;
  q.bp = bt2 / 2;
  q.cp = ct2 / 2;
  q.table_row = row;

  // Verify every promised constraint.
  auto ceil_eps_abs = [&](const Rat& x) { return ceil_eps(x.abs(), eps); };
  bool ok = 2 * q.a1p + q.bp - q.cp == 2 * x1 && 2 * q.a2p + q.bp + q.cp == 2 * x2;
  ok = ok && 0 <= q.bp && q.bp <= b.ceil();
  ok = ok && 0 <= q.cp && q.cp <= c.ceil();
  ok = ok && q.bp + q.cp <= (b + c).ceil();
  ok = ok && std::abs(q.a1p) <= ceil_eps_abs(a1) && std::abs(q.a2p) <= ceil_eps_abs(a2);
  // Sign preservation; an output of zero is compatible with either sign
  // (inputs in (-1/2, 0) can only round to zero).
  auto sign_ok = [](long long out, const Rat& in) { return out == 0 || ((out > 0) == (in >= Rat(0))); };
  ok = ok && sign_ok(q.a1p, a1) && sign_ok(q.a2p, a2);
  if (!ok) throw ConstructionError("round_balanced: output constraint check failed");
  return q;
}

// round_pair: a' = ceil_eps(a), b' = largest even integer <= ceil_eps(b);
// the inequality 2a + b >= 2x survives rounding (eps < 1/3).
inline std::pair<long long, long long> round_pair(const Rat& a, const Rat& b, long long x,
                                                  const Rat& eps) {
  if (!(eps > Rat(0) && eps < Rat(1, 3))) throw InputError("round_pair: eps must lie in (0,1/3)");
  if (a < Rat(0) || b < Rat(0)) throw InputError("round_pair: a, b must be nonnegative");
  if (Rat(2) * a + b < Rat(2 * x)) throw InputError("round_pair: 2a + b >= 2x fails");
  long long ap = std::max<long long>(0, ceil_eps(a, eps));
  long long bp = largest_even_at_most(ceil_eps(b, eps));
  if (2 * ap + bp < 2 * x) throw ConstructionError("round_pair: inequality lost in rounding");
  return {ap, bp};
}

// ---------------------------------------------------------------------------
// extract_d_balanced: from a D-balanced graph, either matchings M_i in
// G[A_i] of size |A_i| - |B_i|, or a D-balanced spanning subgraph whose
// edges live only in G[C1], G[C2] and G[A1 ∪ B1, A2].
struct DBalancedExtract {
  bool matchings = false;       // outcome (i)
  Matching m1, m2;              // when matchings
  Graph subgraph;               // outcome (ii)
  int c1_is_a = true, c2_is_a = true;
};

inline Expected<DBalancedExtract> extract_d_balanced(const Graph& g, const VertexSet& a1,
                                                     const VertexSet& b1, const VertexSet& a2,
                                                     const VertexSet& b2, long long d) {
  int n = g.n();
  long long na1 = a1.count(), nb1 = b1.count(), na2 = a2.count(), nb2 = b2.count();
  if (d < 20) throw PreconditionError("extract_d_balanced: D >= 20 required");
  if (na1 - nb1 < 0 || na1 - nb1 > d / 2 || na2 - nb2 < 0 || na2 - nb2 > d / 2)
    throw PreconditionError("extract_d_balanced: 0 <= |A_i|-|B_i| <= D/2 fails");
  if (edge_count(g, a1, b2) > edge_count(g, b1, a2))
    throw PreconditionError("extract_d_balanced: e(A1,B2) <= e(B1,A2) fails");
  if (max_degree_inside(g, a1) > d / 2.0 + 1e-9 || max_degree_inside(g, a2) > d / 2.0 + 1e-9)
    throw PreconditionError("extract_d_balanced: Delta(G[A_i]) <= D/2 fails");
  if (!check_d_balanced(g, a1, b1, a2, b2, d))
    throw PreconditionError("extract_d_balanced: input graph is not D-balanced");

  // Remove E(G[A_i,B_i]), then cancel the four paired locations.
  Graph h = g;
  auto strip_between = [&](const VertexSet& x, const VertexSet& y) {
    for (auto [u, v] : h.edge_list()) {
      bool xy = (x.contains(u) && y.contains(v)) || (x.contains(v) && y.contains(u));
      if (xy) h.remove_edge(u, v);
    }
  };
  strip_between(a1, b1);
  strip_between(a2, b2);

  auto edges_in = [&](const VertexSet& x, const VertexSet& y, bool inside) {
    std::vector<std::pair<int, int>> out;
    for (auto [u, v] : h.edge_list()) {
      if (inside) {
        if (x.contains(u) && x.contains(v)) out.emplace_back(u, v);
      } else if ((x.contains(u) && y.contains(v)) || (x.contains(v) && y.contains(u))) {
        out.emplace_back(u, v);
      }
    }
    return out;
  };
  auto cancel_pair = [&](std::vector<std::pair<int, int>> je, std::vector<std::pair<int, int>> ke) {
    long long r = std::min(je.size(), ke.size());
    for (long long i = 0; i < r; ++i) {
      h.remove_edge(je[i].first, je[i].second);
      h.remove_edge(ke[i].first, ke[i].second);
    }
  };
  cancel_pair(edges_in(a1, a1, true), edges_in(b1, b1, true));
  cancel_pair(edges_in(a2, a2, true), edges_in(b2, b2, true));
  cancel_pair(edges_in(a1, a2, false), edges_in(b1, b2, false));
  cancel_pair(edges_in(a1, b2, false), edges_in(b1, a2, false));

  VertexSet w1 = a1 | b1, w2 = a2 | b2;
  long long v1 = d * (na1 - nb1), v2 = d * (na2 - nb2);

  if (edge_count(h, b1, b2) == 0) {
    // All surviving cross edges already sit inside G[A1 ∪ B1, A2].
    DBalancedExtract out;
    out.matchings = false;
    out.subgraph = h;
    out.c1_is_a = edge_count(h, a1) > 0 || edge_count(h, b1) == 0;
    out.c2_is_a = edge_count(h, a2) > 0 || edge_count(h, b2) == 0;
    if (!check_d_balanced(h, a1, b1, a2, b2, d))
      return fail("lemma_removeedges", "cancelled subgraph lost D-balance (internal)");
    return out;
  }

  // e_H(B1,B2) >= 1 forces e_H(A1,A2) = 0, e_H(B1) = 0.
  long long t = edge_count(h, b1, a2);
  if (t >= v2) {
    if ((v1 + v2) % 2 != 0) return fail("lemma_removeedges", "v1+v2 parity broken (internal)");
    auto ba_edges = edges_in(b1, a2, false);
    auto a1_edges = edges_in(a1, a1, true);
    if (static_cast<long long>(ba_edges.size()) < v2 ||
        static_cast<long long>(a1_edges.size()) < (v1 + v2) / 2)
      return fail("lemma_removeedges", "not enough edges for the t >= v2 branch");
    Graph sub(n);
    for (long long i = 0; i < v2; ++i) sub.add_edge(ba_edges[i].first, ba_edges[i].second);
    for (long long i = 0; i < (v1 + v2) / 2; ++i) sub.add_edge(a1_edges[i].first, a1_edges[i].second);
    DBalancedExtract out;
    out.subgraph = sub;
    out.c1_is_a = true;
    out.c2_is_a = true;
    if (!check_d_balanced(sub, a1, b1, a2, b2, d))
      return fail("lemma_removeedges", "t>=v2 subgraph lost D-balance (internal)");
    return out;
  }

  if (t == 0) {
    // Matching route: G[A_i] holds a matching of size |A_i| - |B_i|.
    DBalancedExtract out;
    out.matchings = true;
    Matching m1 = max_matching_inside(g, a1);
    Matching m2 = max_matching_inside(g, a2);
    if (m1.size() < na1 - nb1 || m2.size() < na2 - nb2)
      return fail("lemma_removeedges", "interior matchings below |A_i| - |B_i|");
    out.m1 = m1.trimmed(static_cast<int>(na1 - nb1));
    out.m2 = m2.trimmed(static_cast<int>(na2 - nb2));
    // size cap from the lemma: |A_i|-|B_i| <= ceil_eps(e(A_i)/5, 1/4)
    if (out.m1.size() > ceil_eps(Rat(edge_count(g, a1), 5), Rat(1, 4)) ||
        out.m2.size() > ceil_eps(Rat(edge_count(g, a2), 5), Rat(1, 4)))
      return fail("lemma_removeedges", "matching size exceeds ceil_eps(e(A_i)/5)");
    return out;
  }

  // 0 < t < v2.
  auto ba_edges = edges_in(b1, a2, false);
  auto a1_edges = edges_in(a1, a1, true);
  auto a2_edges = edges_in(a2, a2, true);
  long long take_ba, take_a1, take_a2;
  if ((v1 + t) % 2 == 0) {
    take_ba = t;
    take_a1 = (v1 + t) / 2;
    take_a2 = (v2 - t) / 2;
  } else {
    take_ba = t - 1;
    take_a1 = (v1 + t - 1) / 2;
    take_a2 = (v2 - t + 1) / 2;
  }
  if (static_cast<long long>(ba_edges.size()) < take_ba ||
      static_cast<long long>(a1_edges.size()) < take_a1 ||
      static_cast<long long>(a2_edges.size()) < take_a2)
    return fail("lemma_removeedges", "not enough edges for the 0 < t < v2 branch");
  Graph sub(n);
  for (long long i = 0; i < take_ba; ++i) sub.add_edge(ba_edges[i].first, ba_edges[i].second);
  for (long long i = 0; i < take_a1; ++i) sub.add_edge(a1_edges[i].first, a1_edges[i].second);
  for (long long i = 0; i < take_a2; ++i) sub.add_edge(a2_edges[i].first, a2_edges[i].second);
  DBalancedExtract out;
  out.subgraph = sub;
  if (!check_d_balanced(sub, a1, b1, a2, b2, d))
    return fail("lemma_removeedges", "mixed-parity subgraph lost D-balance (internal)");
  return out;
}

// ---------------------------------------------------------------------------
// connectify_balanced: turn interior matchings M_i ⊆ G[A_i] of size
// |A_i| - |B_i| into a 2-balanced path system containing a W1W2-path.
inline Expected<PathSystem> connectify_balanced(const Graph& g, const VertexSet& a1_in,
                                                const VertexSet& b1_in, const VertexSet& a2_in,
                                                const VertexSet& b2_in, Matching m1_in, Matching m2_in,
                                                double gamma) {
  int n = g.n();
  auto validate = [&](const PathSystem& p) -> std::optional<std::string> {
    if (auto why = p.validate(n)) return "not a path system: " + *why;
    if (!check_t_balanced(p, a1_in, b1_in, a2_in, b2_in, 2)) return "not 2-balanced";
    VertexSet w1 = a1_in | b1_in, w2 = a2_in | b2_in;
    bool has = false;
    for (const auto& path : p.paths(n)) {
      bool f1 = w1.contains(path.front()) || w1.contains(path.back());
      bool f2 = w2.contains(path.front()) || w2.contains(path.back());
      bool front1 = w1.contains(path.front()), back1 = w1.contains(path.back());
      bool front2 = w2.contains(path.front()), back2 = w2.contains(path.back());
      if ((front1 && back2) || (front2 && back1)) has = true;
      (void)f1;
      (void)f2;
    }
    if (!has) return "no W1W2-path";
    if (p.size() > 3 * gamma * n + 1e-9) return "more than 3*gamma*n edges";
    return std::nullopt;
  };

  auto finish = [&](PathSystem p) -> Expected<PathSystem> {
    if (auto why = validate(p)) return fail("lemma_ensureconnected", *why);
    return p;
  };

  // Balanced matching shortcut: an A1A2 edge with a B1B2 edge (or the
  // diagonal pair) joins the sides without touching the balance.
  auto first_edge_between = [&](const VertexSet& x, const VertexSet& y) -> std::optional<std::pair<int, int>> {
    for (auto [u, v] : g.edge_list()) {
      if ((x.contains(u) && y.contains(v)) || (x.contains(v) && y.contains(u))) return {{u, v}};
    }
    return std::nullopt;
  };

  // Work on mutable copies; we may relabel sides per the proof's WLOGs.
  VertexSet A1 = a1_in, B1 = b1_in, A2 = a2_in, B2 = b2_in;
  Matching M1 = m1_in, M2 = m2_in;

  {
    auto e = first_edge_between(A1, A2);
    auto ep = first_edge_between(B1, B2);
    if (e && ep) {
      PathSystem p = M1.as_path_system().unite(M2.as_path_system());
      p.add_edge(e->first, e->second);
      p.add_edge(ep->first, ep->second);
      return finish(p);
    }
    auto f = first_edge_between(A1, B2);
    auto fp = first_edge_between(B1, A2);
    if (f && fp) {
      PathSystem p = M1.as_path_system().unite(M2.as_path_system());
      p.add_edge(f->first, f->second);
      p.add_edge(fp->first, fp->second);
      return finish(p);
    }
  }

  // No balanced matching: 3-connectivity provides a matching of size three
  // between W1 and W2; two of its edges share a location bucket (C1,C2).
  VertexSet w1 = A1 | B1, w2 = A2 | B2;
  Matching cross = max_matching_between(g, w1, w2);
  if (cross.size() < 3)
    return fail("lemma_ensureconnected", "no matching of size three between W1 and W2");
  cross = cross.trimmed(3);
  auto bucket = [&](std::pair<int, int> e) {
    int u = w1.contains(e.first) ? e.first : e.second;
    int v = w1.contains(e.first) ? e.second : e.first;
    return std::make_pair(A1.contains(u) ? 0 : 1, A2.contains(v) ? 0 : 1);
  };
  std::pair<int, int> chosen_bucket{-1, -1};
  std::vector<std::pair<int, int>> nprime;
  for (int i = 0; i < 3 && nprime.size() < 2; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (bucket(cross.edges[i]) == bucket(cross.edges[j])) {
        chosen_bucket = bucket(cross.edges[i]);
        nprime = {cross.edges[i], cross.edges[j]};
        break;
      }
  if (nprime.size() < 2)
    return fail("lemma_ensureconnected", "no repeated location bucket in the cross matching");

  bool c1_is_a = chosen_bucket.first == 0, c2_is_a = chosen_bucket.second == 0;
  // Normalize so C_i plays the role of A_i in the proof (swap labels inside
  // W_i; legal only when |A_i| = |B_i|, i.e. when M_i is empty; otherwise
  // the proof's case analysis never needs the swap).
  const VertexSet& C1 = c1_is_a ? A1 : B1;
  const VertexSet& C2 = c2_is_a ? A2 : B2;
  const VertexSet& D2set = c2_is_a ? B2 : A2;

  // WLOG e(M1) <= e(M2) in the proof; track the swap.
  bool swapped12 = M1.size() > M2.size();
  const Matching& Ms = swapped12 ? M2 : M1;   // smaller
  const Matching& Mb = swapped12 ? M1 : M2;   // bigger
  const VertexSet& As = swapped12 ? A2 : A1;
  const VertexSet& Bs = swapped12 ? B2 : B1;
  const VertexSet& Ab = swapped12 ? A1 : A2;
  const VertexSet& Bb = swapped12 ? B1 : B2;
  const VertexSet& Cb = swapped12 ? C1 : C2;
  bool cb_is_a = swapped12 ? c1_is_a : c2_is_a;

  auto mutate_bigger = [&]() -> Expected<Matching> {
    // M2' per the proof: remove the N'-spanned edge when C2 = A2, add a
    // fresh A2-edge when C2 = B2.
    if (cb_is_a) {
      VertexSet span(n);
      for (auto e : nprime) {
        if (Ab.contains(e.first)) span.add(e.first);
        if (Ab.contains(e.second)) span.add(e.second);
      }
      int drop = 0;
      for (int i = 0; i < Mb.size(); ++i) {
        auto [u, v] = Mb.edges[i];
        if (span.contains(u) && span.contains(v)) { drop = i; break; }
      }
      Matching out = Mb;
      out.edges.erase(out.edges.begin() + drop);
      return out;
    }
    // C2 = B2: add an A2-edge outside M2.
    for (auto [u, v] : g.edge_list())
      if (Ab.contains(u) && Ab.contains(v) && !Mb.covers(u) && !Mb.covers(v)) {
        Matching out = Mb;
        out.add(u, v);
        return out;
      }
    return fail("lemma_ensureconnected", "no spare A-edge beside the larger matching");
  };

  if (Mb.size() > 0) {
    auto mb2 = mutate_bigger();
    if (!mb2) return mb2.failure();
    if (Ms.size() > 0) {
      // Case 1.a: mutate the smaller side the same way.
      const VertexSet& Cs = swapped12 ? C2 : C1;
      bool cs_is_a = swapped12 ? c2_is_a : c1_is_a;
      Matching ms2;
      if (cs_is_a) {
        VertexSet span(n);
        for (auto e : nprime) {
          if (As.contains(e.first)) span.add(e.first);
          if (As.contains(e.second)) span.add(e.second);
        }
        int drop = 0;
        for (int i = 0; i < Ms.size(); ++i) {
          auto [u, v] = Ms.edges[i];
          if (span.contains(u) && span.contains(v)) { drop = i; break; }
        }
        ms2 = Ms;
        ms2.edges.erase(ms2.edges.begin() + drop);
      } else {
        bool found = false;
        for (auto [u, v] : g.edge_list())
          if (As.contains(u) && As.contains(v) && !Ms.covers(u) && !Ms.covers(v)) {
            ms2 = Ms;
            ms2.add(u, v);
            found = true;
            break;
          }
        if (!found) return fail("lemma_ensureconnected", "no spare A-edge beside the smaller matching");
      }
      PathSystem p = ms2.as_path_system().unite(mb2.value().as_path_system());
      for (auto e : nprime) p.add_edge(e.first, e.second);
      (void)Cs;
      return finish(p);
    }
    // Case 1.b: e(Ms) = 0, |As| = |Bs|.  Work with Cs = As via relabel.
    bool cs_is_a = swapped12 ? c2_is_a : c1_is_a;
    const VertexSet& CsB = cs_is_a ? Bs : As;  // the "B1" of the proof
    long long e_b1 = edge_count(g, CsB);
    if (e_b1 > 0) {
      auto eb = first_edge_between(CsB, CsB);
      // first_edge_between with x == y finds an interior edge
      std::optional<std::pair<int, int>> einside;
      for (auto [u, v] : g.edge_list())
        if (CsB.contains(u) && CsB.contains(v)) { einside = {u, v}; break; }
      (void)eb;
      PathSystem p = mb2.value().as_path_system();
      for (auto e : nprime) p.add_edge(e.first, e.second);
      p.add_edge(einside->first, einside->second);
      return finish(p);
    }
    // e(B1) = 0: an edge e12 from B1 into C2 exists by D-balance.
    std::optional<std::pair<int, int>> e12;
    for (auto [u, v] : g.edge_list()) {
      bool hit = (CsB.contains(u) && Cb.contains(v)) || (CsB.contains(v) && Cb.contains(u));
      if (hit) { e12 = {u, v}; break; }
    }
    if (!e12) return fail("lemma_ensureconnected", "Case 1.b: no B1-C2 edge despite balance");
    std::optional<std::pair<int, int>> e12p;
    for (auto e : nprime) {
      bool disjoint = e.first != e12->first && e.first != e12->second && e.second != e12->first &&
                      e.second != e12->second;
      if (disjoint) { e12p = e; break; }
    }
    if (!e12p) return fail("lemma_ensureconnected", "Case 1.b: no disjoint N' edge");
    // f2': the Mb-edge spanning the A-side endpoints of e12, e12'.
    PathSystem p;
    if (cb_is_a) {
      VertexSet span(n);
      for (auto e : {*e12, *e12p}) {
        if (Ab.contains(e.first)) span.add(e.first);
        if (Ab.contains(e.second)) span.add(e.second);
      }
      int drop = 0;
      for (int i = 0; i < Mb.size(); ++i) {
        auto [u, v] = Mb.edges[i];
        if (span.contains(u) && span.contains(v)) { drop = i; break; }
      }
      Matching mb3 = Mb;
      mb3.edges.erase(mb3.edges.begin() + drop);
      p = mb3.as_path_system();
    } else {
      p = Mb.as_path_system();
    }
    p.add_edge(e12->first, e12->second);
    p.add_edge(e12p->first, e12p->second);
    return finish(p);
  }

  // Case 2: both matchings empty, |A_i| = |B_i|.  Relabel C_i to A_i.
  const VertexSet& P1 = c1_is_a ? A1 : B1;  // plays A1
  const VertexSet& Q1 = c1_is_a ? B1 : A1;  // plays B1
  const VertexSet& P2 = c2_is_a ? A2 : B2;
  const VertexSet& Q2 = c2_is_a ? B2 : A2;
  (void)P1;
  (void)P2;
  (void)D2set;
  auto inside_edge = [&](const VertexSet& s) -> std::optional<std::pair<int, int>> {
    for (auto [u, v] : g.edge_list())
      if (s.contains(u) && s.contains(v)) return {{u, v}};
    return std::nullopt;
  };
  auto eq1 = inside_edge(Q1);
  auto eq2 = inside_edge(Q2);
  if (eq1 && eq2) {
    PathSystem p;
    for (auto e : nprime) p.add_edge(e.first, e.second);
    p.add_edge(eq1->first, eq1->second);
    p.add_edge(eq2->first, eq2->second);
    return finish(p);
  }
  // Otherwise one side has an interior edge and the other a QP-cross edge.
  auto cross_edge = [&](const VertexSet& x, const VertexSet& y) -> std::optional<std::pair<int, int>> {
    for (auto [u, v] : g.edge_list()) {
      bool hit = (x.contains(u) && y.contains(v)) || (x.contains(v) && y.contains(u));
      if (hit) return {{u, v}};
    }
    return std::nullopt;
  };
  // e(B1)>0 with e(B2,A1)>0, or symmetric.
  struct Option {
    std::optional<std::pair<int, int>> inner, crossqp;
  };
  Option first{eq1, cross_edge(Q2, P1)};
  Option second{eq2, cross_edge(Q1, P2)};
  for (const auto& opt : {first, second}) {
    if (!opt.inner || !opt.crossqp) continue;
    std::optional<std::pair<int, int>> nmate;
    for (auto e : nprime) {
      bool disjoint = e.first != opt.crossqp->first && e.first != opt.crossqp->second &&
                      e.second != opt.crossqp->first && e.second != opt.crossqp->second;
      if (disjoint) { nmate = e; break; }
    }
    if (!nmate) continue;
    PathSystem p;
    p.add_edge(opt.inner->first, opt.inner->second);
    p.add_edge(opt.crossqp->first, opt.crossqp->second);
    p.add_edge(nmate->first, nmate->second);
    return finish(p);
  }
  return fail("lemma_ensureconnected", "Case 2: no completing edges found");
}

// ---------------------------------------------------------------------------
// two_balanced_system: the full (0,2) balancing pipeline.
struct TwoBalancedResult {
  PathSystem system;
  std::string route;  // "matchings" or "subgraph"
};

inline Expected<TwoBalancedResult> two_balanced_system(const Graph& g, const PartitionSpec& spec_in) {
  if (spec_in.k() != 0 || spec_in.ell() != 2)
    throw InputError("two_balanced_system: shape (0,2) required");
  auto dopt = regular_degree(g);
  if (!dopt) throw InputError("two_balanced_system: graph must be regular");
  long long d = *dopt;
  int n = g.n();

  // Normalize |A_i| >= |B_i|.
  PartitionSpec spec = spec_in;
  for (auto& [a, b] : spec.bipartite)
    if (a.count() < b.count()) std::swap(a, b);
  // WLOG e(A1,B2) <= e(B1,A2): swap the class order if needed.
  {
    auto& w1 = spec.bipartite[0];
    auto& w2 = spec.bipartite[1];
    if (edge_count(g, w1.first, w2.second) > edge_count(g, w1.second, w2.first))
      std::swap(spec.bipartite[0], spec.bipartite[1]);
  }
  const VertexSet& a1 = spec.bipartite[0].first;
  const VertexSet& b1 = spec.bipartite[0].second;
  const VertexSet& a2 = spec.bipartite[1].first;
  const VertexSet& b2 = spec.bipartite[1].second;
  VertexSet w1 = a1 | b1, w2 = a2 | b2;

  Rat delta(d, 2);
  double rho = spec.params.rho;

  if (max_degree_inside(g, a1) > delta.to_double() + 1e-9 ||
      max_degree_inside(g, a2) > delta.to_double() + 1e-9 ||
      max_degree_inside(g, b1) > delta.to_double() + 1e-9 ||
      max_degree_inside(g, b2) > delta.to_double() + 1e-9 ||
      max_degree_between(g, w1, w2) > delta.to_double() + 1e-9)
    return fail("lemma_2balanced", "degree caps Delta <= D/2 fail (D4/D5 violated)");

  auto ex = extract_d_balanced(g, a1, b1, a2, b2, d);
  if (!ex) return ex.failure();

  if (ex.value().matchings) {
    PathSystem p = ex.value().m1.as_path_system().unite(ex.value().m2.as_path_system());
    if (!check_t_balanced(p, a1, b1, a2, b2, 2))
      return fail("lemma_2balanced", "matching route lost 2-balance (internal)");
    if (p.size() > std::sqrt(rho) * n + 1e-9)
      return fail("lemma_2balanced", "matching route exceeds sqrt(rho)*n edges");
    return TwoBalancedResult{p, "matchings"};
  }

  const Graph& h = ex.value().subgraph;
  long long x1 = a1.count() - b1.count();
  long long x2 = a2.count() - b2.count();
  Rat f1 = Rat(edge_count(h, a1) - edge_count(h, b1));
  Rat f2 = Rat(edge_count(h, a2) - edge_count(h, b2));
  Rat av1 = f1 / delta, av2 = f2 / delta;
  Rat bb = Rat(edge_count(h, a1, a2)) / delta;
  Rat cc = Rat(edge_count(h, b1, a2)) / delta;

  BalancedQuadruple q;
  try {
    q = round_balanced(av1, av2, bb, cc, x1, x2, Rat(1, 4));
  } catch (const std::exception& ex2) {
    return fail("lemma_rounding", ex2.what());
  }

  Matching m;
  try {
    m = spread_matching(h, w2, a1, b1, q.bp, q.cp, d / 2 + (d % 2));
  } catch (const std::exception& ex2) {
    return fail("lemma_spreadmatching", ex2.what());
  }

  auto c_side = [&](bool is_a, const VertexSet& a, const VertexSet& b) -> const VertexSet& {
    return is_a ? a : b;
  };
  (void)c_side;
  auto tm = three_matchings(h, w1, w2, m, std::abs(q.a1p), std::abs(q.a2p), d / 2 + (d % 2), std::sqrt(rho));
  if (!tm) return tm.failure();
  PathSystem p = tm.value();

  if (!check_t_balanced(p, a1, b1, a2, b2, 2))
    return fail("lemma_2balanced", "assembled system is not 2-balanced");
  if (p.size() > std::sqrt(rho) * n + 1e-9)
    return fail("lemma_2balanced", "assembled system exceeds sqrt(rho)*n edges");
  // Clause (iii): interior of each W_i is a matching inside one side.
  for (int i = 0; i < 2; ++i) {
    const VertexSet& aa = i == 0 ? a1 : a2;
    const VertexSet& bbs = i == 0 ? b1 : b2;
    long long ia = p.count_inside(aa), ib = p.count_inside(bbs);
    if (ia > 0 && ib > 0) return fail("lemma_2balanced", "interior touches both sides of a class");
    long long cap_a = ceil_eps(Rat(edge_count(g, aa), 5), Rat(1, 4));
    long long cap_b = ceil_eps(Rat(edge_count(g, bbs), 5), Rat(1, 4));
    if (ia > cap_a || ib > cap_b) return fail("lemma_2balanced", "interior matching exceeds e/5 cap");
  }
  return TwoBalancedResult{p, "subgraph"};
}

}  // namespace hamrobust
