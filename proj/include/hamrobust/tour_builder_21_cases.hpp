#pragma once

// The four top-level branches of the (2,1) builder and the desk-scale
// Hamiltonicity pipeline.  Included at the end of tour_builder_21.hpp.

namespace hamrobust {

struct P123Result {
  PathSystem system;
  std::string branch;
  Character character;
  P123Report report;
  std::vector<std::string> warnings;
};

namespace detail21 {

// ---- |A| - |B| >= 2, m >= 4 ----------------------------------------------
inline Expected<PathSystem> dense_case(const Graph& g, const Shape21& sh, long long ell, long long mm,
                                       long long t_target, const Rat& delta, double delta_prime) {
  // Reduce (ell', m') so that ell' + m'/2 = |A| - |B| with m' >= 4 even,
  // decrementing m first.
  long long lp = ell, mp = mm;
  while (lp + mp / 2 > t_target) {
    if (mp > 4) mp -= 2;
    else if (lp > 0) --lp;
    else break;
  }
  if (lp + mp / 2 != t_target || mp < 4)
    return fail("dense_case", "no (ell', m') reduction with m' >= 4 reaches |A| - |B|");
  return lemma_04(g, sh, lp, mp, delta, delta_prime);
}

// ---- |A| - |B| >= 2, m <= 2 ----------------------------------------------
inline Expected<PathSystem> sparse_case(const Graph& g, const Shape21& sh, const PartitionSpec& spec,
                                        long long ell, long long mm, long long t_target,
                                        const Rat& delta, double delta_prime,
                                        const ConnectorCatalog& catalog) {
  int k = static_cast<int>(mm / 2);
  auto best = catalog.best_max_bal_a1();
  if (!best) return fail("prop_BC", "no basic connector exists");
  ConnectorEntry p0 = *best;
  if (!p0.bal.is_integer()) return fail("sparse_case", "connector balance not integral");
  long long bal0 = p0.bal.integer();
  long long t = t_target - bal0;
  if (t <= 0) return p0.system;

  auto [a1c, a2c] = p0.profile;
  // Claim A sanity.
  if (k == 1 && (bal0 < 0 || (bal0 == 0 && a1c < 1)))
    return fail("claim_A", "connector selection violates Claim A(i)");
  if (a1c < k) return fail("claim_A", "connector selection violates Claim A(ii)");

  VertexSet a1(sh.n), a2(sh.n);
  sh.a.for_each([&](int v) {
    int d = p0.system.degree_of(v);
    if (d == 1) a1.add(v);
    if (d == 2) a2.add(v);
  });

  auto acc = acc_bound(g, sh.a, a1, a2, ell, k, delta, delta_prime);
  if (!acc) return acc.failure();
  const AccBound& ab = acc.value();
  if ((ab.which_case == 1 || ab.which_case == 2) && ab.bound >= t)
    return extend_connector(g, spec, p0, t, ell, k, delta, delta_prime);
  if (ab.which_case != 3)
    return fail("sparse_case", "accommodation bound below t outside case III");

  // Case III.
  const std::vector<int>& hubs = ab.hubs;
  if (bal0 >= a2c + 1 || ell >= t_target) {
    if (ab.bound >= t) return extend_connector(g, spec, p0, t, ell, k, delta, delta_prime);
    return fail("sparse_case", "case-III bound below t despite slack");
  }
  if (bal0 != a2c) return fail("sparse_case", "unexpected connector profile in case III");
  if (ell != t_target - 1) return fail("sparse_case", "ell != |A|-|B|-1 in the tight case");

  Matching threem = max_matching_between(g, sh.a, sh.u);
  if (threem.size() >= 3) {
    // Tight Case 1: rebuild from the two-matchings structure of the
    // three-matching lemma, then accommodate at every hub.
    int iside = edge_count(g, sh.a, sh.v1) == 0 ? 0 : (edge_count(g, sh.a, sh.v2) == 0 ? 1 : -1);
    if (iside == -1) return fail("sparse_case", "case-1 tightness without an empty A-V_i side");
    const VertexSet& vi = iside == 0 ? sh.v1 : sh.v2;
    const VertexSet& vj = iside == 0 ? sh.v2 : sh.v1;
    for (int x : hubs) {
      VertexSet rest = sh.a;
      rest.remove(x);
      Matching maa = max_matching_between(g, rest, vj).trimmed(2);
      Matching mab = max_matching_between(g, sh.b, vi).trimmed(2);
      if (maa.size() < 2 || mab.size() < 2) continue;
      PathSystem px = maa.as_path_system().unite(mab.as_path_system());
      VertexSet pa1 = maa.vertex_set(sh.n) & sh.a;
      auto accsys = accommodate_via_hubs(g, sh.a, pa1, VertexSet(sh.n), hubs, ell + 1);
      if (!accsys) continue;
      PathSystem cand = px.unite(accsys.value());
      PartitionSpec ps = spec;
      if (!cand.is_valid(sh.n)) continue;
      if (!check_euler_tour(reduced_multigraph(cand, ps, sh.n))) continue;
      if (!(bal_ab(cand, ps, sh.n) == HalfInt::whole(t_target))) continue;
      return cand;
    }
    return fail("sparse_case", "tight case 1 failed at every hub");
  }

  // Tight Case 2: hubs are disjoint from the connector (Claim B).
  for (int h : hubs)
    if (p0.system.degree_of(h) > 0)
      return fail("claim_B", "a hub meets the chosen connector");
  auto accsys = accommodate_via_hubs(g, sh.a, a1, a2, hubs, t);
  if (!accsys) return accsys.failure();
  PathSystem cand = p0.system.unite(accsys.value());
  PartitionSpec ps = spec;
  if (!cand.is_valid(sh.n)) return fail("sparse_case", "tight case 2 union invalid");
  if (!check_euler_tour(reduced_multigraph(cand, ps, sh.n)))
    return fail("sparse_case", "tight case 2 lost the Euler tour");
  if (!(bal_ab(cand, ps, sh.n) == HalfInt::whole(t_target)))
    return fail("sparse_case", "tight case 2 balance off target");
  return cand;
}

// ---- |A| = |B| + 1 ---------------------------------------------------------
inline Expected<PathSystem> plus_one_case(const Graph& g, const Shape21& sh, const PartitionSpec& spec,
                                          const Rat& delta, double delta_prime,
                                          const ConnectorCatalog& catalog) {
  int n = sh.n;
  PartitionSpec ps = spec;
  auto valid_p123_shape = [&](const PathSystem& p, long long max_edges) {
    return p.is_valid(n) && p.size() <= max_edges &&
           check_euler_tour(reduced_multigraph(p, ps, n)) && bal_ab(p, ps, n) == HalfInt::whole(1);
  };

  Matching am = max_matching_between(g, sh.a, sh.u);
  if (am.size() >= 3) {
    // Lemma "3okay".
    if (auto direct = catalog.with_bal(1)) return direct->system;
    if (auto two = catalog.with_bal(2)) {
      // Case 1: bal-2 connector avoids B entirely.
      for (auto [x, y] : g.edge_list()) {
        if (!(sh.b.contains(x) && sh.b.contains(y))) continue;
        PathSystem cand = two->system;
        cand.add_edge(x, y);
        if (valid_p123_shape(cand, 6)) return cand;
      }
      // e(B) = 0: a V1V2 edge plus one connector edge per side.
      std::vector<std::pair<int, int>> mav1, mav2;
      for (auto [x, y] : two->system.edges()) {
        bool in1 = sh.v1.contains(x) || sh.v1.contains(y);
        (in1 ? mav1 : mav2).emplace_back(x, y);
      }
      for (auto [ux, uy] : g.edge_list()) {
        bool v1v2 = (sh.v1.contains(ux) && sh.v2.contains(uy)) || (sh.v2.contains(ux) && sh.v1.contains(uy));
        if (!v1v2) continue;
        for (auto e1 : mav1)
          for (auto e2 : mav2) {
            PathSystem cand;
            cand.add_edge(ux, uy);
            cand.add_edge(e1.first, e1.second);
            cand.add_edge(e2.first, e2.second);
            if (valid_p123_shape(cand, 6)) return cand;
          }
      }
      return fail("lemma_3okay", "bal-2 connector could not be rebalanced");
    }
    // Case 2: some A-V_i side is empty; use the two-matchings structure.
    int iside = edge_count(g, sh.a, sh.v1) == 0 ? 0 : (edge_count(g, sh.a, sh.v2) == 0 ? 1 : -1);
    if (iside == -1) return fail("lemma_3okay", "no bal >= 1 connector yet both A-V_i sides occupied");
    const VertexSet& vi = iside == 0 ? sh.v1 : sh.v2;
    const VertexSet& vj = iside == 0 ? sh.v2 : sh.v1;
    Matching mab = max_matching_between(g, sh.b, vi).trimmed(2);
    if (mab.size() < 2) return fail("lemma_3okay", "no 2-matching from B into the empty side");
    // e(A) > 0: one interior A edge completes the balance.
    for (auto [x, y] : g.edge_list()) {
      if (!(sh.a.contains(x) && sh.a.contains(y))) continue;
      VertexSet rest = sh.a;
      rest.remove(x);
      Matching maa = max_matching_between(g, rest, vj).trimmed(2);
      if (maa.size() < 2) continue;
      PathSystem cand = maa.as_path_system().unite(mab.as_path_system());
      cand.add_edge(x, y);
      if (valid_p123_shape(cand, 6)) return cand;
    }
    // e(A) = 0: a 3-matching plus a pendant edge inside G[A, vj].
    Matching big = max_matching_between(g, sh.a, vj);
    if (big.size() >= 4) {
      Matching ma = big.trimmed(3);
      auto xy = big.edges[3];
      PathSystem cand = ma.as_path_system().unite(mab.as_path_system());
      cand.add_edge(xy.first, xy.second);
      if (valid_p123_shape(cand, 6)) return cand;
    }
    // fall through to the chained-edge variant: an extra G[A,vj] edge
    // sharing its A endpoint with the matching.
    for (auto [x, y] : g.edge_list()) {
      bool hit = (sh.a.contains(x) && vj.contains(y)) || (sh.a.contains(y) && vj.contains(x));
      if (!hit) continue;
      Matching ma = max_matching_between(g, sh.a, vj).trimmed(3);
      if (ma.size() < 3 || ma.as_path_system().has_edge(x, y)) continue;
      PathSystem cand = ma.as_path_system().unite(mab.as_path_system());
      cand.add_edge(x, y);
      if (valid_p123_shape(cand, 7)) return cand;
    }
    return fail("lemma_3okay", "case 2 exhausted");
  }

  // No 3-matching in G[A, U].
  auto near = catalog.best_near(1);
  if (!near) return fail("prop_BC", "no basic connector exists");
  ConnectorEntry p0 = *near;
  if (!p0.bal.is_integer()) return fail("plus_one", "connector balance not integral");
  long long bal0 = p0.bal.integer();
  if (bal0 == 1) return p0.system;
  if (bal0 == 2) return fail("plus_one", "bal-2 connector without a 3-matching (impossible)");

  auto add_a_edges = [&](const PathSystem& base, int count) -> std::optional<PathSystem> {
    // add `count` interior A-edges keeping everything valid
    std::function<std::optional<PathSystem>(const PathSystem&, int, int)> rec =
        [&](const PathSystem& cur, int remaining, int from) -> std::optional<PathSystem> {
      if (remaining == 0) {
        if (valid_p123_shape(cur, 6)) return cur;
        return std::nullopt;
      }
      auto edges = g.edge_list();
      for (int e = from; e < static_cast<int>(edges.size()); ++e) {
        auto [x, y] = edges[e];
        if (!(sh.a.contains(x) && sh.a.contains(y))) continue;
        if (cur.has_edge(x, y)) continue;
        PathSystem nxt = cur;
        nxt.add_edge(x, y);
        if (!nxt.is_valid(n)) continue;
        if (auto r = rec(nxt, remaining - 1, e + 1)) return r;
      }
      return std::nullopt;
    };
    return rec(base, count, 0);
  };

  if (bal0 == 0) {
    // Lemma "bal0": one more A edge usually suffices; otherwise perform the
    // proof's exchange moves.
    if (auto r = add_a_edges(p0.system, 1)) return *r;
    // exchanges: replace one connector edge by a fresh A-U or V1V2 edge
    for (auto [x, y] : g.edge_list()) {
      bool useful = (sh.a.contains(x) && sh.u.contains(y)) || (sh.a.contains(y) && sh.u.contains(x)) ||
                    (sh.v1.contains(x) && sh.v2.contains(y)) || (sh.v2.contains(x) && sh.v1.contains(y));
      if (!useful || p0.system.has_edge(x, y)) continue;
      for (auto [px, py] : p0.system.edges()) {
        PathSystem cand = p0.system;
        cand.remove_edge(px, py);
        cand.add_edge(x, y);
        if (valid_p123_shape(cand, 6)) return cand;
        if (auto r = add_a_edges(cand, 1)) return *r;
      }
    }
    return fail("lemma_bal0", "no exchange restored the balance");
  }
  if (bal0 == -1) {
    if (auto r = add_a_edges(p0.system, 2)) return *r;
    // the cherry move at a high-A-degree connector vertex
    for (auto [x, y] : g.edge_list()) {
      bool au = (sh.a.contains(x) && sh.u.contains(y)) || (sh.a.contains(y) && sh.u.contains(x));
      if (!au || p0.system.has_edge(x, y)) continue;
      for (auto [px, py] : p0.system.edges()) {
        PathSystem swapped = p0.system;
        swapped.remove_edge(px, py);
        swapped.add_edge(x, y);
        if (!swapped.is_valid(n)) continue;
        if (auto r = add_a_edges(swapped, 2)) return *r;
      }
    }
    return fail("lemma_bal-1", "no pair of interior edges restored the balance");
  }
  // bal0 == -2: e(A,U) = 0 and G[A] is rich.
  Matching ma = max_matching_inside(g, sh.a);
  if (ma.size() >= 3) {
    Matching m2 = ma.trimmed(2);
    auto spare = ma.edges[2];
    PathSystem cand = p0.system.unite(m2.as_path_system());
    cand.add_edge(spare.first, spare.second);
    if (valid_p123_shape(cand, 7)) return cand;
  }
  if (auto r = add_a_edges(p0.system, 3)) return *r;
  return fail("lemma_bal-2", "could not add three interior A edges");
}

// ---- |A| = |B| -------------------------------------------------------------
inline Expected<PathSystem> equal_case(const Graph& g, const Shape21& sh, const PartitionSpec& spec,
                                       const ConnectorCatalog& catalog) {
  int n = sh.n;
  PartitionSpec ps = spec;
  auto valid_shape = [&](const PathSystem& p, long long max_edges) {
    return p.is_valid(n) && p.size() <= max_edges &&
           check_euler_tour(reduced_multigraph(p, ps, n)) && bal_ab(p, ps, n) == HalfInt::whole(0);
  };
  auto near = catalog.best_near(0);
  if (!near) return fail("prop_BC", "no basic connector exists");
  ConnectorEntry p0 = *near;
  if (!p0.bal.is_integer()) return fail("equal_case", "connector balance not integral");
  long long bal0 = p0.bal.integer();
  if (bal0 == 0) return p0.system;

  long long eau = edge_count(g, sh.a, sh.u), ebu = edge_count(g, sh.b, sh.u);
  // One side unused: pad with interior edges on the heavy side.
  auto pad_side = [&](const VertexSet& side, long long count) -> std::optional<PathSystem> {
    std::function<std::optional<PathSystem>(const PathSystem&, long long, int)> rec =
        [&](const PathSystem& cur, long long remaining, int from) -> std::optional<PathSystem> {
      if (remaining == 0) return valid_shape(cur, 6) ? std::optional<PathSystem>(cur) : std::nullopt;
      auto edges = g.edge_list();
      for (int e = from; e < static_cast<int>(edges.size()); ++e) {
        auto [x, y] = edges[e];
        if (!(side.contains(x) && side.contains(y))) continue;
        if (cur.has_edge(x, y)) continue;
        PathSystem nxt = cur;
        nxt.add_edge(x, y);
        if (!nxt.is_valid(n)) continue;
        if (auto r = rec(nxt, remaining - 1, e + 1)) return r;
      }
      return std::nullopt;
    };
    return rec(p0.system, count, 0);
  };
  if (ebu == 0) {
    if (bal0 < 0) return fail("equal_case", "negative balance with e(B,U) = 0 (impossible)");
    if (auto r = pad_side(sh.b, bal0)) return *r;
    return fail("equal_case", "could not pad with interior B edges");
  }
  if (eau == 0) {
    if (bal0 > 0) return fail("equal_case", "positive balance with e(A,U) = 0 (impossible)");
    if (auto r = pad_side(sh.a, -bal0)) return *r;
    return fail("equal_case", "could not pad with interior A edges");
  }

  if (bal0 > 1 || bal0 < -1)
    return fail("equal_case", "catalog minimum |bal| exceeds 1 with both sides occupied");
  // WLOG bal0 == -1 (swap the roles of A and B otherwise; the target
  // balance 0 is symmetric).
  const VertexSet& heavy = bal0 == -1 ? sh.a : sh.b;  // side that must gain an edge
  if (auto r = pad_side(heavy, 1)) return *r;

  // Claim 1 says G[heavy, U] has no 2-matching; Claim 2 provides a
  // 3-matching in G[V1, V2].  Combine with one A- and one B-cross edge.
  Matching mv = max_matching_between(g, sh.v1, sh.v2);
  if (mv.size() < 3) return fail("claim_2", "no 3-matching between V1 and V2");
  mv = mv.trimmed(3);
  for (auto [ax, ay] : g.edge_list()) {
    bool a_cross = (sh.a.contains(ax) && sh.u.contains(ay)) || (sh.a.contains(ay) && sh.u.contains(ax));
    if (!a_cross) continue;
    for (auto [bx, by] : g.edge_list()) {
      bool b_cross = (sh.b.contains(bx) && sh.u.contains(by)) || (sh.b.contains(by) && sh.u.contains(bx));
      if (!b_cross) continue;
      PathSystem base;
      base.add_edge(ax, ay);
      base.add_edge(bx, by);
      if (!base.is_valid(n) || base.size() != 2) continue;
      for (int ci = 0; ci < 3; ++ci) {
        PathSystem cand = base;
        cand.add_edge(mv.edges[ci].first, mv.edges[ci].second);
        if (valid_shape(cand, 4)) return cand;
        for (int cj = 0; cj < 3; ++cj) {
          if (cj == ci) continue;
          PathSystem cand2 = cand;
          cand2.add_edge(mv.edges[cj].first, mv.edges[cj].second);
          if (valid_shape(cand2, 4)) return cand2;
        }
      }
    }
  }
  return fail("equal_case", "combining cross edges with the V1V2 matching failed");
}

}  // namespace detail21

// ---------------------------------------------------------------------------
// build_p123: hypothesis checks, character, dispatch, final validation.

inline Expected<P123Result> build_p123(const Graph& g, const PartitionSpec& spec, double eps = 0.25,
                                       long long budget = 5'000'000) {
  Shape21 sh = detail21::make_shape(g, spec);
  int n = sh.n;
  long long d = sh.d;
  if (!spec.covers(n)) throw InputError("build_p123: spec must partition V(G)");
  long long na = sh.a.count(), nb = sh.b.count();
  if (na < nb) throw PreconditionError("build_p123: |A| >= |B| labelling required");
  if (sh.v1.count() < (d + 1) / 2 || sh.v2.count() < (d + 1) / 2)
    throw PreconditionError("build_p123: |V_i| >= D/2 fails");
  if (max_degree_between(g, sh.a, sh.u) > d / 2.0 + 1e-9)
    throw PreconditionError("build_p123: Delta(G[A, V1 ∪ V2]) <= D/2 fails");
  bool bias = true;
  sh.a.for_each([&](int v) {
    if (g.degree_in(v, sh.a) > g.degree_in(v, sh.b)) bias = false;
  });
  if (!bias) throw PreconditionError("build_p123: d_A(a) <= d_B(a) fails");
  bool majority = true;
  sh.v1.for_each([&](int v) {
    if (g.degree_in(v, sh.v1) < g.degree_in(v, sh.v2)) majority = false;
  });
  sh.v2.for_each([&](int v) {
    if (g.degree_in(v, sh.v2) < g.degree_in(v, sh.v1)) majority = false;
  });
  if (!majority) throw PreconditionError("build_p123: majority degree condition fails");

  P123Result res;
  if (4 * d < n) res.warnings.push_back("D >= n/4 fails (desk-scale instance)");
  if (n <= 150 && vertex_connectivity(g) < 3) res.warnings.push_back("graph is not 3-connected");

  Rat delta(d, 2);
  double delta_prime = eps * delta.to_double();
  res.character = character_of(g, sh.a, sh.u, delta.to_double(), eps);
  long long ell = res.character.ell_a, mm = res.character.m_au;
  long long t_target = na - nb;

  Expected<PathSystem> built = fail("build_p123", "unreachable");
  if (t_target >= 2 && mm >= 4) {
    if (ell + mm / 2 < t_target)
      return fail("prop_matchingsizes", "ell + m/2 < |A| - |B| (regularity hypothesis broken)");
    res.branch = "dense";
    built = detail21::dense_case(g, sh, ell, mm, t_target, delta, delta_prime);
  } else if (t_target >= 2) {
    if (ell + mm / 2 < t_target)
      return fail("prop_matchingsizes", "ell + m/2 < |A| - |B| (regularity hypothesis broken)");
    res.branch = "sparse";
    auto catalog = enumerate_basic_connectors(g, spec, budget);
    built = detail21::sparse_case(g, sh, spec, ell, mm, t_target, delta, delta_prime, catalog);
  } else if (t_target == 1) {
    res.branch = "plus_one";
    auto catalog = enumerate_basic_connectors(g, spec, budget);
    built = detail21::plus_one_case(g, sh, spec, delta, delta_prime, catalog);
  } else {
    res.branch = "equal";
    auto catalog = enumerate_basic_connectors(g, spec, budget);
    built = detail21::equal_case(g, sh, spec, catalog);
  }
  if (!built) return built.failure();
  res.system = built.value();
  res.report = check_p123(g, spec, res.system, res.character);
  if (!res.report.overall())
    return fail("p123_validation", "builder output failed the independent (P1)-(P3) validator");
  return res;
}

// ---------------------------------------------------------------------------
// Desk-scale pipeline.

struct PipelineOutcome {
  enum class Kind { HamiltonCycle, Intermediate, StructuredFailure, Unsupported };
  Kind kind = Kind::StructuredFailure;
  std::vector<int> cycle;
  std::optional<PathSystem> system;
  std::string route;
  std::string failure_step, failure_reason;
  std::string completion;  // "found", "none", "indeterminate", "skipped"
  std::vector<std::string> warnings;
};

inline PipelineOutcome hamiltonicity_pipeline(const Graph& g, const PartitionSpec& spec,
                                              bool complete = true, long long budget = 50'000'000,
                                              double eps = 0.25) {
  PipelineOutcome out;
  int n = g.n();
  int k = spec.k(), l = spec.ell();
  auto run_completion = [&](const PathSystem& p) {
    if (!complete && n > 16) {
      out.completion = "skipped";
      return;
    }
    auto r = complete_to_hamilton(g, p, budget);
    if (r.status == SearchStatus::Found) {
      out.kind = PipelineOutcome::Kind::HamiltonCycle;
      out.cycle = r.cycle;
      out.completion = "found";
    } else {
      out.completion = r.status == SearchStatus::None ? "none" : "indeterminate";
    }
  };

  if (k == 4 && l == 0) {
    out.route = "tour_40";
    auto r = tour_40(g, spec, budget);
    if (!r) {
      out.failure_step = r.failure().step;
      out.failure_reason = r.failure().reason;
      return out;
    }
    out.system = r.value().system;
    out.warnings = r.value().warnings;
    out.kind = PipelineOutcome::Kind::Intermediate;
    run_completion(*out.system);
    return out;
  }
  if (k == 0 && l == 2) {
    out.route = "tour_02";
    auto r = tour_02(g, spec, complete && n <= 16, budget);
    if (!r) {
      out.failure_step = r.failure().step;
      out.failure_reason = r.failure().reason;
      return out;
    }
    out.system = r.value().vtour ? *r.value().vtour : r.value().system;
    out.warnings = r.value().warnings;
    out.kind = PipelineOutcome::Kind::Intermediate;
    run_completion(*out.system);
    return out;
  }
  if (k == 2 && l == 1) {
    out.route = "p123";
    auto refined = refine_partition(g, spec);
    if (!refined) {
      out.failure_step = refined.failure().step;
      out.failure_reason = refined.failure().reason;
      return out;
    }
    Expected<P123Result> r = fail("build_p123", "not run");
    try {
      r = build_p123(g, refined.value().spec, eps, budget);
    } catch (const std::exception& ex) {
      out.failure_step = "build_p123_hypotheses";
      out.failure_reason = ex.what();
      return out;
    }
    if (!r) {
      out.failure_step = r.failure().step;
      out.failure_reason = r.failure().reason;
      return out;
    }
    out.system = r.value().system;
    out.warnings = r.value().warnings;
    out.kind = PipelineOutcome::Kind::Intermediate;
    run_completion(*out.system);
    return out;
  }
  out.kind = PipelineOutcome::Kind::Unsupported;
  out.failure_step = "dispatch";
  out.failure_reason = "shape (" + std::to_string(k) + "," + std::to_string(l) +
                       ") is outside the supported set {(4,0),(0,2),(2,1)}";
  return out;
}

}  // namespace hamrobust
