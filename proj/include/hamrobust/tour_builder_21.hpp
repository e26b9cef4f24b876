#pragma once

// The (2,1) case: accommodation bounds, connector extension and the
// dispatcher that assembles a path system satisfying (P1)-(P3).
// Included at the end of tour_builder.hpp.

namespace hamrobust {

struct Shape21 {
  VertexSet v1, v2, a, b, u, w;
  long long d = 0;
  int n = 0;

  PartitionSpec spec(const RobustParams& params) const {
    PartitionSpec s;
    s.expander = {v1, v2};
    s.bipartite = {{a, b}};
    s.params = params;
    return s;
  }
};

namespace detail21 {

inline Shape21 make_shape(const Graph& g, const PartitionSpec& spec) {
  if (spec.k() != 2 || spec.ell() != 1) throw InputError("(2,1) machinery: shape (2,1) required");
  Shape21 sh;
  sh.n = g.n();
  sh.v1 = spec.expander[0];
  sh.v2 = spec.expander[1];
  sh.a = spec.bipartite[0].first;
  sh.b = spec.bipartite[0].second;
  sh.u = sh.v1 | sh.v2;
  sh.w = sh.a | sh.b;
  auto d = regular_degree(g);
  if (!d) throw PreconditionError("(2,1) machinery: graph must be regular");
  sh.d = *d;
  return sh;
}

// Validation shared by the dense-case lemmas: Euler tour over the given
// V-split, exact balance, size cap, and P[A, U] equal to a prescribed
// matching when one is given.
inline bool dense_valid(const Graph& g, const Shape21& sh, const VertexSet& v1c, const VertexSet& v2c,
                        const PathSystem& p, const Matching* cross, HalfInt bal_target,
                        long long max_edges, bool need_via_both) {
  if (!p.is_valid(sh.n)) return false;
  if (p.size() > max_edges) return false;
  PartitionSpec ps;
  ps.expander = {v1c, v2c};
  ps.bipartite = {{sh.a, sh.b}};
  if (!check_euler_tour(reduced_multigraph(p, ps, sh.n))) return false;
  if (bal_ab(p, ps, sh.n) != bal_target) return false;
  if (cross) {
    for (auto [x, y] : p.edges()) {
      bool cr = (sh.u.contains(x) && sh.w.contains(y)) || (sh.u.contains(y) && sh.w.contains(x));
      if (cr && !cross->as_path_system().has_edge(x, y)) return false;
    }
    if (p.count_between(sh.u, sh.w) != cross->size()) return false;
  }
  if (need_via_both) {
    bool via1 = false, via2 = false;
    for (const auto& path : p.paths(sh.n)) {
      int f = path.front(), l = path.back();
      bool fa = sh.a.contains(f), la = sh.a.contains(l);
      if ((v1c.contains(f) && la) || (v1c.contains(l) && fa)) via1 = true;
      if ((v2c.contains(f) && la) || (v2c.contains(l) && fa)) via2 = true;
    }
    if (!via1 || !via2) return false;
  }
  return true;
}

// Lemma "2,2": both matching sides even and positive.
inline Expected<PathSystem> lemma_22(const Graph& g, const Shape21& sh, const VertexSet& v1c,
                                     const VertexSet& v2c, const Matching& m, long long ell,
                                     const Rat& delta, double delta_prime) {
  long long mm = m.size();
  HalfInt target = HalfInt(2 * ell + mm);
  Graph ga = induced_subgraph(g, sh.a);
  MatchingOrHubs gm = matching_or_hubs(ga, ell, delta.to_double(), delta_prime);
  if (gm.kind == MatchingOrHubs::Kind::MatchingPlusEdge) {
    PathSystem joined = m.as_path_system().unite(gm.matching.as_path_system());
    for (auto [x, y] : gm.matching.edges) {
      PathSystem cand = joined;
      cand.remove_edge(x, y);
      if (dense_valid(g, sh, v1c, v2c, cand, &m, target, ell + mm, true)) return cand;
    }
    // perfect-restriction repair: swap two matched edges for the spare edge
    for (int i = 0; i < gm.matching.size(); ++i)
      for (int j = 0; j < gm.matching.size(); ++j) {
        if (i == j) continue;
        PathSystem cand = joined;
        cand.remove_edge(gm.matching.edges[i].first, gm.matching.edges[i].second);
        cand.remove_edge(gm.matching.edges[j].first, gm.matching.edges[j].second);
        cand.add_edge(gm.extra_edge.first, gm.extra_edge.second);
        if (dense_valid(g, sh, v1c, v2c, cand, &m, target, ell + mm, true)) return cand;
      }
    return fail("lemma_2,2", "no valid repair of the matching union");
  }
  if (gm.kind == MatchingOrHubs::Kind::Hubs) {
    auto hp = hub_paths(g, sh.u, sh.a, m, gm.hubs, 0);
    if (!hp) return hp.failure();
    if (dense_valid(g, sh, v1c, v2c, hp.value(), &m, target, ell + mm, true)) return hp.value();
    return fail("lemma_2,2", "hub construction failed validation");
  }
  return fail("lemma_2,2", "goodmatching disjunction failed: " + gm.note);
}

// Lemma "3,3": both matching sides odd and at least three.
inline Expected<PathSystem> lemma_33(const Graph& g, const Shape21& sh, const Matching& m,
                                     long long ell, const Rat& delta, double delta_prime) {
  long long mm = m.size();  // even; both side restrictions odd
  HalfInt target = HalfInt(2 * ell + mm);
  auto side_edges = [&](const VertexSet& side) {
    std::vector<std::pair<int, int>> out;
    for (auto [x, y] : m.edges)
      if (side.contains(x) || side.contains(y)) out.emplace_back(x, y);
    return out;
  };
  auto m1e = side_edges(sh.v1), m2e = side_edges(sh.v2);

  if (ell == 0) {
    for (auto [x, y] : g.edge_list()) {
      bool cr = (sh.u.contains(x) && sh.a.contains(y)) || (sh.u.contains(y) && sh.a.contains(x));
      if (!cr || m.as_path_system().has_edge(x, y)) continue;
      bool plus_v1 = sh.v1.contains(x) || sh.v1.contains(y);
      const auto& other = plus_v1 ? m2e : m1e;
      for (auto [p2, q2] : other) {
        PathSystem cand = m.as_path_system();
        cand.add_edge(x, y);
        cand.remove_edge(p2, q2);
        if (dense_valid(g, sh, sh.v1, sh.v2, cand, nullptr, target, ell + mm, false)) return cand;
      }
    }
    return fail("lemma_3,3", "no parity-fixing edge exchange found (ell = 0)");
  }

  Graph ga = induced_subgraph(g, sh.a);
  MatchingOrHubs gm = matching_or_hubs(ga, ell, delta.to_double(), delta_prime);
  if (gm.kind == MatchingOrHubs::Kind::MatchingPlusEdge) {
    PathSystem joined = m.as_path_system().unite(gm.matching.as_path_system());
    for (auto [e1x, e1y] : m1e)
      for (auto [e2x, e2y] : m2e) {
        PathSystem cand = joined;
        cand.remove_edge(e1x, e1y);
        cand.remove_edge(e2x, e2y);
        if (dense_valid(g, sh, sh.v1, sh.v2, cand, nullptr, target, ell + mm, false)) return cand;
      }
    return fail("lemma_3,3", "no edge pair restores the Euler parity");
  }
  if (gm.kind == MatchingOrHubs::Kind::Hubs) {
    for (auto [e1x, e1y] : m1e)
      for (auto [e2x, e2y] : m2e) {
        Matching reduced = m;
        reduced.edges.erase(std::remove(reduced.edges.begin(), reduced.edges.end(),
                                        std::make_pair(std::min(e1x, e1y), std::max(e1x, e1y))),
                            reduced.edges.end());
        reduced.edges.erase(std::remove(reduced.edges.begin(), reduced.edges.end(),
                                        std::make_pair(std::min(e2x, e2y), std::max(e2x, e2y))),
                            reduced.edges.end());
        bool hub_free = false;
        for (int h : gm.hubs)
          if (!reduced.covers(h)) hub_free = true;
        if (!hub_free) continue;
        auto hp = hub_paths(g, sh.u, sh.a, reduced, gm.hubs, 1);
        if (!hp) continue;
        if (dense_valid(g, sh, sh.v1, sh.v2, hp.value(), nullptr, target, ell + mm, false))
          return hp.value();
      }
    return fail("lemma_3,3", "hub construction failed for every edge pair");
  }
  return fail("lemma_3,3", "goodmatching disjunction failed: " + gm.note);
}

// Lemma "1,3": a matching of size m-1 into V2 plus a single V1 edge.
inline Expected<PathSystem> lemma_13(const Graph& g, const Shape21& sh, const Matching& m2,
                                     std::pair<int, int> e1, long long ell, long long mm,
                                     const Rat& delta, double delta_prime) {
  HalfInt target = HalfInt(2 * ell + mm);
  int n = sh.n;
  VertexSet e1set(n);
  e1set.add(e1.first);
  e1set.add(e1.second);

  for (auto [p, q] : g.edge_list()) {
    int v1 = sh.v1.contains(p) ? p : (sh.v1.contains(q) ? q : -1);
    if (v1 == -1) continue;
    int v = v1 == p ? q : p;
    if (sh.v1.contains(v)) continue;
    if (e1set.contains(v1) || e1set.contains(v)) continue;

    if (sh.a.contains(v)) {
      // Case 1: swap one matching edge for v1-v.
      std::vector<int> drops;
      for (int i = 0; i < m2.size(); ++i)
        if (m2.edges[i].first == v || m2.edges[i].second == v) drops.push_back(i);
      if (drops.empty())
        for (int i = 0; i < m2.size(); ++i) drops.push_back(i);
      for (int dr : drops) {
        Matching mod = m2;
        mod.edges.erase(mod.edges.begin() + dr);
        mod.add(e1.first, e1.second);
        mod.add(v1, v);
        if (!mod.vertex_disjoint()) continue;
        auto r = lemma_22(g, sh, sh.v1, sh.v2, mod, ell, delta, delta_prime);
        if (r.ok() && dense_valid(g, sh, sh.v1, sh.v2, r.value(), nullptr, target, ell + mm + 2, false))
          return r.value();
      }
      continue;
    }
    if (sh.v2.contains(v)) {
      // Case 2: migrate v and one matched V2 endpoint into V1.
      std::vector<int> picks;
      for (int i = 0; i < m2.size(); ++i)
        if (m2.edges[i].first == v || m2.edges[i].second == v) picks.push_back(i);
      for (int i = 0; i < m2.size(); ++i) picks.push_back(i);
      for (int pick : picks) {
        int v2e = sh.v2.contains(m2.edges[pick].first) ? m2.edges[pick].first : m2.edges[pick].second;
        if (v2e == v && m2.edges[pick].first != v && m2.edges[pick].second != v) continue;
        VertexSet v1c = sh.v1, v2c = sh.v2;
        v1c.add(v);
        v2c.remove(v);
        if (v2e != v) {
          v1c.add(v2e);
          v2c.remove(v2e);
        }
        Matching mod = m2;
        mod.add(e1.first, e1.second);
        if (!mod.vertex_disjoint()) continue;
        auto r = lemma_22(g, sh, v1c, v2c, mod, ell, delta, delta_prime);
        if (!r.ok()) continue;
        PathSystem cand = r.value();
        if (cand.vertex_set(n).contains(v1) || cand.vertex_set(n).contains(v)) continue;
        cand.add_edge(v1, v);
        if (dense_valid(g, sh, sh.v1, sh.v2, cand, nullptr, target, ell + mm + 2, false)) return cand;
      }
      continue;
    }
    // Case 3: v in B.
    Graph ga = induced_subgraph(g, sh.a);
    MatchingOrHubs gm = matching_or_hubs(ga, ell, delta.to_double(), delta_prime);
    Matching base = m2;
    base.add(e1.first, e1.second);
    if (gm.kind == MatchingOrHubs::Kind::MatchingPlusEdge) {
      auto p0 = extend_matching_casei(n, sh.u, sh.a, base, gm.matching, gm.extra_edge);
      if (p0.ok()) {
        std::vector<std::pair<int, int>> v2a;
        for (auto [x, y] : p0.value().edges()) {
          bool is = (sh.v2.contains(x) && sh.a.contains(y)) || (sh.v2.contains(y) && sh.a.contains(x));
          if (is) v2a.emplace_back(x, y);
        }
        for (auto [ex, ey] : v2a) {
          PathSystem cand = p0.value();
          cand.remove_edge(ex, ey);
          if (cand.vertex_set(n).contains(v1) || cand.vertex_set(n).contains(v)) continue;
          cand.add_edge(v1, v);
          if (dense_valid(g, sh, sh.v1, sh.v2, cand, nullptr, target, ell + mm + 2, false)) return cand;
        }
      }
    } else if (gm.kind == MatchingOrHubs::Kind::Hubs) {
      if (ell == 0) {
        for (auto [x, y] : g.edge_list()) {
          bool va2 = (sh.v2.contains(x) && sh.a.contains(y)) || (sh.v2.contains(y) && sh.a.contains(x));
          if (!va2 || base.as_path_system().has_edge(x, y)) continue;
          PathSystem cand = base.as_path_system();
          cand.add_edge(v1, v);
          cand.add_edge(x, y);
          if (dense_valid(g, sh, sh.v1, sh.v2, cand, nullptr, target, ell + mm + 2, false)) return cand;
        }
      } else if (ell == 1) {
        int x1 = gm.hubs[0];
        // cherry or pendant at the hub, depending on its role
        std::vector<int> fresh;
        for (int y : g.neighbour_list(x1))
          if (sh.a.contains(y) && !base.covers(y) && y != x1) fresh.push_back(y);
        if (!base.covers(x1)) {
          std::vector<int> drops;
          for (int i = 0; i < m2.size(); ++i) drops.push_back(i);
          for (int dr : drops) {
            if (fresh.size() < 2) break;
            Matching mod = base;
            auto key = std::make_pair(std::min(m2.edges[dr].first, m2.edges[dr].second),
                                      std::max(m2.edges[dr].first, m2.edges[dr].second));
            mod.edges.erase(std::remove(mod.edges.begin(), mod.edges.end(), key), mod.edges.end());
            PathSystem cand = mod.as_path_system();
            cand.add_edge(v1, v);
            cand.add_edge(fresh[0], x1);
            cand.add_edge(x1, fresh[1]);
            if (dense_valid(g, sh, sh.v1, sh.v2, cand, nullptr, target, ell + mm + 2, false))
              return cand;
          }
        } else if (!fresh.empty()) {
          for (auto [x, y] : g.edge_list()) {
            bool va2 = (sh.v2.contains(x) && sh.a.contains(y)) || (sh.v2.contains(y) && sh.a.contains(x));
            if (!va2 || base.as_path_system().has_edge(x, y)) continue;
            PathSystem cand = base.as_path_system();
            cand.add_edge(v1, v);
            cand.add_edge(x, y);
            cand.add_edge(x1, fresh[0]);
            if (dense_valid(g, sh, sh.v1, sh.v2, cand, nullptr, target, ell + mm + 2, false)) return cand;
          }
        }
      } else {
        for (int dr = 0; dr < m2.size(); ++dr) {
          Matching mod = base;
          auto key = std::make_pair(std::min(m2.edges[dr].first, m2.edges[dr].second),
                                    std::max(m2.edges[dr].first, m2.edges[dr].second));
          mod.edges.erase(std::remove(mod.edges.begin(), mod.edges.end(), key), mod.edges.end());
          bool hub_free = false;
          for (int h : gm.hubs)
            if (!mod.covers(h)) hub_free = true;
          if (!hub_free) continue;
          auto hp = hub_paths(g, sh.u, sh.a, mod, gm.hubs, 1);
          if (!hp) continue;
          PathSystem cand = hp.value();
          if (cand.vertex_set(n).contains(v1) || cand.vertex_set(n).contains(v)) continue;
          cand.add_edge(v1, v);
          if (dense_valid(g, sh, sh.v1, sh.v2, cand, nullptr, target, ell + mm + 2, false)) return cand;
        }
      }
    }
  }
  return fail("lemma_1,3", "no connecting edge from V1 admits a valid completion");
}

// Lemma "0,4": the dense case dispatcher on an even matching of size >= 4.
inline Expected<PathSystem> lemma_04(const Graph& g, const Shape21& sh, long long ell, long long mm,
                                     const Rat& delta, double delta_prime) {
  HalfInt target = HalfInt(2 * ell + mm);
  long long cap1 = (Rat(edge_count(g, sh.a, sh.v1)) / delta).ceil();
  long long cap2 = (Rat(edge_count(g, sh.a, sh.v2)) / delta).ceil();
  long long b1 = std::min(cap1, mm), b2 = mm - b1;
  if (b2 > cap2) {
    b2 = cap2;
    b1 = mm - b2;
  }
  if (b1 < 0 || b2 < 0 || b1 > cap1 || b2 > cap2)
    return fail("lemma_0,4", "side targets infeasible for the spread matching");
  Matching m;
  try {
    m = spread_matching(g, sh.a, sh.v1, sh.v2, b1, b2, delta);
  } catch (const std::exception& ex) {
    return fail("lemma_spreadmatching", ex.what());
  }
  // Reorder so b1 <= b2 (classes swap transparently; Euler checks use the
  // original classes via dense_valid).
  const VertexSet& va = b1 <= b2 ? sh.v1 : sh.v2;
  const VertexSet& vb = b1 <= b2 ? sh.v2 : sh.v1;
  long long lo = std::min(b1, b2), hi = std::max(b1, b2);

  if (lo > 0 && lo % 2 == 0 && hi % 2 == 0) return lemma_22(g, sh, sh.v1, sh.v2, m, ell, delta, delta_prime);
  if (lo % 2 == 1 && hi % 2 == 1 && lo >= 3) return lemma_33(g, sh, m, ell, delta, delta_prime);
  if (lo == 1) {
    // the single low-side edge plays e1
    std::pair<int, int> e1{-1, -1};
    Matching m2;
    for (auto [x, y] : m.edges) {
      if (va.contains(x) || va.contains(y)) e1 = {x, y};
      else m2.add(x, y);
    }
    Shape21 sh2 = sh;
    sh2.v1 = va;
    sh2.v2 = vb;
    return lemma_13(g, sh2, m2, e1, ell, mm, delta, delta_prime);
  }
  if (lo == 0 && edge_count(g, sh.a, va) > 0) {
    for (auto [x, y] : g.edge_list()) {
      bool hit = (va.contains(x) && sh.a.contains(y)) || (va.contains(y) && sh.a.contains(x));
      if (!hit) continue;
      Matching m2;
      for (auto [p, q] : m.edges)
        if (p != x && p != y && q != x && q != y) m2.add(p, q);
      if (m2.size() < mm - 1) continue;
      m2 = m2.trimmed(static_cast<int>(mm - 1));
      Shape21 sh2 = sh;
      sh2.v1 = va;
      sh2.v2 = vb;
      auto r = lemma_13(g, sh2, m2, {x, y}, ell, mm, delta, delta_prime);
      if (r.ok()) return r.value();
    }
    return fail("lemma_0,4", "no usable edge into the sparse V side");
  }
  if (lo == 0) {
    // e(A, va) = 0; 3-connectivity supplies a 2-matching in G[va, vb] or
    // G[va, B].
    Matching mstar = max_matching_between(g, va, vb).trimmed(2);
    if (mstar.size() >= 2) {
      // Case 1: migrate the V2-endpoints of two matching edges.
      std::vector<std::pair<int, int>> medges(m.edges.begin(), m.edges.end());
      for (std::size_t i = 0; i < medges.size(); ++i)
        for (std::size_t j = i + 1; j < medges.size(); ++j) {
          int v2a = vb.contains(medges[i].first) ? medges[i].first : medges[i].second;
          int v2b = vb.contains(medges[j].first) ? medges[j].first : medges[j].second;
          VertexSet v1c = va, v2c = vb;
          v1c.add(v2a);
          v1c.add(v2b);
          v2c.remove(v2a);
          v2c.remove(v2b);
          auto r = lemma_22(g, sh, v1c, v2c, m, ell, delta, delta_prime);
          if (!r.ok()) continue;
          PathSystem cand = r.value();
          VertexSet touched = cand.vertex_set(sh.n);
          for (auto [sx, sy] : mstar.edges) {
            PathSystem cand2 = cand;
            cand2.add_edge(sx, sy);
            if (dense_valid(g, sh, sh.v1, sh.v2, cand2, nullptr, target, ell + mm + 4, false))
              return cand2;
            // maybe both mstar edges are needed
          }
          PathSystem cand3 = cand;
          for (auto [sx, sy] : mstar.edges) cand3.add_edge(sx, sy);
          if (cand3.is_valid(sh.n) &&
              dense_valid(g, sh, sh.v1, sh.v2, cand3, nullptr, target, ell + mm + 4, false))
            return cand3;
          (void)touched;
        }
    }
    Matching mb = max_matching_between(g, va, sh.b).trimmed(2);
    if (mb.size() >= 2) {
      // Case 2 via accommodation in A.
      Graph ga = induced_subgraph(g, sh.a);
      MatchingOrHubs gm = matching_or_hubs(ga, ell, delta.to_double(), delta_prime);
      if (gm.kind == MatchingOrHubs::Kind::MatchingPlusEdge) {
        auto p0 = extend_matching_casei(sh.n, sh.u, sh.a, m, gm.matching, gm.extra_edge);
        if (p0.ok()) {
          PathSystem cand = p0.value();
          for (auto [sx, sy] : mb.edges) cand.add_edge(sx, sy);
          if (dense_valid(g, sh, sh.v1, sh.v2, cand, nullptr, target, ell + mm + 4, false)) return cand;
        }
      } else if (gm.kind == MatchingOrHubs::Kind::Hubs && ell >= 2) {
        std::vector<std::pair<int, int>> medges(m.edges.begin(), m.edges.end());
        for (std::size_t i = 0; i < medges.size(); ++i)
          for (std::size_t j = i + 1; j < medges.size(); ++j) {
            Matching mod = m;
            auto k1 = std::make_pair(std::min(medges[i].first, medges[i].second),
                                     std::max(medges[i].first, medges[i].second));
            auto k2 = std::make_pair(std::min(medges[j].first, medges[j].second),
                                     std::max(medges[j].first, medges[j].second));
            mod.edges.erase(std::remove(mod.edges.begin(), mod.edges.end(), k1), mod.edges.end());
            mod.edges.erase(std::remove(mod.edges.begin(), mod.edges.end(), k2), mod.edges.end());
            int outside = 0;
            for (int h : gm.hubs)
              if (!mod.covers(h)) ++outside;
            if (outside < 2) continue;
            auto hp = hub_paths(g, sh.u, sh.a, mod, gm.hubs, 2);
            if (!hp) continue;
            PathSystem cand = hp.value();
            for (auto [sx, sy] : mb.edges) cand.add_edge(sx, sy);
            if (dense_valid(g, sh, sh.v1, sh.v2, cand, nullptr, target, ell + mm + 4, false))
              return cand;
          }
      } else if (gm.kind == MatchingOrHubs::Kind::Hubs) {
        // ell <= 1: find a matching of size mm plus two spare fresh edges in
        // G[A, vb].
        Matching big = max_matching_between(g, sh.a, vb);
        if (big.size() >= mm + 2) {
          Matching mprime = big.trimmed(static_cast<int>(mm));
          std::vector<std::pair<int, int>> spare(big.edges.begin() + mm, big.edges.begin() + mm + 2);
          if (ell == 0) {
            PathSystem cand = mprime.as_path_system();
            for (auto [sx, sy] : spare) cand.add_edge(sx, sy);
            for (auto [sx, sy] : mb.edges) cand.add_edge(sx, sy);
            if (dense_valid(g, sh, sh.v1, sh.v2, cand, nullptr, target, ell + mm + 4, false))
              return cand;
          } else {
            int x1 = gm.hubs[0];
            // drop one spare and one matched edge to free the hub
            for (int di = 0; di < 2; ++di)
              for (int dj = 0; dj < mprime.size(); ++dj) {
                PathSystem cand;
                for (int i2 = 0; i2 < mprime.size(); ++i2)
                  if (i2 != dj) cand.add_edge(mprime.edges[i2].first, mprime.edges[i2].second);
                cand.add_edge(spare[1 - di].first, spare[1 - di].second);
                if (cand.vertex_set(sh.n).contains(x1)) continue;
                std::vector<int> fresh;
                for (int y : g.neighbour_list(x1))
                  if (sh.a.contains(y) && !cand.vertex_set(sh.n).contains(y)) fresh.push_back(y);
                if (fresh.size() < 2) continue;
                cand.add_edge(fresh[0], x1);
                cand.add_edge(x1, fresh[1]);
                for (auto [sx, sy] : mb.edges) cand.add_edge(sx, sy);
                if (dense_valid(g, sh, sh.v1, sh.v2, cand, nullptr, target, ell + mm + 4, false))
                  return cand;
              }
          }
        }
      }
    }
    return fail("lemma_0,4", "neither Case 1 nor Case 2 produced a valid system");
  }
  return fail("lemma_0,4", "unreachable side-target pattern");
}

// ---------------------------------------------------------------------------
// Accommodation: path systems inside G[A] avoiding A2, touching A1 at most
// once, with no A1A1 path.

inline bool accommodates(const PathSystem& p, const VertexSet& a1, const VertexSet& a2, int n) {
  if (!p.is_valid(n)) return false;
  for (int v : p.vertices()) {
    if (a2.contains(v)) return false;
    if (a1.contains(v) && p.degree_of(v) > 1) return false;
  }
  for (const auto& path : p.paths(n))
    if (a1.contains(path.front()) && a1.contains(path.back())) return false;
  return true;
}

// Pendant/cherry systems at hub vertices, per the high-degree construction;
// built at full size then trimmed to `want` edges.
inline Expected<PathSystem> accommodate_via_hubs(const Graph& g, const VertexSet& a,
                                                 const VertexSet& a1, const VertexSet& a2,
                                                 const std::vector<int>& hubs, long long want) {
  int n = g.n();
  PathSystem p;
  VertexSet used(n);
  for (int h : hubs) used.add(h);
  a1.for_each([&](int v) { used.add(v); });
  a2.for_each([&](int v) { used.add(v); });
  for (int x : hubs) {
    if (a2.contains(x)) continue;
    int want_here = a1.contains(x) ? 1 : 2;
    int got = 0;
    for (int y : g.neighbour_list(x)) {
      if (got == want_here) break;
      if (!a.contains(y) || used.contains(y)) continue;
      p.add_edge(x, y);
      used.add(y);
      ++got;
    }
  }
  std::vector<std::pair<int, int>> edges = p.edges();
  if (static_cast<long long>(edges.size()) < want)
    return fail("prop_build2paths", "hub capacity below the requested size");
  for (long long i = static_cast<long long>(edges.size()) - 1; i >= want; --i)
    p.remove_edge(edges[i].first, edges[i].second);
  if (!accommodates(p, a1, a2, n)) return fail("prop_build2paths", "trimmed system fails (A1)-(A3)");
  return p;
}

struct AccBound {
  int which_case = 0;  // 1, 2, 3
  long long bound = 0;
  PathSystem witness;
  std::vector<int> hubs;  // case 3 certificate
  bool hubs_cover_edges = false;
};

inline Expected<AccBound> acc_bound(const Graph& g, const VertexSet& a, const VertexSet& a1,
                                    const VertexSet& a2, long long ell, int k, const Rat& delta,
                                    double delta_prime) {
  if (ell + k < 2) throw PreconditionError("acc_bound: ell + k >= 2 required");
  long long na1 = a1.count(), na2 = a2.count();
  if (na1 < k) throw PreconditionError("acc_bound: a1 >= k required");
  Graph ga = induced_subgraph(g, a);
  MatchingOrHubs gm = matching_or_hubs(ga, ell, delta.to_double(), delta_prime);
  int n = g.n();

  if (gm.kind == MatchingOrHubs::Kind::MatchingPlusEdge) {
    Matching trimmedm;
    for (auto [x, y] : gm.matching.edges) {
      if (a1.contains(x) && a1.contains(y)) continue;
      if (a2.contains(x) || a2.contains(y)) continue;
      trimmedm.add(x, y);
    }
    long long half_a1 = (na1 + 1) / 2;  // ceil
    if (half_a1 + na2 >= k + 1) {
      AccBound out;
      out.which_case = 1;
      out.bound = ell - na1 - 2 * na2 + k + 2;
      if (out.bound < 0) out.bound = 0;
      if (k == 0 && na1 == 0 && na2 == 0) {
        PathSystem w = gm.matching.as_path_system();
        w.add_edge(gm.extra_edge.first, gm.extra_edge.second);
        out.witness = w;
      } else {
        if (trimmedm.size() < out.bound)
          return fail("lemma_accommodation", "pruned matching below the case-I bound");
        out.witness = trimmedm.trimmed(static_cast<int>(out.bound)).as_path_system();
      }
      if (!accommodates(out.witness, a1, a2, n))
        return fail("lemma_accommodation", "case-I witness fails (A1)-(A3)");
      return out;
    }
    // k == 1 and (a1, a2) == (1, 0)
    AccBound out;
    out.which_case = 2;
    out.bound = ell + 1;
    if (trimmedm.size() < out.bound)
      return fail("lemma_accommodation", "pruned matching below the case-II bound");
    out.witness = trimmedm.trimmed(static_cast<int>(out.bound)).as_path_system();
    if (!accommodates(out.witness, a1, a2, n))
      return fail("lemma_accommodation", "case-II witness fails (A1)-(A3)");
    return out;
  }
  if (gm.kind != MatchingOrHubs::Kind::Hubs)
    return fail("lemma_accommodation", "goodmatching disjunction failed: " + gm.note);

  std::vector<int> x = gm.hubs;
  long long in_a1 = 0, in_a2 = 0;
  for (int h : x) {
    if (a1.contains(h)) ++in_a1;
    if (a2.contains(h)) ++in_a2;
  }
  long long heavy = 2 * ell - in_a1 - 2 * in_a2;
  long long maxla = std::max(ell, na1 + na2);
  AccBound out;
  out.hubs = x;
  out.hubs_cover_edges = gm.hubs_cover_all_edges;
  if (maxla >= k + 2) {
    out.which_case = 1;
    out.bound = ell - na1 - 2 * na2 + k + 2;
    if (out.bound < 0) out.bound = 0;
  } else {
    out.which_case = 3;
    out.bound = std::max<long long>(0, ell - na2);
  }
  long long build = std::min(heavy, out.bound);
  if (build < out.bound) return fail("lemma_accommodation", "hub capacity below the case bound");
  auto w = accommodate_via_hubs(g, a, a1, a2, x, out.bound);
  if (!w) return w.failure();
  out.witness = w.value();
  return out;
}

// Prop "addpaths": P0 ∪ (accommodating system of exactly t edges).
inline Expected<PathSystem> extend_connector(const Graph& g, const PartitionSpec& spec,
                                             const ConnectorEntry& connector, long long t,
                                             long long ell, int k, const Rat& delta,
                                             double delta_prime) {
  Shape21 sh = make_shape(g, spec);
  if (t == 0) return connector.system;
  VertexSet a1(sh.n), a2(sh.n);
  sh.a.for_each([&](int v) {
    int d = connector.system.degree_of(v);
    if (d == 1) a1.add(v);
    if (d == 2) a2.add(v);
  });
  auto acc = acc_bound(g, sh.a, a1, a2, ell, k, delta, delta_prime);
  if (!acc) return acc.failure();
  if (acc.value().bound < t)
    throw PreconditionError("extend_connector: t exceeds the accommodation bound");
  PathSystem pa = acc.value().witness;
  auto edges = pa.edges();
  for (long long i = static_cast<long long>(edges.size()) - 1; i >= t; --i)
    pa.remove_edge(edges[i].first, edges[i].second);
  PathSystem p = connector.system.unite(pa);
  PartitionSpec ps = spec;
  if (!p.is_valid(sh.n)) return fail("prop_addpaths", "union is not a path system");
  if (!check_euler_tour(reduced_multigraph(p, ps, sh.n)))
    return fail("prop_addpaths", "union lost the Euler tour");
  if (!(bal_ab(p, ps, sh.n) == connector.bal + HalfInt::whole(t)))
    return fail("prop_addpaths", "balance did not increase by t");
  if (p.size() > t + 4) return fail("prop_addpaths", "size exceeds t + 4");
  return p;
}

}  // namespace detail21

}  // namespace hamrobust

#include "hamrobust/tour_builder_21_cases.hpp"
