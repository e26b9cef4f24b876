#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hamrobust/graph.hpp"
#include "hamrobust/partition.hpp"

namespace hamrobust {

// ---------------------------------------------------------------------------
// Options for the subset-quantified checks.  Exhaustive up to
// exhaustive_cap ground-set bits, sampled above it.  RN thresholds follow
// the induced subgraph's own order by default; `ambient` switches every
// occurrence of n to the ambient graph's order.
struct CheckOptions {
  int exhaustive_cap = 22;
  int samples = 100000;
  std::uint64_t sample_seed = 1;
  bool ambient_scale = false;

  static CheckOptions light() {
    CheckOptions o;
    o.exhaustive_cap = 18;
    o.samples = 2000;
    return o;
  }
};

inline int worker_count() {
  if (const char* env = std::getenv("HAMROBUST_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return std::min(v, 64);
  }
  return 1;
}

// RN_{nu}(S): all vertices with at least ceil(nu * n) neighbours in S,
// taken over the whole of g.
inline VertexSet robust_neighbourhood(const Graph& g, const VertexSet& s, double nu) {
  long long threshold = std::max<long long>(snapped_ceil(nu * g.n()), 0);
  VertexSet out(g.n());
  for (int v = 0; v < g.n(); ++v)
    if (g.degree_in(v, s) >= threshold) out.add(v);
  return out;
}

// ---------------------------------------------------------------------------
// Robust expander verdicts.

struct ExpanderVerdict {
  bool passed = false;
  bool exhaustive = false;
  long long sets_checked = 0;
  std::optional<std::vector<int>> witness;  // first violating S, lexicographic
  std::string note;
};

namespace detail {

// Shared state for one expander check over a fixed ground set.
struct ExpanderScan {
  const Graph& g;
  std::vector<int> ground;        // vertices of U (or A), ascending
  std::vector<std::uint64_t> nb;  // neighbour mask within target set, per ground vertex (<= 64 bits)
  std::vector<std::uint64_t> target_of_ground;  // for bipartite: B-ids; else same ids
  int target_size = 0;
  long long rn_threshold = 0;
  double expansion = 0;  // required |RN| >= |S| + expansion
  long long min_size = 0, max_size = 0;

  // DFS in list-lexicographic order over subsets of ground, maintaining
  // counts of target-side degrees.  Returns the first violating subset.
  std::vector<int> chosen;
  std::vector<int> deg;  // deg[t]: neighbours in S for target vertex t
  long long rn_count = 0;
  long long checked = 0;
  std::optional<std::vector<int>> witness;

  explicit ExpanderScan(const Graph& gg) : g(gg) {}

  void toggle(int gi, int delta) {
    std::uint64_t w = nb[gi];
    while (w) {
      int t = std::countr_zero(w);
      w &= w - 1;
      int before = deg[t];
      deg[t] += delta;
      if (delta > 0 && before == rn_threshold - 1) ++rn_count;
      if (delta < 0 && before == rn_threshold) --rn_count;
    }
  }

  bool violates() {
    long long s = static_cast<long long>(chosen.size());
    if (s < min_size || s > max_size) return false;
    ++checked;
    return static_cast<double>(rn_count) + 1e-9 < static_cast<double>(s) + expansion;
  }

  void record_witness() {
    std::vector<int> w;
    for (int i : chosen) w.push_back(ground[i]);
    witness = w;
  }

  // Visits every extension of `chosen` by indices >= idx, in
  // list-lexicographic order, each subset exactly once.
  void dfs(int idx) {
    if (witness) return;
    long long sz = static_cast<long long>(chosen.size());
    if (sz >= max_size) return;
    long long end = static_cast<long long>(ground.size());
    for (long long j = idx; j < end; ++j) {
      if (sz + end - j < min_size) break;  // cannot reach the window any more
      chosen.push_back(static_cast<int>(j));
      toggle(static_cast<int>(j), +1);
      if (violates()) record_witness();
      else dfs(static_cast<int>(j) + 1);
      toggle(static_cast<int>(j), -1);
      chosen.pop_back();
      if (witness) return;
    }
  }

  // One top-level branch: subsets whose smallest element is `b`.
  void run_branch(int b) {
    chosen.push_back(b);
    toggle(b, +1);
    if (violates()) record_witness();
    else dfs(b + 1);
    toggle(b, -1);
    chosen.pop_back();
  }

  void run_all() {
    if (min_size <= 0 && violates()) {
      record_witness();
      return;
    }
    for (int b = 0; b < static_cast<int>(ground.size()) && !witness; ++b) run_branch(b);
  }
};

}  // namespace detail

// Core subset-quantified expansion check.  `ground` is the quantified side
// (U, or A in the bipartite case); `target` is where RN is counted (U, or
// B); thresholds are ceil(nu*n_scale) for membership and +nu*n_scale for
// expansion; sizes range over [tau*ground_scale, (1-tau)*ground_scale].
inline ExpanderVerdict expansion_check(const Graph& g, const VertexSet& ground, const VertexSet& target,
                                       double nu, double tau, double n_scale, double ground_scale,
                                       const CheckOptions& opt) {
  ExpanderVerdict out;
  std::vector<int> gvec = ground.to_vector();
  std::vector<int> tvec = target.to_vector();
  if (tvec.size() > 64 && gvec.size() <= static_cast<std::size_t>(opt.exhaustive_cap)) {
    // Fall back to sampling; the packed scan keeps target masks in one word.
  }
  long long min_size = std::max<long long>(0, snapped_ceil(tau * ground_scale));
  long long max_size = snapped_floor((1.0 - tau) * ground_scale);
  long long rn_threshold = std::max<long long>(1, snapped_ceil(nu * n_scale));
  double expansion = nu * n_scale;

  auto eval_subset = [&](const std::vector<int>& subset) -> bool {
    // true = violation
    long long s = static_cast<long long>(subset.size());
    if (s < min_size || s > max_size) return false;
    VertexSet sv = VertexSet::from(g.n(), subset);
    long long rn = 0;
    for (int t : tvec)
      if (g.degree_in(t, sv) >= rn_threshold) ++rn;
    return static_cast<double>(rn) + 1e-9 < static_cast<double>(s) + expansion;
  };

  if (static_cast<int>(gvec.size()) <= opt.exhaustive_cap && tvec.size() <= 64) {
    auto make_scan = [&]() {
      detail::ExpanderScan scan(g);
      scan.ground = gvec;
      scan.target_size = static_cast<int>(tvec.size());
      scan.rn_threshold = rn_threshold;
      scan.expansion = expansion;
      scan.min_size = min_size;
      scan.max_size = max_size;
      scan.nb.resize(gvec.size(), 0);
      for (std::size_t i = 0; i < gvec.size(); ++i)
        for (std::size_t t = 0; t < tvec.size(); ++t)
          if (g.has_edge(gvec[i], tvec[t])) scan.nb[i] |= (1ULL << t);
      scan.deg.assign(tvec.size(), 0);
      return scan;
    };
    int workers = worker_count();
    out.exhaustive = true;
    if (workers <= 1 || gvec.size() < 4) {
      detail::ExpanderScan scan = make_scan();
      scan.run_all();
      out.sets_checked = scan.checked;
      out.witness = scan.witness;
    } else {
      // Split by the smallest included ground index; the branch with the
      // smallest index wins, so the witness stays lexicographically first.
      int branches = static_cast<int>(gvec.size());
      std::vector<std::optional<std::vector<int>>> found(branches);
      std::vector<long long> counted(branches, 0);
      std::atomic<int> next{0};
      auto work = [&]() {
        for (;;) {
          int b = next.fetch_add(1);
          if (b >= branches) return;
          detail::ExpanderScan scan = make_scan();
          scan.run_branch(b);
          found[b] = scan.witness;
          counted[b] = scan.checked;
        }
      };
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();
      for (int b = 0; b < branches; ++b) {
        out.sets_checked += counted[b];
        if (!out.witness && found[b]) out.witness = found[b];
      }
      if (!out.witness && min_size <= 0) {
        detail::ExpanderScan scan = make_scan();
        if (scan.violates()) out.witness = std::vector<int>{};
      }
    }
    out.passed = !out.witness.has_value();
    return out;
  }

  // Sampled mode: uniform subsets across the admissible size window.
  out.exhaustive = false;
  Rng rng(opt.sample_seed * 0x10001ULL + 7);
  long long lo = std::max<long long>(min_size, 0), hi = std::min<long long>(max_size, gvec.size());
  if (lo > hi) {
    out.passed = true;
    out.note = "size window empty";
    return out;
  }
  for (int it = 0; it < opt.samples; ++it) {
    long long size = lo + static_cast<long long>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
    std::vector<int> pool = gvec;
    rng.shuffle(pool);
    std::vector<int> subset(pool.begin(), pool.begin() + size);
    std::sort(subset.begin(), subset.end());
    ++out.sets_checked;
    if (eval_subset(subset)) {
      out.witness = subset;
      out.passed = false;
      out.note = "violation found by sampling";
      return out;
    }
  }
  out.passed = true;
  out.note = "sampled check only (" + std::to_string(opt.samples) + " subsets); no violation found";
  return out;
}

// Robust (nu,tau)-expander check for G[U].
inline ExpanderVerdict check_robust_expander(const Graph& g, const VertexSet& u, const RobustParams& p,
                                             const CheckOptions& opt = {}) {
  if (u.empty()) throw InputError("check_robust_expander: empty U");
  Graph h = induced_subgraph(g, u);
  double scale = opt.ambient_scale ? g.n() : u.count();
  return expansion_check(h, u, u, p.nu, p.tau, scale, u.count(), opt);
}

// Bipartite robust (nu,tau)-expander with ordered bipartition A,B:
// S ⊆ A with tau|A| <= |S| <= (1-tau)|A| must have |RN_{nu,H}(S) ∩ B| >=
// |S| + nu*n_H, where H = G[A ∪ B].
inline ExpanderVerdict check_bipartite_robust_expander(const Graph& g, const VertexSet& a,
                                                       const VertexSet& b, const RobustParams& p,
                                                       const CheckOptions& opt = {}) {
  if (a.intersects(b)) throw InputError("check_bipartite_robust_expander: A and B intersect");
  Graph h = induced_subgraph(g, a | b);
  double scale = opt.ambient_scale ? g.n() : (a | b).count();
  return expansion_check(h, a, b, p.nu, p.tau, scale, a.count(), opt);
}

// ---------------------------------------------------------------------------
// rho-components and rho-closeness to bipartite.

struct RhoComponentReport {
  bool size_ok = false;
  bool boundary_ok = false;
  std::optional<bool> comp_bound_ok;  // |U| >= D - sqrt(rho) n, when g regular
  long long boundary_edges = 0;
  bool overall() const { return size_ok && boundary_ok; }
};

inline RhoComponentReport check_rho_component(const Graph& g, const VertexSet& u, double rho) {
  RhoComponentReport rep;
  double n = g.n();
  rep.size_ok = u.count() + 1e-9 >= std::sqrt(rho) * n;
  rep.boundary_edges = edge_count(g, u, u.complement());
  rep.boundary_ok = static_cast<double>(rep.boundary_edges) <= rho * n * n + 1e-9;
  if (auto d = regular_degree(g))
    rep.comp_bound_ok = u.count() + 1e-9 >= *d - std::sqrt(rho) * n;
  return rep;
}

struct RhoBipartiteReport {
  bool c1 = false, c2 = false, c3 = false;
  long long c3_sum = 0;
  bool overall() const { return c1 && c2 && c3; }
};

inline RhoBipartiteReport check_rho_close_bipartite(const Graph& g, const VertexSet& u1,
                                                    const VertexSet& u2, double rho) {
  if (u1.intersects(u2)) throw InputError("check_rho_close_bipartite: parts intersect");
  RhoBipartiteReport rep;
  double n = g.n();
  rep.c1 = u1.count() + 1e-9 >= std::sqrt(rho) * n && u2.count() + 1e-9 >= std::sqrt(rho) * n;
  rep.c2 = std::abs(u1.count() - u2.count()) <= rho * n + 1e-9;
  rep.c3_sum = edge_count(g, u1, u2.complement()) + edge_count(g, u2, u1.complement());
  rep.c3 = static_cast<double>(rep.c3_sum) <= rho * n * n + 1e-9;
  return rep;
}

// ---------------------------------------------------------------------------
// Robust partition (D1)-(D7) and weak robust partition (D1')-(D5').

struct PartitionReport {
  bool d1 = false, d2 = false, d3 = false, d4 = false, d5 = false, d6 = false, d7 = false;
  bool exhaustive = true;
  std::vector<std::string> notes;
  bool overall() const { return d1 && d2 && d3 && d4 && d5 && d6 && d7; }
};

inline PartitionReport check_robust_partition(const Graph& g, const PartitionSpec& spec,
                                              const CheckOptions& opt = {}) {
  auto dopt = regular_degree(g);
  if (!dopt) throw InputError("check_robust_partition: graph must be regular (D7 references D)");
  long long D = *dopt;
  int n = g.n();
  double rho = spec.params.rho;
  PartitionReport rep;

  rep.d1 = spec.covers(n);

  rep.d2 = true;
  for (const auto& v : spec.expander) {
    auto comp = check_rho_component(g, v, rho);
    auto exp = check_robust_expander(g, v, spec.params, opt);
    rep.exhaustive = rep.exhaustive && exp.exhaustive;
    if (!comp.overall() || !exp.passed) {
      rep.d2 = false;
      rep.notes.push_back("D2 fails on an expander class");
    }
  }

  rep.d3 = true;
  for (const auto& [a, b] : spec.bipartite) {
    auto close = check_rho_close_bipartite(g, a, b, rho);
    auto exp = check_bipartite_robust_expander(g, a, b, spec.params, opt);
    rep.exhaustive = rep.exhaustive && exp.exhaustive;
    if (!close.overall() || !exp.passed) {
      rep.d3 = false;
      rep.notes.push_back("D3 fails on a bipartite class");
    }
  }

  rep.d4 = true;
  for (int i = 0; i < spec.class_count() && rep.d4; ++i) {
    VertexSet x = spec.class_set(i);
    std::vector<VertexSet> others;
    for (int j = 0; j < spec.class_count(); ++j)
      if (j != i) others.push_back(spec.class_set(j));
    x.for_each([&](int v) {
      for (const auto& other : others)
        if (g.degree_in(v, x) < g.degree_in(v, other)) rep.d4 = false;
    });
  }

  rep.d5 = true;
  for (const auto& [a, b] : spec.bipartite) {
    a.for_each([&](int v) {
      if (g.degree_in(v, b) < g.degree_in(v, a)) rep.d5 = false;
    });
    b.for_each([&](int v) {
      if (g.degree_in(v, a) < g.degree_in(v, b)) rep.d5 = false;
    });
  }

  double bound = (1.0 + std::cbrt(rho)) * n / static_cast<double>(D);
  rep.d6 = spec.k() + 2 * spec.ell() <= snapped_floor(bound);

  rep.d7 = true;
  for (int i = 0; i < spec.class_count(); ++i) {
    VertexSet x = spec.class_set(i);
    long long bad = 0;
    x.for_each([&](int v) {
      if (g.degree_in(v, x) + 1e-9 < D - rho * n) ++bad;
    });
    if (static_cast<double>(bad) > rho * n + 1e-9) rep.d7 = false;
  }
  return rep;
}

struct WeakPartitionReport {
  bool d1 = false, d2 = false, d3 = false, d4 = false, d5 = false;
  bool exhaustive = true;
  bool wrsd_rd_applicable = false;  // eta <= (D/n)^2/2 on a regular graph
  std::vector<std::string> notes;
  bool overall() const { return d1 && d2 && d3 && d4 && d5; }
};

inline WeakPartitionReport check_weak_robust_partition(const Graph& g, const PartitionSpec& spec,
                                                       const CheckOptions& opt = {}) {
  if (!spec.params.eta) throw InputError("check_weak_robust_partition: eta missing");
  double eta = *spec.params.eta;
  int n = g.n();
  WeakPartitionReport rep;
  rep.d1 = spec.covers(n);

  rep.d2 = true;
  for (const auto& v : spec.expander) {
    auto comp = check_rho_component(g, v, spec.params.rho);
    auto exp = check_robust_expander(g, v, spec.params, opt);
    rep.exhaustive = rep.exhaustive && exp.exhaustive;
    if (!comp.overall() || !exp.passed) rep.d2 = false;
  }
  rep.d3 = true;
  for (const auto& [a, b] : spec.bipartite) {
    auto close = check_rho_close_bipartite(g, a, b, spec.params.rho);
    auto exp = check_bipartite_robust_expander(g, a, b, spec.params, opt);
    rep.exhaustive = rep.exhaustive && exp.exhaustive;
    if (!close.overall() || !exp.passed) rep.d3 = false;
  }

  rep.d4 = true;
  for (int i = 0; i < spec.class_count(); ++i) {
    VertexSet x = spec.class_set(i);
    x.for_each([&](int v) {
      if (g.degree_in(v, x) + 1e-9 < eta * n) rep.d4 = false;
    });
  }
  rep.d5 = true;
  for (const auto& [a, b] : spec.bipartite) {
    a.for_each([&](int v) {
      if (g.degree_in(v, b) + 1e-9 < eta * n / 2) rep.d5 = false;
    });
    b.for_each([&](int v) {
      if (g.degree_in(v, a) + 1e-9 < eta * n / 2) rep.d5 = false;
    });
  }
  if (auto d = regular_degree(g)) {
    double alpha = static_cast<double>(*d) / n;
    rep.wrsd_rd_applicable = eta <= alpha * alpha / 2 + 1e-12;
    if (rep.wrsd_rd_applicable)
      rep.notes.push_back("eta <= (D/n)^2/2: a robust partition at these parameters is weak robust");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Partition refinement for the (2,1) shape: move boundary vertices so that
// the degree conditions needed by the (2,1) tour machinery hold, minimizing
// first e(A∪B, V1∪V2), then e(V1,V2) + e(A) + e(B).

struct RefineResult {
  PartitionSpec spec;
  int moved = 0;
  std::vector<std::string> checks_failed;  // empty on success
};

inline Expected<RefineResult> refine_partition(const Graph& g, const PartitionSpec& rough,
                                               const CheckOptions& opt = {}) {
  (void)opt;
  if (rough.k() != 2 || rough.ell() != 1) throw InputError("refine_partition: shape (2,1) required");
  auto dopt = regular_degree(g);
  if (!dopt) throw InputError("refine_partition: graph must be regular");
  long long D = *dopt;
  int n = g.n();
  if (!rough.covers(n)) throw InputError("refine_partition: spec must partition V(G)");
  double rho = rough.params.rho;

  const VertexSet& u1 = rough.expander[0];
  const VertexSet& u2 = rough.expander[1];
  const VertexSet& aprime = rough.bipartite[0].first;
  const VertexSet& bprime = rough.bipartite[0].second;

  // Boundary vertices.
  VertexSet x1(n), x2(n), a0(n), b0(n);
  u1.for_each([&](int v) {
    if (g.degree(v) - g.degree_in(v, u1) > rho * n) x1.add(v);
  });
  u2.for_each([&](int v) {
    if (g.degree(v) - g.degree_in(v, u2) > rho * n) x2.add(v);
  });
  aprime.for_each([&](int v) {
    if (g.degree(v) - g.degree_in(v, bprime) + 1e-9 >= std::sqrt(rho) * n) a0.add(v);
  });
  bprime.for_each([&](int v) {
    if (g.degree(v) - g.degree_in(v, aprime) + 1e-9 >= std::sqrt(rho) * n) b0.add(v);
  });

  std::vector<int> moved = (x1 | x2 | a0 | b0).to_vector();
  if (moved.size() > 14)
    return fail("refine_partition", "boundary set too large for exhaustive reassignment (" +
                                        std::to_string(moved.size()) + " vertices)");

  VertexSet y1 = u1 - x1, y2 = u2 - x2, a1base = aprime - a0, b1base = bprime - b0;

  // Exhaustive reassignment of the boundary vertices to the four classes.
  long long best_primary = -1, best_secondary = -1;
  std::vector<int> best_assign;
  std::vector<int> assign(moved.size(), 0);
  auto evaluate = [&]() {
    VertexSet v1 = y1, v2 = y2, aa = a1base, bb = b1base;
    for (std::size_t i = 0; i < moved.size(); ++i) {
      switch (assign[i]) {
        case 0: v1.add(moved[i]); break;
        case 1: v2.add(moved[i]); break;
        case 2: aa.add(moved[i]); break;
        default: bb.add(moved[i]); break;
      }
    }
    VertexSet w = aa | bb, u = v1 | v2;
    long long primary = edge_count(g, w, u);
    long long secondary = edge_count(g, v1, v2) + edge_count(g, aa) + edge_count(g, bb);
    if (best_primary == -1 || primary < best_primary ||
        (primary == best_primary && secondary < best_secondary)) {
      best_primary = primary;
      best_secondary = secondary;
      best_assign = assign;
    }
  };
  std::function<void(std::size_t)> enumerate = [&](std::size_t i) {
    if (i == moved.size()) {
      evaluate();
      return;
    }
    for (int c = 0; c < 4; ++c) {
      assign[i] = c;
      enumerate(i + 1);
    }
  };
  enumerate(0);

  VertexSet v1 = y1, v2 = y2, aa = a1base, bb = b1base;
  int moves = 0;
  for (std::size_t i = 0; i < moved.size(); ++i) {
    switch (best_assign[i]) {
      case 0: v1.add(moved[i]); break;
      case 1: v2.add(moved[i]); break;
      case 2: aa.add(moved[i]); break;
      default: bb.add(moved[i]); break;
    }
    int original = u1.contains(moved[i]) ? 0 : u2.contains(moved[i]) ? 1 : aprime.contains(moved[i]) ? 2 : 3;
    if (original != best_assign[i]) ++moves;
  }
  // Relabel so |A| >= |B|.
  if (aa.count() < bb.count()) std::swap(aa, bb);

  RefineResult res;
  res.moved = moves;
  res.spec.expander = {v1, v2};
  res.spec.bipartite = {{aa, bb}};
  res.spec.params.rho = std::cbrt(rho);
  res.spec.params.nu = rough.params.nu / 2;
  res.spec.params.tau = std::min(0.999, 2 * rough.params.tau);
  res.spec.params.eta = 1.0 / 16.0;

  // Re-verify the degree conditions the (2,1) machinery relies on.
  VertexSet u = v1 | v2;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) res.checks_failed.push_back(what);
  };
  check(v1.count() >= (D + 1) / 2 && v2.count() >= (D + 1) / 2, "|V_i| >= D/2");
  check(max_degree_between(g, aa, u) <= D / 2.0 + 1e-9, "Delta(G[A,V1∪V2]) <= D/2");
  bool majority = true;
  v1.for_each([&](int v) {
    if (g.degree_in(v, v1) < g.degree_in(v, v2)) majority = false;
  });
  v2.for_each([&](int v) {
    if (g.degree_in(v, v2) < g.degree_in(v, v1)) majority = false;
  });
  check(majority, "d_{V_i}(x) >= d_{V_j}(x)");
  bool bias = true;
  aa.for_each([&](int v) {
    if (g.degree_in(v, aa) > g.degree_in(v, bb)) bias = false;
  });
  check(bias, "d_A(a) <= d_B(a)");

  if (!res.checks_failed.empty()) {
    std::string joined;
    for (const auto& s : res.checks_failed) joined += s + "; ";
    return fail("refine_partition", "refined partition fails: " + joined);
  }
  return res;
}

}  // namespace hamrobust
