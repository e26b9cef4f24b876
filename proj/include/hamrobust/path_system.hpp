#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hamrobust/graph.hpp"
#include "hamrobust/partition.hpp"

namespace hamrobust {

// ---------------------------------------------------------------------------
// PathSystem: an edge set forming vertex-disjoint non-trivial paths.
// Kept as a normalized sorted edge list; validity (degrees <= 2, acyclic)
// is checked by validate(), not enforced on every mutation, so that
// construction code can assemble a system edge by edge.

class PathSystem {
 public:
  PathSystem() = default;
  explicit PathSystem(std::vector<std::pair<int, int>> edges) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  void add_edge(int u, int v) {
    if (u == v) throw InputError("path system: self-loop");
    if (u > v) std::swap(u, v);
    auto e = std::make_pair(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it != edges_.end() && *it == e) return;
    edges_.insert(it, e);
  }
  void remove_edge(int u, int v) {
    if (u > v) std::swap(u, v);
    auto e = std::make_pair(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it != edges_.end() && *it == e) edges_.erase(it);
  }
  bool has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto e = std::make_pair(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), e);
  }

  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  long long size() const { return static_cast<long long>(edges_.size()); }
  bool empty() const { return edges_.empty(); }

  int degree_of(int v) const {
    int d = 0;
    for (auto [a, b] : edges_)
      if (a == v || b == v) ++d;
    return d;
  }

  std::vector<int> vertices() const {
    std::vector<int> vs;
    for (auto [a, b] : edges_) {
      vs.push_back(a);
      vs.push_back(b);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  VertexSet vertex_set(int n) const {
    VertexSet s(n);
    for (auto [a, b] : edges_) {
      s.add(a);
      s.add(b);
    }
    return s;
  }

  // Degree-1 vertices.
  std::vector<int> endpoints() const {
    std::map<int, int> deg;
    for (auto [a, b] : edges_) {
      ++deg[a];
      ++deg[b];
    }
    std::vector<int> out;
    for (auto [v, d] : deg)
      if (d == 1) out.push_back(v);
    return out;
  }

  // Empty when valid, otherwise a reason.
  std::optional<std::string> validate(int n) const {
    std::map<int, std::vector<int>> adj;
    for (auto [a, b] : edges_) {
      if (a < 0 || b < 0 || a >= n || b >= n) return "vertex id out of range";
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (auto& [v, nb] : adj)
      if (nb.size() > 2) return "vertex " + std::to_string(v) + " has degree " + std::to_string(nb.size());
    // Acyclicity via union-find.
    std::map<int, int> parent;
    std::function<int(int)> find = [&](int x) {
      auto it = parent.find(x);
      if (it == parent.end()) { parent[x] = x; return x; }
      if (it->second == x) return x;
      return parent[x] = find(it->second);
    };
    for (auto [a, b] : edges_) {
      int ra = find(a), rb = find(b);
      if (ra == rb) return "cycle through vertex " + std::to_string(a);
      parent[ra] = rb;
    }
    return std::nullopt;
  }
  bool is_valid(int n) const { return !validate(n).has_value(); }

  // Maximal paths as vertex sequences.  Requires validity.
  std::vector<std::vector<int>> paths(int n) const {
    if (auto why = validate(n)) throw InputError("path system invalid: " + *why);
    std::map<int, std::vector<int>> adj;
    for (auto [a, b] : edges_) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::map<int, bool> used;
    std::vector<std::vector<int>> out;
    for (auto& [v, nb] : adj) {
      if (nb.size() != 1 || used[v]) continue;
      std::vector<int> path{v};
      used[v] = true;
      int prev = -1, cur = v;
      for (;;) {
        int nxt = -1;
        for (int w : adj[cur])
          if (w != prev) { nxt = w; break; }
        if (nxt == -1) break;
        path.push_back(nxt);
        used[nxt] = true;
        prev = cur;
        cur = nxt;
      }
      out.push_back(path);
    }
    return out;
  }

  long long count_inside(const VertexSet& s) const {
    long long c = 0;
    for (auto [a, b] : edges_)
      if (s.contains(a) && s.contains(b)) ++c;
    return c;
  }

  // Edges with one endpoint in each set, inner S∩T edges counted once
  // (same convention as edge_count on graphs).
  long long count_between(const VertexSet& s, const VertexSet& t) const {
    long long c = 0;
    for (auto [a, b] : edges_) {
      bool st = (s.contains(a) && t.contains(b)) || (s.contains(b) && t.contains(a));
      if (st) ++c;
    }
    return c;
  }

  PathSystem unite(const PathSystem& o) const {
    PathSystem r = *this;
    for (auto [a, b] : o.edges_) r.add_edge(a, b);
    return r;
  }

 private:
  std::vector<std::pair<int, int>> edges_;
};

inline ordered_json to_json(const PathSystem& p) {
  ordered_json j;
  j["edges"] = ordered_json::array();
  for (auto [u, v] : p.edges()) j["edges"].push_back(ordered_json::array({u, v}));
  return j;
}

inline PathSystem path_system_from_json(const ordered_json& j) {
  if (!j.contains("edges")) throw InputError("path system JSON: missing edges");
  PathSystem p;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw InputError("path system JSON: edge must be a pair");
    p.add_edge(e[0].get<int>(), e[1].get<int>());
  }
  return p;
}

// ---------------------------------------------------------------------------
// Reduced multigraph R_V(P): one edge per maximal path, joining the classes
// of its two endpoints (a loop when they coincide).

struct ReducedMultigraph {
  int class_count = 0;
  std::vector<std::pair<int, int>> edges;  // unordered class pairs, loops allowed

  std::vector<int> degrees() const {
    std::vector<int> d(class_count, 0);
    for (auto [a, b] : edges) {
      if (a == b) d[a] += 2;
      else {
        ++d[a];
        ++d[b];
      }
    }
    return d;
  }
};

inline ReducedMultigraph reduced_multigraph(const PathSystem& p, const PartitionSpec& spec, int n) {
  auto cls = spec.class_of(n);
  if (auto why = p.validate(n)) throw InputError("reduced multigraph: " + *why);
  ReducedMultigraph r;
  r.class_count = spec.class_count();
  for (const auto& path : p.paths(n)) {
    int a = cls[path.front()], b = cls[path.back()];
    if (a == -1 || b == -1) throw InputError("reduced multigraph: path endpoint not covered by partition");
    if (a > b) std::swap(a, b);
    r.edges.emplace_back(a, b);
  }
  return r;
}

// Euler tour exists (in the sense used for V-tours) iff every class has
// positive even degree (loops count twice) and all classes lie in one
// component of the multigraph.
inline bool check_euler_tour(const ReducedMultigraph& r) {
  if (r.class_count == 0) return false;
  auto deg = r.degrees();
  for (int d : deg)
    if (d == 0 || d % 2 != 0) return false;
  std::vector<int> parent(r.class_count);
  for (int i = 0; i < r.class_count; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto [a, b] : r.edges) parent[find(a)] = find(b);
  for (int i = 1; i < r.class_count; ++i)
    if (find(i) != find(0)) return false;
  return true;
}

// Explicit closed walk using each multigraph edge exactly once and visiting
// every class, or nullopt.  Used as an independent cross-check of
// check_euler_tour.
inline std::optional<std::vector<int>> hierholzer_tour(const ReducedMultigraph& r) {
  if (r.class_count == 0) return std::nullopt;
  auto deg = r.degrees();
  for (int d : deg)
    if (d == 0) return std::nullopt;  // every class must be visited
  int m = static_cast<int>(r.edges.size());
  std::vector<std::vector<std::pair<int, int>>> adj(r.class_count);  // (other, edge id)
  for (int e = 0; e < m; ++e) {
    auto [a, b] = r.edges[e];
    adj[a].emplace_back(b, e);
    if (a != b) adj[b].emplace_back(a, e);
  }
  std::vector<bool> used(m, false);
  std::vector<std::size_t> it(r.class_count, 0);
  std::vector<int> stack{r.edges[0].first}, walk;
  int used_count = 0;
  while (!stack.empty()) {
    int v = stack.back();
    bool advanced = false;
    while (it[v] < adj[v].size()) {
      auto [w, e] = adj[v][it[v]];
      if (used[e]) { ++it[v]; continue; }
      used[e] = true;
      ++used_count;
      stack.push_back(w);
      advanced = true;
      break;
    }
    if (!advanced) {
      walk.push_back(v);
      stack.pop_back();
    }
  }
  if (used_count != m) return std::nullopt;  // edges in several components
  if (walk.front() != walk.back()) return std::nullopt;
  // Verify the sequence really is a closed walk using each edge once.
  std::map<std::pair<int, int>, int> remaining;
  for (auto [a, b] : r.edges) ++remaining[{a, b}];
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    int a = walk[i], b = walk[i + 1];
    if (a > b) std::swap(a, b);
    auto it = remaining.find({a, b});
    if (it == remaining.end() || it->second == 0) return std::nullopt;
    --it->second;
  }
  for (auto& [e, c] : remaining)
    if (c != 0) return std::nullopt;
  std::vector<bool> seen(r.class_count, false);
  for (int v : walk) seen[v] = true;
  for (bool s : seen)
    if (!s) return std::nullopt;
  return walk;
}

// ---------------------------------------------------------------------------
// F_P(A) = (a1, a2): numbers of A-vertices with path-system degree 1 and 2.
inline std::pair<int, int> degree_profile(const PathSystem& p, const VertexSet& a) {
  std::map<int, int> deg;
  for (auto [u, v] : p.edges()) {
    ++deg[u];
    ++deg[v];
  }
  int a1 = 0, a2 = 0;
  for (auto [v, d] : deg) {
    if (!a.contains(v)) continue;
    if (d == 1) ++a1;
    else if (d == 2) ++a2;
  }
  return {a1, a2};
}

// Exact half-integer, for balance functionals.
struct HalfInt {
  long long twice = 0;
  HalfInt() = default;
  explicit HalfInt(long long t) : twice(t) {}
  static HalfInt whole(long long v) { return HalfInt(2 * v); }
  bool is_integer() const { return twice % 2 == 0; }
  long long integer() const {
    if (!is_integer()) throw InputError("half-integer is not integral");
    return twice / 2;
  }
  double value() const { return twice / 2.0; }
  HalfInt operator+(const HalfInt& o) const { return HalfInt(twice + o.twice); }
  HalfInt operator-(const HalfInt& o) const { return HalfInt(twice - o.twice); }
  bool operator==(const HalfInt& o) const { return twice == o.twice; }
  bool operator==(long long v) const { return twice == 2 * v; }
  bool operator<(const HalfInt& o) const { return twice < o.twice; }
  bool operator<=(const HalfInt& o) const { return twice <= o.twice; }
  HalfInt abs() const { return HalfInt(twice < 0 ? -twice : twice); }
};

// bal_AB(P) = e_P(A) - e_P(B) + (e_P(A,U) - e_P(B,U)) / 2.
inline HalfInt balance_of(const PathSystem& p, const VertexSet& a, const VertexSet& b, const VertexSet& u) {
  int n = a.universe();
  if (b.universe() != n || u.universe() != n) throw InputError("balance_of: universe mismatch");
  if (a.intersects(b) || a.intersects(u) || b.intersects(u) || (a | b | u) != VertexSet::full(n))
    throw InputError("balance_of: A,B,U must partition the vertex set");
  long long ea = p.count_inside(a), eb = p.count_inside(b);
  long long eau = p.count_between(a, u), ebu = p.count_between(b, u);
  return HalfInt(2 * (ea - eb) + (eau - ebu));
}

// ---------------------------------------------------------------------------
// Character char_{Delta,eps}(G) = (ell, m) with
//   ell = ceil_eps(e(A)/Delta), m = largest even integer <= ceil_eps(e(A,U)/Delta).
struct Character {
  long long ell_a = 0;
  long long m_au = 0;
  double delta = 0.0;
  double eps = 0.0;
};

inline Character character_of(const Graph& g, const VertexSet& a, const VertexSet& u, double delta,
                              double eps) {
  if (delta <= 0) throw InputError("character_of: delta must be positive");
  int cap_a = max_degree_inside(g, a);
  int cap_au = max_degree_between(g, a, u);
  if (cap_a > delta + 1e-9)
    throw PreconditionError("character_of: max degree inside A exceeds delta");
  if (cap_au > delta + 1e-9)
    throw PreconditionError("character_of: max degree of G[A,U] exceeds delta");
  Character ch;
  ch.delta = delta;
  ch.eps = eps;
  ch.ell_a = std::max<long long>(0, ceil_eps(static_cast<double>(edge_count(g, a)) / delta, eps));
  long long raw = ceil_eps(static_cast<double>(edge_count(g, a, u)) / delta, eps);
  ch.m_au = largest_even_at_most(raw);
  return ch;
}

// ---------------------------------------------------------------------------
// Balancedness identities.  A graph (or path system, viewed as a graph) is
// t-balanced w.r.t. the ordered partition (A1,B1,A2,B2) when for {i,j}={1,2}
//   2 e(A_i) - 2 e(B_i) + e(A_i,W_j) - e(B_i,W_j) = t (|A_i| - |B_i|).
struct BalanceCounts {
  long long ea1, eb1, ea2, eb2;
  long long ea1_w2, eb1_w2, ea2_w1, eb2_w1;
};

inline BalanceCounts balance_counts(const Graph& g, const VertexSet& a1, const VertexSet& b1,
                                    const VertexSet& a2, const VertexSet& b2) {
  VertexSet w1 = a1 | b1, w2 = a2 | b2;
  return {edge_count(g, a1), edge_count(g, b1), edge_count(g, a2), edge_count(g, b2),
          edge_count(g, a1, w2), edge_count(g, b1, w2), edge_count(g, a2, w1), edge_count(g, b2, w1)};
}

inline BalanceCounts balance_counts(const PathSystem& p, const VertexSet& a1, const VertexSet& b1,
                                    const VertexSet& a2, const VertexSet& b2) {
  VertexSet w1 = a1 | b1, w2 = a2 | b2;
  return {p.count_inside(a1), p.count_inside(b1), p.count_inside(a2), p.count_inside(b2),
          p.count_between(a1, w2), p.count_between(b1, w2), p.count_between(a2, w1), p.count_between(b2, w1)};
}

inline bool check_t_balanced(const BalanceCounts& c, long long na1, long long nb1, long long na2,
                             long long nb2, long long t) {
  bool first = 2 * c.ea1 - 2 * c.eb1 + c.ea1_w2 - c.eb1_w2 == t * (na1 - nb1);
  bool second = 2 * c.ea2 - 2 * c.eb2 + c.ea2_w1 - c.eb2_w1 == t * (na2 - nb2);
  return first && second;
}

inline bool check_d_balanced(const Graph& g, const VertexSet& a1, const VertexSet& b1,
                             const VertexSet& a2, const VertexSet& b2, long long d) {
  int n = g.n();
  VertexSet all = a1 | b1 | a2 | b2;
  if (all != VertexSet::full(n) ||
      a1.count() + b1.count() + a2.count() + b2.count() != n)
    throw InputError("check_d_balanced: sets must partition V");
  return check_t_balanced(balance_counts(g, a1, b1, a2, b2), a1.count(), b1.count(), a2.count(),
                          b2.count(), d);
}

inline bool check_t_balanced(const PathSystem& p, const VertexSet& a1, const VertexSet& b1,
                             const VertexSet& a2, const VertexSet& b2, long long t) {
  return check_t_balanced(balance_counts(p, a1, b1, a2, b2), a1.count(), b1.count(), a2.count(),
                          b2.count(), t);
}

// ---------------------------------------------------------------------------
// V-tour validator.
struct VTourReport {
  bool valid_system = false;
  bool euler = false;
  bool contact_within = false;
  bool leftover_balanced = false;
  bool endpoints_balanced_positive = false;
  std::string detail;
  bool overall() const {
    return valid_system && euler && contact_within && leftover_balanced && endpoints_balanced_positive;
  }
};

inline VTourReport check_v_tour(const Graph& g, const PartitionSpec& spec, const PathSystem& p,
                                double gamma) {
  VTourReport rep;
  int n = g.n();
  if (auto why = p.validate(n)) {
    rep.detail = "invalid path system: " + *why;
    return rep;
  }
  rep.valid_system = true;
  rep.euler = check_euler_tour(reduced_multigraph(p, spec, n));
  rep.contact_within = true;
  VertexSet vp = p.vertex_set(n);
  for (int c = 0; c < spec.class_count(); ++c) {
    long long contact = (vp & spec.class_set(c)).count();
    if (contact > gamma * n + 1e-9) {
      rep.contact_within = false;
      rep.detail += "contact " + std::to_string(contact) + " in " + spec.class_label(c) + " exceeds gamma*n; ";
    }
  }
  rep.leftover_balanced = true;
  rep.endpoints_balanced_positive = spec.ell() == 0 ? true : true;
  std::vector<int> ends = p.endpoints();
  for (int j = 0; j < spec.ell(); ++j) {
    const auto& [a, b] = spec.bipartite[j];
    long long left_a = (a - vp).count(), left_b = (b - vp).count();
    if (left_a != left_b) {
      rep.leftover_balanced = false;
      rep.detail += "leftover imbalance in W" + std::to_string(j + 1) + "; ";
    }
    int ea = 0, eb = 0;
    for (int v : ends) {
      if (a.contains(v)) ++ea;
      if (b.contains(v)) ++eb;
    }
    if (ea != eb || ea == 0) {
      rep.endpoints_balanced_positive = false;
      rep.detail += "endpoint counts in W" + std::to_string(j + 1) + " are (" + std::to_string(ea) + "," +
                    std::to_string(eb) + "); ";
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Basic connector validator ((BC1)-(BC4); spec shape (k,l) = (2,1)).
struct BasicConnectorReport {
  bool valid_system = false;
  bool bc1 = false, bc2 = false, bc3 = false, bc4 = false;
  HalfInt bal;
  std::pair<int, int> profile{0, 0};
  std::string detail;
  bool overall() const { return valid_system && bc1 && bc2 && bc3 && bc4; }
};

HalfInt bal_ab(const PathSystem& p, const PartitionSpec& spec, int n);

inline BasicConnectorReport check_basic_connector(const Graph& g, const PartitionSpec& spec,
                                                  const PathSystem& p) {
  BasicConnectorReport rep;
  int n = g.n();
  if (spec.k() != 2 || spec.ell() != 1) throw InputError("basic connector check needs shape (2,1)");
  if (auto why = p.validate(n)) {
    rep.detail = "invalid path system: " + *why;
    return rep;
  }
  rep.valid_system = true;
  rep.bc1 = check_euler_tour(reduced_multigraph(p, spec, n));
  rep.bal = bal_ab(p, spec, n);
  rep.bc2 = p.size() <= 4 && rep.bal.abs() <= HalfInt::whole(2);
  VertexSet w = spec.bipartite[0].first | spec.bipartite[0].second;
  rep.bc3 = p.count_inside(w) == 0;
  rep.profile = degree_profile(p, spec.bipartite[0].first);
  auto [a1, a2] = rep.profile;
  rep.bc4 = (rep.bal == HalfInt::whole(a1 + 2 * a2 - 2) || rep.bal == HalfInt::whole(a1 + 2 * a2 - 1)) &&
            a2 <= 1;
  return rep;
}

// bal_AB for a (2,1)-shaped spec: A,B from the bipartite class, U the rest.
inline HalfInt bal_ab(const PathSystem& p, const PartitionSpec& spec, int n) {
  if (spec.ell() != 1) throw InputError("bal_ab: spec must have exactly one bipartite class");
  const auto& [a, b] = spec.bipartite[0];
  VertexSet u(n);
  for (const auto& v : spec.expander) u = u | v;
  long long ea = p.count_inside(a), eb = p.count_inside(b);
  long long eau = p.count_between(a, u), ebu = p.count_between(b, u);
  return HalfInt(2 * (ea - eb) + (eau - ebu));
}

// ---------------------------------------------------------------------------
// (P1)-(P3) validator.
struct P123Report {
  bool valid_system = false;
  bool p1 = false, p2 = false, p3 = false;
  HalfInt bal;
  std::string detail;
  bool overall() const { return valid_system && p1 && p2 && p3; }
};

inline P123Report check_p123(const Graph& g, const PartitionSpec& spec, const PathSystem& p,
                             const Character& ch) {
  P123Report rep;
  int n = g.n();
  if (spec.k() != 2 || spec.ell() != 1) throw InputError("check_p123 needs shape (2,1)");
  if (auto why = p.validate(n)) {
    rep.detail = "invalid path system: " + *why;
    return rep;
  }
  rep.valid_system = true;
  rep.p1 = p.size() <= ch.ell_a + ch.m_au + 6;
  rep.bal = bal_ab(p, spec, n);
  long long target = spec.bipartite[0].first.count() - spec.bipartite[0].second.count();
  rep.p2 = rep.bal == HalfInt::whole(target);
  rep.p3 = check_euler_tour(reduced_multigraph(p, spec, n));
  return rep;
}

}  // namespace hamrobust
