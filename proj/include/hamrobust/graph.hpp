#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hamrobust/common.hpp"

namespace hamrobust {

// ---------------------------------------------------------------------------
// VertexSet: packed bitset over vertex ids 0..n-1.

class VertexSet {
 public:
  VertexSet() : n_(0) {}
  explicit VertexSet(int n) : n_(n), words_((n + 63) / 64, 0) {
    if (n < 0) throw InputError("VertexSet: negative universe");
  }

  static VertexSet of(int n, std::initializer_list<int> ids) {
    VertexSet s(n);
    for (int v : ids) s.add(v);
    return s;
  }
  static VertexSet from(int n, const std::vector<int>& ids) {
    VertexSet s(n);
    for (int v : ids) s.add(v);
    return s;
  }
  static VertexSet full(int n) {
    VertexSet s(n);
    for (int i = 0; i < n; ++i) s.add(i);
    return s;
  }

  int universe() const { return n_; }

  void check(int v) const {
    if (v < 0 || v >= n_) throw InputError("vertex id " + std::to_string(v) + " out of range");
  }

  void add(int v) { check(v); words_[v >> 6] |= (1ULL << (v & 63)); }
  void remove(int v) { check(v); words_[v >> 6] &= ~(1ULL << (v & 63)); }
  bool contains(int v) const {
    if (v < 0 || v >= n_) return false;
    return (words_[v >> 6] >> (v & 63)) & 1ULL;
  }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool empty() const {
    for (auto w : words_) if (w) return false;
    return true;
  }

  VertexSet operator|(const VertexSet& o) const { return combine(o, [](std::uint64_t a, std::uint64_t b) { return a | b; }); }
  VertexSet operator&(const VertexSet& o) const { return combine(o, [](std::uint64_t a, std::uint64_t b) { return a & b; }); }
  VertexSet operator-(const VertexSet& o) const { return combine(o, [](std::uint64_t a, std::uint64_t b) { return a & ~b; }); }

  // Complement within the ambient vertex range.
  VertexSet complement() const {
    VertexSet r(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
    r.trim();
    return r;
  }

  bool operator==(const VertexSet& o) const { return n_ == o.n_ && words_ == o.words_; }
  bool operator!=(const VertexSet& o) const { return !(*this == o); }

  bool intersects(const VertexSet& o) const {
    std::size_t m = std::min(words_.size(), o.words_.size());
    for (std::size_t i = 0; i < m; ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  bool is_subset_of(const VertexSet& o) const {
    if (n_ > o.n_) {
      for (int v : to_vector()) if (!o.contains(v)) return false;
      return true;
    }
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(words_.size()); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        int b = std::countr_zero(w);
        out.push_back(i * 64 + b);
        w &= w - 1;
      }
    }
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (int i = 0; i < static_cast<int>(words_.size()); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        int b = std::countr_zero(w);
        f(i * 64 + b);
        w &= w - 1;
      }
    }
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  template <class Op>
  VertexSet combine(const VertexSet& o, Op op) const {
    if (n_ != o.n_) throw InputError("VertexSet: universe mismatch");
    VertexSet r(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = op(words_[i], o.words_[i]);
    return r;
  }

  void trim() {
    int rem = n_ & 63;
    if (rem && !words_.empty()) words_.back() &= (rem == 0 ? ~0ULL : ((1ULL << rem) - 1));
  }

  int n_;
  std::vector<std::uint64_t> words_;
};

// ---------------------------------------------------------------------------
// Graph: simple undirected graph, dense packed-bit adjacency rows.
// Intended scale is n <= 512; subset counting dominates, so rows are bitsets.

class Graph {
 public:
  Graph() : n_(0), stride_(0) {}
  explicit Graph(int n) : n_(n), stride_((n + 63) / 64), rows_(static_cast<std::size_t>(n) * stride_, 0) {
    if (n < 0) throw InputError("Graph: negative order");
  }

  int n() const { return n_; }

  void check(int v) const {
    if (v < 0 || v >= n_) throw InputError("vertex id " + std::to_string(v) + " out of range");
  }

  void add_edge(int u, int v) {
    check(u);
    check(v);
    if (u == v) throw InputError("self-loops are not allowed");
    row(u)[v >> 6] |= (1ULL << (v & 63));
    row(v)[u >> 6] |= (1ULL << (u & 63));
  }
  void remove_edge(int u, int v) {
    check(u);
    check(v);
    row(u)[v >> 6] &= ~(1ULL << (v & 63));
    row(v)[u >> 6] &= ~(1ULL << (u & 63));
  }
  bool has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
    return (row(u)[v >> 6] >> (v & 63)) & 1ULL;
  }

  int degree(int v) const {
    check(v);
    int c = 0;
    for (int i = 0; i < stride_; ++i) c += std::popcount(row(v)[i]);
    return c;
  }

  // d_S(v): neighbours of v inside S.
  int degree_in(int v, const VertexSet& s) const {
    check(v);
    require_universe(s);
    int c = 0;
    const auto& sw = s.words();
    for (int i = 0; i < stride_; ++i) c += std::popcount(row(v)[i] & sw[i]);
    return c;
  }

  VertexSet neighbours_of(int v) const {
    check(v);
    VertexSet s(n_);
    for (int u = 0; u < n_; ++u)
      if (has_edge(v, u)) s.add(u);
    return s;
  }

  std::vector<int> neighbour_list(int v) const { return neighbours_of(v).to_vector(); }

  long long edge_total() const {
    long long c = 0;
    for (int v = 0; v < n_; ++v) c += degree(v);
    return c / 2;
  }

  std::vector<std::pair<int, int>> edge_list() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        if (has_edge(u, v)) out.emplace_back(u, v);
    return out;
  }

  bool operator==(const Graph& o) const { return n_ == o.n_ && rows_ == o.rows_; }

 private:
  std::uint64_t* row(int v) { return rows_.data() + static_cast<std::size_t>(v) * stride_; }
  const std::uint64_t* row(int v) const { return rows_.data() + static_cast<std::size_t>(v) * stride_; }

  void require_universe(const VertexSet& s) const {
    if (s.universe() != n_) throw InputError("vertex set universe mismatch");
  }

  friend long long edge_count(const Graph&, const VertexSet&);
  friend long long edge_count(const Graph&, const VertexSet&, const VertexSet&);

  int n_;
  int stride_;
  std::vector<std::uint64_t> rows_;
};

// ---------------------------------------------------------------------------
// Counting.  e(S): edges with both endpoints in S.  e(S,T): edges with one
// endpoint in S and the other in T; when S and T overlap, an edge inside
// S \cap T is counted once (documented convention for non-disjoint sets).

inline long long edge_count(const Graph& g, const VertexSet& s) {
  g.require_universe(s);
  long long twice = 0;
  const auto& sw = s.words();
  s.for_each([&](int v) {
    const std::uint64_t* r = g.row(v);
    for (int i = 0; i < g.stride_; ++i) twice += std::popcount(r[i] & sw[i]);
  });
  return twice / 2;
}

inline long long edge_count(const Graph& g, const VertexSet& s, const VertexSet& t) {
  g.require_universe(s);
  g.require_universe(t);
  long long ordered = 0;
  const auto& tw = t.words();
  s.for_each([&](int v) {
    const std::uint64_t* r = g.row(v);
    for (int i = 0; i < g.stride_; ++i) ordered += std::popcount(r[i] & tw[i]);
  });
  // Edges inside S∩T were counted for both orientations; count them once.
  return ordered - edge_count(g, s & t);
}

// N(X) = union of neighbourhoods; may intersect X.
inline VertexSet neighbourhood(const Graph& g, const VertexSet& x) {
  if (x.universe() != g.n()) throw InputError("vertex set universe mismatch");
  VertexSet out(g.n());
  x.for_each([&](int v) { out = out | g.neighbours_of(v); });
  return out;
}

inline Graph induced_subgraph(const Graph& g, const VertexSet& keep) {
  Graph h(g.n());
  auto ids = keep.to_vector();
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      if (g.has_edge(ids[i], ids[j])) h.add_edge(ids[i], ids[j]);
  return h;
}

// Max degree of the bipartite graph G[S,T] (only ST-edges, computed on the
// S side and T side separately).
inline int max_degree_between(const Graph& g, const VertexSet& s, const VertexSet& t) {
  int best = 0;
  s.for_each([&](int v) { best = std::max(best, g.degree_in(v, t)); });
  t.for_each([&](int v) { best = std::max(best, g.degree_in(v, s)); });
  return best;
}

inline int max_degree_inside(const Graph& g, const VertexSet& s) {
  int best = 0;
  s.for_each([&](int v) { best = std::max(best, g.degree_in(v, s)); });
  return best;
}

// All degrees equal => that degree, else nullopt.
inline std::optional<int> regular_degree(const Graph& g) {
  if (g.n() == 0) return std::nullopt;
  int d = g.degree(0);
  for (int v = 1; v < g.n(); ++v)
    if (g.degree(v) != d) return std::nullopt;
  return d;
}

// ---------------------------------------------------------------------------
// Connectivity.

inline std::vector<int> component_ids(const Graph& g) {
  std::vector<int> comp(g.n(), -1);
  int c = 0;
  std::vector<int> stack;
  for (int s = 0; s < g.n(); ++s) {
    if (comp[s] != -1) continue;
    comp[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u = 0; u < g.n(); ++u)
        if (g.has_edge(v, u) && comp[u] == -1) {
          comp[u] = c;
          stack.push_back(u);
        }
    }
    ++c;
  }
  return comp;
}

inline int component_count(const Graph& g) {
  auto comp = component_ids(g);
  int c = 0;
  for (int x : comp) c = std::max(c, x + 1);
  return c;
}

inline int component_count_without(const Graph& g, const VertexSet& removed) {
  std::vector<int> comp(g.n(), -2);
  removed.for_each([&](int v) { comp[v] = -3; });
  int c = 0;
  std::vector<int> stack;
  for (int s = 0; s < g.n(); ++s) {
    if (comp[s] != -2) continue;
    comp[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u = 0; u < g.n(); ++u)
        if (g.has_edge(v, u) && comp[u] == -2) {
          comp[u] = c;
          stack.push_back(u);
        }
    }
    ++c;
  }
  return c;
}

inline bool is_connected(const Graph& g) { return g.n() <= 1 || component_count(g) == 1; }

namespace detail {

// Unit-capacity Dinic on the vertex-split network; used for local vertex
// connectivity kappa(s,t) with early exit once the flow reaches `cap`.
class VertexCutFlow {
 public:
  explicit VertexCutFlow(const Graph& g) : g_(g), n_(g.n()) {}

  // Max number of internally vertex-disjoint s-t paths, stopping at cap.
  int local_connectivity(int s, int t, int cap) {
    // Nodes: v_in = 2v, v_out = 2v+1.
    int N = 2 * n_;
    head_.assign(N, -1);
    to_.clear(); cap_.clear(); nxt_.clear();
    for (int v = 0; v < n_; ++v) {
      int c = (v == s || v == t) ? n_ : 1;
      add_arc(2 * v, 2 * v + 1, c);
    }
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        if (g_.has_edge(u, v)) {
          add_arc(2 * u + 1, 2 * v, 1);
          add_arc(2 * v + 1, 2 * u, 1);
        }
    int src = 2 * s + 1, dst = 2 * t;
    int flow = 0;
    while (flow < cap && bfs(src, dst)) {
      iter_ = head_;
      int f;
      while (flow < cap && (f = dfs(src, dst, cap - flow)) > 0) flow += f;
    }
    return flow;
  }

 private:
  void add_arc(int u, int v, int c) {
    to_.push_back(v); cap_.push_back(c); nxt_.push_back(head_[u]); head_[u] = static_cast<int>(to_.size()) - 1;
    to_.push_back(u); cap_.push_back(0); nxt_.push_back(head_[v]); head_[v] = static_cast<int>(to_.size()) - 1;
  }

  bool bfs(int s, int t) {
    level_.assign(head_.size(), -1);
    std::vector<int> q{s};
    level_[s] = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      int v = q[i];
      for (int e = head_[v]; e != -1; e = nxt_[e])
        if (cap_[e] > 0 && level_[to_[e]] == -1) {
          level_[to_[e]] = level_[v] + 1;
          q.push_back(to_[e]);
        }
    }
    return level_[t] != -1;
  }

  int dfs(int v, int t, int limit) {
    if (v == t) return limit;
    for (int& e = iter_[v]; e != -1; e = nxt_[e]) {
      int u = to_[e];
      if (cap_[e] > 0 && level_[u] == level_[v] + 1) {
        int f = dfs(u, t, std::min(limit, cap_[e]));
        if (f > 0) {
          cap_[e] -= f;
          cap_[e ^ 1] += f;
          return f;
        }
      }
    }
    return 0;
  }

  const Graph& g_;
  int n_;
  std::vector<int> head_, to_, cap_, nxt_, level_, iter_;
};

}  // namespace detail

// Exact vertex connectivity.  Esfahanian-Hakimi reduction: fix a minimum
// degree vertex v; any minimum cut either separates v from a non-neighbour
// or contains v, in which case two non-adjacent neighbours of v are
// separated by it.
inline int vertex_connectivity(const Graph& g) {
  int n = g.n();
  if (n < 2) throw InputError("vertex_connectivity requires n >= 2");
  int v0 = 0, mindeg = g.degree(0);
  for (int v = 1; v < n; ++v)
    if (g.degree(v) < mindeg) { mindeg = g.degree(v); v0 = v; }
  int best = n - 1;
  if (mindeg < best) best = mindeg;
  if (best == 0) return 0;
  detail::VertexCutFlow flow(g);
  for (int u = 0; u < n; ++u) {
    if (u == v0 || g.has_edge(v0, u)) continue;
    best = std::min(best, flow.local_connectivity(v0, u, best));
    if (best == 0) return 0;
  }
  auto nb = g.neighbour_list(v0);
  for (std::size_t i = 0; i < nb.size(); ++i)
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      if (g.has_edge(nb[i], nb[j])) continue;
      best = std::min(best, flow.local_connectivity(nb[i], nb[j], best));
      if (best == 0) return 0;
    }
  return best;
}

// A minimum vertex cut witnessing vertex_connectivity (empty when the graph
// is complete).  Found by re-running the local computation at the optimum
// and reading the cut off the residual levels.
inline std::vector<int> minimum_vertex_cut(const Graph& g) {
  int n = g.n();
  int kappa = vertex_connectivity(g);
  if (kappa >= n - 1) return {};
  // Recompute: find a pair (s,t) achieving kappa, then peel cut vertices
  // greedily: v is in some minimum cut iff kappa(G - v) >= kappa - 1 and
  // removing it lowers the remaining requirement.  Desk scale: test each
  // candidate by deletion.
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      if (g.has_edge(s, t)) continue;
      detail::VertexCutFlow flow(g);
      if (flow.local_connectivity(s, t, n) != kappa) continue;
      // Greedy peel: remove vertices that keep s,t separated with a cut of
      // the residual size.
      Graph h = g;
      std::vector<int> cut;
      int need = kappa;
      for (int v = 0; v < n && need > 0; ++v) {
        if (v == s || v == t) continue;
        Graph h2 = h;
        for (int u = 0; u < n; ++u)
          if (h2.has_edge(v, u)) h2.remove_edge(v, u);
        detail::VertexCutFlow f2(h2);
        if (f2.local_connectivity(s, t, n) == need - 1) {
          cut.push_back(v);
          h = h2;
          --need;
        }
      }
      if (need == 0) return cut;
    }
  return {};
}

// ---------------------------------------------------------------------------
// Edge-list text format: first line "n m", then m lines "u v" (0-based).
// Parser tolerates any runs of spaces/tabs.

inline Graph read_edge_list(std::istream& in) {
  auto next_token = [&](long long& out) -> bool {
    std::string tok;
    if (!(in >> tok)) return false;
    try {
      std::size_t pos = 0;
      out = std::stoll(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InputError("edge list: expected integer, got '" + tok + "'");
    }
    return true;
  };
  long long n = 0, m = 0;
  if (!next_token(n)) throw InputError("edge list: missing header");
  if (!next_token(m)) throw InputError("edge list: missing edge count");
  if (n < 0 || n > 100000 || m < 0) throw InputError("edge list: bad header values");
  Graph g(static_cast<int>(n));
  for (long long i = 0; i < m; ++i) {
    long long u, v;
    if (!next_token(u) || !next_token(v))
      throw InputError("edge list: truncated at edge " + std::to_string(i));
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw InputError("edge list: vertex out of range at edge " + std::to_string(i));
    if (u == v) throw InputError("edge list: self-loop at edge " + std::to_string(i));
    g.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  return g;
}

inline Graph read_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

inline void write_edge_list(const Graph& g, std::ostream& out) {
  auto edges = g.edge_list();
  out << g.n() << ' ' << edges.size() << '\n';
  for (auto [u, v] : edges) out << u << ' ' << v << '\n';
}

inline std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(g, out);
  return out.str();
}

}  // namespace hamrobust
