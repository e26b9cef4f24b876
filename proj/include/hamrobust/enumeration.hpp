#pragma once

#include <array>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "hamrobust/graph.hpp"

namespace hamrobust {

// Exhaustive enumeration of small graphs up to isomorphism, used by the
// lemma-level disjunction checks.  Graphs on up to 12 vertices are packed
// into a 64-bit edge mask over the pairs (i,j), i < j, in colex order.

struct PackedGraph {
  int n = 0;
  std::uint64_t edges = 0;

  static int pair_index(int i, int j) {
    if (i > j) std::swap(i, j);
    return j * (j - 1) / 2 + i;
  }
  bool has_edge(int i, int j) const { return (edges >> pair_index(i, j)) & 1ULL; }
  void add_edge(int i, int j) { edges |= 1ULL << pair_index(i, j); }

  int edge_count() const { return std::popcount(edges); }
  int degree(int v) const {
    int d = 0;
    for (int u = 0; u < n; ++u)
      if (u != v && has_edge(u, v)) ++d;
    return d;
  }
  int max_degree() const {
    int m = 0;
    for (int v = 0; v < n; ++v) m = std::max(m, degree(v));
    return m;
  }

  Graph unpack() const {
    Graph g(n);
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i)
        if (has_edge(i, j)) g.add_edge(i, j);
    return g;
  }
};

namespace detail {

// Canonical form = the maximal adjacency code over all vertex orderings.
// Position i contributes i bits (adjacency to the earlier positions); codes
// are compared as left-packed bit strings.  Collects the automorphism group
// (as permutations achieving the canonical code) when requested.
class Canonicalizer {
 public:
  explicit Canonicalizer(const PackedGraph& g, bool want_autos)
      : n_(g.n), want_autos_(want_autos) {
    for (int i = 0; i < n_; ++i) {
      adj_[i] = 0;
      for (int j = 0; j < n_; ++j)
        if (i != j && g.has_edge(i, j)) adj_[i] |= 1u << j;
    }
    total_bits_ = n_ * (n_ - 1) / 2;
    dfs(0, 0ULL, 0);
  }

  std::uint64_t code() const { return best_; }
  const std::vector<std::array<std::int8_t, 12>>& automorphisms() const { return autos_; }

 private:
  void dfs(int depth, std::uint64_t cur, int bits) {
    if (depth == n_) {
      if (!has_best_ || cur > best_) {
        best_ = cur;
        has_best_ = true;
        autos_.clear();
      }
      if (want_autos_ && cur == best_) {
        std::array<std::int8_t, 12> a{};
        for (int p = 0; p < n_; ++p) a[p] = static_cast<std::int8_t>(perm_[p]);
        autos_.push_back(a);
      }
      return;
    }
    // Candidate chunks, insertion-sorted descending.
    std::uint32_t chunks[12];
    int verts[12];
    int cnt = 0;
    std::uint32_t placed = 0;
    for (int p = 0; p < depth; ++p) placed |= 1u << perm_[p];
    for (int v = 0; v < n_; ++v) {
      if (placed & (1u << v)) continue;
      std::uint32_t chunk = 0;
      std::uint32_t av = adj_[v];
      for (int p = 0; p < depth; ++p)
        if (av & (1u << perm_[p])) chunk |= 1u << p;
      int k = cnt++;
      while (k > 0 && chunks[k - 1] < chunk) {
        chunks[k] = chunks[k - 1];
        verts[k] = verts[k - 1];
        --k;
      }
      chunks[k] = chunk;
      verts[k] = v;
    }
    for (int c = 0; c < cnt; ++c) {
      std::uint64_t next = (cur << depth) | chunks[c];
      int next_bits = bits + depth;
      if (has_best_) {
        int rem = total_bits_ - next_bits;
        std::uint64_t optimistic = rem >= 64 ? ~0ULL : ((next << rem) | ((rem == 0) ? 0 : ((1ULL << rem) - 1)));
        if (optimistic < best_) break;  // descending order: the rest are no better
        std::uint64_t best_prefix = best_ >> rem;
        if (next < best_prefix) break;
      }
      perm_[depth] = verts[c];
      dfs(depth + 1, next, next_bits);
    }
  }

  int n_;
  bool want_autos_;
  std::uint32_t adj_[12];
  int perm_[12];
  int total_bits_ = 0;
  bool has_best_ = false;
  std::uint64_t best_ = 0;
  std::vector<std::array<std::int8_t, 12>> autos_;
};

}  // namespace detail

inline std::uint64_t canonical_code(const PackedGraph& g) {
  return detail::Canonicalizer(g, false).code();
}

// All graphs on exactly n vertices up to isomorphism (canonical
// representatives), built by vertex augmentation with orbit pruning.
// Known counts: 1, 2, 4, 11, 34, 156, 1044, 12346, 274668 for n = 1..9.
inline std::vector<PackedGraph> graphs_up_to_iso(int n, int max_degree = 1 << 20) {
  if (n < 1 || n > 10) throw InputError("graphs_up_to_iso: supported range is 1..10");
  std::vector<PackedGraph> current;
  current.push_back(PackedGraph{1, 0});
  for (int size = 2; size <= n; ++size) {
    std::vector<PackedGraph> next;
    std::unordered_set<std::uint64_t> seen;
    for (const auto& parent : current) {
      auto canon = detail::Canonicalizer(parent, true);
      int bits = parent.n;
      // Translate achieving orderings into vertex->vertex automorphisms
      // (sigma = q ∘ p0^{-1} for the reference ordering p0).
      std::vector<std::array<std::int8_t, 12>> sigmas;
      {
        const auto& perms = canon.automorphisms();
        if (perms.size() > 1 && perms.size() <= 5000) {
          std::array<int, 12> inv{};
          for (int i = 0; i < bits; ++i) inv[perms[0][i]] = i;
          for (const auto& q : perms) {
            std::array<std::int8_t, 12> sigma{};
            for (int x = 0; x < bits; ++x) sigma[x] = q[inv[x]];
            sigmas.push_back(sigma);
          }
        }
      }
      std::uint32_t full = (1u << bits) - 1;
      for (std::uint32_t nb = 0; nb <= full; ++nb) {
        // Orbit pruning: only the lexicographically-least subset in the
        // automorphism orbit is expanded.
        if (!sigmas.empty()) {
          bool minimal = true;
          for (const auto& a : sigmas) {
            std::uint32_t mapped = 0;
            for (int v = 0; v < bits; ++v)
              if (nb & (1u << v)) mapped |= 1u << a[v];
            if (mapped < nb) {
              minimal = false;
              break;
            }
          }
          if (!minimal) continue;
        }
        if (std::popcount(nb) > max_degree) continue;
        PackedGraph child;
        child.n = size;
        child.edges = parent.edges;
        bool over = false;
        for (int v = 0; v < bits; ++v)
          if (nb & (1u << v)) {
            child.add_edge(v, size - 1);
            if (child.degree(v) > max_degree) over = true;
          }
        if (over) continue;
        std::uint64_t code = canonical_code(child);
        if (seen.insert(code).second) next.push_back(child);
      }
    }
    current = std::move(next);
  }
  return current;
}

}  // namespace hamrobust
