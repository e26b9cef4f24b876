#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hamrobust/graph.hpp"

namespace hamrobust {

using ordered_json = nlohmann::ordered_json;

// Expansion / closeness parameters.  The intended hierarchy is
// 0 < rho <= nu <= tau < 1 (and tau <= eta when eta is present), but the
// checkers accept any values in (0,1): desk-scale runs routinely probe
// parameter combinations outside the asymptotic sandwich, so violations are
// reported by validate() rather than enforced at construction.
struct RobustParams {
  double rho = 0.0;
  double nu = 0.0;
  double tau = 0.0;
  std::optional<double> eta;

  std::vector<std::string> validate() const {
    std::vector<std::string> issues;
    auto in_unit = [](double x) { return x > 0.0 && x < 1.0; };
    if (!in_unit(rho)) issues.push_back("rho outside (0,1)");
    if (!in_unit(nu)) issues.push_back("nu outside (0,1)");
    if (!in_unit(tau)) issues.push_back("tau outside (0,1)");
    if (rho > nu) issues.push_back("rho > nu");
    if (nu > tau) issues.push_back("nu > tau");
    if (eta) {
      if (!in_unit(*eta)) issues.push_back("eta outside (0,1)");
      if (tau > *eta) issues.push_back("tau > eta");
    }
    return issues;
  }
};

// A labelled candidate partition: expander classes V_1..V_k and bipartite
// classes W_j = A_j ∪ B_j.  In reduced-multigraph contexts each W_j counts
// as a single class.
struct PartitionSpec {
  std::vector<VertexSet> expander;                    // V_1..V_k
  std::vector<std::pair<VertexSet, VertexSet>> bipartite;  // (A_j, B_j)
  RobustParams params;

  int k() const { return static_cast<int>(expander.size()); }
  int ell() const { return static_cast<int>(bipartite.size()); }
  int class_count() const { return k() + ell(); }

  VertexSet class_set(int idx) const {
    if (idx < k()) return expander[idx];
    int j = idx - k();
    return bipartite[j].first | bipartite[j].second;
  }

  std::string class_label(int idx) const {
    if (idx < k()) return "V" + std::to_string(idx + 1);
    return "W" + std::to_string(idx - k() + 1);
  }

  // class index per vertex, or -1 when uncovered; throws on overlap.
  std::vector<int> class_of(int n) const {
    std::vector<int> cls(n, -1);
    for (int idx = 0; idx < class_count(); ++idx) {
      VertexSet s = class_set(idx);
      if (s.universe() != n) throw InputError("partition class universe mismatch");
      s.for_each([&](int v) {
        if (cls[v] != -1) throw InputError("partition classes overlap at vertex " + std::to_string(v));
        cls[v] = idx;
      });
    }
    for (int j = 0; j < ell(); ++j)
      if (bipartite[j].first.intersects(bipartite[j].second))
        throw InputError("A and B overlap in class W" + std::to_string(j + 1));
    return cls;
  }

  bool covers(int n) const {
    auto cls = class_of(n);
    for (int v = 0; v < n; ++v)
      if (cls[v] == -1) return false;
    return true;
  }
};

// --------------------------------------------------------------------------
// JSON format:
// {"expander":[[ids]...],
//  "bipartite":[{"A":[ids],"B":[ids]}...],
//  "params":{"rho":..,"nu":..,"tau":..,"eta":..}}

inline ordered_json to_json(const VertexSet& s) {
  ordered_json a = ordered_json::array();
  s.for_each([&](int v) { a.push_back(v); });
  return a;
}

inline ordered_json to_json(const PartitionSpec& spec) {
  ordered_json j;
  j["expander"] = ordered_json::array();
  for (const auto& v : spec.expander) j["expander"].push_back(to_json(v));
  j["bipartite"] = ordered_json::array();
  for (const auto& [a, b] : spec.bipartite) {
    ordered_json w;
    w["A"] = to_json(a);
    w["B"] = to_json(b);
    j["bipartite"].push_back(w);
  }
  ordered_json p;
  p["rho"] = spec.params.rho;
  p["nu"] = spec.params.nu;
  p["tau"] = spec.params.tau;
  if (spec.params.eta) p["eta"] = *spec.params.eta;
  j["params"] = p;
  return j;
}

inline VertexSet vertex_set_from_json(const ordered_json& j, int n) {
  if (!j.is_array()) throw InputError("vertex set JSON: expected array");
  VertexSet s(n);
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InputError("vertex set JSON: expected integer ids");
    s.add(x.get<int>());
  }
  return s;
}

inline PartitionSpec partition_spec_from_json(const ordered_json& j, int n) {
  PartitionSpec spec;
  if (!j.contains("expander") || !j.contains("bipartite") || !j.contains("params"))
    throw InputError("partition spec JSON: missing expander/bipartite/params");
  for (const auto& v : j.at("expander")) spec.expander.push_back(vertex_set_from_json(v, n));
  for (const auto& w : j.at("bipartite")) {
    if (!w.contains("A") || !w.contains("B")) throw InputError("partition spec JSON: bipartite class needs A and B");
    spec.bipartite.emplace_back(vertex_set_from_json(w.at("A"), n), vertex_set_from_json(w.at("B"), n));
  }
  const auto& p = j.at("params");
  spec.params.rho = p.at("rho").get<double>();
  spec.params.nu = p.at("nu").get<double>();
  spec.params.tau = p.at("tau").get<double>();
  if (p.contains("eta")) spec.params.eta = p.at("eta").get<double>();
  return spec;
}

}  // namespace hamrobust
