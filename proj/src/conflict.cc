// Copyright 2026 The sopm Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sopm/conflict.h"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace sopm {

int ConflictSets::GraphIndex(int site) const {
  auto it = std::lower_bound(graph_sites.begin(), graph_sites.end(), site);
  if (it == graph_sites.end() || *it != site) return -1;
  return static_cast<int>(it - graph_sites.begin());
}

bool ConflictSets::IsForbidden(int site) const {
  return std::binary_search(forbidden.begin(), forbidden.end(), site);
}

namespace {

ConflictSets FromPairs(std::vector<int> sites,
                       std::vector<std::pair<int, int>> pairs,
                       std::vector<int> forbidden) {
  ConflictSets cs;
  cs.sites = std::move(sites);
  cs.pairs = std::move(pairs);
  cs.forbidden = std::move(forbidden);
  std::set<int> incident;
  for (int j : cs.sites) cs.neighbors[j];
  for (auto [a, b] : cs.pairs) {
    cs.neighbors[a].push_back(b);
    cs.neighbors[b].push_back(a);
    incident.insert(a);
    incident.insert(b);
  }
  for (auto& [j, q] : cs.neighbors) std::sort(q.begin(), q.end());
  cs.graph_sites.assign(incident.begin(), incident.end());
  cs.graph = Graph(static_cast<int>(cs.graph_sites.size()));
  for (auto [a, b] : cs.pairs) cs.graph.AddEdge(cs.GraphIndex(a), cs.GraphIndex(b));
  return cs;
}

std::vector<int> ToSites(const ConflictSets& cs, const std::vector<int>& idx) {
  std::vector<int> out;
  for (int v : idx) out.push_back(cs.graph_sites[v]);
  std::sort(out.begin(), out.end());
  return out;
}

// Greedy maximal clique containing vertex v: repeatedly add the candidate
// with most neighbours among the remaining candidates (ties: lowest index).
std::vector<int> GrowClique(const Graph& g, int v) {
  std::vector<int> clique = {v};
  std::vector<int> cand = g.Neighbors(v);
  while (!cand.empty()) {
    int pick = -1, pick_degree = -1;
    for (int c : cand) {
      int d = 0;
      for (int o : cand) d += g.Adjacent(c, o);
      if (d > pick_degree) {
        pick_degree = d;
        pick = c;
      }
    }
    clique.push_back(pick);
    std::vector<int> next;
    for (int c : cand) {
      if (c != pick && g.Adjacent(c, pick)) next.push_back(c);
    }
    cand = std::move(next);
  }
  return clique;
}

}  // namespace

ConflictSets BuildConflictSets(const Instance& inst) {
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t a = 0; a < inst.sites.size(); ++a) {
    for (std::size_t b = a + 1; b < inst.sites.size(); ++b) {
      if (inst.euc(inst.sites[a], inst.sites[b]) <= inst.d1) {
        pairs.emplace_back(inst.sites[a], inst.sites[b]);
      }
    }
  }
  std::vector<int> forbidden;
  for (int j : inst.sites) {
    for (int k : inst.clients) {
      if (inst.euc(j, k) <= inst.d2) {
        forbidden.push_back(j);
        break;
      }
    }
  }
  return FromPairs(inst.sites, std::move(pairs), std::move(forbidden));
}

ConflictSets WithoutForbidden(const ConflictSets& cs) {
  std::vector<int> sites;
  for (int j : cs.sites) {
    if (!cs.IsForbidden(j)) sites.push_back(j);
  }
  std::vector<std::pair<int, int>> pairs;
  for (auto [a, b] : cs.pairs) {
    if (!cs.IsForbidden(a) && !cs.IsForbidden(b)) pairs.emplace_back(a, b);
  }
  return FromPairs(std::move(sites), std::move(pairs), {});
}

CliqueCoefficients ComputeCoefficients(const ConflictSets& cs, int p) {
  CliqueCoefficients out;
  std::set<std::vector<int>> unique_cliques;
  for (std::size_t v = 0; v < cs.graph_sites.size(); ++v) {
    const int j = cs.graph_sites[v];
    const int vi = static_cast<int>(v);

    std::vector<int> closed = cs.graph.Neighbors(vi);
    closed.push_back(vi);
    std::sort(closed.begin(), closed.end());
    const int q = MaxIndependentSetSize(cs.graph, closed);
    out.q[j] = q;
    out.n[j] = std::min(p, q);

    const std::vector<int> clique_idx = GrowClique(cs.graph, vi);
    std::vector<int> clique = ToSites(cs, clique_idx);
    out.clique[j] = clique;
    unique_cliques.insert(clique);

    std::vector<int> rest_idx;
    for (int u : closed) {
      if (std::find(clique_idx.begin(), clique_idx.end(), u) ==
          clique_idx.end()) {
        rest_idx.push_back(u);
      }
    }
    out.residual[j] = ToSites(cs, rest_idx);
    if (!rest_idx.empty()) {
      out.residual_n[j] = MaxIndependentSetSize(cs.graph, rest_idx);
      out.residual_sites.push_back(j);
    }
  }
  out.cliques.assign(unique_cliques.begin(), unique_cliques.end());
  return out;
}

std::string DumpConflicts(const ConflictSets& cs,
                          const CliqueCoefficients& coeffs) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["sites"] = cs.sites;
  ordered_json pairs = ordered_json::array();
  for (auto [a, b] : cs.pairs) pairs.push_back({a, b});
  doc["M"] = pairs;
  doc["N"] = cs.forbidden;
  ordered_json per_site = ordered_json::array();
  for (const auto& [j, q] : cs.neighbors) {
    ordered_json e;
    e["site"] = j;
    e["Q"] = q;
    if (auto it = coeffs.n.find(j); it != coeffs.n.end()) {
      e["q"] = coeffs.q.at(j);
      e["n"] = it->second;
      e["H"] = coeffs.clique.at(j);
      e["Qprime"] = coeffs.residual.at(j);
      if (auto r = coeffs.residual_n.find(j); r != coeffs.residual_n.end()) {
        e["nprime"] = r->second;
      }
    }
    per_site.push_back(std::move(e));
  }
  doc["per_site"] = per_site;
  doc["L1"] = coeffs.cliques;
  doc["L2"] = coeffs.residual_sites;
  return doc.dump(2) + "\n";
}

}  // namespace sopm
