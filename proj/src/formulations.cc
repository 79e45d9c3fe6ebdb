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

#include "sopm/formulations.h"

#include <algorithm>
#include <cstdio>
#include <set>

#include "sopm/error.h"

namespace sopm {

std::string BaseName(BaseModel b) {
  switch (b) {
    case BaseModel::kRs:
      return "rs";
    case BaseModel::kRrr:
      return "rrr";
    case BaseModel::kCobra:
      return "cobra";
  }
  return "?";
}

std::string DistanceName(DistanceEncoding d) {
  return "d" + std::to_string(static_cast<int>(d) + 1);
}

BaseModel ParseBase(const std::string& s) {
  for (BaseModel b : kAllBases) {
    if (BaseName(b) == s) return b;
  }
  throw ParameterError("unknown base model '" + s + "' (rs, rrr, cobra)");
}

DistanceEncoding ParseDistance(const std::string& s) {
  for (DistanceEncoding d : kAllDistances) {
    if (DistanceName(d) == s) return d;
  }
  throw ParameterError("unknown distance encoding '" + s + "' (d1..d4)");
}

std::string FormulationLabel(BaseModel b, DistanceEncoding d) {
  static const char* kPrefix[] = {"RS", "RRR", "CHU"};
  return kPrefix[static_cast<int>(b)] + std::to_string(static_cast<int>(d) + 1);
}

ClosestOrdering ComputeClosestOrdering(const Instance& inst,
                                       const std::vector<int>& sites) {
  ClosestOrdering out;
  for (int i : inst.clients) {
    std::vector<int> order = sites;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      const double da = inst.s(i, a), db = inst.s(i, b);
      if (da != db) return da < db;
      return a < b;
    });
    out.emplace(i, std::move(order));
  }
  return out;
}

ClosestOrdering ComputeClosestOrdering(const Instance& inst) {
  return ComputeClosestOrdering(inst, inst.sites);
}

MergedVariableMap BuildMergedVariables(const Instance& inst,
                                       const ClosestOrdering& order,
                                       int ranks) {
  MergedVariableMap map;
  std::map<MergedVariableMap::Key, int> index;
  for (int i : inst.clients) {
    const std::vector<int>& o = order.at(i);
    std::vector<int>& slots = map.slot[i];
    std::vector<int> closer;
    for (int k = 1; k <= ranks; ++k) {
      MergedVariableMap::Key key{o[k - 1], closer};
      auto [it, inserted] =
          index.emplace(key, static_cast<int>(map.entries.size()));
      if (inserted) {
        map.entries.push_back({i, o[k - 1], k, {}});
      }
      map.entries[it->second].members.push_back(i);
      slots.push_back(it->second);
      closer.insert(std::lower_bound(closer.begin(), closer.end(), o[k - 1]),
                    o[k - 1]);
    }
  }
  return map;
}

namespace {

std::string Id(const char* prefix, int a) {
  return std::string(prefix) + "_" + std::to_string(a);
}

std::string Id(const char* prefix, int a, int b) {
  return Id(prefix, a) + "_" + std::to_string(b);
}

void RequireEnoughSites(const std::vector<int>& sites, int p) {
  if (static_cast<int>(sites.size()) < p) {
    throw InfeasibleModelError(
        "only " + std::to_string(sites.size()) +
        " admissible site(s) remain but p=" + std::to_string(p));
  }
}

void RequireRankCutoff(int r, const std::vector<int>& sites) {
  if (r < 1 || r > static_cast<int>(sites.size())) {
    throw ParameterError("rank cutoff r=" + std::to_string(r) +
                         " must lie in [1, " + std::to_string(sites.size()) +
                         "]");
  }
}

// x_j for every site plus the cardinality row.
void AddSiteVariables(MilpModel& m, const std::vector<int>& sites, int p) {
  std::vector<Term> card;
  for (int j : sites) {
    card.push_back({m.AddVariable(Id("x", j), VarRole::kSite, j, 0, 0.0), 1.0});
  }
  m.AddConstraint("card", std::move(card), Sense::kEq, p);
}

MilpModel NewModel(const Instance& inst, BaseModel base, int r) {
  MilpModel m;
  m.metadata().base = BaseName(base);
  m.metadata().r = r;
  m.metadata().p = inst.p;
  m.metadata().fingerprint = InstanceFingerprint(inst);
  return m;
}

}  // namespace

MilpModel BuildRs(const Instance& inst, const std::vector<int>& sites) {
  RequireEnoughSites(sites, inst.p);
  MilpModel m = NewModel(inst, BaseModel::kRs, 0);
  AddSiteVariables(m, sites, inst.p);
  for (int i : inst.clients) {
    std::vector<Term> assign;
    for (int j : sites) {
      const int y = m.AddVariable(Id("y", i, j), VarRole::kAssignment, j, i,
                                  inst.s(i, j));
      assign.push_back({y, 1.0});
    }
    m.AddConstraint(Id("assign", i), std::move(assign), Sense::kEq, 1.0);
  }
  for (int i : inst.clients) {
    for (int j : sites) {
      m.AddConstraint(Id("bal", i, j),
                      {{m.FindVariable(Id("y", i, j)), 1.0},
                       {m.SiteVariable(j), -1.0}},
                      Sense::kLe, 0.0);
    }
  }
  return m;
}

MilpModel BuildRs(const Instance& inst) { return BuildRs(inst, inst.sites); }

MilpModel BuildRrr(const Instance& inst, const std::vector<int>& sites,
                   int r) {
  RequireEnoughSites(sites, inst.p);
  RequireRankCutoff(r, sites);
  MilpModel m = NewModel(inst, BaseModel::kRrr, r);
  AddSiteVariables(m, sites, inst.p);
  const ClosestOrdering order = ComputeClosestOrdering(inst, sites);
  // F_i: all but the p - 1 furthest sites (the tail of the ordering).
  const int kept = static_cast<int>(sites.size()) - inst.p + 1;

  std::map<int, std::vector<Term>> per_site;
  for (int i : inst.clients) {
    std::vector<int> retained(order.at(i).begin(), order.at(i).begin() + kept);
    std::sort(retained.begin(), retained.end());
    std::vector<Term> assign;
    for (int j : retained) {
      const int y = m.AddVariable(Id("y", i, j), VarRole::kAssignment, j, i,
                                  inst.s(i, j));
      assign.push_back({y, 1.0});
      per_site[j].push_back({y, 1.0});
    }
    m.AddConstraint(Id("assign", i), std::move(assign), Sense::kEq, 1.0);
  }
  const int cutoff = std::min(r, kept);
  for (int i : inst.clients) {
    for (int k = 0; k < cutoff; ++k) {
      const int j = order.at(i)[k];
      m.AddConstraint(Id("bal", i, j),
                      {{m.FindVariable(Id("y", i, j)), 1.0},
                       {m.SiteVariable(j), -1.0}},
                      Sense::kLe, 0.0);
    }
  }
  const double big_m = static_cast<double>(inst.clients.size());
  for (int j : sites) {
    std::vector<Term> row = per_site[j];
    row.push_back({m.SiteVariable(j), -big_m});
    m.AddConstraint(Id("er", j), std::move(row), Sense::kLe, 0.0);
  }
  return m;
}

MilpModel BuildRrr(const Instance& inst, int r) {
  return BuildRrr(inst, inst.sites, r);
}

MilpModel BuildCobra(const Instance& inst, const std::vector<int>& sites,
                     int r, CobraLinkCoefficient link) {
  RequireEnoughSites(sites, inst.p);
  RequireRankCutoff(r, sites);
  MilpModel m = NewModel(inst, BaseModel::kCobra, r);
  AddSiteVariables(m, sites, inst.p);
  const int ranks = static_cast<int>(sites.size()) - inst.p + 1;
  const ClosestOrdering order = ComputeClosestOrdering(inst, sites);
  const MergedVariableMap merged = BuildMergedVariables(inst, order, ranks);

  std::vector<int> var_of(merged.entries.size());
  std::map<int, std::vector<Term>> per_site;
  for (std::size_t e = 0; e < merged.entries.size(); ++e) {
    const auto& entry = merged.entries[e];
    double cost = 0.0;
    for (int i : entry.members) cost += inst.s(i, entry.site);
    var_of[e] = m.AddVariable(Id("y", entry.representative, entry.site),
                              VarRole::kMerged, entry.site,
                              entry.representative, cost);
    per_site[entry.site].push_back({var_of[e], 1.0});
  }
  for (int i : inst.clients) {
    std::vector<Term> assign;
    for (int e : merged.slot.at(i)) assign.push_back({var_of[e], 1.0});
    m.AddConstraint(Id("assign", i), std::move(assign), Sense::kEq, 1.0);
  }
  for (int j : sites) {
    auto it = per_site.find(j);
    if (it == per_site.end()) continue;
    std::vector<Term> row = it->second;
    const double big_m = link == CobraLinkCoefficient::kMergedCount
                             ? static_cast<double>(row.size())
                             : static_cast<double>(ranks);
    row.push_back({m.SiteVariable(j), -big_m});
    m.AddConstraint(Id("er", j), std::move(row), Sense::kLe, 0.0);
  }
  const int cutoff = std::min(r, ranks);
  std::vector<char> linked(merged.entries.size(), 0);
  for (int i : inst.clients) {
    for (int k = 0; k < cutoff; ++k) {
      const int e = merged.slot.at(i)[k];
      if (linked[e]) continue;
      linked[e] = 1;
      const auto& entry = merged.entries[e];
      m.AddConstraint(Id("bal", entry.representative, entry.site),
                      {{var_of[e], 1.0}, {m.SiteVariable(entry.site), -1.0}},
                      Sense::kLe, 0.0);
    }
  }
  return m;
}

MilpModel BuildCobra(const Instance& inst, int r) {
  return BuildCobra(inst, inst.sites, r);
}

namespace {

// Sum_{k in others} x_k + coef * x_center <= coef, skipping sites without a
// variable. Nothing is added when the center has no variable.
void AddNeighborhoodRow(MilpModel& m, std::string name, int center,
                        const std::vector<int>& others, int coef) {
  const int xc = m.SiteVariable(center);
  if (xc < 0) return;
  std::vector<Term> row;
  for (int k : others) {
    const int xk = m.SiteVariable(k);
    if (xk >= 0) row.push_back({xk, 1.0});
  }
  if (row.empty()) return;
  row.push_back({xc, static_cast<double>(coef)});
  m.AddConstraint(std::move(name), std::move(row), Sense::kLe, coef);
}

}  // namespace

void AddDistanceD1(MilpModel& m, const ConflictSets& cs) {
  for (auto [a, b] : cs.pairs) {
    const int xa = m.SiteVariable(a), xb = m.SiteVariable(b);
    if (xa < 0 || xb < 0) continue;
    m.AddConstraint(Id("d1", a, b), {{xa, 1.0}, {xb, 1.0}}, Sense::kLe, 1.0);
  }
}

void AddDistanceD2(MilpModel& m, const ConflictSets& cs, int p) {
  for (int j : cs.graph_sites) {
    AddNeighborhoodRow(m, Id("d2", j), j, cs.neighbors.at(j), p);
  }
}

void AddDistanceD3(MilpModel& m, const ConflictSets& cs,
                   const CliqueCoefficients& coeffs) {
  for (int j : cs.graph_sites) {
    AddNeighborhoodRow(m, Id("d3", j), j, cs.neighbors.at(j), coeffs.n.at(j));
  }
}

void AddDistanceD4(MilpModel& m, const CliqueCoefficients& coeffs) {
  int index = 0;
  for (const std::vector<int>& clique : coeffs.cliques) {
    ++index;
    std::vector<Term> row;
    for (int k : clique) {
      const int xk = m.SiteVariable(k);
      if (xk >= 0) row.push_back({xk, 1.0});
    }
    if (row.size() < 2) continue;
    m.AddConstraint(Id("d4c", index), std::move(row), Sense::kLe, 1.0);
  }
  for (int j : coeffs.residual_sites) {
    AddNeighborhoodRow(m, Id("d4r", j), j, coeffs.residual.at(j),
                       coeffs.residual_n.at(j));
  }
}

MilpModel EliminateForbidden(const MilpModel& m, const ConflictSets& cs,
                             int p) {
  std::vector<int> remap(m.num_variables(), -1);
  MilpModel out;
  out.metadata() = m.metadata();
  int surviving_sites = 0;
  for (int v = 0; v < m.num_variables(); ++v) {
    const Variable& var = m.variables()[v];
    if (cs.IsForbidden(var.site)) continue;
    if (var.role == VarRole::kSite) ++surviving_sites;
    remap[v] = out.AddVariable(var.name, var.role, var.site, var.client,
                               var.objective);
  }
  if (surviving_sites < p) {
    throw InfeasibleModelError(
        "only " + std::to_string(surviving_sites) +
        " site(s) remain after removing forbidden sites but p=" +
        std::to_string(p));
  }
  for (const Constraint& c : m.constraints()) {
    std::vector<Term> terms;
    for (const Term& t : c.terms) {
      if (remap[t.var] >= 0) terms.push_back({remap[t.var], t.coef});
    }
    if (terms.empty()) {
      const bool holds = (c.sense == Sense::kLe && 0.0 <= c.rhs) ||
                         (c.sense == Sense::kGe && 0.0 >= c.rhs) ||
                         (c.sense == Sense::kEq && c.rhs == 0.0);
      if (!holds) {
        throw InfeasibleModelError("row " + c.name +
                                   " cannot hold once forbidden sites are "
                                   "removed");
      }
      continue;
    }
    out.AddConstraint(c.name, std::move(terms), c.sense, c.rhs);
  }
  return out;
}

std::vector<int> AdmissibleSites(const Instance& inst, const ConflictSets& cs) {
  std::vector<int> out;
  for (int j : inst.sites) {
    if (!cs.IsForbidden(j)) out.push_back(j);
  }
  return out;
}

int ClampRankCutoff(const Instance& inst, BaseModel base, int r) {
  if (base == BaseModel::kRs) return r;
  const int admissible =
      static_cast<int>(AdmissibleSites(inst, BuildConflictSets(inst)).size());
  return std::clamp(r, 1, std::max(1, admissible));
}

MilpModel BuildFormulation(const Instance& inst, BaseModel base,
                           DistanceEncoding distance, int r) {
  const ConflictSets all = BuildConflictSets(inst);
  const std::vector<int> sites = AdmissibleSites(inst, all);
  RequireEnoughSites(sites, inst.p);
  MilpModel m;
  switch (base) {
    case BaseModel::kRs:
      m = BuildRs(inst, sites);
      break;
    case BaseModel::kRrr:
      m = BuildRrr(inst, sites, r);
      break;
    case BaseModel::kCobra:
      m = BuildCobra(inst, sites, r);
      break;
  }
  const ConflictSets cs = WithoutForbidden(all);
  switch (distance) {
    case DistanceEncoding::kD1:
      AddDistanceD1(m, cs);
      break;
    case DistanceEncoding::kD2:
      AddDistanceD2(m, cs, inst.p);
      break;
    case DistanceEncoding::kD3:
      AddDistanceD3(m, cs, ComputeCoefficients(cs, inst.p));
      break;
    case DistanceEncoding::kD4:
      AddDistanceD4(m, ComputeCoefficients(cs, inst.p));
      break;
  }
  m.metadata().distance = DistanceName(distance);
  return m;
}

std::string InstanceFingerprint(const Instance& inst) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : SaveInstance(inst)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace sopm
