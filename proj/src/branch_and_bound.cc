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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>

#include "sopm/error.h"
#include "sopm/simplex.h"
#include "sopm/solver.h"

namespace sopm {

std::string StatusName(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kBudgetExceeded:
      return "budget-exceeded";
  }
  return "?";
}

std::vector<int> OpenSites(const MilpModel& m,
                           const std::vector<int>& assignment) {
  std::vector<int> open;
  for (int v = 0; v < m.num_variables(); ++v) {
    const Variable& var = m.variables()[v];
    if (var.role == VarRole::kSite && assignment[v] == 1) {
      open.push_back(var.site);
    }
  }
  std::sort(open.begin(), open.end());
  return open;
}

namespace {

using Clock = std::chrono::steady_clock;

bool IsIntegral(const std::vector<double>& x, double tol) {
  for (double v : x) {
    if (std::min(v, 1.0 - v) > tol) return false;
  }
  return true;
}

std::vector<int> Rounded(const std::vector<double>& x) {
  std::vector<int> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] >= 0.5 ? 1 : 0;
  return out;
}

std::vector<double> AsReal(const std::vector<int>& x) {
  return std::vector<double>(x.begin(), x.end());
}

int RequiredOpenCount(const MilpModel& m) {
  if (m.metadata().p > 0) return m.metadata().p;
  for (const Constraint& c : m.constraints()) {
    if (c.name == "card") return static_cast<int>(std::lround(c.rhs));
  }
  return 0;
}

// Most fractional variable; ties prefer the larger objective coefficient,
// then the smaller name.
int BranchVariable(const MilpModel& m, const std::vector<double>& x,
                   double tol) {
  int best = -1;
  double best_frac = 0.0;
  for (int v = 0; v < m.num_variables(); ++v) {
    const double frac = std::min(x[v], 1.0 - x[v]);
    if (frac <= tol) continue;
    if (best < 0 || frac > best_frac + 1e-12) {
      best = v;
      best_frac = frac;
      continue;
    }
    if (frac < best_frac - 1e-12) continue;
    const Variable& a = m.variables()[v];
    const Variable& b = m.variables()[best];
    if (a.objective > b.objective ||
        (a.objective == b.objective && a.name < b.name)) {
      best = v;
      best_frac = std::max(best_frac, frac);
    }
  }
  return best;
}

struct Node {
  double bound;
  long long id;
  Fixings fixings;
  std::vector<double> values;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

}  // namespace

bool GreedyRounding(const MilpModel& m, const std::vector<double>& lp_values,
                    const SolverBudget& budget, std::vector<int>* assignment,
                    long long* lp_iterations) {
  const int p = RequiredOpenCount(m);
  std::vector<int> site_vars;
  for (int v = 0; v < m.num_variables(); ++v) {
    if (m.variables()[v].role == VarRole::kSite) site_vars.push_back(v);
  }
  std::stable_sort(site_vars.begin(), site_vars.end(), [&](int a, int b) {
    return lp_values[a] > lp_values[b];
  });

  // Inequality rows over site variables only.
  std::vector<const Constraint*> site_rows;
  for (const Constraint& c : m.constraints()) {
    if (c.sense != Sense::kLe) continue;
    bool only_sites = true;
    for (const Term& t : c.terms) {
      only_sites = only_sites && m.variables()[t.var].role == VarRole::kSite;
    }
    if (only_sites) site_rows.push_back(&c);
  }

  std::vector<double> x(m.num_variables(), 0.0);
  int chosen = 0;
  for (int v : site_vars) {
    if (chosen == p) break;
    x[v] = 1.0;
    bool ok = true;
    for (const Constraint* c : site_rows) {
      if (!RowSatisfied(*c, x, budget.integrality_tolerance)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      ++chosen;
    } else {
      x[v] = 0.0;
    }
  }
  if (chosen < p) return false;

  Fixings fix;
  for (int v : site_vars) fix[v] = x[v] > 0.5 ? 1 : 0;
  LpOptions options;
  options.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                        std::chrono::duration<double, std::milli>(
                                            budget.max_time_ms));
  const LpResult lp = SolveLpRelaxation(m, fix, options);
  *lp_iterations += lp.iterations;
  if (lp.status != LpStatus::kOptimal ||
      !IsIntegral(lp.values, budget.integrality_tolerance)) {
    return false;
  }
  std::vector<int> candidate = Rounded(lp.values);
  if (!AssignmentFeasible(m, AsReal(candidate), 1e-6)) return false;
  *assignment = std::move(candidate);
  return true;
}

SolveResult BranchAndBound(const MilpModel& m, const SolverBudget& budget) {
  if (!(budget.integrality_tolerance > 0.0) ||
      !(budget.optimality_tolerance > 0.0) || budget.max_nodes < 0) {
    throw ParameterError("solver tolerances must be positive");
  }
  const auto start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double, std::milli>(budget.max_time_ms));
  SolveResult result;
  auto finish = [&](SolveStatus status) {
    result.status = status;
    if (result.has_incumbent) {
      result.objective = ObjectiveValue(m, AsReal(result.assignment));
      result.open_sites = OpenSites(m, result.assignment);
    } else {
      result.assignment.clear();
    }
    result.wall_time_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return result;
  };

  double incumbent = std::numeric_limits<double>::infinity();
  auto offer = [&](std::vector<int> candidate) {
    const double z = ObjectiveValue(m, AsReal(candidate));
    if (z < incumbent) {
      incumbent = z;
      result.assignment = std::move(candidate);
      result.has_incumbent = true;
    }
  };
  auto out_of_budget = [&] {
    return result.bb_nodes >= budget.max_nodes || Clock::now() > deadline;
  };
  LpOptions lp_options;
  lp_options.deadline = deadline;
  auto solve = [&](const Fixings& fix) {
    ++result.bb_nodes;
    LpResult lp = SolveLpRelaxation(m, fix, lp_options);
    result.lp_iterations += lp.iterations;
    return lp;
  };
  auto integral_solution = [&](const LpResult& lp, std::vector<int>* out) {
    if (!IsIntegral(lp.values, budget.integrality_tolerance)) return false;
    std::vector<int> rounded = Rounded(lp.values);
    if (!AssignmentFeasible(m, AsReal(rounded), 1e-6)) return false;
    *out = std::move(rounded);
    return true;
  };

  if (out_of_budget()) return finish(SolveStatus::kBudgetExceeded);
  LpResult root = solve({});
  if (root.status == LpStatus::kInfeasible) {
    return finish(SolveStatus::kInfeasible);
  }
  if (root.status == LpStatus::kIterationLimit) {
    return finish(SolveStatus::kBudgetExceeded);
  }
  result.root_bound = root.objective;

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long long next_id = 0;
  std::vector<int> integral;
  if (integral_solution(root, &integral)) {
    offer(std::move(integral));
    return finish(SolveStatus::kOptimal);
  }
  {
    std::vector<int> rounded;
    if (GreedyRounding(m, root.values, budget, &rounded,
                       &result.lp_iterations)) {
      offer(std::move(rounded));
    }
  }
  open.push({root.objective, next_id++, {}, std::move(root.values)});

  const double tol = budget.optimality_tolerance;
  bool incomplete = false;
  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (result.has_incumbent && node.bound >= incumbent - tol) break;
    const int var =
        BranchVariable(m, node.values, budget.integrality_tolerance);
    if (var < 0) {
      // Integral within tolerance yet rejected by the exact row check.
      incomplete = true;
      continue;
    }
    for (int value : {1, 0}) {
      if (out_of_budget()) {
        open.push(std::move(node));
        return finish(SolveStatus::kBudgetExceeded);
      }
      Fixings fix = node.fixings;
      fix[var] = value;
      LpResult lp = solve(fix);
      if (lp.status == LpStatus::kInfeasible) continue;
      if (lp.status == LpStatus::kIterationLimit) {
        incomplete = true;
        continue;
      }
      if (result.has_incumbent && lp.objective >= incumbent - tol) continue;
      if (integral_solution(lp, &integral)) {
        offer(std::move(integral));
        continue;
      }
      open.push({lp.objective, next_id++, std::move(fix), std::move(lp.values)});
    }
  }
  if (incomplete) return finish(SolveStatus::kBudgetExceeded);
  return finish(result.has_incumbent ? SolveStatus::kOptimal
                                     : SolveStatus::kInfeasible);
}

}  // namespace sopm
