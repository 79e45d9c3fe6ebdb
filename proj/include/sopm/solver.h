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

#ifndef SOPM_SOLVER_H_
#define SOPM_SOLVER_H_

#include <string>
#include <vector>

#include "sopm/instance.h"
#include "sopm/milp.h"

namespace sopm {

enum class SolveStatus { kOptimal, kInfeasible, kBudgetExceeded };

std::string StatusName(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = 0.0;
  std::vector<int> assignment;  // 0/1 per model variable; empty if none
  std::vector<int> open_sites;  // sorted
  bool has_incumbent = false;
  long long bb_nodes = 0;
  long long lp_iterations = 0;
  double root_bound = 0.0;      // root LP objective, when solved
  double wall_time_ms = 0.0;
};

struct SolverBudget {
  long long max_nodes = 1000000;
  double max_time_ms = 600000.0;
  double integrality_tolerance = 1e-6;
  double optimality_tolerance = 1e-9;
};

// Best-first LP-based branch and bound. Branches on the most fractional
// variable (ties: larger objective coefficient, then smaller name); the up
// child is created first. The incumbent is seeded by greedily rounding the
// root LP's site values. Throws ParameterError for a non-positive tolerance.
SolveResult BranchAndBound(const MilpModel& m, const SolverBudget& budget = {});

// Rounds a site-value vector into `p` open sites, respecting every row that
// mentions site variables only, then re-solves the assignment part. Returns
// false if no integral completion was found.
bool GreedyRounding(const MilpModel& m, const std::vector<double>& lp_values,
                    const SolverBudget& budget, std::vector<int>* assignment,
                    long long* lp_iterations);

struct OracleOptions {
  double max_subsets = 2e6;
};

// Brute force over every p-subset of the admissible sites, reading the
// instance directly. Ties go to the lexicographically smallest subset.
// Throws OracleCapError when C(|J \ N|, p) exceeds the cap.
SolveResult EnumerateOracle(const Instance& inst,
                            const OracleOptions& options = {});

struct SolutionCheck {
  bool feasible = false;
  double objective = 0.0;
  std::string reason;  // empty when feasible
};

// Checks |open| = p, membership in J, no forbidden site, and pairwise
// Euclidean separation > d1; the objective is recomputed from scratch.
SolutionCheck ValidateSolution(const Instance& inst,
                               const std::vector<int>& open_sites);

// Open sites of a 0/1 model assignment.
std::vector<int> OpenSites(const MilpModel& m,
                           const std::vector<int>& assignment);

double Binomial(int n, int k);

}  // namespace sopm

#endif  // SOPM_SOLVER_H_
