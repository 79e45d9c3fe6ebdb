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

#ifndef SOPM_EXTERNAL_H_
#define SOPM_EXTERNAL_H_

#include <string>

#include "sopm/instance.h"
#include "sopm/milp.h"
#include "sopm/solver.h"

namespace sopm {

// Runs an external MILP solver through a shell command template. `{model}`
// and `{solution}` are replaced by temporary file paths and the optional
// `{time_limit}` by the budget in seconds. The solution file holds an
// optional "=obj= <value>" line and "<name> <value>" lines; names missing
// from the file are taken as zero. The result is checked against every model
// row and with ValidateSolution. Throws ExternalSolverError (carrying the
// captured solver output) on a failed run, a garbled or infeasible solution.
SolveResult ExternalSolve(const Instance& inst, const MilpModel& m,
                          const std::string& command_template,
                          const SolverBudget& budget = {});

// Parses a solution file against `m`; returns one 0/1 value per variable.
// Throws ExternalSolverError.
std::vector<int> ParseSolutionFile(const MilpModel& m, const std::string& text,
                                   double* reported_objective,
                                   bool* has_objective);

}  // namespace sopm

#endif  // SOPM_EXTERNAL_H_
