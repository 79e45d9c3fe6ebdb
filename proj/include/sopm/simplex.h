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

#ifndef SOPM_SIMPLEX_H_
#define SOPM_SIMPLEX_H_

#include <chrono>
#include <map>
#include <optional>
#include <vector>

#include "sopm/milp.h"

namespace sopm {

enum class LpStatus { kOptimal, kInfeasible, kIterationLimit };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> values;  // one per model variable, fixings included
  long long iterations = 0;
};

struct LpOptions {
  long long max_iterations = 0;  // 0: automatic cap from the problem size
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Variable index -> fixed value (0 or 1).
using Fixings = std::map<int, int>;

// Continuous relaxation (all variables in [0, 1]) with the given fixings,
// solved by a two-phase bounded primal simplex on a dense tableau. Pricing
// is Dantzig's rule, falling back to Bland's rule while pivots stay
// degenerate. Hitting the iteration cap or the deadline yields
// kIterationLimit, never a wrong optimum.
LpResult SolveLpRelaxation(const MilpModel& m, const Fixings& fixings = {},
                           const LpOptions& options = {});

}  // namespace sopm

#endif  // SOPM_SIMPLEX_H_
