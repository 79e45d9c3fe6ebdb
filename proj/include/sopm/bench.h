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

#ifndef SOPM_BENCH_H_
#define SOPM_BENCH_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "sopm/formulations.h"
#include "sopm/instance.h"
#include "sopm/solver.h"

namespace sopm {

struct BenchRecord {
  std::string instance;
  int generator_case = 1;
  BaseModel base = BaseModel::kRs;
  DistanceEncoding distance = DistanceEncoding::kD1;
  int r = 0;
  int rep = 0;
  std::string status;       // optimal, infeasible, budget-exceeded, error
  bool has_objective = false;
  double objective = 0.0;
  double time_ms = 0.0;      // build + solve
  double build_ms = -1.0;    // negative when unknown (e.g. read from CSV)
  double solve_ms = -1.0;
  long long bb_nodes = 0;
  long long lp_iters = 0;
  int vars = 0;
  int cons = 0;
  std::string message;      // error text, not serialized
};

struct BenchInstance {
  std::string id;
  Instance instance;
};

struct BenchConfig {
  SolverBudget budget;
  int jobs = 1;
};

// Runs every (instance, base, distance, r, repetition) cell. The rank cutoff
// is clamped to the number of admissible sites for RRR and COBRA; RS ignores
// it. Failures become records, the matrix always completes. Output is sorted
// by instance order, base, distance, r order, repetition.
std::vector<BenchRecord> RunMatrix(const std::vector<BenchInstance>& instances,
                                   const std::vector<BaseModel>& bases,
                                   const std::vector<DistanceEncoding>& distances,
                                   const std::vector<int>& r_values,
                                   int repetitions, const BenchConfig& config);

// CSV with header instance,case,base,distance,r,rep,status,objective,time_ms,
// bb_nodes,lp_iters,vars,cons.
void WriteRecordsCsv(const std::vector<BenchRecord>& records, std::ostream& out);
std::vector<BenchRecord> ReadRecordsCsv(std::istream& in);

struct CellSummary {
  std::string instance;
  int generator_case = 1;
  BaseModel base = BaseModel::kRs;
  DistanceEncoding distance = DistanceEncoding::kD1;
  int count = 0;
  double mean_time_ms = 0.0;
  double mean_build_ms = -1.0;
  double mean_solve_ms = -1.0;
  bool best = false;  // fastest cell of its instance row
};

// One summary per (instance, base, distance), rows in first-seen instance
// order and columns in RS1..CHU4 order.
std::vector<CellSummary> Summarize(const std::vector<BenchRecord>& records);

struct ReportOptions {
  bool split_timing = false;
};

std::string ReportCsv(const std::vector<CellSummary>& cells);
std::string ReportTable(const std::vector<CellSummary>& cells,
                        const ReportOptions& options = {});

}  // namespace sopm

#endif  // SOPM_BENCH_H_
