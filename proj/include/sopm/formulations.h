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

#ifndef SOPM_FORMULATIONS_H_
#define SOPM_FORMULATIONS_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sopm/conflict.h"
#include "sopm/instance.h"
#include "sopm/milp.h"

namespace sopm {

enum class BaseModel { kRs, kRrr, kCobra };
enum class DistanceEncoding { kD1, kD2, kD3, kD4 };

// "rs", "rrr", "cobra" and "d1".."d4"; Parse* throw ParameterError.
std::string BaseName(BaseModel b);
std::string DistanceName(DistanceEncoding d);
BaseModel ParseBase(const std::string& s);
DistanceEncoding ParseDistance(const std::string& s);
// Short column label: RS1..RS4, RRR1..RRR4, CHU1..CHU4.
std::string FormulationLabel(BaseModel b, DistanceEncoding d);

inline constexpr BaseModel kAllBases[] = {BaseModel::kRs, BaseModel::kRrr,
                                          BaseModel::kCobra};
inline constexpr DistanceEncoding kAllDistances[] = {
    DistanceEncoding::kD1, DistanceEncoding::kD2, DistanceEncoding::kD3,
    DistanceEncoding::kD4};

// For each client (in instance order), the candidate sites sorted by
// ascending shortest distance, ties by ascending site id.
using ClosestOrdering = std::map<int, std::vector<int>>;

ClosestOrdering ComputeClosestOrdering(const Instance& inst,
                                       const std::vector<int>& sites);
ClosestOrdering ComputeClosestOrdering(const Instance& inst);

// Merged assignment variables of the COBRA model. Two (client, rank) slots
// share a variable iff they have the same site at that rank and the same set
// of strictly closer sites.
struct MergedVariableMap {
  struct Key {
    int site = 0;
    std::vector<int> closer;  // sorted
    auto operator<=>(const Key&) const = default;
  };
  struct Entry {
    int representative = 0;  // first member client
    int site = 0;
    int rank = 0;            // 1-based
    std::vector<int> members;
  };
  std::vector<Entry> entries;
  // slot[client][k - 1] = entry index, for k <= |J| - p + 1.
  std::map<int, std::vector<int>> slot;
};

MergedVariableMap BuildMergedVariables(const Instance& inst,
                                       const ClosestOrdering& order,
                                       int ranks);

// Big-M of the aggregated linking row Sum y <= M x_j in the COBRA model.
enum class CobraLinkCoefficient {
  kMergedCount,  // number of merged variables at site j (always valid)
  kRankBound,    // |J| - p + 1 as printed in the original formulation
};

// Base models over `sites` (defaults to all instance sites).
MilpModel BuildRs(const Instance& inst, const std::vector<int>& sites);
MilpModel BuildRs(const Instance& inst);
MilpModel BuildRrr(const Instance& inst, const std::vector<int>& sites, int r);
MilpModel BuildRrr(const Instance& inst, int r);
MilpModel BuildCobra(
    const Instance& inst, const std::vector<int>& sites, int r,
    CobraLinkCoefficient link = CobraLinkCoefficient::kMergedCount);
MilpModel BuildCobra(const Instance& inst, int r);

// Distance rows. All of them reference site variables only; pairs touching a
// site without a variable (forbidden) are skipped.
void AddDistanceD1(MilpModel& m, const ConflictSets& cs);
void AddDistanceD2(MilpModel& m, const ConflictSets& cs, int p);
void AddDistanceD3(MilpModel& m, const ConflictSets& cs,
                   const CliqueCoefficients& coeffs);
void AddDistanceD4(MilpModel& m, const CliqueCoefficients& coeffs);

// Removes the site variables of forbidden sites and every variable that
// assigns to them; rows are rewritten without the removed terms and rows
// left empty are dropped. Throws InfeasibleModelError if fewer than p sites
// survive or if a row left empty cannot hold.
MilpModel EliminateForbidden(const MilpModel& m, const ConflictSets& cs,
                             int p);

// The full pipeline: forbidden sites are dropped first, the base model is
// built over the surviving sites, and the distance rows come from the
// conflict structure of those sites. `r` is ignored for RS.
MilpModel BuildFormulation(const Instance& inst, BaseModel base,
                           DistanceEncoding distance, int r);

// Sites outside N, in ascending order.
std::vector<int> AdmissibleSites(const Instance& inst, const ConflictSets& cs);

// Clamps a rank cutoff into [1, |J \ N|] for RRR and COBRA; RS returns r
// unchanged since it has no cutoff.
int ClampRankCutoff(const Instance& inst, BaseModel base, int r);

// Stable hex digest of the serialized instance.
std::string InstanceFingerprint(const Instance& inst);

}  // namespace sopm

#endif  // SOPM_FORMULATIONS_H_
