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

#ifndef SOPM_CONFLICT_H_
#define SOPM_CONFLICT_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sopm/graph.h"
#include "sopm/instance.h"

namespace sopm {

// Conflict structure of an instance over a set of candidate sites.
//   pairs      - site pairs (a < b) with euc <= d1
//   forbidden  - sites with some client at euc <= d2
//   neighbors  - for each site, the sites it conflicts with (sorted)
//   graph      - conflict graph over the sites incident to `pairs`, vertex i
//                is graph_sites[i] (ascending ids)
struct ConflictSets {
  std::vector<int> sites;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> forbidden;
  std::map<int, std::vector<int>> neighbors;
  Graph graph;
  std::vector<int> graph_sites;

  // Vertex index of `site` in `graph`, or -1.
  int GraphIndex(int site) const;
  bool IsForbidden(int site) const;
};

struct CliqueCoefficients {
  std::map<int, int> n;                       // n_j = min(p, q_j)
  std::map<int, int> q;                       // independence number of Q_j+j
  std::map<int, std::vector<int>> clique;     // H_j, sorted site ids
  std::map<int, std::vector<int>> residual;   // Q'_j, sorted site ids
  std::map<int, int> residual_n;              // n'_j for nonempty Q'_j
  std::vector<std::vector<int>> cliques;      // L1, deduplicated, sorted
  std::vector<int> residual_sites;            // L2, keyed by j, ascending
};

ConflictSets BuildConflictSets(const Instance& inst);

// Conflict structure restricted to the sites outside `forbidden`. The result
// has an empty forbidden list.
ConflictSets WithoutForbidden(const ConflictSets& cs);

CliqueCoefficients ComputeCoefficients(const ConflictSets& cs, int p);

// Human-readable dump of the conflict structure and its coefficients.
std::string DumpConflicts(const ConflictSets& cs,
                          const CliqueCoefficients& coeffs);

}  // namespace sopm

#endif  // SOPM_CONFLICT_H_
