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

#ifndef SOPM_INSTANCE_H_
#define SOPM_INSTANCE_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "sopm/random.h"

namespace sopm {

// Undirected edge with 1-based endpoints, u < v.
struct Edge {
  int u = 0;
  int v = 0;
  int weight = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Network read from an OR-Library pmed file.
struct RawNetwork {
  int node_count = 0;
  std::vector<Edge> edges;  // sorted by (u, v), duplicates collapsed
  int p = 0;
};

// Dense symmetric n x n matrix of nonnegative distances, 0-based indices.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), values_(std::size_t(n) * n, 0.0) {}

  int size() const { return n_; }
  double at(int i, int j) const { return values_[std::size_t(i) * n_ + j]; }
  void set(int i, int j, double value) {
    values_[std::size_t(i) * n_ + j] = value;
  }
  // Writes both (i, j) and (j, i).
  void SetSymmetric(int i, int j, double value) {
    set(i, j, value);
    set(j, i, value);
  }
  const std::vector<double>& values() const { return values_; }

  friend bool operator==(const DistanceMatrix&,
                         const DistanceMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<double> values_;
};

// A semi-obnoxious p-median instance. Clients and sites are sorted node ids
// (1-based) that partition {1, ..., n}; matrices are indexed by id - 1.
struct Instance {
  std::vector<int> clients;
  std::vector<int> sites;
  DistanceMatrix shortest;
  DistanceMatrix euclidean;
  double d1 = 0.0;
  double d2 = 0.0;
  int p = 0;
  std::uint64_t seed = 0;
  int generator_case = 1;
  int repair_steps = 0;

  int node_count() const { return shortest.size(); }
  double s(int a, int b) const { return shortest.at(a - 1, b - 1); }
  double euc(int a, int b) const { return euclidean.at(a - 1, b - 1); }

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct GeneratorConfig {
  int generator_case = 1;  // 1: 80% sites, 2: 20% sites
  std::uint64_t seed = 0;
  int max_repair_steps = 1000;
};

// Parses the OR-Library pmed text format: "n m p" followed by m lines
// "u v w". Duplicate edges keep their minimum weight. Throws ParseError with
// the offending line, or ValidationError for a disconnected graph.
RawNetwork ParseOrLib(std::istream& in);
RawNetwork ParseOrLib(const std::string& text);

// Dijkstra from every node. Throws ValidationError if a pair is unreachable.
DistanceMatrix AllPairsShortest(const RawNetwork& net);

// Each unordered pair receives a uniform draw from [s/2, s].
DistanceMatrix SynthesizeEuclidean(const DistanceMatrix& s, RandomStream& rng);

struct NodeSplit {
  std::vector<int> clients;
  std::vector<int> sites;
};

// Initial client/site split of case 1 (80% sites) or case 2 (20% sites),
// promoting random clients until there are more than p sites.
NodeSplit SplitNodes(const RawNetwork& net, int generator_case,
                     RandomStream& rng);

struct Thresholds {
  double d1 = 0.0;
  double d2 = 0.0;
};

// Interval bounds for the thresholds: [min, min + (max - min) / 10] over the
// site-site (d1) and site-client (d2) Euclidean distances.
struct ThresholdRanges {
  double d1_lo = 0.0, d1_hi = 0.0;
  double d2_lo = 0.0, d2_hi = 0.0;
};

ThresholdRanges ComputeThresholdRanges(const DistanceMatrix& euc,
                                       const std::vector<int>& clients,
                                       const std::vector<int>& sites);

Thresholds SampleThresholds(const DistanceMatrix& euc,
                            const std::vector<int>& clients,
                            const std::vector<int>& sites, RandomStream& rng);

// True iff p sites exist outside N that are pairwise farther apart than d1.
bool CheckFeasibility(const Instance& inst);

// Promotes one random client per step and resamples the thresholds until the
// instance is feasible. Returns the number of steps taken; throws
// GenerationError when the budget runs out or no client could be promoted.
int RepairToFeasibility(Instance& inst, RandomStream& rng,
                        int max_repair_steps);

Instance GenerateInstance(const RawNetwork& net, const GeneratorConfig& cfg);

// Structural invariants (partition, matrix shape and symmetry, p range).
// Throws ValidationError.
void ValidateInstance(const Instance& inst);

// Structured text (JSON) persistence with 17 significant digits per real.
std::string SaveInstance(const Instance& inst);
void SaveInstance(const Instance& inst, std::ostream& out);
// Throws LoadError naming the offending field path.
Instance LoadInstance(std::istream& in);
Instance LoadInstanceText(const std::string& text);
Instance LoadInstanceFile(const std::string& path);

// Rounds n * percent / 100 half up.
int RoundedShare(int n, int percent);

std::string FormatReal(double value);

}  // namespace sopm

#endif  // SOPM_INSTANCE_H_
