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

#include "sopm/error.h"
#include "sopm/solver.h"

namespace sopm {

double Binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return std::round(c);
}

namespace {

class SubsetSearch {
 public:
  SubsetSearch(const Instance& inst, std::vector<int> sites)
      : inst_(inst), sites_(std::move(sites)) {}

  void Run() {
    chosen_.clear();
    Recurse(0);
  }

  double best_value() const { return best_value_; }
  const std::vector<int>& best() const { return best_; }
  long long evaluated() const { return evaluated_; }

 private:
  void Recurse(std::size_t from) {
    if (static_cast<int>(chosen_.size()) == inst_.p) {
      Evaluate();
      return;
    }
    const std::size_t needed = inst_.p - chosen_.size();
    for (std::size_t k = from; k + needed <= sites_.size(); ++k) {
      const int j = sites_[k];
      bool ok = true;
      for (int c : chosen_) {
        if (inst_.euc(c, j) <= inst_.d1) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen_.push_back(j);
      Recurse(k + 1);
      chosen_.pop_back();
    }
  }

  void Evaluate() {
    ++evaluated_;
    double total = 0.0;
    for (int i : inst_.clients) {
      double nearest = std::numeric_limits<double>::infinity();
      for (int j : chosen_) nearest = std::min(nearest, inst_.s(i, j));
      total += nearest;
    }
    // Lexicographic enumeration: only a strictly better value replaces.
    if (best_.empty() || total < best_value_) {
      best_value_ = total;
      best_ = chosen_;
    }
  }

  const Instance& inst_;
  std::vector<int> sites_;
  std::vector<int> chosen_;
  std::vector<int> best_;
  double best_value_ = 0.0;
  long long evaluated_ = 0;
};

}  // namespace

SolveResult EnumerateOracle(const Instance& inst, const OracleOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<int> admissible;
  for (int j : inst.sites) {
    bool forbidden = false;
    for (int k : inst.clients) {
      if (inst.euc(j, k) <= inst.d2) {
        forbidden = true;
        break;
      }
    }
    if (!forbidden) admissible.push_back(j);
  }
  const double subsets =
      Binomial(static_cast<int>(admissible.size()), inst.p);
  if (subsets > options.max_subsets) {
    throw OracleCapError("enumeration oracle refuses C(" +
                         std::to_string(admissible.size()) + ", " +
                         std::to_string(inst.p) + ") subsets (cap " +
                         std::to_string(options.max_subsets) + ")");
  }
  SolveResult result;
  SubsetSearch search(inst, admissible);
  search.Run();
  result.bb_nodes = search.evaluated();
  if (search.best().empty()) {
    result.status = SolveStatus::kInfeasible;
  } else {
    result.status = SolveStatus::kOptimal;
    result.has_incumbent = true;
    result.objective = search.best_value();
    result.open_sites = search.best();
  }
  result.wall_time_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return result;
}

SolutionCheck ValidateSolution(const Instance& inst,
                               const std::vector<int>& open_sites) {
  SolutionCheck check;
  auto reject = [&](std::string why) {
    check.feasible = false;
    check.reason = std::move(why);
    return check;
  };
  if (static_cast<int>(open_sites.size()) != inst.p) {
    return reject("expected " + std::to_string(inst.p) + " open sites, got " +
                  std::to_string(open_sites.size()));
  }
  for (std::size_t a = 0; a < open_sites.size(); ++a) {
    const int j = open_sites[a];
    if (!std::binary_search(inst.sites.begin(), inst.sites.end(), j)) {
      return reject("node " + std::to_string(j) + " is not a candidate site");
    }
    for (int k : inst.clients) {
      if (inst.euc(j, k) <= inst.d2) {
        return reject("site " + std::to_string(j) + " is within d2 of client " +
                      std::to_string(k));
      }
    }
    for (std::size_t b = a + 1; b < open_sites.size(); ++b) {
      if (open_sites[b] == j) return reject("site listed twice");
      if (inst.euc(j, open_sites[b]) <= inst.d1) {
        return reject("sites " + std::to_string(j) + " and " +
                      std::to_string(open_sites[b]) + " are within d1");
      }
    }
  }
  double total = 0.0;
  for (int i : inst.clients) {
    double nearest = std::numeric_limits<double>::infinity();
    for (int j : open_sites) nearest = std::min(nearest, inst.s(i, j));
    total += nearest;
  }
  check.feasible = true;
  check.objective = total;
  return check;
}

}  // namespace sopm
