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

#ifndef SOPM_MILP_H_
#define SOPM_MILP_H_

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sopm {

// Provenance of a model variable.
enum class VarRole {
  kSite,        // x_j
  kAssignment,  // y_ij
  kMerged,      // merged assignment variable of the COBRA model
};

enum class Sense { kLe, kEq, kGe };

struct Variable {
  std::string name;
  VarRole role = VarRole::kSite;
  int site = 0;      // site id for every role
  int client = 0;    // client id (representative client for kMerged)
  double objective = 0.0;
};

struct Term {
  int var = 0;
  double coef = 0.0;

  friend bool operator==(const Term&, const Term&) = default;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;  // sorted by var, no duplicates, no zeros
  Sense sense = Sense::kLe;
  double rhs = 0.0;
};

struct ModelMetadata {
  std::string base;
  std::string distance;
  int r = 0;
  int p = 0;
  std::string fingerprint;
};

struct ModelStats {
  int variables = 0;
  int constraints = 0;
  long long nonzeros = 0;

  friend bool operator==(const ModelStats&, const ModelStats&) = default;
};

// Solver-neutral 0-1 linear program, minimisation sense. Every variable is
// binary with bounds [0, 1].
class MilpModel {
 public:
  int AddVariable(std::string name, VarRole role, int site, int client,
                  double objective);
  // Sorts and merges terms and drops zero coefficients.
  int AddConstraint(std::string name, std::vector<Term> terms, Sense sense,
                    double rhs);

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }

  // -1 if absent.
  int FindVariable(std::string_view name) const;
  // Index of the site variable for `site`, or -1.
  int SiteVariable(int site) const;

  ModelMetadata& metadata() { return metadata_; }
  const ModelMetadata& metadata() const { return metadata_; }

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::unordered_map<std::string, int> var_index_;
  std::unordered_map<std::string, int> con_index_;
  std::unordered_map<int, int> site_var_;
  ModelMetadata metadata_;
};

ModelStats ComputeModelStats(const MilpModel& m);

// Same variable names/order, objective, and rows (name, terms, sense, rhs).
// Roles and metadata are not compared.
bool StructurallyEqual(const MilpModel& a, const MilpModel& b,
                       std::string* difference = nullptr);

double RowActivity(const Constraint& c, const std::vector<double>& x);
bool RowSatisfied(const Constraint& c, const std::vector<double>& x,
                  double tol);
// True iff every row holds within `tol` and every value is in [0, 1].
bool AssignmentFeasible(const MilpModel& m, const std::vector<double>& x,
                        double tol);
double ObjectiveValue(const MilpModel& m, const std::vector<double>& x);

}  // namespace sopm

#endif  // SOPM_MILP_H_
