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

#include "sopm/milp.h"

#include <algorithm>
#include <cmath>

#include "sopm/error.h"

namespace sopm {

int MilpModel::AddVariable(std::string name, VarRole role, int site,
                           int client, double objective) {
  if (!(objective >= 0.0)) {
    throw ParameterError("objective coefficient of " + name +
                         " must be nonnegative");
  }
  const int index = num_variables();
  if (!var_index_.emplace(name, index).second) {
    throw ParameterError("duplicate variable name " + name);
  }
  if (role == VarRole::kSite) site_var_[site] = index;
  variables_.push_back({std::move(name), role, site, client, objective});
  return index;
}

int MilpModel::AddConstraint(std::string name, std::vector<Term> terms,
                             Sense sense, double rhs) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw ParameterError("constraint " + name +
                           " references an undeclared variable");
    }
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  const int index = num_constraints();
  if (!con_index_.emplace(name, index).second) {
    throw ParameterError("duplicate constraint name " + name);
  }
  constraints_.push_back({std::move(name), std::move(merged), sense, rhs});
  return index;
}

int MilpModel::FindVariable(std::string_view name) const {
  auto it = var_index_.find(std::string(name));
  return it == var_index_.end() ? -1 : it->second;
}

int MilpModel::SiteVariable(int site) const {
  auto it = site_var_.find(site);
  return it == site_var_.end() ? -1 : it->second;
}

ModelStats ComputeModelStats(const MilpModel& m) {
  ModelStats s;
  s.variables = m.num_variables();
  s.constraints = m.num_constraints();
  for (const Constraint& c : m.constraints()) {
    s.nonzeros += static_cast<long long>(c.terms.size());
  }
  return s;
}

bool StructurallyEqual(const MilpModel& a, const MilpModel& b,
                       std::string* difference) {
  auto fail = [&](const std::string& why) {
    if (difference != nullptr) *difference = why;
    return false;
  };
  if (a.num_variables() != b.num_variables()) {
    return fail("variable count differs");
  }
  for (int i = 0; i < a.num_variables(); ++i) {
    const Variable& va = a.variables()[i];
    const Variable& vb = b.variables()[i];
    if (va.name != vb.name) return fail("variable " + va.name + " vs " + vb.name);
    if (va.objective != vb.objective) return fail("objective of " + va.name);
  }
  if (a.num_constraints() != b.num_constraints()) {
    return fail("constraint count differs");
  }
  for (int i = 0; i < a.num_constraints(); ++i) {
    const Constraint& ca = a.constraints()[i];
    const Constraint& cb = b.constraints()[i];
    if (ca.name != cb.name) return fail("row " + ca.name + " vs " + cb.name);
    if (ca.sense != cb.sense || ca.rhs != cb.rhs || ca.terms != cb.terms) {
      return fail("row " + ca.name + " differs");
    }
  }
  return true;
}

double RowActivity(const Constraint& c, const std::vector<double>& x) {
  double a = 0.0;
  for (const Term& t : c.terms) a += t.coef * x[t.var];
  return a;
}

bool RowSatisfied(const Constraint& c, const std::vector<double>& x,
                  double tol) {
  const double a = RowActivity(c, x);
  switch (c.sense) {
    case Sense::kLe:
      return a <= c.rhs + tol;
    case Sense::kGe:
      return a >= c.rhs - tol;
    case Sense::kEq:
      return std::abs(a - c.rhs) <= tol;
  }
  return false;
}

bool AssignmentFeasible(const MilpModel& m, const std::vector<double>& x,
                        double tol) {
  if (static_cast<int>(x.size()) != m.num_variables()) return false;
  for (double v : x) {
    if (v < -tol || v > 1.0 + tol) return false;
  }
  for (const Constraint& c : m.constraints()) {
    if (!RowSatisfied(c, x, tol)) return false;
  }
  return true;
}

double ObjectiveValue(const MilpModel& m, const std::vector<double>& x) {
  double z = 0.0;
  for (int i = 0; i < m.num_variables(); ++i) {
    z += m.variables()[i].objective * x[i];
  }
  return z;
}

}  // namespace sopm
