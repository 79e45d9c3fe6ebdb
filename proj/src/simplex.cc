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

#include "sopm/simplex.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sopm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-7;
constexpr double kZero = 1e-12;
// Consecutive degenerate pivots before switching to Bland's rule.
constexpr int kDegenerateStreak = 30;

enum class RunStatus { kOptimal, kLimit };

class BoundedSimplex {
 public:
  BoundedSimplex(int rows, int cols)
      : m_(rows),
        n_(cols),
        a_(std::size_t(rows) * cols, 0.0),
        beta_(rows, 0.0),
        basis_(rows, -1),
        pos_(cols, -1),
        ub_(cols, kInf),
        at_upper_(cols, 0),
        d_(cols, 0.0) {}

  double& at(int i, int j) { return a_[std::size_t(i) * n_ + j]; }
  double at(int i, int j) const { return a_[std::size_t(i) * n_ + j]; }

  void SetBasic(int row, int col, double value) {
    basis_[row] = col;
    pos_[col] = row;
    beta_[row] = value;
  }
  void SetUpper(int col, double ub) { ub_[col] = ub; }

  void PriceOut(const std::vector<double>& cost) {
    d_ = cost;
    for (int i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &a_[std::size_t(i) * n_];
      for (int j = 0; j < n_; ++j) d_[j] -= cb * row[j];
    }
  }

  RunStatus Run(long long& iterations, long long max_iterations,
                const LpOptions& options) {
    int streak = 0;
    while (true) {
      if (iterations >= max_iterations) return RunStatus::kLimit;
      if (options.deadline && (iterations & 63) == 0 &&
          std::chrono::steady_clock::now() > *options.deadline) {
        return RunStatus::kLimit;
      }
      const bool bland = streak > kDegenerateStreak;
      const int q = ChooseEntering(bland);
      if (q < 0) return RunStatus::kOptimal;
      ++iterations;
      const double step = Step(q, bland);
      if (step < 0.0) return RunStatus::kLimit;  // unbounded direction
      streak = step <= kZero ? streak + 1 : 0;
    }
  }

  double Value(int col) const {
    if (pos_[col] >= 0) return beta_[pos_[col]];
    return at_upper_[col] ? ub_[col] : 0.0;
  }

  int basis(int row) const { return basis_[row]; }
  bool IsBasic(int col) const { return pos_[col] >= 0; }
  int rows() const { return m_; }

  // Pivots `col` into the basis at `row` without moving any value.
  void PivotInPlace(int row, int col) {
    const double value = Value(col);
    Pivot(row, col);
    beta_[row] = value;
  }

 private:
  int ChooseEntering(bool bland) const {
    int best = -1;
    double best_score = 0.0;
    for (int j = 0; j < n_; ++j) {
      if (pos_[j] >= 0 || ub_[j] <= 0.0) continue;
      const double dj = d_[j];
      const bool eligible = at_upper_[j] ? dj > kCostTol : dj < -kCostTol;
      if (!eligible) continue;
      if (bland) return j;
      if (std::abs(dj) > best_score) {
        best_score = std::abs(dj);
        best = j;
      }
    }
    return best;
  }

  // One iteration with entering column q; returns the step length, or -1 if
  // the direction is unbounded.
  double Step(int q, bool bland) {
    const double dir = at_upper_[q] ? -1.0 : 1.0;
    double t = ub_[q];
    int leave = -1;
    bool leave_to_upper = false;
    double leave_alpha = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double alpha = at(i, q);
      if (std::abs(alpha) < kPivotTol) continue;
      const double delta = dir * alpha;
      double limit;
      bool to_upper;
      if (delta > 0.0) {
        limit = std::max(0.0, beta_[i]) / delta;
        to_upper = false;
      } else {
        const double ub = ub_[basis_[i]];
        if (ub == kInf) continue;
        limit = std::max(0.0, ub - beta_[i]) / -delta;
        to_upper = true;
      }
      bool take = false;
      if (limit < t - kZero) {
        take = true;
      } else if (leave >= 0 && limit <= t + kZero) {
        take = bland ? basis_[i] < basis_[leave]
                     : std::abs(alpha) > std::abs(leave_alpha);
      }
      if (take) {
        t = std::min(t, limit);
        leave = i;
        leave_to_upper = to_upper;
        leave_alpha = alpha;
      }
    }
    if (t == kInf) return -1.0;

    if (t > 0.0) {
      for (int i = 0; i < m_; ++i) {
        const double alpha = at(i, q);
        if (alpha != 0.0) beta_[i] -= dir * alpha * t;
      }
    }
    if (leave < 0) {
      at_upper_[q] = !at_upper_[q];
      return t;
    }
    const double entering_value = dir > 0.0 ? t : ub_[q] - t;
    const int out = basis_[leave];
    Pivot(leave, q);
    beta_[leave] = entering_value;
    at_upper_[out] = leave_to_upper;
    return t;
  }

  void Pivot(int r, int q) {
    double* prow = &a_[std::size_t(r) * n_];
    const double inv = 1.0 / prow[q];
    nz_.clear();
    for (int j = 0; j < n_; ++j) {
      if (prow[j] == 0.0) continue;
      prow[j] *= inv;
      if (std::abs(prow[j]) < kZero) {
        prow[j] = 0.0;
      } else {
        nz_.push_back(j);
      }
    }
    prow[q] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &a_[std::size_t(i) * n_];
      const double f = row[q];
      if (f == 0.0) continue;
      for (int j : nz_) {
        double v = row[j] - f * prow[j];
        row[j] = std::abs(v) < kZero ? 0.0 : v;
      }
      row[q] = 0.0;
    }
    const double fd = d_[q];
    if (fd != 0.0) {
      for (int j : nz_) d_[j] -= fd * prow[j];
      d_[q] = 0.0;
    }
    const int out = basis_[r];
    pos_[out] = -1;
    basis_[r] = q;
    pos_[q] = r;
  }

  int m_, n_;
  std::vector<double> a_;
  std::vector<double> beta_;
  std::vector<int> basis_;
  std::vector<int> pos_;
  std::vector<double> ub_;
  std::vector<char> at_upper_;
  std::vector<double> d_;
  std::vector<int> nz_;
};

struct Row {
  std::vector<Term> terms;  // over free-variable columns
  Sense sense;
  double rhs;
};

}  // namespace

LpResult SolveLpRelaxation(const MilpModel& m, const Fixings& fixings,
                           const LpOptions& options) {
  LpResult result;
  const int nv = m.num_variables();
  std::vector<int> column(nv, -1);
  std::vector<int> free_vars;
  for (int v = 0; v < nv; ++v) {
    if (!fixings.count(v)) {
      column[v] = static_cast<int>(free_vars.size());
      free_vars.push_back(v);
    }
  }
  const int nf = static_cast<int>(free_vars.size());

  std::vector<Row> rows;
  for (const Constraint& c : m.constraints()) {
    Row row{{}, c.sense, c.rhs};
    for (const Term& t : c.terms) {
      if (column[t.var] >= 0) {
        row.terms.push_back({column[t.var], t.coef});
      } else {
        row.rhs -= t.coef * fixings.at(t.var);
      }
    }
    if (row.terms.empty()) {
      const bool holds =
          (row.sense == Sense::kLe && row.rhs >= -kFeasTol) ||
          (row.sense == Sense::kGe && row.rhs <= kFeasTol) ||
          (row.sense == Sense::kEq && std::abs(row.rhs) <= kFeasTol);
      if (!holds) {
        result.status = LpStatus::kInfeasible;
        return result;
      }
      continue;
    }
    if (row.rhs < 0.0) {
      for (Term& t : row.terms) t.coef = -t.coef;
      row.rhs = -row.rhs;
      if (row.sense == Sense::kLe) {
        row.sense = Sense::kGe;
      } else if (row.sense == Sense::kGe) {
        row.sense = Sense::kLe;
      }
    }
    rows.push_back(std::move(row));
  }

  const int mr = static_cast<int>(rows.size());
  int ns = 0, na = 0;
  for (const Row& r : rows) {
    ns += r.sense != Sense::kEq;
    na += r.sense != Sense::kLe;
  }
  const int ncols = nf + ns + na;
  BoundedSimplex lp(mr, ncols);
  for (int j = 0; j < nf; ++j) lp.SetUpper(j, 1.0);
  int next_slack = nf, next_art = nf + ns;
  std::vector<int> artificial_cols;
  for (int i = 0; i < mr; ++i) {
    const Row& r = rows[i];
    for (const Term& t : r.terms) lp.at(i, t.var) = t.coef;
    if (r.sense == Sense::kLe) {
      lp.at(i, next_slack) = 1.0;
      lp.SetBasic(i, next_slack++, r.rhs);
    } else {
      if (r.sense == Sense::kGe) lp.at(i, next_slack++) = -1.0;
      lp.at(i, next_art) = 1.0;
      artificial_cols.push_back(next_art);
      lp.SetBasic(i, next_art++, r.rhs);
    }
  }

  const long long cap =
      options.max_iterations > 0
          ? options.max_iterations
          : std::max<long long>(100000, 50LL * (mr + ncols));
  long long iterations = 0;

  if (na > 0) {
    std::vector<double> cost(ncols, 0.0);
    for (int c : artificial_cols) cost[c] = 1.0;
    lp.PriceOut(cost);
    if (lp.Run(iterations, cap, options) == RunStatus::kLimit) {
      result.status = LpStatus::kIterationLimit;
      result.iterations = iterations;
      return result;
    }
    double infeasibility = 0.0;
    for (int c : artificial_cols) infeasibility += lp.Value(c);
    if (infeasibility > kFeasTol) {
      result.status = LpStatus::kInfeasible;
      result.iterations = iterations;
      return result;
    }
    // Drive zero-valued artificials out of the basis where possible; the
    // rest sit on redundant rows and are pinned at zero.
    for (int i = 0; i < mr; ++i) {
      if (lp.basis(i) < nf + ns) continue;
      for (int j = 0; j < nf + ns; ++j) {
        if (!lp.IsBasic(j) && std::abs(lp.at(i, j)) > kPivotTol) {
          lp.PivotInPlace(i, j);
          break;
        }
      }
    }
    for (int c : artificial_cols) lp.SetUpper(c, 0.0);
  }

  std::vector<double> cost(ncols, 0.0);
  for (int j = 0; j < nf; ++j) cost[j] = m.variables()[free_vars[j]].objective;
  lp.PriceOut(cost);
  if (lp.Run(iterations, cap, options) == RunStatus::kLimit) {
    result.status = LpStatus::kIterationLimit;
    result.iterations = iterations;
    return result;
  }

  result.status = LpStatus::kOptimal;
  result.iterations = iterations;
  result.values.assign(nv, 0.0);
  for (const auto& [v, value] : fixings) result.values[v] = value;
  for (int j = 0; j < nf; ++j) {
    double x = std::clamp(lp.Value(j), 0.0, 1.0);
    if (x < 1e-9) x = 0.0;
    if (x > 1.0 - 1e-9) x = 1.0;
    result.values[free_vars[j]] = x;
  }
  result.objective = ObjectiveValue(m, result.values);
  return result;
}

}  // namespace sopm
