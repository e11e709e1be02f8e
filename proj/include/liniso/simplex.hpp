// Copyright 2026 The liniso Authors.
//
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

#pragma once

// Small dense linear programs:
//
//   minimize  c^T x   subject to   A x <= b,  x >= 0
//
// solved with a two-phase tableau simplex using Bland's pivoting rule, which
// cannot cycle. Sized for a few hundred rows and columns.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace liniso {

struct LinearProgram {
  std::vector<double> objective;             // c, length d
  std::vector<std::vector<double>> a_ub;     // m rows of length d
  std::vector<double> b_ub;                  // length m
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double value = std::numeric_limits<double>::quiet_NaN();
  std::size_t pivots = 0;
};

class LpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0), basis_(rows) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  // Row `rows_` holds reduced costs; its rhs is minus the objective value.
  double& cost(std::size_t c) { return at(rows_, c); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double factor = at(r, pc);
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= factor * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  // Runs Bland's rule over columns [0, active_cols). Returns false if unbounded.
  bool optimize(std::size_t active_cols, double tol, std::size_t max_pivots, std::size_t& pivots) {
    for (;;) {
      std::size_t enter = active_cols;
      for (std::size_t c = 0; c < active_cols; ++c) {
        if (cost(c) < -tol) {
          enter = c;
          break;
        }
      }
      if (enter == active_cols) return true;

      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        const double a = at(r, enter);
        if (a > tol) best_ratio = std::min(best_ratio, at(r, cols_) / a);
      }
      if (best_ratio == std::numeric_limits<double>::infinity()) return false;
      // Among minimum-ratio rows, the one whose basic variable has the lowest index.
      std::size_t leave = rows_;
      for (std::size_t r = 0; r < rows_; ++r) {
        const double a = at(r, enter);
        if (a <= tol || at(r, cols_) / a > best_ratio + tol) continue;
        if (leave == rows_ || basis_[r] < basis_[leave]) leave = r;
      }
      if (++pivots > max_pivots) throw LpError("simplex did not converge within pivot limit");
      pivot(leave, enter);
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

inline LpSolution solve_lp(const LinearProgram& lp, double tol = 1e-11,
                           std::size_t max_pivots = 200000) {
  const std::size_t d = lp.objective.size();
  const std::size_t m = lp.b_ub.size();
  if (lp.a_ub.size() != m) throw std::invalid_argument("LP: row count mismatch");
  for (const auto& row : lp.a_ub) {
    if (row.size() != d) throw std::invalid_argument("LP: row length mismatch");
  }

  std::size_t artificial = 0;
  for (const double b : lp.b_ub) artificial += b < 0.0;

  // Columns: x (d), slacks (m), artificials. Rows with b < 0 are negated and
  // get an artificial variable.
  const std::size_t slack0 = d;
  const std::size_t art0 = d + m;
  detail::Tableau t(m, d + m + artificial);
  std::size_t next_art = art0;
  for (std::size_t r = 0; r < m; ++r) {
    const double sign = lp.b_ub[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < d; ++c) t.at(r, c) = sign * lp.a_ub[r][c];
    t.at(r, slack0 + r) = sign;
    t.rhs(r) = sign * lp.b_ub[r];
    if (sign < 0.0) {
      t.at(r, next_art) = 1.0;
      t.basis()[r] = next_art++;
    } else {
      t.basis()[r] = slack0 + r;
    }
  }

  LpSolution sol;
  if (artificial > 0) {
    // Phase 1: minimize the sum of artificials.
    for (std::size_t c = art0; c < art0 + artificial; ++c) t.cost(c) = 1.0;
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basis()[r] >= art0) {
        for (std::size_t c = 0; c <= t.cols(); ++c) t.cost(c) -= t.at(r, c);
      }
    }
    t.optimize(t.cols(), tol, max_pivots, sol.pivots);
    if (-t.at(m, t.cols()) > 1e-9) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    // Drive remaining (zero-level) artificials out of the basis.
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basis()[r] < art0) continue;
      for (std::size_t c = 0; c < art0; ++c) {
        if (std::abs(t.at(r, c)) > 1e-9) {
          t.pivot(r, c);
          break;
        }
      }
    }
    for (std::size_t c = 0; c <= t.cols(); ++c) t.cost(c) = 0.0;
  }

  // Phase 2 over the original and slack columns only.
  for (std::size_t c = 0; c < d; ++c) t.cost(c) = lp.objective[c];
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t b = t.basis()[r];
    if (b < d && lp.objective[b] != 0.0) {
      const double factor = lp.objective[b];
      for (std::size_t c = 0; c <= t.cols(); ++c) t.cost(c) -= factor * t.at(r, c);
    }
  }
  if (!t.optimize(art0, tol, max_pivots, sol.pivots)) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  sol.x.assign(d, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis()[r] < d) sol.x[t.basis()[r]] = std::max(0.0, t.rhs(r));
  }
  sol.value = 0.0;
  for (std::size_t c = 0; c < d; ++c) sol.value += lp.objective[c] * sol.x[c];
  sol.status = LpStatus::Optimal;
  return sol;
}

}  // namespace liniso
