// Copyright 2026 The incestfree Authors
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

#include "incestfree/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "incestfree/errors.hpp"

namespace incestfree {
namespace {

constexpr double kPivotTolerance = 1e-11;

}  // namespace

PhaseOneResult MinimizeViolation(const Matrix<double>& M,
                                 std::span<const double> b) {
  const std::size_t rows = M.rows();
  const std::size_t n = M.cols();
  if (b.size() != rows) {
    throw Error(ErrorKind::kDomain, "right-hand side has the wrong length");
  }
  PhaseOneResult result;
  result.x.assign(n, 0.0);
  if (rows == 0) return result;

  // Columns: x (n), slacks (rows), artificials (one per negative row), rhs.
  std::vector<std::size_t> artificial_row;
  for (std::size_t i = 0; i < rows; ++i) {
    if (b[i] < 0.0) artificial_row.push_back(i);
  }
  const std::size_t n_art = artificial_row.size();
  const std::size_t cols = n + rows + n_art;
  const std::size_t rhs = cols;
  Matrix<double> tab(rows + 1, cols + 1, 0.0);
  std::vector<std::size_t> basis(rows);
  std::size_t next_art = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tab(i, j) = sign * M(i, j);
    tab(i, n + i) = sign;
    tab(i, rhs) = sign * b[i];
    if (sign < 0.0) {
      const std::size_t a = n + rows + next_art++;
      tab(i, a) = 1.0;
      basis[i] = a;
    } else {
      basis[i] = n + i;
    }
  }
  // Objective row holds reduced costs of "minimize sum of artificials",
  // expressed in the current basis: z_j = -sum over artificial rows.
  const std::size_t obj = rows;
  for (std::size_t i : artificial_row) {
    for (std::size_t j = 0; j <= cols; ++j) {
      if (j >= n + rows && j < cols) continue;
      tab(obj, j) -= tab(i, j);
    }
  }

  const int max_iterations = static_cast<int>(50 * (rows + cols)) + 1000;
  // Dantzig pricing; after a run of degenerate pivots switch to Bland's
  // rule, which cannot cycle.
  int degenerate_run = 0;
  for (;;) {
    const bool bland = degenerate_run > static_cast<int>(rows + cols);
    std::size_t enter = cols;
    double most_negative = -kPivotTolerance;
    for (std::size_t j = 0; j < cols; ++j) {
      if (tab(obj, j) < most_negative) {
        enter = j;
        if (bland) break;
        most_negative = tab(obj, j);
      }
    }
    if (enter == cols) break;
    // Minimum ratio; among near ties prefer the larger pivot (or, under
    // Bland, the lowest basic index).
    std::size_t leave = rows;
    double best_ratio = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      const double a = tab(i, enter);
      if (a <= kPivotTolerance) continue;
      const double ratio = std::max(0.0, tab(i, rhs)) / a;
      if (leave == rows || ratio < best_ratio - 1e-12) {
        leave = i;
        best_ratio = ratio;
      } else if (ratio <= best_ratio + 1e-12) {
        const bool better = bland ? basis[i] < basis[leave]
                                  : a > tab(leave, enter);
        if (better) {
          leave = i;
          best_ratio = std::min(best_ratio, ratio);
        }
      }
    }
    if (leave == rows) {
      // The objective is bounded below by zero, so this column only looks
      // improving through rounding.
      tab(obj, enter) = 0.0;
      continue;
    }
    if (++result.iterations > max_iterations) {
      throw Error(ErrorKind::kSolver,
                  "simplex iteration limit (" + std::to_string(max_iterations) +
                      ") reached");
    }
    degenerate_run = best_ratio == 0.0 ? degenerate_run + 1 : 0;
    const double pivot = tab(leave, enter);
    for (std::size_t j = 0; j <= cols; ++j) tab(leave, j) /= pivot;
    tab(leave, enter) = 1.0;
    for (std::size_t i = 0; i <= rows; ++i) {
      if (i == leave) continue;
      const double f = tab(i, enter);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) tab(i, j) -= f * tab(leave, j);
      tab(i, enter) = 0.0;
      if (i != obj && tab(i, rhs) < 0.0) tab(i, rhs) = 0.0;
    }
    basis[leave] = enter;
  }

  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < n) result.x[basis[i]] = std::max(0.0, tab(i, rhs));
  }
  // Report the violation of the extracted point, not the tableau value.
  double violation = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) lhs += M(i, j) * result.x[j];
    violation += std::max(0.0, lhs - b[i]);
  }
  result.violation = violation;
  return result;
}

}  // namespace incestfree
