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

// Small dense LP feasibility: find x >= 0 with M x <= b.

#ifndef INCESTFREE_SIMPLEX_HPP_
#define INCESTFREE_SIMPLEX_HPP_

#include <span>
#include <vector>

#include "incestfree/matrix.hpp"

namespace incestfree {

struct PhaseOneResult {
  // Minimum total violation sum_i max(0, (M x - b)_i) reached by the solver.
  double violation = 0.0;
  // The minimizing point (x >= 0).
  std::vector<double> x;
  int iterations = 0;
};

// Phase-one tableau simplex, Dantzig pricing with a fallback to Bland's rule
// on degenerate stretches. Rows with b_i < 0 get an
// artificial variable; the objective is the sum of artificials. Throws
// kSolver if the iteration limit is hit.
PhaseOneResult MinimizeViolation(const Matrix<double>& M,
                                 std::span<const double> b);

}  // namespace incestfree

#endif  // INCESTFREE_SIMPLEX_HPP_
