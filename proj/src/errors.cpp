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

#include "incestfree/errors.hpp"

namespace incestfree {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kDagOrder: return "dag_order";
    case ErrorKind::kZeroLikelihood: return "zero_likelihood";
    case ErrorKind::kAchievability: return "achievability";
    case ErrorKind::kMissingBelief: return "missing_belief";
    case ErrorKind::kInconsistentBeliefs: return "inconsistent_beliefs";
    case ErrorKind::kDegenerateRegressor: return "degenerate_regressor";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kCapacity: return "capacity";
    case ErrorKind::kSolver: return "solver";
  }
  return "unknown";
}

}  // namespace incestfree
