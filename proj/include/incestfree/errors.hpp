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

#ifndef INCESTFREE_ERRORS_HPP_
#define INCESTFREE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace incestfree {

enum class ErrorKind {
  kDomain,               // argument outside its documented range
  kDagOrder,             // edge (m, n) with m >= n
  kZeroLikelihood,       // Bayes update with zero normalizer
  kAchievability,        // fair fusion needs a belief the node cannot see
  kMissingBelief,        // poll correction lacks a required voter belief
  kInconsistentBeliefs,  // no observation sequence reproduces the beliefs
  kDegenerateRegressor,  // AR driver identically zero
  kParse,                // malformed JSON / CSV input
  kCapacity,             // enumeration bound exceeded
  kSolver,               // LP did not converge or failed verification
};

// All library failures are reported through this one exception type; the
// kind tells callers (and the CLI exit code) what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// 1 for validation problems, 2 for capacity / solver problems.
inline int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kCapacity:
    case ErrorKind::kSolver:
      return 2;
    default:
      return 1;
  }
}

const char* ErrorKindName(ErrorKind kind);

}  // namespace incestfree

#endif  // INCESTFREE_ERRORS_HPP_
