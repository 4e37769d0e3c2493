// Copyright 2026 The kerrcoupler Authors
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

#ifndef KERR_ACCEPTANCE_HPP
#define KERR_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace kerr {

struct CriterionResult {
  std::string id;    // "1".."10"
  std::string name;
  bool passed;
  double seconds;
  // One line per measured quantity: value, tolerance, verdict.
  std::vector<std::string> detail;
};

struct AcceptanceOptions {
  // Negative-control hook: flips the sign of the Hamiltonian used by the
  // truncation criterion so a healthy build can demonstrate a failure.
  bool negate_hamiltonian = false;
  // When non-empty, run only the listed criterion ids.
  std::vector<std::string> only;
};

// Runs the release-gate suite. Prints one PASS/FAIL line per criterion plus
// detail lines to `out`, returns all results.
std::vector<CriterionResult> run_acceptance(std::ostream& out,
                                            const AcceptanceOptions& opts = {});

// 0 when every criterion passed, 3 otherwise (the self-check exit code).
int acceptance_exit_code(const std::vector<CriterionResult>& results);

}  // namespace kerr

#endif  // KERR_ACCEPTANCE_HPP
