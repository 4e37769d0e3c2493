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

#ifndef KERR_SCENARIO_HPP
#define KERR_SCENARIO_HPP

#include <string>
#include <utility>
#include <vector>

#include "kerr/measures.hpp"

namespace kerr {

// One runnable scenario: a named computation over a time grid. Scenarios:
//   truncation       columns t, one_minus_F (squared-overlap convention)
//   probabilities    columns t, then |c_{n,m}|² per Fock target
//   bell_fidelities  columns t, then amplitude fidelity per Bell target
//   entropy          columns t, entropy_ebits
//   chsh             columns t, b_value, m_value (empty cells where the
//                    projected weight vanishes)
//   damped           columns t, chi_t, then Uhlmann fidelity to B1 and B2
struct ScenarioConfig {
  std::string scenario;
  CouplerParams params;
  ModeDims dims{10, 10};
  TimeGrid grid{0.0, 50.0, 2000};
  MasterMethod method = MasterMethod::integrate;
  double rel_tol = 1e-8;
  double min_step_fraction = 1e-12;
  std::vector<BellStateId> targets{BellStateId::B1, BellStateId::B2};
  std::vector<std::pair<int, int>> fock_targets{{2, 0}, {0, 2}, {1, 2}};
  std::string output_path;  // empty: caller decides (CLI prints to stdout)

  void validate() const;
};

// Flat key=value text config ('#' comments). Unknown keys are errors naming
// the key; missing keys fall back to per-scenario defaults.
ScenarioConfig load_config(const std::string& path);

// Same parser over an in-memory key/value list (file line order preserved by
// the caller); load_config is a thin wrapper over this.
ScenarioConfig config_from_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs);

TimeSeries run_scenario(const ScenarioConfig& config);

// The key=value lines a config round-trips to (used for the CSV echo).
std::vector<std::pair<std::string, std::string>> config_echo(
    const ScenarioConfig& config);

}  // namespace kerr

#endif  // KERR_SCENARIO_HPP
