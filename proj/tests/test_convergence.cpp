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

// Basis-size convergence: the production dims must sit on the converged
// plateau. These runs are heavier than the unit tests and carry a longer
// ctest timeout.

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "kerr/evolve.hpp"
#include "kerr/measures.hpp"
#include "kerr/model.hpp"

using namespace kerr;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<double> closed_system_fidelity(ModeDims d, int steps) {
  CouplerParams p;
  p.chi_a = 25.0;
  p.chi_b = 25.0;
  p.epsilon = kPi / 25.0;
  p.alpha = kPi / 25.0;
  UnitaryPropagator prop = make_propagator(hamiltonian(p, d));
  TimeGrid grid{0.0, 50.0, steps};
  auto states = evolve_pure(prop, basis_state(d, 2, 0), grid);
  return fidelity_series(states, bell_state(BellStateId::B1, d),
                         FidelityConvention::amplitude);
}

std::vector<std::vector<double>> damped_fidelities(ModeDims d, int steps) {
  CouplerParams p;
  p.chi_a = 1e8;
  p.chi_b = 1e8;
  p.alpha = 5e6;
  p.epsilon = 2.5e6;
  p.kappa_a = 2e5;
  p.kappa_b = 2e5;
  OperatorMatrix H = hamiltonian(p, d);
  auto collapse = collapse_operators(p, d);
  DensityMatrix rho0 = DensityMatrix::from_pure(basis_state(d, 2, 0));
  // window covering the first Bell-formation peak near t = 1.35e-7 s
  TimeGrid grid{0.0, 2.4e-7, steps};

  MasterOptions opts;
  opts.method = MasterMethod::integrate;
  auto ev = evolve_master(H, collapse, rho0, grid, opts);

  StateVector b1 = bell_state(BellStateId::B1, d);
  StateVector b2 = bell_state(BellStateId::B2, d);
  auto overlap_fid = [](const Eigen::MatrixXcd& rho, const StateVector& b) {
    // Uhlmann fidelity against a pure target reduces to sqrt(<B|rho|B>)
    double p = (b.amps.adjoint() * rho * b.amps)(0).real();
    return std::sqrt(std::max(0.0, p));
  };
  std::vector<std::vector<double>> out(2);
  for (const auto& s : ev.states) {
    out[0].push_back(overlap_fid(s, b1));
    out[1].push_back(overlap_fid(s, b2));
  }
  return out;
}
}  // namespace

TEST_CASE("closed-system observables are converged at dims (10,10)") {
  auto base = closed_system_fidelity(ModeDims(10, 10), 400);
  auto refined = closed_system_fidelity(ModeDims(20, 20), 400);
  REQUIRE(base.size() == refined.size());
  double worst = 0.0;
  for (size_t k = 0; k < base.size(); ++k)
    worst = std::max(worst, std::abs(base[k] - refined[k]));
  CHECK(worst < 1e-8);
}

TEST_CASE("damped fidelity curves are converged at dims (6,6)") {
  auto base = damped_fidelities(ModeDims(6, 6), 120);
  auto refined = damped_fidelities(ModeDims(12, 12), 120);
  double worst = 0.0;
  for (int c = 0; c < 2; ++c)
    for (size_t k = 0; k < base[c].size(); ++k)
      worst = std::max(worst, std::abs(base[c][k] - refined[c][k]));
  CHECK(worst < 1e-4);
}
