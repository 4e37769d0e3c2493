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

#ifndef KERR_REFERENCE_HPP
#define KERR_REFERENCE_HPP

#include <vector>

#include "kerr/evolve.hpp"
#include "kerr/measures.hpp"

// Plain serial baselines for the parallel kernels. Written for obviousness,
// not speed; the tests pin the parallel implementations against these and
// bench_kernels times the two side by side.
namespace kerr::reference {

// Builds U(t_k) = V diag(e^{-i lambda t_k}) V† as an explicit matrix per
// grid point and applies it. O(d^3) per point.
std::vector<StateVector> evolve_pure(const UnitaryPropagator& prop,
                                     const StateVector& psi0,
                                     const TimeGrid& grid);

// Direct evaluation of the master-equation right-hand side, term by term.
Eigen::MatrixXcd lindblad_rhs(const Eigen::MatrixXcd& H,
                              const std::vector<Eigen::MatrixXcd>& collapse,
                              const Eigen::MatrixXcd& rho);

std::vector<double> fidelity_series(const std::vector<StateVector>& states,
                                    const StateVector& target,
                                    FidelityConvention convention);
std::vector<double> entropy_series(const std::vector<StateVector>& states);

}  // namespace kerr::reference

#endif  // KERR_REFERENCE_HPP
