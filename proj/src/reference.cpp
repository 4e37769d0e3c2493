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

#include "kerr/reference.hpp"

namespace kerr::reference {

std::vector<StateVector> evolve_pure(const UnitaryPropagator& prop,
                                     const StateVector& psi0,
                                     const TimeGrid& grid) {
  if (!(psi0.dims == prop.dims))
    throw ValidationError("reference::evolve_pure: dims differ");

  std::vector<StateVector> out;
  for (double t : grid.times()) {
    Eigen::VectorXcd phases =
        (cxd(0.0, -1.0) * prop.eigenvalues.array() * t).exp();
    Eigen::MatrixXcd u = prop.eigenvectors * phases.asDiagonal() *
                         prop.eigenvectors.adjoint();
    out.push_back(StateVector{prop.dims, u * psi0.amps});
  }
  return out;
}

Eigen::MatrixXcd lindblad_rhs(const Eigen::MatrixXcd& H,
                              const std::vector<Eigen::MatrixXcd>& collapse,
                              const Eigen::MatrixXcd& rho) {
  const cxd mi(0.0, -1.0);
  Eigen::MatrixXcd out = mi * (H * rho - rho * H);
  for (const auto& c : collapse) {
    Eigen::MatrixXcd ctc = c.adjoint() * c;
    out += c * rho * c.adjoint() - 0.5 * (ctc * rho + rho * ctc);
  }
  return out;
}

std::vector<double> fidelity_series(const std::vector<StateVector>& states,
                                    const StateVector& target,
                                    FidelityConvention convention) {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states)
    out.push_back(pure_fidelity(s, target, convention));
  return out;
}

std::vector<double> entropy_series(const std::vector<StateVector>& states) {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(entanglement_entropy(s));
  return out;
}

}  // namespace kerr::reference
