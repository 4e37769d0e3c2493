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

#ifndef KERR_MODEL_HPP
#define KERR_MODEL_HPP

#include <string>
#include <vector>

#include "kerr/hilbert.hpp"

namespace kerr {

// Physical parameters of the pumped Kerr-Kerr coupler.
//
// chi_a, chi_b   Kerr nonlinearities (rad/time)
// epsilon        internal two-photon coupling strength (complex allowed in
//                the numeric path; the analytic path requires real >= 0)
// alpha          external single-photon pump strength (same restriction)
// kappa_a/b      amplitude damping rates (1/time, >= 0)
// time_unit      label only: "chi_inverse" for the dimensionless scenarios,
//                "seconds" for the damped one. Echoed into outputs, never
//                used in computation.
struct CouplerParams {
  double chi_a = 0.0;
  double chi_b = 0.0;
  cxd epsilon{0.0, 0.0};
  cxd alpha{0.0, 0.0};
  double kappa_a = 0.0;
  double kappa_b = 0.0;
  std::string time_unit = "chi_inverse";

  void validate() const;
};

// Amplitudes of the resonant triple |2,0⟩, |1,2⟩, |0,2⟩ in the truncated
// three-state solution (initial condition |2,0⟩).
struct TruncatedAmplitudes {
  cxd c20;
  cxd c12;
  cxd c02;
};

// H = (chi_a/2)(a†)²a² + (chi_b/2)(b†)²b² + eps(a†)²b² + eps*(b†)²a²
//     + alpha a† + alpha* a
OperatorMatrix hamiltonian(const CouplerParams& params, const ModeDims& dims);

// [√(2 kappa_a) a, √(2 kappa_b) b]; operators with kappa exactly 0 omitted.
std::vector<OperatorMatrix> collapse_operators(const CouplerParams& params,
                                               const ModeDims& dims);

// Omega = √(alpha² + 4 eps²); requires real parameters.
double effective_frequency(const CouplerParams& params);

// Closed-form truncated solution:
//   c20 = (alpha² + 4 eps² cos Ωt) / Ω²
//   c12 = 2 eps alpha (cos Ωt − 1) / Ω²
//   c02 = −2i eps sin(Ωt) / Ω
// Requires alpha, epsilon real >= 0 and not both zero (DegenerateParams).
TruncatedAmplitudes analytic_amplitudes(const CouplerParams& params, double t);

// Embed the three amplitudes into a full StateVector, all other entries zero.
StateVector truncated_to_full(const TruncatedAmplitudes& amps,
                              const ModeDims& dims);

}  // namespace kerr

#endif  // KERR_MODEL_HPP
