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

#ifndef KERR_MEASURES_HPP
#define KERR_MEASURES_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "kerr/evolve.hpp"
#include "kerr/hilbert.hpp"
#include "kerr/model.hpp"
#include "kerr/timeseries.hpp"

namespace kerr {

// Equal-weight superpositions over the resonant triple:
//   B1 = (|2,0⟩ + i|0,2⟩)/√2   B2 = (|2,0⟩ − i|0,2⟩)/√2
//   B3 = (|2,0⟩ + i|1,2⟩)/√2   B4 = (|2,0⟩ − i|1,2⟩)/√2
//   B5 = (|2,0⟩ +  |1,2⟩)/√2   B6 = (|2,0⟩ −  |1,2⟩)/√2
//   P1 = (|1,2⟩ + i|0,2⟩)/√2   P2 = (|1,2⟩ − i|0,2⟩)/√2
// P1/P2 factorize as ((|1⟩±i|0⟩)/√2)_a ⊗ |2⟩_b and carry no entanglement.
enum class BellStateId { B1, B2, B3, B4, B5, B6, P1, P2 };

const char* to_string(BellStateId id);
BellStateId bell_id_from_string(const std::string& name);

StateVector bell_state(BellStateId id, const ModeDims& dims);

// Overlap conventions coexist deliberately: probability (squared overlap) for
// truncation checking, amplitude (plain |⟨ψ|φ⟩|) for state-formation curves.
enum class FidelityConvention { amplitude, probability };

double pure_fidelity(const StateVector& psi, const StateVector& phi,
                     FidelityConvention convention);

// Uhlmann fidelity tr√(ρ^{1/2} σ ρ^{1/2}) via Hermitian PSD square roots.
// Eigenvalues in [-1e-8, 0) are clamped to 0; anything lower throws NotPSD.
double mixed_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// |c_{n,m}|² for each requested (n, m).
std::vector<double> probabilities(
    const StateVector& psi, const std::vector<std::pair<int, int>>& targets);

// Shannon entropy (base 2) of the squared singular values of the
// dim_a x dim_b coefficient matrix; 0*log2(0) := 0.
double entanglement_entropy(const StateVector& psi);

// Von Neumann entropy of the reduced state on one side, via partial_trace.
// Eigenvalues in [-1e-10, 0) are clamped to 0; anything lower throws NotPSD.
double entanglement_entropy_mixed_marginal(const DensityMatrix& rho,
                                           Mode side);

// Two-qubit nonlocality report: t_matrix(n,m) = tr(rho sigma_n ⊗ sigma_m)
// with the standard Pauli (x, y, z) convention, U = TᵀT, m_value the sum of
// the two largest eigenvalues of U, b_value = √max(0, m_value − 1) and
// n_value = max(0, m_value − 1) = b_value².
struct CHSHReport {
  Eigen::Matrix3d t_matrix;
  std::array<double, 3> u_eigenvalues;  // sorted descending
  double m_value;
  double b_value;
  double n_value;
};

CHSHReport chsh_violation(const DensityMatrix& rho_qq);

// Per-time 1 − |⟨ψ_full(t)|ψ_truncated(t)⟩|² between the numeric states and
// the embedded analytic solution. Columns: t, one_minus_F.
TimeSeries truncation_fidelity_series(const std::vector<StateVector>& full,
                                      const CouplerParams& params,
                                      const TimeGrid& grid);

// Batched per-time evaluation over a trajectory (parallel over grid points).
std::vector<double> fidelity_series(const std::vector<StateVector>& states,
                                    const StateVector& target,
                                    FidelityConvention convention);
std::vector<double> entropy_series(const std::vector<StateVector>& states);

}  // namespace kerr

#endif  // KERR_MEASURES_HPP
