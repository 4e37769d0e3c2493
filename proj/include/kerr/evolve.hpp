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

#ifndef KERR_EVOLVE_HPP
#define KERR_EVOLVE_HPP

#include <vector>

#include "kerr/hilbert.hpp"

namespace kerr {

// Uniform sample times, endpoints included: n_steps intervals over
// [t_start, t_end], so times() has n_steps + 1 entries.
struct TimeGrid {
  double t_start;
  double t_end;
  int n_steps;

  TimeGrid(double start, double end, int steps)
      : t_start(start), t_end(end), n_steps(steps) {
    if (!(t_end > t_start)) throw ValidationError("TimeGrid: t_end <= t_start");
    if (n_steps < 1) throw ValidationError("TimeGrid: n_steps < 1");
  }
  std::vector<double> times() const;
};

// Hermitian eigendecomposition of H. exp(-iHt) = V diag(e^{-i lambda t}) V†
// for any t at no further factorization cost.
struct UnitaryPropagator {
  ModeDims dims;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
};

// Throws NotHermitian if max|H - H†| > 1e-10 * max|H|.
UnitaryPropagator make_propagator(const OperatorMatrix& H);

// psi(t_k) = U(t_k) psi0 at every grid point. Grid points are independent;
// evaluated in parallel.
std::vector<StateVector> evolve_pure(const UnitaryPropagator& prop,
                                     const StateVector& psi0,
                                     const TimeGrid& grid);

// Matrix form of L rho = -i(H rho - rho H)
//                        + sum_k [C_k rho C_k† - (C_k†C_k rho + rho C_k†C_k)/2]
// acting on column-stacked rho: stack(rho) concatenates columns, and
// A rho B† maps to (conj(B) ⊗ A) stack(rho).
Eigen::MatrixXcd liouvillian(const Eigen::MatrixXcd& H,
                             const std::vector<Eigen::MatrixXcd>& collapse);
Eigen::MatrixXcd liouvillian(const OperatorMatrix& H,
                             const std::vector<OperatorMatrix>& collapse);

enum class MasterMethod { integrate, spectral };

struct MasterOptions {
  MasterMethod method = MasterMethod::integrate;
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  // Give up (StepSizeTooLarge) when the controller pushes the step below
  // min_step_fraction * (t_end - t_start).
  double min_step_fraction = 1e-12;
};

struct MasterDiagnostics {
  double max_trace_drift = 0.0;        // max |tr rho(t) - tr rho(0)|
  double max_hermiticity_drift = 0.0;  // max elementwise |rho - rho†| seen
                                       // before each symmetrization
  long steps_accepted = 0;
  long steps_rejected = 0;
};

struct MasterEvolution {
  std::vector<Eigen::MatrixXcd> states;  // rho(t_k) per grid point
  MasterDiagnostics diag;
};

// Lindblad evolution of rho0 over the grid.
//  - integrate: adaptive embedded Runge-Kutta 4(5), rho is symmetrized
//    (rho+rho†)/2 after every accepted step and the drift logged. The trace
//    is never renormalized; trace drift is an error signal.
//  - spectral: dense eigendecomposition of the column-stacked Liouvillian,
//    rho(t) = unstack(P diag(e^{s_j t}) P^{-1} stack(rho0)).
MasterEvolution evolve_master(const Eigen::MatrixXcd& H,
                              const std::vector<Eigen::MatrixXcd>& collapse,
                              const Eigen::MatrixXcd& rho0,
                              const TimeGrid& grid,
                              const MasterOptions& opts = {});
MasterEvolution evolve_master(const OperatorMatrix& H,
                              const std::vector<OperatorMatrix>& collapse,
                              const DensityMatrix& rho0, const TimeGrid& grid,
                              const MasterOptions& opts = {});

}  // namespace kerr

#endif  // KERR_EVOLVE_HPP
