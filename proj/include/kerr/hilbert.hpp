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

#ifndef KERR_HILBERT_HPP
#define KERR_HILBERT_HPP

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "kerr/errors.hpp"

namespace kerr {

using cxd = std::complex<double>;

enum class Mode { a, b };

// Truncated two-mode Fock space: levels 0..dim_a-1 for mode a tensor
// 0..dim_b-1 for mode b. The flattened index convention is fixed:
// index(n, m) = n*dim_b + m, i.e. mode a is the slow index.
struct ModeDims {
  int dim_a;
  int dim_b;

  ModeDims(int a, int b) : dim_a(a), dim_b(b) {
    if (a < 3 || b < 3)
      throw ValidationError("ModeDims: each mode needs at least 3 Fock levels");
  }
  int total() const { return dim_a * dim_b; }
  bool operator==(const ModeDims& o) const {
    return dim_a == o.dim_a && dim_b == o.dim_b;
  }
};

inline int flatten(const ModeDims& dims, int n, int m) {
  if (n < 0 || n >= dims.dim_a || m < 0 || m >= dims.dim_b)
    throw ValidationError("flatten: Fock indices out of range");
  return n * dims.dim_b + m;
}

inline std::pair<int, int> unflatten(const ModeDims& dims, int idx) {
  if (idx < 0 || idx >= dims.total())
    throw ValidationError("unflatten: flat index out of range");
  return {idx / dims.dim_b, idx % dims.dim_b};
}

// Pure two-mode state; amplitudes[flatten(n,m)] = c_{n,m}.
struct StateVector {
  ModeDims dims;
  Eigen::VectorXcd amps;

  double norm() const { return amps.norm(); }
};

// Mixed state. Mode dimensions are carried as a plain pair because density
// matrices also appear in shapes ModeDims cannot describe: 4x4 logical
// qubit-qubit states after projection (2 per mode) and single-mode reductions
// from the partial trace (dim_b = 1 marks "mode b traced out").
struct DensityMatrix {
  int dim_a;
  int dim_b;
  Eigen::MatrixXcd mat;

  static DensityMatrix from_pure(const StateVector& psi);
  double trace_real() const { return mat.trace().real(); }
  double hermiticity_error() const {
    return (mat - mat.adjoint()).cwiseAbs().maxCoeff();
  }
};

// Complex square matrix acting on the flattened two-mode space.
struct OperatorMatrix {
  ModeDims dims;
  Eigen::MatrixXcd mat;
  bool hermitian_hint = false;
};

// |n⟩_a|m⟩_b as a unit vector.
StateVector basis_state(const ModeDims& dims, int n, int m);

// Single-mode lowering operator embedded via identity on the other mode;
// ⟨n-1|a|n⟩ = √n. The truncated raising operator maps the top level to zero.
OperatorMatrix annihilation(const ModeDims& dims, Mode mode);
OperatorMatrix creation(const ModeDims& dims, Mode mode);

// Kronecker product with the convention
// kron(A,B)[(ia*rowsB + ib), (ja*colsB + jb)] = A(ia,ja) * B(ib,jb),
// so two-mode operators are kron(op_a, op_b) under the flat index above.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

// Reduced density matrix of the kept mode. Trace preserved exactly
// (plain summation identity, no renormalization).
DensityMatrix partial_trace(const DensityMatrix& rho, Mode keep);

// Local projection onto span{|0⟩,|2⟩} per mode followed by renormalization.
// Output is the 4x4 logical-qubit state with the mapping Fock |0⟩ -> logical
// |0⟩, Fock |2⟩ -> logical |1⟩, tensor order a then b. Throws NearZeroSupport
// when the projected weight is at or below eps_proj.
DensityMatrix project_qubit_qubit(const DensityMatrix& rho,
                                  double eps_proj = 1e-12);

}  // namespace kerr

#endif  // KERR_HILBERT_HPP
