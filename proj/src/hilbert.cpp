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

#include "kerr/hilbert.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace kerr {
namespace {

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  DensityMatrix rho;
  rho.dim_a = psi.dims.dim_a;
  rho.dim_b = psi.dims.dim_b;
  rho.mat = psi.amps * psi.amps.adjoint();
  return rho;
}

StateVector basis_state(const ModeDims& dims, int n, int m) {
  StateVector s{dims, Eigen::VectorXcd::Zero(dims.total())};
  s.amps(flatten(dims, n, m)) = 1.0;
  return s;
}

namespace {

// single-mode lowering matrix, dim x dim
Eigen::MatrixXcd lowering(int dim) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) m(n - 1, n) = std::sqrt(double(n));
  return m;
}

}  // namespace

OperatorMatrix annihilation(const ModeDims& dims, Mode mode) {
  Eigen::MatrixXcd ia = Eigen::MatrixXcd::Identity(dims.dim_a, dims.dim_a);
  Eigen::MatrixXcd ib = Eigen::MatrixXcd::Identity(dims.dim_b, dims.dim_b);
  Eigen::MatrixXcd full = (mode == Mode::a) ? kron(lowering(dims.dim_a), ib)
                                            : kron(ia, lowering(dims.dim_b));
  return OperatorMatrix{dims, std::move(full), false};
}

OperatorMatrix creation(const ModeDims& dims, Mode mode) {
  OperatorMatrix low = annihilation(dims, mode);
  return OperatorMatrix{dims, low.mat.adjoint(), false};
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  Eigen::MatrixXcd out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, Mode keep) {
  const int da = rho.dim_a;
  const int db = rho.dim_b;
  if (rho.mat.rows() != da * db || rho.mat.cols() != da * db)
    throw ValidationError("partial_trace: matrix shape does not match dims");

  DensityMatrix out;
  if (keep == Mode::a) {
    out.dim_a = da;
    out.dim_b = 1;
    out.mat = Eigen::MatrixXcd::Zero(da, da);
    for (int n = 0; n < da; ++n)
      for (int np = 0; np < da; ++np) {
        cxd sum = 0.0;
        for (int m = 0; m < db; ++m) sum += rho.mat(n * db + m, np * db + m);
        out.mat(n, np) = sum;
      }
  } else {
    out.dim_a = 1;
    out.dim_b = db;
    out.mat = Eigen::MatrixXcd::Zero(db, db);
    for (int m = 0; m < db; ++m)
      for (int mp = 0; mp < db; ++mp) {
        cxd sum = 0.0;
        for (int n = 0; n < da; ++n) sum += rho.mat(n * db + m, n * db + mp);
        out.mat(m, mp) = sum;
      }
  }
  return out;
}

DensityMatrix project_qubit_qubit(const DensityMatrix& rho, double eps_proj) {
  const int da = rho.dim_a;
  const int db = rho.dim_b;
  if (da < 3 || db < 3)
    throw ValidationError("project_qubit_qubit: needs Fock levels up to 2");
  if (rho.mat.rows() != da * db)
    throw ValidationError("project_qubit_qubit: matrix shape mismatch");

  // logical levels are Fock 0 and 2 in each mode
  const int levels[2] = {0, 2};
  DensityMatrix out;
  out.dim_a = 2;
  out.dim_b = 2;
  out.mat = Eigen::MatrixXcd(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int ip = 0; ip < 2; ++ip)
        for (int jp = 0; jp < 2; ++jp)
          out.mat(2 * i + j, 2 * ip + jp) =
              rho.mat(levels[i] * db + levels[j], levels[ip] * db + levels[jp]);

  double weight = out.mat.trace().real();
  if (weight <= eps_proj)
    throw NearZeroSupport("project_qubit_qubit: projected weight " +
                          fmt_g(weight) + " is at or below " +
                          fmt_g(eps_proj));
  out.mat /= weight;
  return out;
}

}  // namespace kerr
