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

#include "kerr/model.hpp"

#include <cmath>

namespace kerr {

void CouplerParams::validate() const {
  if (chi_a < 0.0 || chi_b < 0.0)
    throw ValidationError("CouplerParams: negative Kerr constant");
  if (kappa_a < 0.0 || kappa_b < 0.0)
    throw ValidationError("CouplerParams: negative damping rate");
  if (!std::isfinite(chi_a) || !std::isfinite(chi_b) ||
      !std::isfinite(kappa_a) || !std::isfinite(kappa_b) ||
      !std::isfinite(std::abs(epsilon)) || !std::isfinite(std::abs(alpha)))
    throw ValidationError("CouplerParams: non-finite parameter");
}

OperatorMatrix hamiltonian(const CouplerParams& params, const ModeDims& dims) {
  params.validate();
  const int total = dims.total();
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(total, total);

  // Kerr terms are diagonal: (chi/2) n(n-1) per mode
  for (int n = 0; n < dims.dim_a; ++n)
    for (int m = 0; m < dims.dim_b; ++m)
      H(flatten(dims, n, m), flatten(dims, n, m)) =
          0.5 * params.chi_a * n * (n - 1) + 0.5 * params.chi_b * m * (m - 1);

  const Eigen::MatrixXcd a = annihilation(dims, Mode::a).mat;
  const Eigen::MatrixXcd b = annihilation(dims, Mode::b).mat;
  const Eigen::MatrixXcd ad = a.adjoint();

  // pair-exchange coupling eps (a†)² b² + h.c. and the pump alpha a† + h.c.
  Eigen::MatrixXcd off = params.epsilon * (ad * ad * b * b) + params.alpha * ad;
  H += off + off.adjoint();

  return OperatorMatrix{dims, std::move(H), true};
}

std::vector<OperatorMatrix> collapse_operators(const CouplerParams& params,
                                               const ModeDims& dims) {
  params.validate();
  std::vector<OperatorMatrix> ops;
  if (params.kappa_a > 0.0) {
    OperatorMatrix c = annihilation(dims, Mode::a);
    c.mat *= std::sqrt(2.0 * params.kappa_a);
    ops.push_back(std::move(c));
  }
  if (params.kappa_b > 0.0) {
    OperatorMatrix c = annihilation(dims, Mode::b);
    c.mat *= std::sqrt(2.0 * params.kappa_b);
    ops.push_back(std::move(c));
  }
  return ops;
}

namespace {

// the closed-form solution is stated for real, nonnegative couplings
void require_real_couplings(const CouplerParams& params) {
  if (params.epsilon.imag() != 0.0 || params.alpha.imag() != 0.0)
    throw ValidationError(
        "analytic path: epsilon and alpha must be real");
  if (params.epsilon.real() < 0.0 || params.alpha.real() < 0.0)
    throw ValidationError(
        "analytic path: epsilon and alpha must be nonnegative");
}

}  // namespace

double effective_frequency(const CouplerParams& params) {
  require_real_couplings(params);
  double eps = params.epsilon.real();
  double alpha = params.alpha.real();
  return std::sqrt(alpha * alpha + 4.0 * eps * eps);
}

TruncatedAmplitudes analytic_amplitudes(const CouplerParams& params,
                                        double t) {
  require_real_couplings(params);
  double eps = params.epsilon.real();
  double alpha = params.alpha.real();
  if (eps == 0.0 && alpha == 0.0)
    throw DegenerateParams("analytic path: alpha = epsilon = 0");

  // keep omega2 as the plain sum (not omega*omega) so c20(0) = 1 bitwise
  double alpha2 = alpha * alpha;
  double eps4 = 4.0 * eps * eps;
  double omega2 = alpha2 + eps4;
  double omega = std::sqrt(omega2);
  double c = std::cos(omega * t);
  double s = std::sin(omega * t);

  TruncatedAmplitudes out;
  out.c20 = (alpha2 + eps4 * c) / omega2;
  out.c12 = 2.0 * eps * alpha * (c - 1.0) / omega2;
  out.c02 = cxd(0.0, -2.0 * eps * s / omega);
  return out;
}

StateVector truncated_to_full(const TruncatedAmplitudes& amps,
                              const ModeDims& dims) {
  StateVector s{dims, Eigen::VectorXcd::Zero(dims.total())};
  s.amps(flatten(dims, 2, 0)) = amps.c20;
  s.amps(flatten(dims, 1, 2)) = amps.c12;
  s.amps(flatten(dims, 0, 2)) = amps.c02;
  return s;
}

}  // namespace kerr
