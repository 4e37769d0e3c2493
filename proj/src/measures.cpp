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

#include "kerr/measures.hpp"

#include <algorithm>
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

const char* to_string(BellStateId id) {
  switch (id) {
    case BellStateId::B1: return "B1";
    case BellStateId::B2: return "B2";
    case BellStateId::B3: return "B3";
    case BellStateId::B4: return "B4";
    case BellStateId::B5: return "B5";
    case BellStateId::B6: return "B6";
    case BellStateId::P1: return "P1";
    case BellStateId::P2: return "P2";
  }
  throw ValidationError("to_string: unknown BellStateId");
}

BellStateId bell_id_from_string(const std::string& name) {
  for (auto id : {BellStateId::B1, BellStateId::B2, BellStateId::B3,
                  BellStateId::B4, BellStateId::B5, BellStateId::B6,
                  BellStateId::P1, BellStateId::P2})
    if (name == to_string(id)) return id;
  throw ValidationError("unknown state name '" + name + "'");
}

StateVector bell_state(BellStateId id, const ModeDims& dims) {
  if (dims.dim_a < 3 || dims.dim_b < 3)
    throw ValidationError("bell_state: needs Fock levels up to 2 per mode");

  // each state is (|first⟩ + phase |second⟩)/√2 over the resonant triple
  struct Spec {
    int n1, m1, n2, m2;
    cxd phase;
  };
  const cxd i(0.0, 1.0);
  Spec spec{};
  switch (id) {
    case BellStateId::B1: spec = {2, 0, 0, 2, i}; break;
    case BellStateId::B2: spec = {2, 0, 0, 2, -i}; break;
    case BellStateId::B3: spec = {2, 0, 1, 2, i}; break;
    case BellStateId::B4: spec = {2, 0, 1, 2, -i}; break;
    case BellStateId::B5: spec = {2, 0, 1, 2, 1.0}; break;
    case BellStateId::B6: spec = {2, 0, 1, 2, -1.0}; break;
    case BellStateId::P1: spec = {1, 2, 0, 2, i}; break;
    case BellStateId::P2: spec = {1, 2, 0, 2, -i}; break;
  }

  StateVector s{dims, Eigen::VectorXcd::Zero(dims.total())};
  const double w = 1.0 / std::sqrt(2.0);
  s.amps(flatten(dims, spec.n1, spec.m1)) = w;
  s.amps(flatten(dims, spec.n2, spec.m2)) = spec.phase * w;
  return s;
}

double pure_fidelity(const StateVector& psi, const StateVector& phi,
                     FidelityConvention convention) {
  if (!(psi.dims == phi.dims))
    throw ValidationError("pure_fidelity: dimension mismatch");
  double overlap = std::abs((psi.amps.adjoint() * phi.amps)(0));
  return convention == FidelityConvention::amplitude ? overlap
                                                     : overlap * overlap;
}

namespace {

// Hermitian PSD principal square root with the documented clamping rule.
Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m, const char* who) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) < -1e-8)
      throw NotPSD(std::string(who) + ": eigenvalue " + fmt_g(ev(k)) +
                   " below the -1e-8 clamp");
    if (ev(k) < 0.0) ev(k) = 0.0;
  }
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

double mixed_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.mat.rows() != sigma.mat.rows() || rho.dim_a != sigma.dim_a ||
      rho.dim_b != sigma.dim_b)
    throw ValidationError("mixed_fidelity: dimension mismatch");

  Eigen::MatrixXcd sr = psd_sqrt(rho.mat, "mixed_fidelity(rho)");
  Eigen::MatrixXcd inner = sr * sigma.mat * sr;
  inner = 0.5 * (inner + inner.adjoint().eval());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(inner);
  double fid = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    double ev = es.eigenvalues()(k);
    if (ev < -1e-8)
      throw NotPSD("mixed_fidelity: inner eigenvalue " + fmt_g(ev) +
                   " below the -1e-8 clamp");
    if (ev > 0.0) fid += std::sqrt(ev);
  }
  return std::min(fid, 1.0 + 1e-9);
}

std::vector<double> probabilities(
    const StateVector& psi, const std::vector<std::pair<int, int>>& targets) {
  std::vector<double> out;
  out.reserve(targets.size());
  for (auto [n, m] : targets)
    out.push_back(std::norm(psi.amps(flatten(psi.dims, n, m))));
  return out;
}

double entanglement_entropy(const StateVector& psi) {
  // coefficient matrix C(n, m) = c_{n,m}; Schmidt weights are its squared
  // singular values
  Eigen::MatrixXcd coeff = Eigen::Map<const Eigen::MatrixXcd>(
                               psi.amps.data(), psi.dims.dim_b,
                               psi.dims.dim_a)
                               .transpose();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(coeff);
  double entropy = 0.0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    double p = svd.singularValues()(k);
    p *= p;
    if (p > 0.0) entropy -= p * std::log2(p);
  }
  return entropy;
}

double entanglement_entropy_mixed_marginal(const DensityMatrix& rho,
                                           Mode side) {
  DensityMatrix marginal = partial_trace(rho, side);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(marginal.mat);
  double entropy = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    double p = es.eigenvalues()(k);
    if (p < -1e-10)
      throw NotPSD("marginal entropy: eigenvalue " + fmt_g(p) +
                   " below the -1e-10 clamp");
    if (p > 0.0) entropy -= p * std::log2(p);
  }
  return entropy;
}

CHSHReport chsh_violation(const DensityMatrix& rho_qq) {
  if (rho_qq.mat.rows() != 4 || rho_qq.mat.cols() != 4 || rho_qq.dim_a != 2 ||
      rho_qq.dim_b != 2)
    throw ValidationError("chsh_violation: expected a 4x4 two-qubit state");
  if (rho_qq.hermiticity_error() > 1e-8 ||
      std::abs(rho_qq.trace_real() - 1.0) > 1e-8)
    throw ValidationError("chsh_violation: input is not a density matrix");

  const cxd i(0.0, 1.0);
  Eigen::Matrix2cd sigma[3];
  sigma[0] << 0.0, 1.0, 1.0, 0.0;
  sigma[1] << 0.0, -i, i, 0.0;
  sigma[2] << 1.0, 0.0, 0.0, -1.0;

  CHSHReport rep;
  for (int n = 0; n < 3; ++n)
    for (int m = 0; m < 3; ++m) {
      Eigen::Matrix4cd op = kron(sigma[n], sigma[m]);
      rep.t_matrix(n, m) = (rho_qq.mat * op).trace().real();
    }

  Eigen::Matrix3d u = rep.t_matrix.transpose() * rep.t_matrix;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(u);
  // ascending from the solver; report descending
  for (int k = 0; k < 3; ++k) rep.u_eigenvalues[k] = es.eigenvalues()(2 - k);
  rep.m_value = rep.u_eigenvalues[0] + rep.u_eigenvalues[1];
  rep.n_value = std::max(0.0, rep.m_value - 1.0);
  rep.b_value = std::sqrt(rep.n_value);
  return rep;
}

TimeSeries truncation_fidelity_series(const std::vector<StateVector>& full,
                                      const CouplerParams& params,
                                      const TimeGrid& grid) {
  const std::vector<double> ts = grid.times();
  if (full.size() != ts.size())
    throw ValidationError(
        "truncation_fidelity_series: state count does not match the grid");

  TimeSeries series;
  series.columns = {"t", "one_minus_F"};
  series.rows.resize(ts.size());

#pragma omp parallel for schedule(static)
  for (long k = 0; k < static_cast<long>(ts.size()); ++k) {
    StateVector trunc =
        truncated_to_full(analytic_amplitudes(params, ts[k]), full[k].dims);
    double f = pure_fidelity(full[k], trunc, FidelityConvention::probability);
    series.rows[k] = {ts[k], 1.0 - f};
  }
  return series;
}

std::vector<double> fidelity_series(const std::vector<StateVector>& states,
                                    const StateVector& target,
                                    FidelityConvention convention) {
  std::vector<double> out(states.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < static_cast<long>(states.size()); ++k)
    out[k] = pure_fidelity(states[k], target, convention);
  return out;
}

std::vector<double> entropy_series(const std::vector<StateVector>& states) {
  std::vector<double> out(states.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < static_cast<long>(states.size()); ++k)
    out[k] = entanglement_entropy(states[k]);
  return out;
}

}  // namespace kerr
