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

#include "kerr/evolve.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace kerr {
namespace {

// %g rendering for diagnostics; std::to_string flattens small magnitudes
// to "0.000000".
std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::vector<double> TimeGrid::times() const {
  std::vector<double> out(n_steps + 1);
  double dt = (t_end - t_start) / n_steps;
  for (int k = 0; k <= n_steps; ++k) out[k] = t_start + k * dt;
  out.back() = t_end;
  return out;
}

UnitaryPropagator make_propagator(const OperatorMatrix& H) {
  double asym = (H.mat - H.mat.adjoint()).cwiseAbs().maxCoeff();
  double scale = H.mat.cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale)
    throw NotHermitian("make_propagator: max|H - H^dag| = " + fmt_g(asym));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.mat);
  if (es.info() != Eigen::Success)
    throw EigendecompositionFailed("make_propagator: eigensolver failed");
  return UnitaryPropagator{H.dims, es.eigenvalues(), es.eigenvectors()};
}

std::vector<StateVector> evolve_pure(const UnitaryPropagator& prop,
                                     const StateVector& psi0,
                                     const TimeGrid& grid) {
  if (!(psi0.dims == prop.dims))
    throw ValidationError("evolve_pure: state and propagator dims differ");

  const Eigen::VectorXcd coeffs = prop.eigenvectors.adjoint() * psi0.amps;
  const std::vector<double> ts = grid.times();
  std::vector<StateVector> out(ts.size(), StateVector{prop.dims, {}});

#pragma omp parallel for schedule(static)
  for (long k = 0; k < static_cast<long>(ts.size()); ++k) {
    if (ts[k] == 0.0) {
      out[k].amps = psi0.amps;  // U(0) is the identity, exactly
      continue;
    }
    Eigen::VectorXcd phased =
        (cxd(0.0, -1.0) * prop.eigenvalues.array() * ts[k]).exp() *
        coeffs.array();
    out[k].amps = prop.eigenvectors * phased;
  }
  return out;
}

Eigen::MatrixXcd liouvillian(const Eigen::MatrixXcd& H,
                             const std::vector<Eigen::MatrixXcd>& collapse) {
  const Eigen::Index d = H.rows();
  if (H.cols() != d) throw ValidationError("liouvillian: H not square");
  for (const auto& c : collapse)
    if (c.rows() != d || c.cols() != d)
      throw ValidationError("liouvillian: collapse operator shape mismatch");

  Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(d, d);
  const cxd mi(0.0, -1.0);
  Eigen::MatrixXcd L =
      mi * (kron(eye, H) - kron(H.transpose(), eye));
  for (const auto& c : collapse) {
    Eigen::MatrixXcd ctc = c.adjoint() * c;
    L += kron(c.conjugate(), c);
    L -= 0.5 * kron(eye, ctc);
    L -= 0.5 * kron(ctc.transpose(), eye);
  }
  return L;
}

Eigen::MatrixXcd liouvillian(const OperatorMatrix& H,
                             const std::vector<OperatorMatrix>& collapse) {
  std::vector<Eigen::MatrixXcd> raw;
  raw.reserve(collapse.size());
  for (const auto& c : collapse) {
    if (!(c.dims == H.dims))
      throw ValidationError("liouvillian: collapse dims differ from H");
    raw.push_back(c.mat);
  }
  return liouvillian(H.mat, raw);
}

namespace {

// right-hand side of the master equation, evaluated directly on the d x d
// density matrix (cheaper than applying the d^2 x d^2 superoperator)
struct LindbladRhs {
  const Eigen::MatrixXcd& H;
  const std::vector<Eigen::MatrixXcd>& collapse;
  std::vector<Eigen::MatrixXcd> ctc;  // precomputed C_k^dag C_k

  LindbladRhs(const Eigen::MatrixXcd& h,
              const std::vector<Eigen::MatrixXcd>& c)
      : H(h), collapse(c) {
    ctc.reserve(c.size());
    for (const auto& op : c) ctc.push_back(op.adjoint() * op);
  }

  Eigen::MatrixXcd operator()(const Eigen::MatrixXcd& rho) const {
    const cxd mi(0.0, -1.0);
    Eigen::MatrixXcd out = mi * (H * rho - rho * H);
    for (size_t k = 0; k < collapse.size(); ++k) {
      out += collapse[k] * rho * collapse[k].adjoint();
      out -= 0.5 * (ctc[k] * rho + rho * ctc[k]);
    }
    return out;
  }
};

// weighted rms of the embedded error estimate; <= 1 means accept
double error_norm(const Eigen::MatrixXcd& err, const Eigen::MatrixXcd& y0,
                  const Eigen::MatrixXcd& y1, double abs_tol, double rel_tol) {
  double sum = 0.0;
  const Eigen::Index n = err.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    double scale =
        abs_tol + rel_tol * std::max(std::abs(*(y0.data() + i)),
                                     std::abs(*(y1.data() + i)));
    double e = std::abs(*(err.data() + i)) / scale;
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(n));
}

// Dormand-Prince 5(4) pair
class DormandPrince {
 public:
  DormandPrince(const LindbladRhs& rhs, Eigen::MatrixXcd y, double t,
                const MasterOptions& opts, double h_min, double h0,
                double h_max)
      : rhs_(rhs),
        y_(std::move(y)),
        t_(t),
        opts_(opts),
        h_min_(h_min),
        h_max_(h_max),
        h_(h0),
        k1_(rhs_(y_)) {}

  // advance to exactly t_target, taking as many internal steps as needed
  void advance_to(double t_target, MasterDiagnostics& diag, double trace0) {
    while (t_ < t_target) {
      double remaining = t_target - t_;
      // below roundoff of the endpoint itself: snap instead of stepping
      if (remaining <= 16.0 * std::numeric_limits<double>::epsilon() *
                           std::max(std::abs(t_), std::abs(t_target))) {
        t_ = t_target;
        break;
      }
      step_once(std::min(h_, remaining), diag, trace0);
    }
  }

  const Eigen::MatrixXcd& state() const { return y_; }

 private:
  // one attempted step of size h; returns true when accepted
  bool step_once(double h, MasterDiagnostics& diag, double trace0) {
    const Eigen::MatrixXcd k2 = rhs_(y_ + h * (a21 * k1_));
    const Eigen::MatrixXcd k3 = rhs_(y_ + h * (a31 * k1_ + a32 * k2));
    const Eigen::MatrixXcd k4 =
        rhs_(y_ + h * (a41 * k1_ + a42 * k2 + a43 * k3));
    const Eigen::MatrixXcd k5 =
        rhs_(y_ + h * (a51 * k1_ + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::MatrixXcd k6 = rhs_(
        y_ + h * (a61 * k1_ + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    Eigen::MatrixXcd y5 =
        y_ + h * (b1 * k1_ + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Eigen::MatrixXcd k7 = rhs_(y5);

    Eigen::MatrixXcd err = h * (e1 * k1_ + e3 * k3 + e4 * k4 + e5 * k5 +
                                e6 * k6 + e7 * k7);
    double norm = error_norm(err, y_, y5, opts_.abs_tol, opts_.rel_tol);

    double factor = 0.9 * std::pow(std::max(norm, 1e-10), -0.2);
    factor = std::clamp(factor, 0.2, 5.0);

    if (norm <= 1.0) {
      t_ += h;
      diag.max_hermiticity_drift = std::max(
          diag.max_hermiticity_drift,
          (y5 - y5.adjoint().eval()).cwiseAbs().maxCoeff());
      y_ = 0.5 * (y5 + y5.adjoint().eval());
      diag.max_trace_drift = std::max(
          diag.max_trace_drift, std::abs(y_.trace().real() - trace0));
      ++diag.steps_accepted;
      k1_ = rhs_(y_);  // symmetrization moved y off k7, so refresh
      h_ = std::min(h * factor, h_max_);
      return true;
    }

    ++diag.steps_rejected;
    double h_new = h * factor;
    if (h_new < h_min_)
      throw StepSizeTooLarge(
          "integrate: error tolerance unreachable at the minimum step " +
          fmt_g(h_min_));
    h_ = h_new;
    return false;
  }

  // Dormand-Prince coefficients
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0,
                          a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                          a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                          a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                          a65 = -5103.0 / 18656.0;
  static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0,
                          b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                          b6 = 11.0 / 84.0;
  // difference between the 5th and the embedded 4th order weights
  static constexpr double e1 = 35.0 / 384.0 - 5179.0 / 57600.0;
  static constexpr double e3 = 500.0 / 1113.0 - 7571.0 / 16695.0;
  static constexpr double e4 = 125.0 / 192.0 - 393.0 / 640.0;
  static constexpr double e5 = -2187.0 / 6784.0 + 92097.0 / 339200.0;
  static constexpr double e6 = 11.0 / 84.0 - 187.0 / 2100.0;
  static constexpr double e7 = -1.0 / 40.0;

  const LindbladRhs& rhs_;
  Eigen::MatrixXcd y_;
  double t_;
  const MasterOptions& opts_;
  double h_min_;
  double h_max_;
  double h_;
  Eigen::MatrixXcd k1_;
};

MasterEvolution integrate_master(const Eigen::MatrixXcd& H,
                                 const std::vector<Eigen::MatrixXcd>& collapse,
                                 const Eigen::MatrixXcd& rho0,
                                 const TimeGrid& grid,
                                 const MasterOptions& opts) {
  LindbladRhs rhs(H, collapse);
  const std::vector<double> ts = grid.times();
  const double span = grid.t_end - grid.t_start;
  const double h_min = opts.min_step_fraction * span;
  const double trace0 = rho0.trace().real();

  MasterEvolution out;
  out.states.reserve(ts.size());
  out.states.push_back(0.5 * (rho0 + rho0.adjoint().eval()));

  DormandPrince stepper(rhs, out.states.front(), ts.front(), opts, h_min,
                        span / grid.n_steps, span);
  for (size_t k = 1; k < ts.size(); ++k) {
    stepper.advance_to(ts[k], out.diag, trace0);
    out.states.push_back(stepper.state());
  }
  return out;
}

MasterEvolution spectral_master(const Eigen::MatrixXcd& H,
                                const std::vector<Eigen::MatrixXcd>& collapse,
                                const Eigen::MatrixXcd& rho0,
                                const TimeGrid& grid) {
  const Eigen::Index d = H.rows();
  const Eigen::Index n = d * d;
  Eigen::MatrixXcd L = liouvillian(H, collapse);

  Eigen::VectorXcd evals(n);
  Eigen::MatrixXcd vr(n, n);
  lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'V', static_cast<lapack_int>(n), L.data(),
      static_cast<lapack_int>(n), evals.data(), nullptr, 1, vr.data(),
      static_cast<lapack_int>(n));
  if (info != 0)
    throw EigendecompositionFailed(
        "spectral: eigenvalue iteration failed, info = " +
        std::to_string(info));

  // cheap conditioning estimate from the LU pivots of the eigenvector
  // matrix; a defective L shows up as a (near-)singular eigenbasis
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(vr);
  Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
  double rcond = pivots.minCoeff() / pivots.maxCoeff();
  if (!(rcond > 1e-6))
    throw EigendecompositionFailed(
        "spectral: eigenbasis is numerically singular (rcond estimate " +
        fmt_g(rcond) + "); L is defective within tolerance");

  Eigen::VectorXcd stacked = Eigen::Map<const Eigen::VectorXcd>(rho0.data(), n);
  Eigen::VectorXcd y0 = lu.solve(stacked);

  const std::vector<double> ts = grid.times();
  Eigen::MatrixXcd modes(n, ts.size());
  for (size_t k = 0; k < ts.size(); ++k)
    modes.col(k) = (evals.array() * ts[k]).exp() * y0.array();

  Eigen::MatrixXcd recon = vr * modes;  // one gemm covers the whole grid

  MasterEvolution out;
  out.states.reserve(ts.size());
  const double trace0 = rho0.trace().real();
  for (size_t k = 0; k < ts.size(); ++k) {
    Eigen::MatrixXcd rho = Eigen::Map<const Eigen::MatrixXcd>(
        recon.col(k).data(), d, d);
    out.diag.max_hermiticity_drift =
        std::max(out.diag.max_hermiticity_drift,
                 (rho - rho.adjoint().eval()).cwiseAbs().maxCoeff());
    rho = 0.5 * (rho + rho.adjoint().eval());
    out.diag.max_trace_drift = std::max(
        out.diag.max_trace_drift, std::abs(rho.trace().real() - trace0));
    out.states.push_back(std::move(rho));
  }
  return out;
}

}  // namespace

MasterEvolution evolve_master(const Eigen::MatrixXcd& H,
                              const std::vector<Eigen::MatrixXcd>& collapse,
                              const Eigen::MatrixXcd& rho0,
                              const TimeGrid& grid,
                              const MasterOptions& opts) {
  if (H.rows() != H.cols() || rho0.rows() != H.rows() ||
      rho0.cols() != H.cols())
    throw ValidationError("evolve_master: shape mismatch");
  if (opts.method == MasterMethod::spectral)
    return spectral_master(H, collapse, rho0, grid);
  return integrate_master(H, collapse, rho0, grid, opts);
}

MasterEvolution evolve_master(const OperatorMatrix& H,
                              const std::vector<OperatorMatrix>& collapse,
                              const DensityMatrix& rho0, const TimeGrid& grid,
                              const MasterOptions& opts) {
  std::vector<Eigen::MatrixXcd> raw;
  raw.reserve(collapse.size());
  for (const auto& c : collapse) raw.push_back(c.mat);
  return evolve_master(H.mat, raw, rho0.mat, grid, opts);
}

}  // namespace kerr
