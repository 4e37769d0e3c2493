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

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "kerr/evolve.hpp"
#include "kerr/model.hpp"
#include "kerr/reference.hpp"

using namespace kerr;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {
constexpr double kPi = std::numbers::pi;

CouplerParams weak_pump_params() {
  CouplerParams p;
  p.chi_a = 25.0;
  p.chi_b = 25.0;
  p.epsilon = kPi / 25.0;
  p.alpha = kPi / 25.0;
  return p;
}

StateVector random_state(ModeDims dims, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  StateVector s{dims, VectorXcd(dims.total())};
  for (int i = 0; i < dims.total(); ++i) s.amps(i) = cxd(g(rng), g(rng));
  s.amps /= s.amps.norm();
  return s;
}

MatrixXcd random_hermitian(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cxd(g(rng), g(rng));
  return 0.5 * (m + MatrixXcd(m.adjoint()));
}

MatrixXcd random_density(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cxd(g(rng), g(rng));
  MatrixXcd rho = m * m.adjoint();
  return rho / rho.trace().real();
}
}  // namespace

TEST_CASE("zero hamiltonian gives the identity propagator") {
  ModeDims d(3, 3);
  OperatorMatrix H{d, MatrixXcd::Zero(9, 9), true};
  UnitaryPropagator prop = make_propagator(H);
  StateVector psi = random_state(d, 7);
  TimeGrid grid{0.0, 5.0, 4};
  auto out = evolve_pure(prop, psi, grid);
  REQUIRE(out.size() == 5);
  for (const auto& s : out) CHECK((s.amps - psi.amps).norm() < 1e-14);
}

TEST_CASE("diagonal hamiltonian applies pure phases") {
  // alpha = epsilon = 0: |2,0> picks up exp(-i chi_a t), |0,3> exp(-i 3 chi_b t)
  CouplerParams p;
  p.chi_a = 25.0;
  p.chi_b = 7.0;
  ModeDims d(4, 4);
  UnitaryPropagator prop = make_propagator(hamiltonian(p, d));

  SUBCASE("single Kerr phase on |2,0>, E = chi_a") {
    TimeGrid grid{0.0, 0.1, 1};
    auto out = evolve_pure(prop, basis_state(d, 2, 0), grid);
    cxd amp = out[1].amps(flatten(d, 2, 0));
    CHECK(amp.real() == doctest::Approx(-0.80114361554693371).epsilon(1e-12));
    CHECK(amp.imag() == doctest::Approx(-0.59847214410395649).epsilon(1e-12));
  }
  SUBCASE("three-photon phase on |0,3>, E = 3 chi_b") {
    TimeGrid grid{0.0, 0.05, 1};
    auto out = evolve_pure(prop, basis_state(d, 0, 3), grid);
    cxd amp = out[1].amps(flatten(d, 0, 3));
    CHECK(amp.real() == doctest::Approx(0.49757104789172699).epsilon(1e-12));
    CHECK(amp.imag() == doctest::Approx(-0.86742322559401689).epsilon(1e-12));
  }
}

TEST_CASE("propagator reconstruction and unitarity") {
  CouplerParams p = weak_pump_params();
  ModeDims d(6, 6);
  OperatorMatrix H = hamiltonian(p, d);
  UnitaryPropagator prop = make_propagator(H);

  MatrixXcd V = prop.eigenvectors;
  MatrixXcd recon =
      V * prop.eigenvalues.asDiagonal().toDenseMatrix().cast<cxd>() *
      V.adjoint();
  double scale = H.mat.cwiseAbs().maxCoeff();
  CHECK((recon - H.mat).cwiseAbs().maxCoeff() < 1e-10 * scale);
  CHECK((V.adjoint() * V - MatrixXcd::Identity(36, 36)).cwiseAbs().maxCoeff() <
        1e-10);
}

TEST_CASE("norm and energy conservation on random states") {
  CouplerParams p = weak_pump_params();
  ModeDims d(6, 6);
  OperatorMatrix H = hamiltonian(p, d);
  UnitaryPropagator prop = make_propagator(H);
  TimeGrid grid{0.0, 50.0, 37};
  for (unsigned seed : {11u, 12u, 13u}) {
    StateVector psi = random_state(d, seed);
    double e0 = (psi.amps.adjoint() * H.mat * psi.amps)(0).real();
    auto out = evolve_pure(prop, psi, grid);
    for (const auto& s : out) {
      CHECK(std::abs(s.norm() - 1.0) < 1e-12);
      double e = (s.amps.adjoint() * H.mat * s.amps)(0).real();
      CHECK(std::abs(e - e0) < 1e-10 * std::max(1.0, std::abs(e0)));
    }
  }
}

TEST_CASE("stationary state stays put") {
  CouplerParams p = weak_pump_params();
  ModeDims d(5, 5);
  OperatorMatrix H = hamiltonian(p, d);
  UnitaryPropagator prop = make_propagator(H);
  // take an exact eigenvector from the factorization itself
  StateVector psi{d, prop.eigenvectors.col(3)};
  TimeGrid grid{0.0, 20.0, 10};
  for (const auto& s : evolve_pure(prop, psi, grid)) {
    CHECK(std::abs(std::abs((psi.amps.adjoint() * s.amps)(0)) - 1.0) < 1e-12);
  }
}

TEST_CASE("non-Hermitian input is rejected") {
  ModeDims d(3, 3);
  MatrixXcd m = random_hermitian(9, 21);
  m(0, 1) += cxd(1e-3, 0.0);  // breaks the adjoint symmetry on one element
  CHECK_THROWS_AS(make_propagator(OperatorMatrix{d, m, true}), NotHermitian);
}

TEST_CASE("evolve_pure matches the serial reference") {
  CouplerParams p = weak_pump_params();
  ModeDims d(6, 6);
  UnitaryPropagator prop = make_propagator(hamiltonian(p, d));
  StateVector psi = basis_state(d, 2, 0);
  TimeGrid grid{0.0, 10.0, 64};
  auto fast = evolve_pure(prop, psi, grid);
  auto slow = reference::evolve_pure(prop, psi, grid);
  REQUIRE(fast.size() == slow.size());
  for (size_t k = 0; k < fast.size(); ++k)
    CHECK((fast[k].amps - slow[k].amps).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("liouvillian matches direct evaluation of the master equation") {
  // pins the column-stacking convention: stack(rho) concatenates columns
  ModeDims d(3, 3);
  CouplerParams p = weak_pump_params();
  p.kappa_a = 0.013;
  p.kappa_b = 0.005;
  OperatorMatrix H = hamiltonian(p, d);
  auto collapse = collapse_operators(p, d);
  MatrixXcd L = liouvillian(H, collapse);
  REQUIRE(L.rows() == 81);
  REQUIRE(L.cols() == 81);

  std::vector<MatrixXcd> raw_c;
  for (const auto& c : collapse) raw_c.push_back(c.mat);

  for (unsigned seed : {31u, 32u, 33u, 34u}) {
    MatrixXcd rho = random_density(9, seed);
    MatrixXcd rhs = reference::lindblad_rhs(H.mat, raw_c, rho);
    VectorXcd stacked = Eigen::Map<const VectorXcd>(rho.data(), 81);
    VectorXcd via_l = L * stacked;
    MatrixXcd via_l_mat = Eigen::Map<const MatrixXcd>(via_l.data(), 9, 9);
    CHECK((via_l_mat - rhs).cwiseAbs().maxCoeff() < 1e-13);
    // Lindblad generators kill the trace
    CHECK(std::abs(via_l_mat.trace()) < 1e-13);
  }
}

TEST_CASE("zero liouvillian for empty collapse list and H = 0") {
  ModeDims d(3, 3);
  OperatorMatrix H{d, MatrixXcd::Zero(9, 9), true};
  MatrixXcd L = liouvillian(H, {});
  CHECK(L.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single-mode amplitude decay oracle") {
  // d = 2, H = 0, C = sqrt(2 kappa) sigma_minus: <n>(t) = exp(-2 kappa t)
  const double kappa = 0.3;
  MatrixXcd H = MatrixXcd::Zero(2, 2);
  MatrixXcd C = MatrixXcd::Zero(2, 2);
  C(0, 1) = std::sqrt(2.0 * kappa);
  MatrixXcd rho0 = MatrixXcd::Zero(2, 2);
  rho0(1, 1) = 1.0;
  TimeGrid grid{0.0, 1.7, 17};

  for (MasterMethod method : {MasterMethod::integrate, MasterMethod::spectral}) {
    CAPTURE(static_cast<int>(method));
    MasterOptions opts;
    opts.method = method;
    MasterEvolution ev = evolve_master(H, {C}, rho0, grid, opts);
    REQUIRE(ev.states.size() == 18);
    for (size_t k = 0; k < ev.states.size(); ++k) {
      double t = grid.times()[k];
      double n = ev.states[k](1, 1).real();
      CHECK(std::abs(n - std::exp(-2.0 * kappa * t)) < 1e-7);
    }
    // frozen endpoint: exp(-1.02)
    CHECK(ev.states.back()(1, 1).real() ==
          doctest::Approx(0.36059494017307830).epsilon(1e-7));
  }
}

TEST_CASE("closed system master equation equals pure evolution") {
  CouplerParams p = weak_pump_params();
  ModeDims d(4, 4);
  OperatorMatrix H = hamiltonian(p, d);
  StateVector psi0 = basis_state(d, 2, 0);
  TimeGrid grid{0.0, 4.0, 16};

  UnitaryPropagator prop = make_propagator(H);
  auto pure = evolve_pure(prop, psi0, grid);

  DensityMatrix rho0 = DensityMatrix::from_pure(psi0);
  for (MasterMethod method : {MasterMethod::integrate, MasterMethod::spectral}) {
    CAPTURE(static_cast<int>(method));
    MasterOptions opts;
    opts.method = method;
    auto ev = evolve_master(H, {}, rho0, grid, opts);
    REQUIRE(ev.states.size() == pure.size());
    for (size_t k = 0; k < pure.size(); ++k) {
      MatrixXcd proj = pure[k].amps * pure[k].amps.adjoint();
      CHECK((ev.states[k] - proj).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("integrate and spectral methods agree on a damped coupler") {
  CouplerParams p;
  p.chi_a = 10.0;
  p.chi_b = 10.0;
  p.epsilon = 0.25;
  p.alpha = 0.5;
  p.kappa_a = 0.02;
  p.kappa_b = 0.02;
  ModeDims d(3, 3);
  OperatorMatrix H = hamiltonian(p, d);
  auto collapse = collapse_operators(p, d);
  DensityMatrix rho0 = DensityMatrix::from_pure(basis_state(d, 2, 0));
  TimeGrid grid{0.0, 6.0, 20};

  MasterOptions oi;
  oi.method = MasterMethod::integrate;
  MasterOptions os;
  os.method = MasterMethod::spectral;
  auto a = evolve_master(H, collapse, rho0, grid, oi);
  auto b = evolve_master(H, collapse, rho0, grid, os);
  for (size_t k = 0; k < a.states.size(); ++k)
    CHECK((a.states[k] - b.states[k]).cwiseAbs().maxCoeff() < 1e-6);

  // physicality along the way
  CHECK(a.diag.max_trace_drift < 1e-6);
  for (const auto& s : a.states) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(s);
    CHECK(es.eigenvalues().minCoeff() > -1e-6);
    CHECK((s * s).trace().real() < 1.0 + 1e-8);
  }
}

TEST_CASE("step-size floor raises instead of silently degrading") {
  const double kappa = 0.5;
  MatrixXcd H = MatrixXcd::Zero(2, 2);
  H(1, 1) = 50.0;
  MatrixXcd C = MatrixXcd::Zero(2, 2);
  C(0, 1) = std::sqrt(2.0 * kappa);
  MatrixXcd rho0 = MatrixXcd::Zero(2, 2);
  rho0(1, 1) = 1.0;
  TimeGrid grid{0.0, 10.0, 4};

  MasterOptions opts;
  opts.method = MasterMethod::integrate;
  opts.rel_tol = 1e-13;
  opts.abs_tol = 1e-16;
  opts.min_step_fraction = 0.3;  // floor so coarse the tolerance is unreachable
  CHECK_THROWS_AS(evolve_master(H, {C}, rho0, grid, opts), StepSizeTooLarge);
}

TEST_CASE("defective liouvillian rejected by the spectral method") {
  // Driven two-level system at its exceptional point: H = (Omega/2) sigma_x,
  // C = sqrt(Gamma) sigma_minus with Omega = Gamma/4 makes two relaxation
  // eigenvalues coalesce into a Jordan block, so L has no eigenbasis.
  MatrixXcd H = MatrixXcd::Zero(2, 2);
  H(0, 1) = 0.5;
  H(1, 0) = 0.5;  // Omega = 1
  MatrixXcd C = MatrixXcd::Zero(2, 2);
  C(0, 1) = 2.0;  // Gamma = 4
  MatrixXcd rho0 = MatrixXcd::Zero(2, 2);
  rho0(1, 1) = 1.0;
  TimeGrid grid{0.0, 1.0, 4};

  MasterOptions opts;
  opts.method = MasterMethod::spectral;
  CHECK_THROWS_AS(evolve_master(H, {C}, rho0, grid, opts),
                  EigendecompositionFailed);

  // the integrate method handles the same system fine
  opts.method = MasterMethod::integrate;
  MasterEvolution ev = evolve_master(H, {C}, rho0, grid, opts);
  CHECK(ev.diag.max_trace_drift < 1e-6);
}

TEST_CASE("time grid validation and layout") {
  CHECK_THROWS_AS(TimeGrid(1.0, 0.5, 10), ValidationError);
  CHECK_THROWS_AS(TimeGrid(0.0, 1.0, 0), ValidationError);
  TimeGrid g{0.0, 2.0, 4};
  auto t = g.times();
  REQUIRE(t.size() == 5);
  CHECK(t.front() == 0.0);
  CHECK(t.back() == 2.0);
  CHECK(t[2] == doctest::Approx(1.0).epsilon(1e-15));
}
