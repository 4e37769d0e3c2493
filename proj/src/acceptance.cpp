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

#include "kerr/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "kerr/evolve.hpp"
#include "kerr/hilbert.hpp"
#include "kerr/measures.hpp"
#include "kerr/model.hpp"
#include "kerr/scenario.hpp"

namespace kerr {
namespace {

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename A, typename... Args>
std::string strf(const char* f, A a, Args... args) {
  char buf[320];
  std::snprintf(buf, sizeof buf, f, a, args...);
  return std::string(buf);
}

// Collects the per-quantity verdict lines of one criterion.
struct Checker {
  std::vector<std::string> lines;
  bool ok = true;

  void check(bool pass, const std::string& text) {
    lines.push_back(text + (pass ? "  [ok]" : "  [FAIL]"));
    ok = ok && pass;
  }
  void info(const std::string& text) { lines.push_back(text); }
};

CouplerParams weak_params() {
  CouplerParams p;
  p.chi_a = 25.0;
  p.chi_b = 25.0;
  p.alpha = kPi / 25.0;
  p.epsilon = kPi / 25.0;
  return p;
}

CouplerParams strong_params() {
  CouplerParams p = weak_params();
  p.epsilon = kPi / 5.0;
  return p;
}

std::vector<StateVector> pumped_trajectory(const CouplerParams& p,
                                           const ModeDims& dims,
                                           const TimeGrid& grid, bool negate) {
  OperatorMatrix h = hamiltonian(p, dims);
  if (negate) h.mat = -h.mat;
  return evolve_pure(make_propagator(h), basis_state(dims, 2, 0), grid);
}

StateVector random_state(const ModeDims& dims, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  StateVector s{dims, Eigen::VectorXcd(dims.total())};
  for (int i = 0; i < dims.total(); ++i) s.amps(i) = cxd(g(rng), g(rng));
  s.amps /= s.amps.norm();
  return s;
}

Eigen::Vector4cd random_two_qubit(std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Vector4cd v;
  for (int i = 0; i < 4; ++i) v(i) = cxd(g(rng), g(rng));
  v /= v.norm();
  return v;
}

Eigen::Matrix2cd random_unitary(std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Matrix2cd m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = cxd(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::Matrix2cd> qr(m);
  return qr.householderQ();
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& u, const Eigen::Matrix2cd& v) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = u(i, j) * v;
  return out;
}

DensityMatrix qq_density(const Eigen::Matrix4cd& mat) {
  DensityMatrix rho;
  rho.dim_a = 2;
  rho.dim_b = 2;
  rho.mat = mat;
  return rho;
}

// Independent concurrence for pure two-qubit states: C = |<psi|sy x sy|psi*>|.
double concurrence(const Eigen::Vector4cd& psi) {
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  return std::abs((psi.adjoint() * yy * psi.conjugate())(0));
}

void crit_truncation(const AcceptanceOptions& o, Checker& c) {
  auto t0 = Clock::now();
  CouplerParams p = weak_params();
  ModeDims dims(10, 10);
  TimeGrid grid(0.0, 50.0, 2000);
  auto states = pumped_trajectory(p, dims, grid, o.negate_hamiltonian);
  TimeSeries ts = truncation_fidelity_series(states, p, grid);
  double peak = 0.0;
  double peak_short = 0.0;
  for (const auto& row : ts.rows) {
    peak = std::max(peak, row[1]);
    if (row[0] <= 2.0) peak_short = std::max(peak_short, row[1]);
  }
  c.check(peak >= 1e-4 && peak <= 2e-3,
          strf("max 1-F over t in [0,50]: %.3e, required within [1e-4, 2e-3]",
               peak));
  c.info(strf("max 1-F over the sub-window t in [0,2]: %.3e", peak_short));
  double secs = seconds_since(t0);
  c.check(secs < 5.0, strf("runtime %.2f s, required < 5 s", secs));
}

void crit_analytic(const AcceptanceOptions& o, Checker& c) {
  CouplerParams p = weak_params();
  const double eps = p.epsilon.real();
  const double al = p.alpha.real();
  const cxd iu(0.0, 1.0);

  std::mt19937 rng(40912);
  std::uniform_real_distribution<double> ut(0.05, 50.0);
  const double h = 1e-6;
  double max_resid = 0.0;
  for (int k = 0; k < 40; ++k) {
    double t = ut(rng);
    TruncatedAmplitudes cm = analytic_amplitudes(p, t - h);
    TruncatedAmplitudes cp = analytic_amplitudes(p, t + h);
    TruncatedAmplitudes c0 = analytic_amplitudes(p, t);
    cxd d20 = (cp.c20 - cm.c20) / (2.0 * h);
    cxd d12 = (cp.c12 - cm.c12) / (2.0 * h);
    cxd d02 = (cp.c02 - cm.c02) / (2.0 * h);
    max_resid = std::max(
        {max_resid, std::abs(iu * d20 - 2.0 * eps * c0.c02),
         std::abs(iu * d12 - al * c0.c02),
         std::abs(iu * d02 - (2.0 * eps * c0.c20 + al * c0.c12))});
  }
  c.check(max_resid <= 1e-8,
          strf("max equation-of-motion residual (central differences, 40 "
               "random times): %.3e, required <= 1e-8",
               max_resid));

  ModeDims dims(10, 10);
  TimeGrid grid(0.0, 50.0, 2000);
  auto states = pumped_trajectory(p, dims, grid, o.negate_hamiltonian);
  const std::vector<double> times = grid.times();
  double min_f = 1.0;
  double at_t = 0.0;
  for (size_t k = 0; k < states.size(); ++k) {
    StateVector psi_a = truncated_to_full(analytic_amplitudes(p, times[k]), dims);
    double f =
        pure_fidelity(states[k], psi_a, FidelityConvention::amplitude);
    if (f < min_f) {
      min_f = f;
      at_t = times[k];
    }
  }
  c.check(min_f >= 1.0 - 1e-3,
          strf("min amplitude fidelity, numeric vs embedded analytic state "
               "over the grid: %.6f (at t = %.3f), required >= 0.999",
               min_f, at_t));
}

void crit_normalization(const AcceptanceOptions&, Checker& c) {
  std::mt19937 rng(7301);
  std::uniform_real_distribution<double> upar(0.05, 2.0);
  std::uniform_real_distribution<double> utime(0.0, 100.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    CouplerParams p;
    p.chi_a = 25.0;
    p.chi_b = 25.0;
    p.alpha = upar(rng);
    p.epsilon = upar(rng);
    for (int k = 0; k < 1000; ++k) {
      TruncatedAmplitudes a = analytic_amplitudes(p, utime(rng));
      double s = std::norm(a.c20) + std::norm(a.c12) + std::norm(a.c02);
      worst = std::max(worst, std::abs(s - 1.0));
    }
  }
  c.check(worst <= 1e-12,
          strf("max | |c20|^2+|c12|^2+|c02|^2 - 1 | over 100 parameter pairs "
               "x 1000 times: %.3e, required <= 1e-12",
               worst));
}

// Scans one trajectory for times where the squared overlap with any of the
// four listed targets exceeds 0.99, recording the entropy there.
struct FormationScan {
  int bell_points = 0;
  int product_points = 0;
  double min_bell_e = std::numeric_limits<double>::infinity();
  double max_bell_e = -std::numeric_limits<double>::infinity();
  double max_product_e = -std::numeric_limits<double>::infinity();
};

FormationScan scan_formation(const std::vector<StateVector>& states,
                             const ModeDims& dims) {
  StateVector b1 = bell_state(BellStateId::B1, dims);
  StateVector b2 = bell_state(BellStateId::B2, dims);
  StateVector p1 = bell_state(BellStateId::P1, dims);
  StateVector p2 = bell_state(BellStateId::P2, dims);
  FormationScan scan;
  for (const StateVector& psi : states) {
    double fb = std::max(
        pure_fidelity(psi, b1, FidelityConvention::probability),
        pure_fidelity(psi, b2, FidelityConvention::probability));
    double fp = std::max(
        pure_fidelity(psi, p1, FidelityConvention::probability),
        pure_fidelity(psi, p2, FidelityConvention::probability));
    if (fb > 0.99) {
      double e = entanglement_entropy(psi);
      ++scan.bell_points;
      scan.min_bell_e = std::min(scan.min_bell_e, e);
      scan.max_bell_e = std::max(scan.max_bell_e, e);
    }
    if (fp > 0.99) {
      double e = entanglement_entropy(psi);
      ++scan.product_points;
      scan.max_product_e = std::max(scan.max_product_e, e);
    }
  }
  return scan;
}

void crit_entropy(const AcceptanceOptions& o, Checker& c) {
  ModeDims dims(10, 10);
  TimeGrid grid(0.0, 50.0, 2000);
  FormationScan weak = scan_formation(
      pumped_trajectory(weak_params(), dims, grid, o.negate_hamiltonian),
      dims);
  FormationScan strong = scan_formation(
      pumped_trajectory(strong_params(), dims, grid, o.negate_hamiltonian),
      dims);

  c.info("formation predicate: squared overlap with B1/B2 (or P1/P2) > 0.99");
  c.info(strf("qualifying grid points, weak coupling run: %d Bell, %d product",
              weak.bell_points, weak.product_points));
  c.info(strf(
      "qualifying grid points, strong coupling run: %d Bell, %d product",
      strong.bell_points, strong.product_points));

  int bell_total = weak.bell_points + strong.bell_points;
  c.check(bell_total > 0, strf("Bell formation times found: %d", bell_total));
  if (bell_total > 0) {
    double lo = std::min(weak.min_bell_e, strong.min_bell_e);
    double hi = std::max(weak.max_bell_e, strong.max_bell_e);
    c.check(lo >= 0.97 && hi <= 1.0,
            strf("entropy at Bell formation times in [%.6f, %.6f] ebits, "
                 "required within [0.97, 1.0]",
                 lo, hi));
  }
  int prod_total = weak.product_points + strong.product_points;
  if (prod_total > 0) {
    double hi = std::max(weak.max_product_e, strong.max_product_e);
    c.check(hi <= 0.1, strf("entropy at product formation times <= %.6f "
                            "ebits, required <= 0.1",
                            hi));
  } else {
    c.info("no product-state formation times on either run; that clause is "
           "vacuous here");
  }
}

void crit_chsh(const AcceptanceOptions& o, Checker& c) {
  ModeDims dims(10, 10);
  TimeGrid grid(0.0, 50.0, 2000);
  StateVector b1 = bell_state(BellStateId::B1, dims);
  StateVector b2 = bell_state(BellStateId::B2, dims);

  int count = 0;
  double min_b = std::numeric_limits<double>::infinity();
  for (const CouplerParams& p : {weak_params(), strong_params()}) {
    auto states = pumped_trajectory(p, dims, grid, o.negate_hamiltonian);
    for (const StateVector& psi : states) {
      double fb = std::max(
          pure_fidelity(psi, b1, FidelityConvention::probability),
          pure_fidelity(psi, b2, FidelityConvention::probability));
      if (fb <= 0.99) continue;
      CHSHReport rep =
          chsh_violation(project_qubit_qubit(DensityMatrix::from_pure(psi)));
      ++count;
      min_b = std::min(min_b, rep.b_value);
    }
  }
  c.info("formation predicate: squared overlap with B1 or B2 > 0.99");
  c.check(count > 0, strf("Bell formation times found: %d", count));
  if (count > 0) {
    c.check(min_b >= 0.97,
            strf("min B(rho) of the projected state at formation times: "
                 "%.6f, required >= 0.97",
                 min_b));
  }

  CHSHReport exact =
      chsh_violation(project_qubit_qubit(DensityMatrix::from_pure(b1)));
  c.check(std::abs(exact.b_value - 1.0) <= 1e-8,
          strf("constructed B1: |B(rho) - 1| = %.3e, required <= 1e-8",
               std::abs(exact.b_value - 1.0)));

  Eigen::Matrix4cd zero_mat = Eigen::Matrix4cd::Zero();
  zero_mat(0, 0) = 1.0;
  double b_00 = chsh_violation(qq_density(zero_mat)).b_value;
  c.check(b_00 == 0.0, strf("|00>: B(rho) = %.3e, required exactly 0", b_00));

  Eigen::Matrix4cd mixed = 0.25 * Eigen::Matrix4cd::Identity();
  double b_mix = chsh_violation(qq_density(mixed)).b_value;
  c.check(b_mix == 0.0,
          strf("maximally mixed: B(rho) = %.3e, required exactly 0", b_mix));
}

int count_peaks(const std::vector<double>& f) {
  int n = 0;
  for (size_t k = 1; k + 1 < f.size(); ++k)
    if (f[k] > 0.5 && f[k] > f[k - 1] && f[k] > f[k + 1]) ++n;
  return n;
}

void crit_strong_coupling(const AcceptanceOptions& o, Checker& c) {
  ModeDims dims(10, 10);
  TimeGrid grid(0.0, 50.0, 2000);
  StateVector b1 = bell_state(BellStateId::B1, dims);
  StateVector b2 = bell_state(BellStateId::B2, dims);

  auto weak = pumped_trajectory(weak_params(), dims, grid,
                                o.negate_hamiltonian);
  auto strong = pumped_trajectory(strong_params(), dims, grid,
                                  o.negate_hamiltonian);
  auto f1w = fidelity_series(weak, b1, FidelityConvention::amplitude);
  auto f2w = fidelity_series(weak, b2, FidelityConvention::amplitude);
  auto f1s = fidelity_series(strong, b1, FidelityConvention::amplitude);
  auto f2s = fidelity_series(strong, b2, FidelityConvention::amplitude);

  double m1 = *std::max_element(f1s.begin(), f1s.end());
  double m2 = *std::max_element(f2s.begin(), f2s.end());
  c.check(m1 >= 0.97,
          strf("max amplitude fidelity to B1: %.6f, required >= 0.97", m1));
  c.check(m2 >= 0.97,
          strf("max amplitude fidelity to B2: %.6f, required >= 0.97", m2));

  int p1s = count_peaks(f1s), p1w = count_peaks(f1w);
  int p2s = count_peaks(f2s), p2w = count_peaks(f2w);
  c.check(p1s > p1w && p2s > p2w,
          strf("fidelity maxima above 0.5 on the same window: B1 %d vs %d, "
               "B2 %d vs %d, required strictly more at the larger coupling",
               p1s, p1w, p2s, p2w));
}

void crit_b5(const AcceptanceOptions& o, Checker& c) {
  ModeDims dims(10, 10);
  TimeGrid grid(0.0, 50.0, 2000);
  auto states = pumped_trajectory(weak_params(), dims, grid,
                                  o.negate_hamiltonian);
  auto f5 = fidelity_series(states, bell_state(BellStateId::B5, dims),
                            FidelityConvention::amplitude);
  const std::vector<double> times = grid.times();
  double peak = 0.0;
  for (size_t k = 0; k < f5.size(); ++k)
    if (times[k] >= 10.0 && times[k] <= 14.0) peak = std::max(peak, f5[k]);
  c.check(peak >= 0.95,
          strf("max amplitude fidelity to B5 over t in [10,14]: %.6f, "
               "required >= 0.95",
               peak));
}

void crit_damped_peaks(const AcceptanceOptions&, Checker& c) {
  auto t0 = Clock::now();
  ScenarioConfig base = config_from_pairs({{"scenario", "damped"}});
  const double chi = base.params.chi_a;
  const double kappas[3] = {chi / 500.0, chi / 75.0, chi / 50.0};
  double peaks[3] = {0.0, 0.0, 0.0};
  for (int j = 0; j < 3; ++j) {
    ScenarioConfig cfg = base;
    cfg.params.kappa_a = kappas[j];
    cfg.params.kappa_b = kappas[j];
    TimeSeries ts = run_scenario(cfg);
    for (const auto& row : ts.rows) peaks[j] = std::max(peaks[j], row[3]);
  }
  c.check(peaks[0] >= 0.95,
          strf("peak fidelity to B2 at kappa = chi/500: %.6f, required >= "
               "0.95",
               peaks[0]));
  c.check(peaks[0] > peaks[1] && peaks[1] > peaks[2],
          strf("peaks across kappa = chi/{500,75,50}: %.6f > %.6f > %.6f, "
               "required strictly decreasing",
               peaks[0], peaks[1], peaks[2]));
  c.check(peaks[1] >= 0.8,
          strf("peak fidelity to B2 at kappa = chi/75: %.6f, required >= 0.8",
               peaks[1]));
  double secs = seconds_since(t0);
  c.check(secs < 60.0, strf("runtime %.2f s, required < 60 s", secs));
}

void crit_master_invariants(const AcceptanceOptions&, Checker& c) {
  ScenarioConfig sc = config_from_pairs({{"scenario", "damped"}});
  OperatorMatrix H = hamiltonian(sc.params, sc.dims);
  auto collapse = collapse_operators(sc.params, sc.dims);
  DensityMatrix rho0 = DensityMatrix::from_pure(basis_state(sc.dims, 2, 0));

  MasterOptions integ;
  integ.method = MasterMethod::integrate;
  MasterEvolution ev = evolve_master(H, collapse, rho0, sc.grid, integ);
  double drift = ev.diag.max_trace_drift;
  double min_eig = std::numeric_limits<double>::infinity();
  for (const Eigen::MatrixXcd& rho : ev.states) {
    drift = std::max(drift, std::abs(rho.trace().real() - 1.0));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho,
                                                       Eigen::EigenvaluesOnly);
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
  }
  c.check(drift <= 1e-6,
          strf("max trace drift over the damped run: %.3e, required <= 1e-6",
               drift));
  c.check(min_eig >= -1e-6,
          strf("min density-matrix eigenvalue over the damped run: %.3e, "
               "required >= -1e-6",
               min_eig));

  TimeGrid sparse(sc.grid.t_start, sc.grid.t_end, 20);
  MasterOptions spect;
  spect.method = MasterMethod::spectral;
  MasterEvolution ei = evolve_master(H, collapse, rho0, sparse, integ);
  MasterEvolution es2 = evolve_master(H, collapse, rho0, sparse, spect);
  double dmax = 0.0;
  for (size_t k = 0; k < ei.states.size(); ++k)
    dmax = std::max(dmax,
                    (ei.states[k] - es2.states[k]).cwiseAbs().maxCoeff());
  c.check(dmax <= 1e-6,
          strf("max elementwise integrate-vs-spectral difference at 21 "
               "sample times: %.3e, required <= 1e-6",
               dmax));

  CouplerParams dp;
  dp.kappa_a = 0.25;
  ModeDims dd(6, 3);
  OperatorMatrix H0 = hamiltonian(dp, dd);
  auto c0 = collapse_operators(dp, dd);
  DensityMatrix r0 = DensityMatrix::from_pure(basis_state(dd, 3, 0));
  TimeGrid gd(0.0, 2.0, 25);
  Eigen::MatrixXcd num_a =
      creation(dd, Mode::a).mat * annihilation(dd, Mode::a).mat;
  const std::vector<double> times = gd.times();
  for (MasterMethod method : {MasterMethod::integrate, MasterMethod::spectral}) {
    MasterOptions mo;
    mo.method = method;
    MasterEvolution dev = evolve_master(H0, c0, r0, gd, mo);
    double err = 0.0;
    for (size_t k = 0; k < dev.states.size(); ++k) {
      double n = (num_a * dev.states[k]).trace().real();
      err = std::max(err,
                     std::abs(n - 3.0 * std::exp(-2.0 * dp.kappa_a * times[k])));
    }
    c.check(err <= 1e-7,
            strf("decay oracle <n>(t) = 3 e^{-2 kappa t}, %s method: max "
                 "error %.3e, required <= 1e-7",
                 method == MasterMethod::integrate ? "integrate" : "spectral",
                 err));
  }
}

void crit_cross_oracles(const AcceptanceOptions&, Checker& c) {
  {
    std::mt19937 rng(2468);
    ModeDims dims(5, 4);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      StateVector psi = random_state(dims, rng);
      double e0 = entanglement_entropy(psi);
      DensityMatrix rho = DensityMatrix::from_pure(psi);
      double ea = entanglement_entropy_mixed_marginal(rho, Mode::a);
      double eb = entanglement_entropy_mixed_marginal(rho, Mode::b);
      worst = std::max({worst, std::abs(e0 - ea), std::abs(e0 - eb)});
    }
    c.check(worst <= 1e-9,
            strf("entropy equality across both marginals, 100 random pure "
                 "states: max deviation %.3e, required <= 1e-9",
                 worst));
  }
  {
    std::mt19937 rng(1357);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      Eigen::Vector4cd psi = random_two_qubit(rng);
      CHSHReport rep =
          chsh_violation(qq_density(psi * psi.adjoint()));
      double cc = concurrence(psi);
      worst = std::max(worst, std::abs(rep.m_value - (1.0 + cc * cc)));
    }
    c.check(worst <= 1e-8,
            strf("M = 1 + C^2 over 100 random pure two-qubit states: max "
                 "deviation %.3e, required <= 1e-8",
                 worst));
  }
  {
    std::mt19937 rng(8642);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      Eigen::Vector4cd psi = random_two_qubit(rng);
      Eigen::Matrix4cd rho = psi * psi.adjoint();
      Eigen::Matrix4cd uv = kron2(random_unitary(rng), random_unitary(rng));
      double b0 = chsh_violation(qq_density(rho)).b_value;
      double b1 = chsh_violation(qq_density(uv * rho * uv.adjoint())).b_value;
      worst = std::max(worst, std::abs(b1 - b0));
    }
    c.check(worst <= 1e-10,
            strf("local-unitary invariance of B(rho), 50 random unitary "
                 "pairs: max deviation %.3e, required <= 1e-10",
                 worst));
  }
}

struct Entry {
  const char* id;
  const char* name;
  void (*fn)(const AcceptanceOptions&, Checker&);
};

constexpr Entry kCriteria[] = {
    {"1", "truncation validity", crit_truncation},
    {"2", "analytic-numeric consistency", crit_analytic},
    {"3", "normalization identity", crit_normalization},
    {"4", "entropy at Bell formation", crit_entropy},
    {"5", "CHSH violation", crit_chsh},
    {"6", "strong-coupling regime", crit_strong_coupling},
    {"7", "B5 formation", crit_b5},
    {"8", "damped fidelity peaks", crit_damped_peaks},
    {"9", "master-equation invariants", crit_master_invariants},
    {"10", "measure cross-oracles", crit_cross_oracles},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& out,
                                            const AcceptanceOptions& opts) {
  std::vector<CriterionResult> results;
  for (const Entry& e : kCriteria) {
    if (!opts.only.empty() &&
        std::find(opts.only.begin(), opts.only.end(), e.id) ==
            opts.only.end())
      continue;
    Checker checker;
    auto t0 = Clock::now();
    try {
      e.fn(opts, checker);
    } catch (const std::exception& ex) {
      checker.ok = false;
      checker.lines.push_back(std::string("aborted: ") + ex.what() +
                              "  [FAIL]");
    }
    double secs = seconds_since(t0);
    out << strf("criterion %2s  %-30s  %s  (%.2f s)\n", e.id, e.name,
                checker.ok ? "PASS" : "FAIL", secs);
    for (const std::string& line : checker.lines) out << "    " << line << "\n";
    results.push_back(
        CriterionResult{e.id, e.name, checker.ok, secs, checker.lines});
  }
  int passed = 0;
  for (const CriterionResult& r : results)
    if (r.passed) ++passed;
  out << passed << " of " << results.size() << " criteria passed\n";
  return results;
}

int acceptance_exit_code(const std::vector<CriterionResult>& results) {
  if (results.empty()) return 3;
  for (const CriterionResult& r : results)
    if (!r.passed) return 3;
  return 0;
}

}  // namespace kerr
