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

#include "kerr/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "kerr/timeseries.hpp"

namespace kerr {

namespace {

const char* const kScenarioNames[] = {"truncation", "probabilities",
                                      "bell_fidelities", "entropy",
                                      "chsh", "damped"};

bool known_scenario(const std::string& s) {
  for (const char* name : kScenarioNames)
    if (s == name) return true;
  return false;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    double out = std::stod(value, &used);
    if (used != value.size())
      throw ValidationError("key '" + key + "': trailing characters in '" +
                            value + "'");
    return out;
  } catch (const std::invalid_argument&) {
    throw ValidationError("key '" + key + "': cannot parse '" + value +
                          "' as a number");
  } catch (const std::out_of_range&) {
    throw ValidationError("key '" + key + "': value '" + value +
                          "' out of range");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  double d = parse_double(key, value);
  int i = static_cast<int>(d);
  if (static_cast<double>(i) != d)
    throw ValidationError("key '" + key + "': expected an integer, got '" +
                          value + "'");
  return i;
}

std::vector<BellStateId> parse_targets(const std::string& value) {
  std::vector<BellStateId> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(bell_id_from_string(trim(item)));
  if (out.empty()) throw ValidationError("key 'targets': empty list");
  return out;
}

ScenarioConfig defaults_for(const std::string& scenario) {
  ScenarioConfig cfg;
  cfg.scenario = scenario;
  if (scenario == "damped") {
    cfg.params.chi_a = 1e8;
    cfg.params.chi_b = 1e8;
    cfg.params.alpha = 5e6;      // chi/20
    cfg.params.epsilon = 2.5e6;  // alpha/2
    cfg.params.kappa_a = 2e5;    // chi/500
    cfg.params.kappa_b = 2e5;
    cfg.params.time_unit = "seconds";
    cfg.dims = ModeDims(6, 6);
    cfg.grid = TimeGrid(0.0, 1.2e-6, 2000);
  } else {
    cfg.params.chi_a = 25.0;
    cfg.params.chi_b = 25.0;
    cfg.params.alpha = std::numbers::pi / 25.0;
    cfg.params.epsilon = std::numbers::pi / 25.0;
    cfg.params.time_unit = "chi_inverse";
    cfg.dims = ModeDims(10, 10);
    cfg.grid = TimeGrid(0.0, 50.0, 2000);
  }
  return cfg;
}

}  // namespace

void ScenarioConfig::validate() const {
  if (!known_scenario(scenario))
    throw ValidationError("unknown scenario '" + scenario + "'");
  params.validate();
  if (targets.empty())
    throw ValidationError("bell_fidelities: empty target list");
  if (!(rel_tol > 0.0) || !(min_step_fraction > 0.0))
    throw ValidationError("integrator tolerances must be positive");
  for (auto [n, m] : fock_targets) {
    if (n < 0 || n >= dims.dim_a || m < 0 || m >= dims.dim_b)
      throw ValidationError("Fock target out of range for dims");
  }
}

ScenarioConfig config_from_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::string scenario;
  for (const auto& [key, value] : pairs)
    if (key == "scenario") scenario = value;
  if (scenario.empty())
    throw ValidationError("missing required key 'scenario'");
  if (!known_scenario(scenario))
    throw ValidationError("unknown scenario '" + scenario + "'");

  ScenarioConfig cfg = defaults_for(scenario);
  double t_start = cfg.grid.t_start;
  double t_end = cfg.grid.t_end;
  int steps = cfg.grid.n_steps;
  int dim_a = cfg.dims.dim_a;
  int dim_b = cfg.dims.dim_b;

  for (const auto& [key, value] : pairs) {
    if (key == "scenario") {
      // already applied
    } else if (key == "chi_a") {
      cfg.params.chi_a = parse_double(key, value);
    } else if (key == "chi_b") {
      cfg.params.chi_b = parse_double(key, value);
    } else if (key == "alpha") {
      cfg.params.alpha = parse_double(key, value);
    } else if (key == "epsilon") {
      cfg.params.epsilon = parse_double(key, value);
    } else if (key == "kappa_a") {
      cfg.params.kappa_a = parse_double(key, value);
    } else if (key == "kappa_b") {
      cfg.params.kappa_b = parse_double(key, value);
    } else if (key == "dim_a") {
      dim_a = parse_int(key, value);
    } else if (key == "dim_b") {
      dim_b = parse_int(key, value);
    } else if (key == "t_start") {
      t_start = parse_double(key, value);
    } else if (key == "t_end") {
      t_end = parse_double(key, value);
    } else if (key == "steps") {
      steps = parse_int(key, value);
    } else if (key == "method") {
      if (value == "integrate") {
        cfg.method = MasterMethod::integrate;
      } else if (value == "spectral") {
        cfg.method = MasterMethod::spectral;
      } else {
        throw ValidationError("key 'method': expected integrate or spectral, "
                              "got '" + value + "'");
      }
    } else if (key == "rel_tol") {
      cfg.rel_tol = parse_double(key, value);
    } else if (key == "min_step_fraction") {
      cfg.min_step_fraction = parse_double(key, value);
    } else if (key == "targets") {
      cfg.targets = parse_targets(value);
    } else if (key == "output") {
      cfg.output_path = value;
    } else {
      throw ValidationError("unknown key '" + key + "'");
    }
  }

  if (dim_a < 3 || dim_b < 3)
    throw ValidationError("dim_a and dim_b must be at least 3");
  if (steps < 1) throw ValidationError("key 'steps': must be >= 1");
  if (!(t_end > t_start))
    throw ValidationError("time window: t_end must exceed t_start");
  cfg.dims = ModeDims(dim_a, dim_b);
  cfg.grid = TimeGrid(t_start, t_end, steps);
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");

  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError(path + ": parse error at line " +
                            std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ValidationError(path + ": parse error at line " +
                            std::to_string(lineno) + ": empty key");
    pairs.emplace_back(key, value);
  }
  return config_from_pairs(pairs);
}

std::vector<std::pair<std::string, std::string>> config_echo(
    const ScenarioConfig& config) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("scenario", config.scenario);
  out.emplace_back("chi_a", format_cell(config.params.chi_a));
  out.emplace_back("chi_b", format_cell(config.params.chi_b));
  out.emplace_back("alpha", format_cell(config.params.alpha.real()));
  out.emplace_back("epsilon", format_cell(config.params.epsilon.real()));
  out.emplace_back("kappa_a", format_cell(config.params.kappa_a));
  out.emplace_back("kappa_b", format_cell(config.params.kappa_b));
  out.emplace_back("dim_a", std::to_string(config.dims.dim_a));
  out.emplace_back("dim_b", std::to_string(config.dims.dim_b));
  out.emplace_back("t_start", format_cell(config.grid.t_start));
  out.emplace_back("t_end", format_cell(config.grid.t_end));
  out.emplace_back("steps", std::to_string(config.grid.n_steps));
  out.emplace_back("method", config.method == MasterMethod::integrate
                                 ? "integrate"
                                 : "spectral");
  out.emplace_back("rel_tol", format_cell(config.rel_tol));
  out.emplace_back("min_step_fraction",
                   format_cell(config.min_step_fraction));
  std::string targets;
  for (size_t k = 0; k < config.targets.size(); ++k)
    targets += std::string(k ? "," : "") + to_string(config.targets[k]);
  out.emplace_back("targets", targets);
  return out;
}

namespace {

// Uhlmann fidelity against a pure target state: sqrt(<b|rho|b>). Values in
// [-1e-6, 0) round to 0 (integration noise at the documented trace/positivity
// tolerance); anything lower is a hard failure.
double pure_target_fidelity(const Eigen::MatrixXcd& rho,
                            const StateVector& target) {
  double p = (target.amps.adjoint() * rho * target.amps)(0).real();
  if (p < -1e-6)
    throw NotPSD("damped scenario: <B|rho|B> = " + format_cell(p));
  return std::sqrt(std::max(0.0, p));
}

TimeSeries closed_scenarios(const ScenarioConfig& config) {
  UnitaryPropagator prop =
      make_propagator(hamiltonian(config.params, config.dims));
  StateVector psi0 = basis_state(config.dims, 2, 0);
  std::vector<StateVector> states = evolve_pure(prop, psi0, config.grid);
  const std::vector<double> ts = config.grid.times();

  TimeSeries series;
  if (config.scenario == "truncation") {
    series = truncation_fidelity_series(states, config.params, config.grid);
  } else if (config.scenario == "probabilities") {
    series.columns = {"t"};
    for (auto [n, m] : config.fock_targets)
      series.columns.push_back("P_" + std::to_string(n) + "_" +
                               std::to_string(m));
    for (size_t k = 0; k < states.size(); ++k) {
      std::vector<double> row{ts[k]};
      for (double p : probabilities(states[k], config.fock_targets))
        row.push_back(p);
      series.rows.push_back(std::move(row));
    }
  } else if (config.scenario == "bell_fidelities") {
    series.columns = {"t"};
    std::vector<std::vector<double>> cols;
    for (BellStateId id : config.targets) {
      series.columns.push_back("F_" + std::string(to_string(id)));
      cols.push_back(fidelity_series(states,
                                     bell_state(id, config.dims),
                                     FidelityConvention::amplitude));
    }
    for (size_t k = 0; k < states.size(); ++k) {
      std::vector<double> row{ts[k]};
      for (const auto& col : cols) row.push_back(col[k]);
      series.rows.push_back(std::move(row));
    }
  } else if (config.scenario == "entropy") {
    series.columns = {"t", "entropy_ebits"};
    std::vector<double> es = entropy_series(states);
    for (size_t k = 0; k < states.size(); ++k)
      series.rows.push_back({ts[k], es[k]});
  } else if (config.scenario == "chsh") {
    series.columns = {"t", "b_value", "m_value"};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (size_t k = 0; k < states.size(); ++k) {
      try {
        CHSHReport rep = chsh_violation(
            project_qubit_qubit(DensityMatrix::from_pure(states[k])));
        series.rows.push_back({ts[k], rep.b_value, rep.m_value});
      } catch (const NearZeroSupport&) {
        series.rows.push_back({ts[k], nan, nan});
      }
    }
  }
  return series;
}

TimeSeries damped_scenario(const ScenarioConfig& config) {
  OperatorMatrix H = hamiltonian(config.params, config.dims);
  auto collapse = collapse_operators(config.params, config.dims);
  DensityMatrix rho0 =
      DensityMatrix::from_pure(basis_state(config.dims, 2, 0));

  MasterOptions opts;
  opts.method = config.method;
  opts.rel_tol = config.rel_tol;
  opts.min_step_fraction = config.min_step_fraction;
  MasterEvolution ev = evolve_master(H, collapse, rho0, config.grid, opts);

  StateVector b1 = bell_state(BellStateId::B1, config.dims);
  StateVector b2 = bell_state(BellStateId::B2, config.dims);
  const std::vector<double> ts = config.grid.times();
  const double chi = config.params.chi_a;

  TimeSeries series;
  series.columns = {"t", "chi_t", "F_B1", "F_B2"};
  for (size_t k = 0; k < ev.states.size(); ++k)
    series.rows.push_back({ts[k], chi * ts[k],
                           pure_target_fidelity(ev.states[k], b1),
                           pure_target_fidelity(ev.states[k], b2)});
  return series;
}

}  // namespace

TimeSeries run_scenario(const ScenarioConfig& config) {
  config.validate();
  TimeSeries series = config.scenario == "damped" ? damped_scenario(config)
                                                  : closed_scenarios(config);
  series.metadata = config_echo(config);
  return series;
}

}  // namespace kerr
