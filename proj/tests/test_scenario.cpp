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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "kerr/scenario.hpp"
#include "kerr/version.hpp"

using namespace kerr;

namespace {
constexpr double kPi = std::numbers::pi;

std::string write_temp_config(const std::string& body) {
  static int counter = 0;
  auto path = std::filesystem::temp_directory_path() /
              ("kerr_cfg_" + std::to_string(counter++) + ".cfg");
  std::ofstream out(path);
  out << body;
  out.close();
  return path.string();
}

std::string csv_of(const TimeSeries& ts) {
  std::ostringstream os;
  write_csv(ts, os);
  return os.str();
}
}  // namespace

TEST_CASE("cell formatting is pinned to 17 significant digits") {
  CHECK(format_cell(0.0) == "0");
  CHECK(format_cell(1.0) == "1");
  CHECK(format_cell(0.1) == "0.10000000000000001");
  CHECK(format_cell(2.0 / 3.0) == "0.66666666666666663");
  CHECK(format_cell(6e-4) == "0.00059999999999999995");
  CHECK(format_cell(1.2e-6) == "1.1999999999999999e-06");
  // null marker: empty field
  CHECK(format_cell(std::numeric_limits<double>::quiet_NaN()) == "");
}

TEST_CASE("csv layout") {
  TimeSeries ts;
  ts.columns = {"t", "x", "y"};
  ts.rows = {{0.0, 1.0, 2.0},
             {0.5, std::numeric_limits<double>::quiet_NaN(), 3.0}};
  ts.metadata = {{"scenario", "chsh"}, {"steps", "2"}};
  std::string csv = csv_of(ts);
  CHECK(csv ==
        "# kerrcoupler " + std::string(kVersion) +
            "\n"
            "# scenario = chsh\n"
            "# steps = 2\n"
            "t,x,y\n"
            "0,1,2\n"
            "0.5,,3\n");
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("minimal truncation config applies the documented defaults") {
  std::string path = write_temp_config("scenario = truncation\n");
  ScenarioConfig cfg = load_config(path);
  CHECK(cfg.scenario == "truncation");
  CHECK(cfg.params.chi_a == 25.0);
  CHECK(cfg.params.chi_b == 25.0);
  CHECK(cfg.params.alpha.real() == doctest::Approx(kPi / 25.0).epsilon(1e-15));
  CHECK(cfg.params.epsilon.real() ==
        doctest::Approx(kPi / 25.0).epsilon(1e-15));
  CHECK(cfg.params.kappa_a == 0.0);
  CHECK(cfg.dims.dim_a == 10);
  CHECK(cfg.dims.dim_b == 10);
  CHECK(cfg.grid.t_start == 0.0);
  CHECK(cfg.grid.t_end == 50.0);
  CHECK(cfg.grid.n_steps == 2000);
  CHECK(cfg.method == MasterMethod::integrate);
  std::remove(path.c_str());
}

TEST_CASE("damped scenario defaults") {
  std::string path = write_temp_config("scenario = damped\n");
  ScenarioConfig cfg = load_config(path);
  CHECK(cfg.params.chi_a == 1e8);
  CHECK(cfg.params.alpha.real() == 5e6);
  CHECK(cfg.params.epsilon.real() == 2.5e6);
  CHECK(cfg.params.kappa_a == 2e5);
  CHECK(cfg.params.kappa_b == 2e5);
  CHECK(cfg.params.time_unit == "seconds");
  CHECK(cfg.dims.dim_a == 6);
  CHECK(cfg.dims.dim_b == 6);
  CHECK(cfg.grid.t_end == doctest::Approx(1.2e-6));
  std::remove(path.c_str());
}

TEST_CASE("config parsing errors") {
  SUBCASE("unknown key is named") {
    std::string path =
        write_temp_config("scenario = truncation\nchii_a = 25\n");
    try {
      load_config(path);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("chii_a") != std::string::npos);
    }
    std::remove(path.c_str());
  }
  SUBCASE("parse error carries the line number") {
    std::string path =
        write_temp_config("scenario = truncation\nthis line has no equals\n");
    try {
      load_config(path);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    std::remove(path.c_str());
  }
  SUBCASE("negative kappa rejected") {
    std::string path =
        write_temp_config("scenario = damped\nkappa_a = -1.0\n");
    CHECK_THROWS_AS(load_config(path), ValidationError);
    std::remove(path.c_str());
  }
  SUBCASE("unknown scenario rejected") {
    std::string path = write_temp_config("scenario = frobnicate\n");
    CHECK_THROWS_AS(load_config(path), ValidationError);
    std::remove(path.c_str());
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), ValidationError);
  }
  SUBCASE("comments and blank lines are fine") {
    std::string path = write_temp_config(
        "# a comment\n\nscenario = entropy\nsteps = 100  # trailing\n");
    ScenarioConfig cfg = load_config(path);
    CHECK(cfg.scenario == "entropy");
    CHECK(cfg.grid.n_steps == 100);
    std::remove(path.c_str());
  }
}

TEST_CASE("probabilities scenario rows start at the initial condition") {
  ScenarioConfig cfg = config_from_pairs({{"scenario", "probabilities"},
                                          {"steps", "50"},
                                          {"t_end", "5"}});
  TimeSeries ts = run_scenario(cfg);
  REQUIRE(ts.columns.size() == 4);
  CHECK(ts.columns[0] == "t");
  CHECK(ts.columns[1] == "P_2_0");
  CHECK(ts.columns[2] == "P_0_2");
  CHECK(ts.columns[3] == "P_1_2");
  REQUIRE(ts.rows.size() == 51);
  CHECK(ts.rows[0][0] == 0.0);
  CHECK(ts.rows[0][1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ts.rows[0][2] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ts.rows[0][3] == doctest::Approx(0.0).epsilon(1e-12));
  // probabilities stay in [0, 1] and nearly exhaust the triple
  for (const auto& row : ts.rows) {
    double sum = row[1] + row[2] + row[3];
    CHECK(sum <= 1.0 + 1e-9);
    CHECK(sum >= 0.99);
  }
}

TEST_CASE("bell_fidelities scenario respects the target list") {
  ScenarioConfig cfg = config_from_pairs({{"scenario", "bell_fidelities"},
                                          {"targets", "B1,B2,B5"},
                                          {"steps", "40"},
                                          {"t_end", "4"}});
  TimeSeries ts = run_scenario(cfg);
  REQUIRE(ts.columns.size() == 4);
  CHECK(ts.columns[1] == "F_B1");
  CHECK(ts.columns[2] == "F_B2");
  CHECK(ts.columns[3] == "F_B5");
  for (const auto& row : ts.rows)
    for (size_t j = 1; j < row.size(); ++j) {
      CHECK(row[j] >= 0.0);
      CHECK(row[j] <= 1.0 + 1e-12);
    }
}

TEST_CASE("entropy scenario column") {
  ScenarioConfig cfg = config_from_pairs(
      {{"scenario", "entropy"}, {"steps", "30"}, {"t_end", "3"}});
  TimeSeries ts = run_scenario(cfg);
  REQUIRE(ts.columns.size() == 2);
  CHECK(ts.columns[1] == "entropy_ebits");
  CHECK(ts.rows[0][1] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("chsh scenario column schema") {
  ScenarioConfig cfg = config_from_pairs(
      {{"scenario", "chsh"}, {"steps", "30"}, {"t_end", "3"}});
  TimeSeries ts = run_scenario(cfg);
  REQUIRE(ts.columns.size() == 3);
  CHECK(ts.columns[1] == "b_value");
  CHECK(ts.columns[2] == "m_value");
  for (const auto& row : ts.rows) {
    if (std::isnan(row[1])) continue;  // null marker allowed
    CHECK(row[1] >= 0.0);
    CHECK(row[1] <= 1.0 + 1e-10);
  }
}

TEST_CASE("damped scenario emits both time axes") {
  ScenarioConfig cfg = config_from_pairs(
      {{"scenario", "damped"}, {"steps", "25"}, {"t_end", "2.4e-7"}});
  TimeSeries ts = run_scenario(cfg);
  REQUIRE(ts.columns.size() == 4);
  CHECK(ts.columns[0] == "t");
  CHECK(ts.columns[1] == "chi_t");
  CHECK(ts.columns[2] == "F_B1");
  CHECK(ts.columns[3] == "F_B2");
  for (const auto& row : ts.rows) {
    CHECK(row[1] == doctest::Approx(row[0] * 1e8).epsilon(1e-12));
    CHECK(row[2] >= 0.0);
    CHECK(row[2] <= 1.0 + 1e-9);
  }
  // fidelity to B2 grows from its initial sqrt(1/2) overlap toward the peak
  CHECK(ts.rows[0][3] ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("identical configs give byte-identical csv") {
  ScenarioConfig cfg = config_from_pairs({{"scenario", "truncation"},
                                          {"steps", "60"},
                                          {"t_end", "6"}});
  std::string a = csv_of(run_scenario(cfg));
  std::string b = csv_of(run_scenario(cfg));
  CHECK(a == b);
  CHECK(a.find("# scenario = truncation") != std::string::npos);
  CHECK(a.find("# kerrcoupler ") != std::string::npos);
}

TEST_CASE("csv echo reproduces the run") {
  // parse the echoed header back into a config and rerun: same bytes
  ScenarioConfig cfg = config_from_pairs({{"scenario", "probabilities"},
                                          {"steps", "40"},
                                          {"t_end", "2"},
                                          {"dim_a", "8"},
                                          {"dim_b", "9"}});
  std::string first = csv_of(run_scenario(cfg));

  std::vector<std::pair<std::string, std::string>> echoed =
      config_echo(cfg);
  ScenarioConfig round = config_from_pairs(echoed);
  std::string second = csv_of(run_scenario(round));
  CHECK(first == second);
}

TEST_CASE("scenario runs are order independent") {
  ScenarioConfig c1 = config_from_pairs(
      {{"scenario", "entropy"}, {"steps", "20"}, {"t_end", "2"}});
  ScenarioConfig c2 = config_from_pairs(
      {{"scenario", "chsh"}, {"steps", "20"}, {"t_end", "2"}});
  std::string a1 = csv_of(run_scenario(c1));
  std::string a2 = csv_of(run_scenario(c2));
  // reversed order
  std::string b2 = csv_of(run_scenario(c2));
  std::string b1 = csv_of(run_scenario(c1));
  CHECK(a1 == b1);
  CHECK(a2 == b2);
}

TEST_CASE("integrator options reach the master solver") {
  ScenarioConfig cfg = config_from_pairs({{"scenario", "damped"},
                                          {"steps", "10"},
                                          {"t_end", "1.2e-7"},
                                          {"rel_tol", "1e-13"},
                                          {"min_step_fraction", "0.3"}});
  CHECK_THROWS_AS(run_scenario(cfg), StepSizeTooLarge);
}

TEST_CASE("config validation rejects bad numerics") {
  CHECK_THROWS_AS(
      config_from_pairs({{"scenario", "truncation"}, {"dim_a", "2"}}),
      ValidationError);
  CHECK_THROWS_AS(
      config_from_pairs({{"scenario", "truncation"}, {"steps", "0"}}),
      ValidationError);
  CHECK_THROWS_AS(
      config_from_pairs({{"scenario", "truncation"}, {"steps", "abc"}}),
      ValidationError);
  CHECK_THROWS_AS(config_from_pairs({{"scenario", "bell_fidelities"},
                                     {"targets", "B1,B9"}}),
                  ValidationError);
  CHECK_THROWS_AS(
      config_from_pairs({{"scenario", "truncation"}, {"method", "magic"}}),
      ValidationError);
}
