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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "kerr/acceptance.hpp"
#include "kerr/errors.hpp"
#include "kerr/scenario.hpp"
#include "kerr/timeseries.hpp"
#include "kerr/version.hpp"

namespace {

void write_file(const kerr::TimeSeries& series, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw kerr::ValidationError("cannot open output file: " + path);
  kerr::write_csv(series, out);
  if (!out) throw kerr::ValidationError("failed while writing: " + path);
}

int do_run(const std::string& config_file, const std::string& out_path,
           const std::string& method) {
  kerr::ScenarioConfig cfg = kerr::load_config(config_file);
  if (!out_path.empty()) cfg.output_path = out_path;
  if (!method.empty())
    cfg.method = method == "spectral" ? kerr::MasterMethod::spectral
                                      : kerr::MasterMethod::integrate;
  kerr::TimeSeries series = kerr::run_scenario(cfg);
  if (cfg.output_path.empty()) {
    kerr::write_csv(series, std::cout);
  } else {
    write_file(series, cfg.output_path);
    std::cout << "wrote " << cfg.output_path << '\n';
  }
  return 0;
}

int do_sweep(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    throw kerr::ValidationError("not a directory: " + dir);
  std::vector<fs::path> configs;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".cfg")
      configs.push_back(entry.path());
  std::sort(configs.begin(), configs.end());
  if (configs.empty())
    throw kerr::ValidationError("no .cfg files in " + dir);
  for (const fs::path& p : configs) {
    kerr::ScenarioConfig cfg = kerr::load_config(p.string());
    std::string out = cfg.output_path.empty()
                          ? fs::path(p).replace_extension(".csv").string()
                          : cfg.output_path;
    kerr::TimeSeries series = kerr::run_scenario(cfg);
    write_file(series, out);
    std::cout << "wrote " << out << '\n';
  }
  return 0;
}

int do_self_check(bool negate, const std::string& only_csv) {
  kerr::AcceptanceOptions opts;
  opts.negate_hamiltonian = negate;
  if (!only_csv.empty()) {
    std::string token;
    for (char ch : only_csv) {
      if (ch == ',') {
        if (!token.empty()) opts.only.push_back(token);
        token.clear();
      } else {
        token += ch;
      }
    }
    if (!token.empty()) opts.only.push_back(token);
  }
  auto results = kerr::run_acceptance(std::cout, opts);
  return kerr::acceptance_exit_code(results);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-mode Kerr coupler simulator"};
  app.set_version_flag("--version", std::string(kerr::kVersion));
  app.require_subcommand(1);

  std::string config_file, out_path, method;
  CLI::App* run = app.add_subcommand("run", "Run one scenario config");
  run->add_option("config", config_file, "Path to a key = value config file")
      ->required();
  run->add_option("--out", out_path,
                  "Write the CSV here instead of the config's output path");
  run->add_option("--method", method, "Master-equation method override")
      ->check(CLI::IsMember({"integrate", "spectral"}));

  std::string config_dir;
  CLI::App* sweep =
      app.add_subcommand("sweep", "Run every .cfg file in a directory");
  sweep->add_option("dir", config_dir, "Directory holding .cfg files")
      ->required();

  bool negate = false;
  std::string only_csv;
  CLI::App* check =
      app.add_subcommand("self-check", "Run the acceptance criteria suite");
  check->add_flag("--negate-hamiltonian", negate,
                  "Flip the Hamiltonian sign (negative-control hook)");
  check->add_option("--only", only_csv,
                    "Comma-separated criterion ids to run, e.g. 1,9");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) return do_run(config_file, out_path, method);
    if (sweep->parsed()) return do_sweep(config_dir);
    return do_self_check(negate, only_csv);
  } catch (const kerr::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const kerr::NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
