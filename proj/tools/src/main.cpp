// Copyright 2026 The fhch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

fhch::cli::RunConfig configure(const std::string& path,
                               const std::string& out) {
  fhch::cli::RunConfig cfg;
  if (!path.empty()) {
    cfg = fhch::cli::load_config(path);
  } else {
    std::istringstream empty;
    cfg = fhch::cli::parse_config(empty);
  }
  if (!out.empty()) cfg.output_dir = out;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularized Flory-Huggins / compressible Navier-Stokes-"
               "Cahn-Hilliard stationary solver"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "key = value configuration file")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory (overrides output_dir)");
  };

  auto* potential = app.add_subcommand(
      "potential", "tabulate the regularized potential and its constants");
  auto* solve = app.add_subcommand("solve", "continuation solve of one problem");
  auto* sweep = app.add_subcommand("sweep", "delta or eps sweep");
  auto* check = app.add_subcommand("check", "run the invariant suite");
  for (auto* s : {potential, solve, sweep, check}) add_common(s);

  std::string key;
  std::string values;
  sweep->add_option("--sweep-key", key, "delta or eps")
      ->required()
      ->check(CLI::IsMember({"delta", "eps"}));
  sweep->add_option("--values", values, "comma-separated, decreasing")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const auto cfg = configure(config, out);
    if (*potential) return fhch::cli::cmd_potential(cfg, std::cout);
    if (*solve) return fhch::cli::cmd_solve(cfg, std::cerr);
    if (*sweep) {
      if (values.find_first_not_of(" ,") == std::string::npos) {
        std::cerr << "error: --values must list at least one value\n";
        return 64;
      }
      return fhch::cli::cmd_sweep(
          cfg, key, fhch::cli::parse_real_list(values, "--values"), std::cerr);
    }
    if (*check) return fhch::cli::cmd_check(cfg, std::cout);
  } catch (const fhch::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 64;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
