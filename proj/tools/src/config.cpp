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

#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace fhch::cli {

Field ForcingSpec::sample(const Grid& grid) const {
  const double k = mode * std::numbers::pi / grid.length();
  return Field::from_function(grid, [&](double x) {
    return constant + sin_amplitude * std::sin(k * x) +
           cos_amplitude * std::cos(k * x);
  });
}

bool ForcingSpec::is_zero() const {
  return constant == 0.0 && sin_amplitude == 0.0 && cos_amplitude == 0.0;
}

ProblemSpec RunConfig::problem() const {
  ProblemSpec spec;
  spec.grid = Grid(n, length);
  spec.potential = potential;
  spec.fluid = fluid;
  spec.m1 = m1;
  spec.m2 = m2;
  spec.eps = eps;
  spec.g1 = g1.sample(spec.grid);
  spec.g2 = g2.sample(spec.grid);
  if (mms_enabled) return manufactured_problem(spec, mms, eps).spec;
  return spec;
}

State RunConfig::mms_exact() const {
  ProblemSpec spec;
  spec.grid = Grid(n, length);
  spec.potential = potential;
  spec.fluid = fluid;
  spec.m1 = m1;
  spec.m2 = m2;
  spec.eps = eps;
  spec.g1 = Field(spec.grid);
  spec.g2 = Field(spec.grid);
  return manufactured_problem(spec, mms, eps).exact;
}

void RunConfig::validate() const {
  if (potential_grid_points < 2) {
    throw ConfigError("potential.grid_points must be at least 2");
  }
  if (!(potential_grid_min < potential_grid_max)) {
    throw ConfigError("potential.grid_min must be below potential.grid_max");
  }
  if (g1.mode < 1 || g2.mode < 1) {
    throw ConfigError("forcing.g1.mode and forcing.g2.mode must be positive");
  }
  if (max_parallel < 0) throw ConfigError("max_parallel must be >= 0");
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
  controls.validate();
  problem().validate();
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError(key + ": expected a finite number, got '" + t + "'");
  }
  return v;
}

int parse_int(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  int v = 0;
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError(key + ": expected an integer, got '" + t + "'");
  }
  return v;
}

bool parse_bool(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  if (t == "true" || t == "1") return true;
  if (t == "false" || t == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + t + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&,
                                  const std::string&)>;

template <class T>
Setter real(T RunConfig::*m) {
  return [m](RunConfig& c, const std::string& v, const std::string& k) {
    c.*m = parse_real(v, k);
  };
}

const std::vector<std::pair<std::string, Setter>>& table() {
  using C = RunConfig;
  using S = const std::string&;
  auto forcing = [](ForcingSpec C::*g, const std::string& field) -> Setter {
    return [g, field](C& c, S v, S k) {
      ForcingSpec& f = c.*g;
      if (field == "mode") {
        f.mode = parse_int(v, k);
      } else {
        const double x = parse_real(v, k);
        if (field == "constant") f.constant = x;
        if (field == "sin_amplitude") f.sin_amplitude = x;
        if (field == "cos_amplitude") f.cos_amplitude = x;
      }
    };
  };
  static const std::vector<std::pair<std::string, Setter>> t = {
      {"grid.n", [](C& c, S v, S k) { c.n = parse_int(v, k); }},
      {"grid.length", real(&C::length)},
      {"potential.theta0",
       [](C& c, S v, S k) { c.potential.theta0 = parse_real(v, k); }},
      {"potential.thetac",
       [](C& c, S v, S k) { c.potential.thetac = parse_real(v, k); }},
      {"potential.delta",
       [](C& c, S v, S k) { c.potential.delta = parse_real(v, k); }},
      {"potential.grid_min", real(&C::potential_grid_min)},
      {"potential.grid_max", real(&C::potential_grid_max)},
      {"potential.grid_points",
       [](C& c, S v, S k) { c.potential_grid_points = parse_int(v, k); }},
      {"fluid.gamma", [](C& c, S v, S k) { c.fluid.gamma = parse_real(v, k); }},
      {"fluid.lambda1",
       [](C& c, S v, S k) { c.fluid.lambda1 = parse_real(v, k); }},
      {"fluid.lambda2",
       [](C& c, S v, S k) { c.fluid.lambda2 = parse_real(v, k); }},
      {"fluid.H", [](C& c, S v, S k) { c.fluid.H = parse_real(v, k); }},
      {"fluid.art_exponent",
       [](C& c, S v, S k) { c.fluid.art_exponent = parse_int(v, k); }},
      {"fluid.rho_max",
       [](C& c, S v, S k) { c.fluid.rho_max = parse_real(v, k); }},
      {"problem.m1", real(&C::m1)},
      {"problem.m2", real(&C::m2)},
      {"problem.eps", real(&C::eps)},
      {"forcing.g1.constant", forcing(&C::g1, "constant")},
      {"forcing.g1.sin_amplitude", forcing(&C::g1, "sin_amplitude")},
      {"forcing.g1.cos_amplitude", forcing(&C::g1, "cos_amplitude")},
      {"forcing.g1.mode", forcing(&C::g1, "mode")},
      {"forcing.g2.constant", forcing(&C::g2, "constant")},
      {"forcing.g2.sin_amplitude", forcing(&C::g2, "sin_amplitude")},
      {"forcing.g2.cos_amplitude", forcing(&C::g2, "cos_amplitude")},
      {"forcing.g2.mode", forcing(&C::g2, "mode")},
      {"mms.enabled", [](C& c, S v, S k) { c.mms_enabled = parse_bool(v, k); }},
      {"mms.rho_amp", [](C& c, S v, S k) { c.mms.rho_amp = parse_real(v, k); }},
      {"mms.c_mean", [](C& c, S v, S k) { c.mms.c_mean = parse_real(v, k); }},
      {"mms.c_amp", [](C& c, S v, S k) { c.mms.c_amp = parse_real(v, k); }},
      {"mms.mode", [](C& c, S v, S k) { c.mms.mode = parse_int(v, k); }},
      {"solver.sigma_schedule",
       [](C& c, S v, S k) { c.controls.sigma_schedule = parse_real_list(v, k); }},
      {"solver.eps_schedule",
       [](C& c, S v, S k) { c.controls.eps_schedule = parse_real_list(v, k); }},
      {"solver.damping",
       [](C& c, S v, S k) { c.controls.damping = parse_real(v, k); }},
      {"solver.tol_rel",
       [](C& c, S v, S k) { c.controls.tol_rel = parse_real(v, k); }},
      {"solver.max_picard",
       [](C& c, S v, S k) { c.controls.max_picard = parse_int(v, k); }},
      {"diagnostics.tau", real(&C::tau)},
      {"max_parallel", [](C& c, S v, S k) { c.max_parallel = parse_int(v, k); }},
      {"output_dir", [](C& c, S v, S) { c.output_dir = trim(v); }},
  };
  return t;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text,
                                    const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item, key));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& e : table()) k.push_back(e.first);
    return k;
  }();
  return keys;
}

RunConfig parse_config(std::istream& in) {
  std::map<std::string, const Setter*> setters;
  for (const auto& e : table()) setters[e.first] = &e.second;
  RunConfig cfg;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (eq == std::string::npos) {
      throw ConfigError(where + "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(where + "unknown key '" + key + "'");
    if (!seen.insert(key).second) {
      throw ConfigError(where + "duplicate key '" + key + "'");
    }
    try {
      (*it->second)(cfg, value, key);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  try {
    cfg.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return parse_config(in);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace fhch::cli
