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
//
// Flat `key = value` run configuration. Lines starting with '#' and text
// after a '#' are comments; lists are comma separated. Unknown keys and
// repeated keys are errors.

#ifndef FHCH_TOOLS_CONFIG_HPP_
#define FHCH_TOOLS_CONFIG_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "fhch/fhch.hpp"

namespace fhch::cli {

/// g(x) = constant + sin_amplitude sin(mode pi x / L)
///                 + cos_amplitude cos(mode pi x / L)
struct ForcingSpec {
  double constant = 0.0;
  double sin_amplitude = 0.0;
  double cos_amplitude = 0.0;
  int mode = 1;

  Field sample(const Grid& grid) const;
  bool is_zero() const;
};

struct RunConfig {
  int n = 256;
  double length = 1.0;
  PotentialParams potential;
  FluidParams fluid;
  double m1 = 1.0;
  double m2 = 0.0;
  double eps = 1e-3;
  ForcingSpec g1;
  ForcingSpec g2;
  bool mms_enabled = false;
  MmsConfig mms;
  SolveControls controls;
  double potential_grid_min = -2.0;
  double potential_grid_max = 2.0;
  int potential_grid_points = 4001;
  /// <= 0 means the default support threshold 1e-6 rho0.
  double tau = 0.0;
  int max_parallel = 0;
  std::string output_dir = ".";

  /// Problem assembled from the config. With mms.enabled the manufactured
  /// sources, m2 and zero forcing replace the configured ones.
  ProblemSpec problem() const;
  /// Exact fields of the manufactured solution (mms.enabled only).
  State mms_exact() const;
  /// Re-runs every structural check; throws InvalidParameter.
  void validate() const;
};

class ConfigError : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

/// Parses and validates. Errors name the offending key and line.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

/// Every accepted key, in documentation order.
const std::vector<std::string>& config_keys();

/// Comma-separated list of reals.
std::vector<double> parse_real_list(const std::string& text,
                                    const std::string& key);

}  // namespace fhch::cli

#endif  // FHCH_TOOLS_CONFIG_HPP_
