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

#ifndef FHCH_FLUID_PARAMS_HPP_
#define FHCH_FLUID_PARAMS_HPP_

#include <string>
#include <vector>

namespace fhch {

/// Barotropic and viscous material constants of the mixture.
///
/// The free energy is rho^(gamma-1) + H ln(rho) + F(c) with constant H; the
/// momentum balance carries an artificial pressure (ln 1/delta)^-1 rho^k
/// with k = art_exponent.
struct FluidParams {
  double gamma = 2.0;
  double lambda1 = 1.0;
  double lambda2 = 0.0;
  double H = 1.0;
  int art_exponent = 11;
  /// Densities above this value are treated as overflow in the power laws.
  double rho_max = 1.0e6;

  /// Throws InvalidParameter naming the offending key.
  void validate() const;

  /// Non-fatal remarks (gamma at or below the 3/2 existence threshold).
  std::vector<std::string> warnings() const;

  /// Coefficient of u'' in the 1-D Lame operator.
  double lame() const noexcept { return 2.0 * lambda1 + lambda2; }
};

}  // namespace fhch

#endif  // FHCH_FLUID_PARAMS_HPP_
