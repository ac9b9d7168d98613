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
// Manufactured solutions for the stationary system. With k pi x / L = t:
//
//   rho* = rho0 (1 + a cos t)
//   u*   = (eps^4 rho*' + eps^2 int_0^x (rho0 - rho*)) / rho*
//   c*   = cbar + d cos t
//   mu*  = dF(c*) - c*'' / rho*
//
// so continuity and the c equation hold without sources, and only the
// momentum and mu equations carry additive terms.

#ifndef FHCH_MANUFACTURED_HPP_
#define FHCH_MANUFACTURED_HPP_

#include "fhch/problem.hpp"

namespace fhch {

/// Value with first and second derivative in x.
struct Jet2 {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  static Jet2 variable(double x) { return {x, 1.0, 0.0}; }
  static Jet2 constant(double c) { return {c, 0.0, 0.0}; }
};

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator/(const Jet2& a, const Jet2& b);
Jet2 operator*(double s, const Jet2& a);
Jet2 operator+(double s, const Jet2& a);
Jet2 sin(const Jet2& a);
Jet2 cos(const Jet2& a);
Jet2 atanh(const Jet2& a);
/// Chain rule with g, g', g'' supplied by the caller.
Jet2 compose(const Jet2& a, double g, double gp, double gpp);

struct MmsConfig {
  double rho_amp = 0.2;
  double c_mean = 0.2;
  double c_amp = 0.3;
  int mode = 1;

  /// |rho_amp| < 1, mode >= 1 and |c_mean| + |c_amp| inside the core piece.
  void validate(const PotentialParams& p) const;
};

struct ManufacturedProblem {
  ProblemSpec spec;
  State exact;
};

/// Copies `base`, sets eps, zero forcing, m2 from the c constraint and the
/// equation sources. m1 and the grid are taken from `base`.
ManufacturedProblem manufactured_problem(const ProblemSpec& base,
                                         const MmsConfig& cfg, double eps);

/// Discrete relative L2 error ||a - b|| / ||b||.
double relative_l2_error(const Field& a, const Field& b);

}  // namespace fhch

#endif  // FHCH_MANUFACTURED_HPP_
