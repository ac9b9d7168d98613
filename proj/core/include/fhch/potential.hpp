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
// Flory-Huggins mixing potential and its C^2 regularization.
//
// The singular core
//
//     f2(c) = theta0/2 [ (1+c) ln(1+c) + (1-c) ln(1-c) ],   |c| < 1
//
// is replaced by an even function f2_delta defined on the whole real line.
// For c >= 0 it is assembled from four pieces joined at the knots 1-delta,
// 1 and 1+delta:
//
//     [0, 1-delta]      f2 itself
//     (1-delta, 1]      quadratic, curvature theta0 / (delta (2-delta))
//     (1, 1+delta]      cubic, curvature ramps linearly to theta_c
//     (1+delta, inf)    quadratic with curvature exactly theta_c
//
// so that f2_delta(c) - theta_c c^2 / 2 is affine for |c| > 1+delta. A knot
// value belongs to the piece on its left.

#ifndef FHCH_POTENTIAL_HPP_
#define FHCH_POTENTIAL_HPP_

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "fhch/fluid_params.hpp"

namespace fhch {

struct PotentialParams {
  double theta0 = 1.0;
  double thetac = 1.5;
  double delta = 0.1;

  /// Requires 0 < theta0 < thetac and 0 < delta < 1.
  void validate() const;
};

struct PotentialConstants {
  /// 1 - 2 / (1 + exp(2 thetac / theta0)); beyond it dF_delta(c) c > 0.
  double c_star = 0.0;
  /// sqrt(1 - theta0 / thetac), edge of the spinodal interval.
  double spinodal = 0.0;
  /// Grid maximum of |dF_delta| on [-c_star, c_star] over the delta grid.
  double bound_M_estimate = 0.0;
};

/// Delta values used for uniform-in-delta property checks.
inline constexpr std::array<double, 4> kDeltaTestGrid = {0.5, 0.1, 0.01, 1e-3};

enum class Piece { kCore = 0, kQuadratic = 1, kCubic = 2, kTail = 3 };

struct PieceValues {
  double f = 0.0;
  double fp = 0.0;
  double fpp = 0.0;
};

/// Which piece |c| falls in (left-closed knots).
Piece piece_of(double c, const PotentialParams& p);

/// Raw formula of one piece at a >= 0, ignoring its interval. Lets callers
/// compare one-sided limits at the knots. kCore requires a < 1.
PieceValues evaluate_piece(Piece piece, double a, const PotentialParams& p);

/// Singular core. Throws DomainError for |c| >= 1.
double f2_singular(double c, const PotentialParams& p);
/// F(c) = f2(c) - thetac c^2 / 2 on (-1, 1).
double F_singular(double c, const PotentialParams& p);

double f2_delta(double c, const PotentialParams& p);
double f2_delta_prime(double c, const PotentialParams& p);
double f2_delta_prime2(double c, const PotentialParams& p);

/// d f^delta / dc = f2_delta'(c) - thetac c.
double dF_delta(double c, const PotentialParams& p);
/// d^2 f^delta / dc^2 = f2_delta''(c) - thetac.
double d2F_delta(double c, const PotentialParams& p);
/// f2_delta(c) - thetac c^2 / 2.
double F_delta(double c, const PotentialParams& p);

/// rho^k through exp(k ln rho); 0 at rho = 0. Throws DomainError for
/// rho < 0 or rho > rho_max.
double guarded_power(double rho, double k, double rho_max);

/// f^delta(rho, c) = rho^(gamma-1) + H ln rho + F_delta(c). Returns -inf at
/// rho = 0; throws DomainError for rho < 0.
double free_energy_delta(double rho, double c, const FluidParams& fp,
                         const PotentialParams& p);

/// rho f^delta(rho, c) with rho ln rho := 0 at rho = 0.
double density_free_energy(double rho, double c, const FluidParams& fp,
                           const PotentialParams& p);

/// P(rho) = rho^2 d f^delta / d rho = (gamma-1) rho^gamma + H rho.
double pressure(double rho, const FluidParams& fp);
double pressure_derivative(double rho, const FluidParams& fp);

/// (ln 1/delta)^-1 rho^k, k = fp.art_exponent.
double artificial_pressure(double rho, double delta, const FluidParams& fp);
double artificial_pressure_derivative(double rho, double delta,
                                      const FluidParams& fp);

PotentialConstants constants(const PotentialParams& p);

struct CurveRow {
  double c;
  double f2d;
  double f2d_minus_quad;
  double f2d_p;
  double f2d_p_minus;
  double f2d_pp;
  double f2d_pp_minus;
};

std::vector<CurveRow> curve_table(const PotentialParams& p,
                                      std::span<const double> grid);

/// `n` equispaced points on [lo, hi].
std::vector<double> linspace(double lo, double hi, int n);

/// CSV with header c,f2d,f2d_minus_quad,f2d_p,f2d_p_minus,f2d_pp,f2d_pp_minus.
void write_curve_csv(std::ostream& out, std::span<const CurveRow> rows);

}  // namespace fhch

#endif  // FHCH_POTENTIAL_HPP_
