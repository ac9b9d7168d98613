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

#include "fhch/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "fhch/errors.hpp"
#include "fhch/format.hpp"

namespace fhch {

namespace {

bool finite(double x) { return std::isfinite(x); }

double sign_of(double c) { return c < 0.0 ? -1.0 : 1.0; }

// theta0/2 [(1+a) ln(1+a) + (1-a) ln(1-a)] with log1p for small |a|.
double core_value(double a, double theta0) {
  const double right = (1.0 - a) == 0.0 ? 0.0 : (1.0 - a) * std::log1p(-a);
  return 0.5 * theta0 * ((1.0 + a) * std::log1p(a) + right);
}

}  // namespace

void PotentialParams::validate() const {
  if (!finite(theta0) || theta0 <= 0.0) {
    throw InvalidParameter("potential.theta0 must be positive");
  }
  if (!finite(thetac) || thetac <= theta0) {
    throw InvalidParameter(
        "potential.thetac must exceed potential.theta0 (0 < theta0 < thetac)");
  }
  if (!finite(delta) || delta <= 0.0 || delta >= 1.0) {
    throw InvalidParameter("potential.delta must lie in (0, 1)");
  }
}

void FluidParams::validate() const {
  if (!finite(gamma) || gamma <= 1.0) {
    throw InvalidParameter("fluid.gamma must be greater than 1");
  }
  if (!finite(lambda1) || lambda1 <= 0.0) {
    throw InvalidParameter("fluid.lambda1 must be positive");
  }
  if (!finite(lambda2) || 2.0 * lambda1 + 3.0 * lambda2 < 0.0) {
    throw InvalidParameter(
        "fluid.lambda2 must satisfy 2 lambda1 + 3 lambda2 >= 0");
  }
  if (!finite(H) || H <= 0.0) {
    throw InvalidParameter("fluid.H must be positive");
  }
  if (art_exponent < 2) {
    throw InvalidParameter("fluid.art_exponent must be at least 2");
  }
  if (!finite(rho_max) || rho_max <= 0.0) {
    throw InvalidParameter("fluid.rho_max must be positive");
  }
}

std::vector<std::string> FluidParams::warnings() const {
  std::vector<std::string> out;
  if (gamma <= 1.5) {
    out.emplace_back(
        "fluid.gamma <= 3/2: outside the range covered by the existence "
        "theory for curl-free bulk forces");
  }
  return out;
}

Piece piece_of(double c, const PotentialParams& p) {
  const double a = std::fabs(c);
  if (a <= 1.0 - p.delta) return Piece::kCore;
  if (a <= 1.0) return Piece::kQuadratic;
  if (a <= 1.0 + p.delta) return Piece::kCubic;
  return Piece::kTail;
}

PieceValues evaluate_piece(Piece piece, double a, const PotentialParams& p) {
  const double t0 = p.theta0;
  const double tc = p.thetac;
  const double d = p.delta;
  const double two_minus = 2.0 - d;
  const double log_ratio = std::log(two_minus / d);  // ln(2/delta - 1)
  const double k2 = t0 / (d * two_minus);
  PieceValues v;
  switch (piece) {
    case Piece::kCore: {
      if (a >= 1.0) {
        throw DomainError("core piece evaluated at |c| >= 1");
      }
      v.f = core_value(a, t0);
      v.fp = t0 * std::atanh(a);
      v.fpp = t0 / ((1.0 - a) * (1.0 + a));
      break;
    }
    case Piece::kQuadratic: {
      const double s = a - 1.0 + d;
      const double f_knot =
          0.5 * t0 * (two_minus * std::log(two_minus) + d * std::log(d));
      v.f = 0.5 * k2 * s * s + 0.5 * t0 * log_ratio * s + f_knot;
      v.fp = k2 * s + 0.5 * t0 * log_ratio;
      v.fpp = k2;
      break;
    }
    case Piece::kCubic: {
      const double r = a - 1.0;
      const double cub = (tc * d * two_minus - t0) / (d * d * two_minus);
      const double lin = t0 / two_minus + 0.5 * t0 * log_ratio;
      v.f = cub / 6.0 * r * r * r + 0.5 * k2 * r * r + lin * r +
            d * t0 / (2.0 * two_minus) + t0 * std::log(two_minus);
      v.fp = 0.5 * cub * r * r + k2 * r + lin;
      v.fpp = cub * r + k2;
      break;
    }
    case Piece::kTail: {
      const double q = a - 1.0 - d;
      const double slope =
          0.5 * tc * d + 1.5 * t0 / two_minus + 0.5 * t0 * log_ratio;
      v.f = 0.5 * tc * q * q + slope * q + tc * d * d / 6.0 +
            11.0 * t0 * d / (6.0 * two_minus) + 0.5 * t0 * d * log_ratio +
            t0 * std::log(two_minus);
      v.fp = tc * q + slope;
      v.fpp = tc;
      break;
    }
  }
  return v;
}

double f2_singular(double c, const PotentialParams& p) {
  if (!(std::fabs(c) < 1.0)) {
    throw DomainError("f2_singular: |c| must be < 1 (got " +
                      std::to_string(c) + ")");
  }
  return core_value(std::fabs(c), p.theta0);
}

double F_singular(double c, const PotentialParams& p) {
  return f2_singular(c, p) - 0.5 * p.thetac * c * c;
}

double f2_delta(double c, const PotentialParams& p) {
  const double a = std::fabs(c);
  return evaluate_piece(piece_of(a, p), a, p).f;
}

double f2_delta_prime(double c, const PotentialParams& p) {
  if (c == 0.0) return 0.0;
  const double a = std::fabs(c);
  return sign_of(c) * evaluate_piece(piece_of(a, p), a, p).fp;
}

double f2_delta_prime2(double c, const PotentialParams& p) {
  const double a = std::fabs(c);
  return evaluate_piece(piece_of(a, p), a, p).fpp;
}

double dF_delta(double c, const PotentialParams& p) {
  return f2_delta_prime(c, p) - p.thetac * c;
}

double d2F_delta(double c, const PotentialParams& p) {
  return f2_delta_prime2(c, p) - p.thetac;
}

double F_delta(double c, const PotentialParams& p) {
  return f2_delta(c, p) - 0.5 * p.thetac * c * c;
}

double guarded_power(double rho, double k, double rho_max) {
  if (!(rho >= 0.0)) {
    throw DomainError("negative density in power law");
  }
  if (rho > rho_max) {
    throw DomainError("density " + std::to_string(rho) +
                      " exceeds overflow guard rho_max");
  }
  if (rho == 0.0) return 0.0;
  return std::exp(k * std::log(rho));
}

double free_energy_delta(double rho, double c, const FluidParams& fp,
                         const PotentialParams& p) {
  if (!(rho >= 0.0)) {
    throw DomainError("free_energy_delta: rho must be nonnegative");
  }
  if (rho == 0.0) return -std::numeric_limits<double>::infinity();
  return guarded_power(rho, fp.gamma - 1.0, fp.rho_max) +
         fp.H * std::log(rho) + F_delta(c, p);
}

double density_free_energy(double rho, double c, const FluidParams& fp,
                           const PotentialParams& p) {
  if (!(rho >= 0.0)) {
    throw DomainError("density_free_energy: rho must be nonnegative");
  }
  if (rho == 0.0) return 0.0;
  return guarded_power(rho, fp.gamma, fp.rho_max) +
         fp.H * rho * std::log(rho) + rho * F_delta(c, p);
}

double pressure(double rho, const FluidParams& fp) {
  if (!(rho >= 0.0)) {
    throw DomainError("pressure: rho must be nonnegative");
  }
  return (fp.gamma - 1.0) * guarded_power(rho, fp.gamma, fp.rho_max) +
         fp.H * rho;
}

double pressure_derivative(double rho, const FluidParams& fp) {
  return fp.gamma * (fp.gamma - 1.0) *
             guarded_power(rho, fp.gamma - 1.0, fp.rho_max) +
         fp.H;
}

double artificial_pressure(double rho, double delta, const FluidParams& fp) {
  return guarded_power(rho, fp.art_exponent, fp.rho_max) /
         std::log(1.0 / delta);
}

double artificial_pressure_derivative(double rho, double delta,
                                      const FluidParams& fp) {
  return fp.art_exponent *
         guarded_power(rho, fp.art_exponent - 1, fp.rho_max) /
         std::log(1.0 / delta);
}

PotentialConstants constants(const PotentialParams& p) {
  p.validate();
  PotentialConstants out;
  out.c_star = 1.0 - 2.0 / (1.0 + std::exp(2.0 * p.thetac / p.theta0));
  out.spinodal = std::sqrt(1.0 - p.theta0 / p.thetac);

  std::vector<double> deltas(kDeltaTestGrid.begin(), kDeltaTestGrid.end());
  deltas.push_back(p.delta);
  constexpr int kPoints = 20001;
  double m = 0.0;
  for (double d : deltas) {
    PotentialParams q = p;
    q.delta = d;
    for (double c : linspace(-out.c_star, out.c_star, kPoints)) {
      m = std::max(m, std::fabs(dF_delta(c, q)));
    }
  }
  out.bound_M_estimate = m;
  return out;
}

std::vector<CurveRow> curve_table(const PotentialParams& p,
                                      std::span<const double> grid) {
  std::vector<CurveRow> rows;
  rows.reserve(grid.size());
  for (double c : grid) {
    CurveRow r;
    r.c = c;
    r.f2d = f2_delta(c, p);
    r.f2d_minus_quad = r.f2d - 0.5 * p.thetac * c * c;
    r.f2d_p = f2_delta_prime(c, p);
    r.f2d_p_minus = r.f2d_p - p.thetac * c;
    r.f2d_pp = f2_delta_prime2(c, p);
    r.f2d_pp_minus = r.f2d_pp - p.thetac;
    rows.push_back(r);
  }
  return rows;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  out.reserve(static_cast<std::size_t>(n));
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) out.push_back(lo + step * i);
  out.back() = hi;
  return out;
}

void write_curve_csv(std::ostream& out, std::span<const CurveRow> rows) {
  out << "c,f2d,f2d_minus_quad,f2d_p,f2d_p_minus,f2d_pp,f2d_pp_minus\n";
  for (const auto& r : rows) {
    out << format_sci(r.c) << ',' << format_sci(r.f2d) << ','
        << format_sci(r.f2d_minus_quad) << ',' << format_sci(r.f2d_p) << ','
        << format_sci(r.f2d_p_minus) << ',' << format_sci(r.f2d_pp) << ','
        << format_sci(r.f2d_pp_minus) << '\n';
  }
}

}  // namespace fhch
