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

#include "fhch/mesh.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "fhch/errors.hpp"

namespace fhch {

Grid::Grid(int n_cells, double length)
    : n_(n_cells), length_(length), h_(length / n_cells) {
  if (n_cells < 8) {
    throw InvalidParameter("grid.n must be at least 8");
  }
  if (!std::isfinite(length) || length <= 0.0) {
    throw InvalidParameter("grid.length must be positive");
  }
}

Field::Field(const Grid& grid, double value)
    : grid_(grid), values_(static_cast<std::size_t>(grid.n_cells()), value) {}

Field::Field(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(grid.n_cells())) {
    throw std::invalid_argument("Field: value count does not match grid");
  }
}

Field Field::from_function(const Grid& grid,
                           const std::function<double(double)>& f) {
  Field out(grid);
  for (int i = 0; i < grid.n_cells(); ++i) out[i] = f(grid.cell_center(i));
  return out;
}

double Field::with_ghost(int i, Boundary bc) const noexcept {
  const int n = static_cast<int>(values_.size());
  if (i < 0) {
    return bc == Boundary::kNeumann ? values_[0] : -values_[0];
  }
  if (i >= n) {
    return bc == Boundary::kNeumann ? values_[n - 1] : -values_[n - 1];
  }
  return values_[i];
}

bool Field::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

Field& Field::operator+=(const Field& other) {
  assert(other.size() == size());
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  assert(other.size() == size());
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other[i];
  return *this;
}

Field& Field::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

Field hadamard(const Field& a, const Field& b) {
  Field out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

Field gradient(const Field& f, Boundary bc) {
  const int n = f.grid().n_cells();
  const double inv2h = 0.5 / f.grid().spacing();
  Field out(f.grid());
  for (int i = 0; i < n; ++i) {
    out[i] = (f.with_ghost(i + 1, bc) - f.with_ghost(i - 1, bc)) * inv2h;
  }
  return out;
}

Field divergence(const Field& f, Boundary bc) { return gradient(f, bc); }

Field laplacian(const Field& f, Boundary bc) {
  const int n = f.grid().n_cells();
  const double h = f.grid().spacing();
  const double inv_h2 = 1.0 / (h * h);
  Field out(f.grid());
  for (int i = 0; i < n; ++i) {
    out[i] = (f.with_ghost(i + 1, bc) - 2.0 * f[i] + f.with_ghost(i - 1, bc)) *
             inv_h2;
  }
  return out;
}

std::vector<double> solve_tridiagonal(std::span<const double> sub,
                                      std::span<const double> diag,
                                      std::span<const double> sup,
                                      std::span<const double> rhs) {
  const std::size_t n = diag.size();
  std::vector<double> c(n, 0.0);
  std::vector<double> x(n, 0.0);
  double pivot = diag[0];
  if (pivot == 0.0 || !std::isfinite(pivot)) {
    throw SingularSystemError("tridiagonal solve: zero pivot in row 0");
  }
  c[0] = n > 1 ? sup[0] / pivot : 0.0;
  x[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = diag[i] - sub[i] * c[i - 1];
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      throw SingularSystemError("tridiagonal solve: zero pivot in row " +
                                std::to_string(i));
    }
    c[i] = i + 1 < n ? sup[i] / pivot : 0.0;
    x[i] = (rhs[i] - sub[i] * x[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

Field laplacian_solve(const Field& rhs, Boundary bc, double shift) {
  if (!(shift >= 0.0)) {
    throw InvalidParameter("laplacian_solve: shift must be nonnegative");
  }
  const Grid& g = rhs.grid();
  const int n = g.n_cells();
  const double h = g.spacing();
  const double inv_h2 = 1.0 / (h * h);
  const bool singular = bc == Boundary::kNeumann && shift == 0.0;

  if (singular) {
    const double scale = std::max(max_abs(rhs), 1e-300);
    if (std::fabs(mean(rhs)) > 1e-10 * scale) {
      throw SolvabilityError(
          "laplacian_solve: Neumann right side has nonzero mean " +
          std::to_string(mean(rhs)));
    }
  }

  const double ghost = bc == Boundary::kNeumann ? 1.0 : -1.0;
  std::vector<double> sub(n, inv_h2), diag(n, -2.0 * inv_h2 - shift),
      sup(n, inv_h2), b(rhs.values().begin(), rhs.values().end());
  diag[0] += ghost * inv_h2;
  diag[n - 1] += ghost * inv_h2;

  if (singular) {
    // Pin x[0] = 0; the dropped row is implied by the others for mean-free
    // data. The mean is removed afterwards.
    diag[0] = 1.0;
    sup[0] = 0.0;
    b[0] = 0.0;
  }

  Field out(g, solve_tridiagonal(sub, diag, sup, b));
  if (singular) {
    const double m = mean(out);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= m;
  }
  return out;
}

double integrate(const Field& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * f.grid().spacing();
}

double mean(const Field& f) { return integrate(f) / f.grid().length(); }

Field mean_shift(const Field& f, double target, const Field& weight) {
  const double w = integrate(weight);
  if (!(w > 1e-14 * f.grid().length())) {
    throw DegenerateWeightError("mean_shift: weight integrates to " +
                                std::to_string(w));
  }
  const double s = (target - integrate(hadamard(weight, f))) / w;
  Field out = f;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += s;
  return out;
}

double face_dirichlet_energy(const Field& f, Boundary bc) {
  const int n = f.grid().n_cells();
  const double h = f.grid().spacing();
  double e = 0.0;
  for (int j = 1; j < n; ++j) {
    const double d = f[j] - f[j - 1];
    e += d * d;
  }
  e /= h;
  if (bc == Boundary::kDirichlet0) {
    e += 2.0 * (f[0] * f[0] + f[n - 1] * f[n - 1]) / h;
  }
  return e;
}

double l2_norm(const Field& f) { return std::sqrt(integrate(hadamard(f, f))); }

double max_abs(const Field& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::fabs(v));
  return m;
}

}  // namespace fhch
