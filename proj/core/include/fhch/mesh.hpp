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
// Uniform cell-centred grid on (0, L) and the discrete calculus used by every
// sub-problem. Boundary data enter through one ghost cell on each side:
//
//   Neumann      f[-1] = f[0],   f[n] = f[n-1]    (reflection)
//   Dirichlet0   f[-1] = -f[0],  f[n] = -f[n-1]   (odd extension)

#ifndef FHCH_MESH_HPP_
#define FHCH_MESH_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fhch {

class Grid {
 public:
  /// Throws InvalidParameter unless n_cells >= 8 and length > 0.
  Grid(int n_cells, double length);

  int n_cells() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  double spacing() const noexcept { return h_; }
  double cell_center(int i) const noexcept { return (i + 0.5) * h_; }
  double face(int j) const noexcept { return j * h_; }

  bool operator==(const Grid&) const = default;

 private:
  int n_;
  double length_;
  double h_;
};

enum class Boundary { kNeumann, kDirichlet0 };

/// Grid function sampled at cell centres.
class Field {
 public:
  explicit Field(const Grid& grid, double value = 0.0);
  Field(const Grid& grid, std::vector<double> values);

  static Field from_function(const Grid& grid,
                             const std::function<double(double)>& f);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Value with the ghost convention of `bc` for i in [-1, n].
  double with_ghost(int i, Boundary bc) const noexcept;

  bool all_finite() const noexcept;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);

 private:
  Grid grid_;
  std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);
/// Pointwise product.
Field hadamard(const Field& a, const Field& b);

/// Second-order central difference (f[i+1] - f[i-1]) / 2h with ghosts.
Field gradient(const Field& f, Boundary bc);
/// In 1-D the divergence is the derivative; same stencil as gradient.
Field divergence(const Field& f, Boundary bc);
/// (f[i+1] - 2 f[i] + f[i-1]) / h^2 with ghosts.
Field laplacian(const Field& f, Boundary bc);

/// Solves (Delta_h - shift I) x = rhs.
///
/// For Neumann with shift = 0 the operator is singular; rhs must be mean
/// free (|mean| <= 1e-10 * max|rhs|, otherwise SolvabilityError) and the
/// returned solution has zero mean.
Field laplacian_solve(const Field& rhs, Boundary bc, double shift = 0.0);

/// Midpoint rule sum_i f[i] h.
double integrate(const Field& f);
double mean(const Field& f);

/// f + s with the constant s chosen so that integrate(weight (f + s)) equals
/// target. Throws DegenerateWeightError when integrate(weight) <= 1e-14 L.
Field mean_shift(const Field& f, double target, const Field& weight);

/// Face-based Dirichlet energy sum_faces w_j ((f[j] - f[j-1]) / h)^2 with
/// the ghost convention of `bc`. Boundary faces of a Dirichlet0 field use the
/// half-cell difference f[0] / (h/2) with weight h/2. This is the quadratic
/// form of -Delta_h: integrate(f * laplacian(f)) = -face_dirichlet_energy(f).
double face_dirichlet_energy(const Field& f, Boundary bc);

/// sqrt(integrate(f^2)).
double l2_norm(const Field& f);
double max_abs(const Field& f);

/// Thomas elimination for a tridiagonal system; sub[0] and sup[n-1] unused.
/// Throws SingularSystemError on a zero or non-finite pivot.
std::vector<double> solve_tridiagonal(std::span<const double> sub,
                                      std::span<const double> diag,
                                      std::span<const double> sup,
                                      std::span<const double> rhs);

}  // namespace fhch

#endif  // FHCH_MESH_HPP_
