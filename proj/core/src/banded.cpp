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

#include "banded.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

extern "C" void dgbsv_(const int* n, const int* kl, const int* ku,
                       const int* nrhs, double* ab, const int* ldab, int* ipiv,
                       double* b, const int* ldb, int* info);

namespace fhch {

BandMatrix::BandMatrix(int n, int kl, int ku)
    : n_(n),
      kl_(kl),
      ku_(ku),
      ldab_(2 * kl + ku + 1),
      ab_(static_cast<std::size_t>(ldab_) * n, 0.0) {}

void BandMatrix::add(int row, int col, double v) {
  assert(row - col <= kl_ && col - row <= ku_);
  ab_[static_cast<std::size_t>(kl_ + ku_ + row - col) +
      static_cast<std::size_t>(col) * ldab_] += v;
}

double BandMatrix::at(int row, int col) const {
  if (row - col > kl_ || col - row > ku_) return 0.0;
  return ab_[static_cast<std::size_t>(kl_ + ku_ + row - col) +
             static_cast<std::size_t>(col) * ldab_];
}

std::vector<double> BandMatrix::row_scale() const {
  std::vector<double> w(static_cast<std::size_t>(n_), 0.0);
  for (int i = 0; i < n_; ++i) {
    const int lo = std::max(0, i - kl_);
    const int hi = std::min(n_ - 1, i + ku_);
    double m = 0.0;
    for (int j = lo; j <= hi; ++j) m = std::max(m, std::fabs(at(i, j)));
    w[i] = m > 0.0 ? 1.0 / m : 1.0;
  }
  return w;
}

bool BandMatrix::solve(std::vector<double>& b) {
  const std::vector<double> w = row_scale();
  for (int j = 0; j < n_; ++j) {
    const int lo = std::max(0, j - ku_);
    const int hi = std::min(n_ - 1, j + kl_);
    for (int i = lo; i <= hi; ++i) {
      ab_[static_cast<std::size_t>(kl_ + ku_ + i - j) +
          static_cast<std::size_t>(j) * ldab_] *= w[i];
    }
  }
  for (int i = 0; i < n_; ++i) b[i] *= w[i];
  std::vector<int> ipiv(static_cast<std::size_t>(n_));
  const int nrhs = 1;
  int info = 0;
  dgbsv_(&n_, &kl_, &ku_, &nrhs, ab_.data(), &ldab_, ipiv.data(), b.data(),
         &n_, &info);
  return info == 0;
}

}  // namespace fhch
