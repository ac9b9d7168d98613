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

#ifndef FHCH_SRC_BANDED_HPP_
#define FHCH_SRC_BANDED_HPP_

#include <vector>

namespace fhch {

// Square band matrix in LAPACK general-band layout, factored by dgbsv.
class BandMatrix {
 public:
  BandMatrix(int n, int kl, int ku);

  int size() const noexcept { return n_; }
  void add(int row, int col, double v);
  double at(int row, int col) const;

  // 1 / max_j |A(i, j)| per row (1 for an empty row).
  std::vector<double> row_scale() const;

  // Row-equilibrates, then solves A x = b in place. Returns false when the
  // factorization hits an exactly zero pivot.
  bool solve(std::vector<double>& b);

 private:
  int n_, kl_, ku_, ldab_;
  std::vector<double> ab_;
};

}  // namespace fhch

#endif  // FHCH_SRC_BANDED_HPP_
