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

#ifndef FHCH_ERRORS_HPP_
#define FHCH_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fhch {

// Argument outside the domain of a closed-form expression (|c| >= 1 for the
// singular potential, negative density, density above the overflow guard).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Parameter set violating a structural invariant.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Pure-Neumann problem whose right side is not mean-free.
class SolvabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Weighted mean requested against a weight with (near) zero integral.
class DegenerateWeightError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Assembled linear system lost diagonal dominance or produced a zero pivot.
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed-point or Newton iteration blew up. Carries the continuation stage.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, double sigma = -1.0,
                  double eps = -1.0)
      : std::runtime_error(what), sigma_(sigma), eps_(eps) {}

  double sigma() const noexcept { return sigma_; }
  double eps() const noexcept { return eps_; }

 private:
  double sigma_;
  double eps_;
};

}  // namespace fhch

#endif  // FHCH_ERRORS_HPP_
