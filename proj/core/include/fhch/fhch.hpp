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

#ifndef FHCH_FHCH_HPP_
#define FHCH_FHCH_HPP_

#include "fhch/diagnostics.hpp"
#include "fhch/errors.hpp"
#include "fhch/fluid_params.hpp"
#include "fhch/format.hpp"
#include "fhch/manufactured.hpp"
#include "fhch/mesh.hpp"
#include "fhch/potential.hpp"
#include "fhch/problem.hpp"
#include "fhch/solver.hpp"
#include "fhch/sweep.hpp"

#endif  // FHCH_FHCH_HPP_
