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

#ifndef FHCH_FORMAT_HPP_
#define FHCH_FORMAT_HPP_

#include <string>

namespace fhch {

/// printf "%.12e"; non-finite values print as nan, inf, -inf.
std::string format_sci(double value);

}  // namespace fhch

#endif  // FHCH_FORMAT_HPP_
