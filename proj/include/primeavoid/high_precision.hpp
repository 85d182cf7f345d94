// Copyright 2026 The primeavoid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include <boost/multiprecision/mpfr.hpp>

namespace primeavoid {

// 60 significant decimal digits, MPFR backed.
using HighPrecision = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<60>>;

// Fixed-format scientific rendering so output is stable across runs.
inline std::string to_string(const HighPrecision& v, int digits = 30) {
    return v.str(digits, std::ios_base::scientific);
}

}  // namespace primeavoid
