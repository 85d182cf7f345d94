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

#include <stdexcept>
#include <string>

namespace primeavoid {

// Parameters outside the regime where the construction is defined
// (x < 16, empty target interval, malformed rationals).
class ParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Two congruences share a modulus.
class ConflictingConstraint : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// k-th root requested for a (k, p) pair outside the supported
// gcd(k, p-1) in {1, 2} structure.
class UnsupportedStructure : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Not enough primes to give every exceptional u its own modulus.
class InsufficientPrimes : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// The j search ran past its budget.
class BudgetExhausted : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Some m^k + u has no witness and looks prime. Always a bug.
class ConstructionUnsound : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

}  // namespace primeavoid
