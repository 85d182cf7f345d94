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

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace primeavoid {

/// Strong probable-prime (Miller-Rabin) test of odd n > 2 to one base.
bool strong_probable_prime(const mpz_class& n, unsigned long base);

/// Strong Lucas probable-prime test, Selfridge parameters (P = 1,
/// Q = (1 - D)/4, D the first of 5, -7, 9, -11, ... with (D/n) = -1).
bool strong_lucas_probable_prime(const mpz_class& n);

/// Baillie-PSW: small trial division, base-2 strong test, strong Lucas.
bool is_probable_prime(const mpz_class& n);

/// For n that fails the battery, the Miller-Rabin bases to record in a
/// certificate. The last base listed is one at which n is not a strong
/// probable prime, so it proves compositeness on its own. Empty when n
/// is a probable prime, n < 4, or n is even (no base needed).
std::vector<unsigned long> compositeness_bases(const mpz_class& n);

}  // namespace primeavoid
