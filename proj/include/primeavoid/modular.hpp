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
#include <optional>
#include <span>

#include <gmpxx.h>

namespace primeavoid {

/// m = residue (mod modulus), modulus prime.
struct Congruence {
    uint64_t residue = 0;
    uint64_t modulus = 2;

    friend bool operator==(const Congruence&, const Congruence&) = default;
};

/// The progression A (mod M) satisfying a whole system, 0 <= A < M.
struct CombinedClass {
    mpz_class A = 0;
    mpz_class M = 1;
};

/// Non-negative representative of a mod m.
uint64_t mod_floor(int64_t a, uint64_t m);

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m);

/// b^e mod m in [0, m); pow_mod(b, 0, m) == 1 % m.
uint64_t pow_mod(uint64_t b, uint64_t e, uint64_t m);
mpz_class pow_mod(const mpz_class& b, const mpz_class& e, const mpz_class& m);

/// Inverse of a modulo m, or nullopt when gcd(a, m) != 1. Returns 0 for m == 1.
std::optional<uint64_t> inverse_mod(uint64_t a, uint64_t m);

/// Jacobi symbol (a/m) for odd m >= 1. Throws std::invalid_argument on even m.
int jacobi(int64_t a, uint64_t m);
int jacobi(const mpz_class& a, const mpz_class& m);

/// #{n mod p : n^k + u = 0 (mod p)} through the cyclic structure of (Z/p)^*.
uint64_t rho(int64_t u, uint64_t k, uint64_t p);

/// Same count by exhaustive scan over n in [0, p). Reference path.
uint64_t rho_scan(int64_t u, uint64_t k, uint64_t p);

/// Some n with n^k = -u (mod p), or nullopt when none exists.
///
/// Only the structures the construction uses are supported:
///   gcd(k, p-1) == 1                 every residue is a k-th power;
///                                    n = (-u)^(k^-1 mod p-1).
///   gcd(k, p-1) == 2, p = 3 (mod 4)  k-th powers are the squares and
///                                    (p-1)/2 is odd and prime to k;
///                                    n = (-u)^(k^-1 mod (p-1)/2).
/// Anything else throws UnsupportedStructure. When p | u the root is 0.
std::optional<uint64_t> kth_root_mod(int64_t u, uint64_t k, uint64_t p);

/// CRT over pairwise distinct prime moduli. Throws ConflictingConstraint
/// on a repeated modulus.
CombinedClass crt_combine(std::span<const Congruence> constraints);

}  // namespace primeavoid
