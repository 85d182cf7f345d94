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

// Rankin-type construction of m such that m^k + u is composite for every
// |u| <= y.
//
// Primes up to x are split into
//   P1 = {p <= log x} u {z < p <= x/4}   m = 0 (mod p)
//   P2 = {log x < p <= z}                m = 1 (mod p)
// and the values u they leave uncovered (the exceptional set U) are each
// given a private prime p_u above x/4 with m^k = -u (mod p_u). For odd k
// every residue is a k-th power modulo p = 2 (mod k). For even k only
// quadratic residues are reachable, through p = 3 (mod 2k); whatever
// cannot be matched is left to a search over m = M*j + A, with M*j + A
// running through residues modulo the untouched primes in (x/2, x].

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "primeavoid/modular.hpp"
#include "primeavoid/parallel.hpp"
#include "primeavoid/sieve_core.hpp"

namespace primeavoid {

/// Positive rational num/den in lowest terms.
struct Rational {
    int64_t num = 1;
    int64_t den = 1;

    Rational() = default;
    Rational(int64_t n, int64_t d = 1);

    /// Accepts "3", "0.75", "3/4". Throws ParameterError otherwise.
    static Rational parse(const std::string& text);

    std::string str() const;

    friend bool operator==(const Rational&, const Rational&) = default;
};

struct Params {
    uint64_t k = 1;
    uint64_t x = 0;
    Rational c1;
    Rational c2;
    Rational delta;  // 1 / (15 phi(2k)); drives U' for even k

    uint64_t y = 0;          // current target; adaptive mode lowers it
    uint64_t z = 0;          // floor(x^(c1 log3 x / log2 x))
    uint64_t log_x_floor = 0;  // p <= log x  <=>  p <= log_x_floor
    uint64_t u_prime_threshold = 0;  // floor(delta x / log x)

    PrimeTable primes;  // every prime <= x
    std::vector<uint64_t> P1;
    std::vector<uint64_t> P2;
    std::vector<uint64_t> P3;  // even k only

    bool in_P1(uint64_t p) const;
    bool in_P2(uint64_t p) const;
};

struct ExceptionalSet {
    std::vector<int64_t> members;  // ascending

    bool contains(int64_t u) const;
    std::size_t size() const { return members.size(); }
};

struct Assignment {
    std::map<int64_t, uint64_t> pairs;  // u -> p_u
    std::vector<int64_t> leftovers;     // ascending; even k only
};

struct ConstructionResult {
    Params params;
    uint64_t y_target = 0;
    CombinedClass system;
    mpz_class j;
    mpz_class m;
    mpz_class N;  // product of primes <= x
    Assignment assignment;
};

enum class Mode { Adaptive, Strict };

struct ConstructOptions {
    Rational c1{1};
    Rational c2{1};
    Mode mode = Mode::Adaptive;
    uint64_t j_max = 1'000'000;
};

/// Throws ParameterError for x < 16, x > 10^4, k == 0 or y < 1.
Params derive_params(uint64_t k, uint64_t x, Rational c1, Rational c2,
                     const WorkerPool& pool = WorkerPool{});

/// (0 mod p) for p in P1, (1 mod p) for p in P2, ascending by modulus.
std::vector<Congruence> residue_system(const Params& params);

/// Nonzero u in [-y, y] with no prime factor in P1 and, when |u| is 1 or
/// prime, no prime of P2 dividing u + 1.
ExceptionalSet exceptional_set(const Params& params);

/// Candidate moduli for odd k: primes in (x/4, x], restricted to
/// p = 2 (mod k) when k > 1.
std::vector<uint64_t> odd_candidates(const Params& params);

/// Throws InsufficientPrimes when |U| exceeds the candidate supply.
Assignment match_odd(const ExceptionalSet& U, const Params& params);

/// Greedy matching into P3 with (-u / p_u) = +1. Fewest candidates
/// first, then |u|, then negative before positive; each u takes the
/// smallest free candidate. Unmatched u become leftovers.
Assignment match_even(const ExceptionalSet& U, const Params& params);

/// u in U with #{p in P3 : (-u/p) = +1} <= delta x / log x.
std::vector<int64_t> u_prime_analytic(const ExceptionalSet& U, const Params& params);

struct JSearch {
    mpz_class j;
    mpz_class m;
};

/// Smallest admissible j (see README) with m = M*j + A <= 2N, m > N for
/// odd k, m^k - y > x, and (M*j + A)^k + u composite for each leftover u.
/// With no leftovers only the size constraints apply; otherwise at most
/// j_max candidates are examined before BudgetExhausted.
JSearch search_j(const CombinedClass& system, const std::vector<int64_t>& leftovers,
                 uint64_t k, const Params& params, uint64_t j_max,
                 const WorkerPool& pool = WorkerPool{});

ConstructionResult construct(uint64_t k, uint64_t x, const ConstructOptions& options,
                             const WorkerPool& pool = WorkerPool{});

/// Which branch of the covering argument handles u.
enum class CoverageCase { P1Divisor, P2Unit, Matched, Leftover, Uncovered };

const char* to_string(CoverageCase c);

CoverageCase classify_coverage(const ConstructionResult& result, int64_t u);

nlohmann::ordered_json result_to_json(const ConstructionResult& result);

/// Re-derives Params from (k, x, c1, c2, y_achieved) and checks that the
/// stored A, M, j and m are mutually consistent.
ConstructionResult result_from_json(const nlohmann::json& doc,
                                    const WorkerPool& pool = WorkerPool{});

}  // namespace primeavoid
