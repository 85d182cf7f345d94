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

// Exact finite-range evaluations of the quantities the construction's
// estimates are about. Nothing here asserts an implied constant; each
// check reports the exact value next to the analytic comparison term.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "primeavoid/high_precision.hpp"
#include "primeavoid/parallel.hpp"

namespace primeavoid {

// ------------------------------------------------------------ smooth numbers

struct SmoothBoundCheck {
    uint64_t x = 0;
    uint64_t z = 0;
    uint64_t count = 0;     // #{n <= x : P+(n) <= z}
    double bound = 0;       // x / log^5 x
    double ratio = 0;       // count / bound
    double cutoff = 0;      // x^(log3 x / (10 log2 x))
    bool within_hypothesis = false;  // z <= cutoff
};

/// x^(log3 x / (10 log2 x)); needs x > e^e.
double smooth_cutoff(uint64_t x);

SmoothBoundCheck check_smooth_bound(uint64_t x, uint64_t z, const WorkerPool& pool = WorkerPool{});

// ------------------------------------------------------------ prime sieve

struct SieveBoundCheck {
    uint64_t x = 0;
    int a = 1;
    std::size_t r_size = 0;
    uint64_t count = 0;        // #{p <= x : p != a (mod r) for all r in R}
    double mertens_bound = 0;  // (x / log x) prod_{r in R, r <= x} (1 - 1/r)
    double ratio = 0;
};

SieveBoundCheck check_sieve_bound(uint64_t x, std::span<const uint64_t> R, int a);

// ------------------------------------------------------------ character sums

struct CharSum {
    int64_t s_u_major = 0;
    int64_t s_p_major = 0;
    int64_t s_reciprocity = 0;
    std::vector<std::pair<int64_t, int64_t>> per_u;  // (u, sum_p (-u/p))
};

/// S = sum_{u in U} |sum_{p in P3} (-u/p)|^2 in three evaluation orders.
/// The reciprocity form writes u = s u1^2 u2 and uses
/// (-u/p) = (-s) (u1^2/p) (-1)^((u2-1)/2) (p/u2), valid for p = 3 (mod 4)
/// and odd u2.
CharSum char_sum_S(std::span<const int64_t> U, std::span<const uint64_t> P3);

/// sum over odd squarefree m <= x of |sum_{p in P} (p/m)|^2.
int64_t char_sum_squarefree(uint64_t x, std::span<const uint64_t> P);

// ------------------------------------------------------------ rho product

enum class RhoMethod { Subgroup, Scan };

struct RhoProduct {
    int64_t u = 0;
    uint64_t k = 1;
    uint64_t x = 0;
    uint64_t y = 0;
    HighPrecision product;  // prod_{x < p <= y} (1 - rho_u(p)/p)
    HighPrecision ratio;    // product * log y / log x
};

RhoProduct rho_product(int64_t u, uint64_t k, uint64_t x, uint64_t y,
                       RhoMethod method = RhoMethod::Subgroup,
                       const WorkerPool& pool = WorkerPool{});

// ------------------------------------------------------------ prime gaps

struct GapRecord {
    uint64_t p = 0;
    uint64_t q = 0;
    uint64_t gap = 0;
    double merit = 0;                    // gap / log p
    std::optional<double> rankin_ratio;  // gap (log3 p)^2 / (log p log2 p log4 p)
};

/// Record gaps between consecutive primes p < q <= limit.
std::vector<GapRecord> max_gap(uint64_t limit, const WorkerPool& pool = WorkerPool{});

}  // namespace primeavoid
