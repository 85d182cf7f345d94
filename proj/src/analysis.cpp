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

#include "primeavoid/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "primeavoid/modular.hpp"
#include "primeavoid/sieve_core.hpp"

namespace primeavoid {

double smooth_cutoff(uint64_t x) {
    HighPrecision X(x);
    HighPrecision L2 = log(log(X));
    HighPrecision L3 = log(L2);
    return pow(X, L3 / (10 * L2)).convert_to<double>();
}

SmoothBoundCheck check_smooth_bound(uint64_t x, uint64_t z, const WorkerPool& pool) {
    if (x < 3 || z < 1) throw std::invalid_argument("check_smooth_bound needs x >= 3, z >= 1");
    SmoothBoundCheck out;
    out.x = x;
    out.z = z;
    out.count = smooth_count(x, z, pool);
    HighPrecision bound = HighPrecision(x) / pow(log(HighPrecision(x)), 5);
    out.bound = bound.convert_to<double>();
    out.ratio = (HighPrecision(out.count) / bound).convert_to<double>();
    out.cutoff = smooth_cutoff(x);
    out.within_hypothesis = static_cast<double>(z) <= out.cutoff;
    return out;
}

SieveBoundCheck check_sieve_bound(uint64_t x, std::span<const uint64_t> R, int a) {
    if (a != 1 && a != -1) throw std::invalid_argument("check_sieve_bound: a must be +1 or -1");
    if (x < 2) throw std::invalid_argument("check_sieve_bound: x must be at least 2");
    SieveBoundCheck out;
    out.x = x;
    out.a = a;
    out.r_size = R.size();

    PrimeTable primes = primes_up_to(x);
    for (uint64_t p : primes) {
        bool avoids = true;
        for (uint64_t r : R) {
            if (p % r == mod_floor(a, r)) {
                avoids = false;
                break;
            }
        }
        if (avoids) out.count++;
    }

    HighPrecision bound = HighPrecision(x) / log(HighPrecision(x));
    for (uint64_t r : R) {
        if (r <= x) bound *= 1 - HighPrecision(1) / r;
    }
    out.mertens_bound = bound.convert_to<double>();
    out.ratio = (HighPrecision(out.count) / bound).convert_to<double>();
    return out;
}

CharSum char_sum_S(std::span<const int64_t> U, std::span<const uint64_t> P3) {
    for (uint64_t p : P3) {
        if (p % 4 != 3) throw std::invalid_argument("char_sum_S: P3 primes must be 3 mod 4");
    }
    CharSum out;

    for (int64_t u : U) {
        int64_t inner = 0;
        for (uint64_t p : P3) inner += jacobi(-u, p);
        out.per_u.emplace_back(u, inner);
        out.s_u_major += inner * inner;
    }

    std::vector<int64_t> columns(U.size(), 0);
    for (uint64_t p : P3) {
        for (std::size_t i = 0; i < U.size(); i++) columns[i] += jacobi(-U[i], p);
    }
    for (int64_t c : columns) out.s_p_major += c * c;

    for (int64_t u : U) {
        int64_t sign = u < 0 ? -1 : 1;
        uint64_t rest = static_cast<uint64_t>(u < 0 ? -u : u);
        // |u| = u1^2 * u2 with u2 squarefree.
        uint64_t u1 = 1, u2 = 1;
        for (uint64_t d = 2; d * d <= rest; d++) {
            while (rest % (d * d) == 0) {
                rest /= d * d;
                u1 *= d;
            }
            if (rest % d == 0) {
                rest /= d;
                u2 *= d;
            }
        }
        u2 *= rest;
        if (u2 % 2 == 0) throw std::invalid_argument("char_sum_S: reciprocity form needs odd u");

        int64_t twist = -sign * (((u2 - 1) / 2) % 2 == 0 ? 1 : -1);
        int64_t inner = 0;
        for (uint64_t p : P3) {
            if (u1 % p == 0) continue;  // (u1^2 / p) = 0
            inner += twist * jacobi(static_cast<int64_t>(p), u2);
        }
        out.s_reciprocity += inner * inner;
    }
    return out;
}

int64_t char_sum_squarefree(uint64_t x, std::span<const uint64_t> P) {
    std::vector<bool> squarefree(x + 1, true);
    for (uint64_t d = 2; d * d <= x; d++) {
        for (uint64_t m = d * d; m <= x; m += d * d) squarefree[m] = false;
    }
    int64_t total = 0;
    for (uint64_t m = 1; m <= x; m += 2) {
        if (!squarefree[m]) continue;
        int64_t inner = 0;
        for (uint64_t p : P) inner += jacobi(static_cast<int64_t>(p), m);
        total += inner * inner;
    }
    return total;
}

RhoProduct rho_product(int64_t u, uint64_t k, uint64_t x, uint64_t y, RhoMethod method,
                       const WorkerPool& pool) {
    if (u == 0) throw std::invalid_argument("rho_product: u must be non-zero");
    if (x < 2 || y <= x) throw std::invalid_argument("rho_product: need 2 <= x < y");

    std::vector<uint64_t> primes = primes_up_to(y, pool).in_range(x, y);
    std::vector<uint64_t> roots(primes.size());
    pool.for_each_index(primes.size(), [&](std::size_t i) {
        roots[i] = method == RhoMethod::Subgroup ? rho(u, k, primes[i]) : rho_scan(u, k, primes[i]);
    });

    // Sequential accumulation keeps the digits independent of the pool.
    HighPrecision log_sum = 0;
    for (std::size_t i = 0; i < primes.size(); i++) {
        if (roots[i] == 0) continue;
        log_sum += log1p(-HighPrecision(roots[i]) / primes[i]);
    }

    RhoProduct out;
    out.u = u;
    out.k = k;
    out.x = x;
    out.y = y;
    out.product = exp(log_sum);
    out.ratio = out.product * log(HighPrecision(y)) / log(HighPrecision(x));
    return out;
}

std::vector<GapRecord> max_gap(uint64_t limit, const WorkerPool& pool) {
    if (limit < 3) throw std::invalid_argument("max_gap: limit must be at least 3");
    PrimeTable primes = primes_up_to(limit, pool);
    std::vector<GapRecord> records;
    uint64_t best = 0;
    for (std::size_t i = 0; i + 1 < primes.size(); i++) {
        uint64_t gap = primes[i + 1] - primes[i];
        if (gap <= best) continue;
        best = gap;

        GapRecord rec;
        rec.p = primes[i];
        rec.q = primes[i + 1];
        rec.gap = gap;
        double L = std::log(static_cast<double>(rec.p));
        rec.merit = gap / L;
        double L2 = std::log(L);
        if (L2 > 0) {
            double L3 = std::log(L2);
            if (L3 > 0) {
                double L4 = std::log(L3);
                if (L4 > 0) rec.rankin_ratio = gap * L3 * L3 / (L * L2 * L4);
            }
        }
        records.push_back(rec);
    }
    return records;
}

}  // namespace primeavoid
