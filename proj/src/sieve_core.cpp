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

#include "primeavoid/sieve_core.hpp"

#include <algorithm>
#include <cmath>

namespace primeavoid {

namespace {

// 256 KiB of flags per segment.
constexpr uint64_t kSegmentSize = 1 << 18;

uint64_t isqrt(uint64_t n) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) r--;
    while ((r + 1) * (r + 1) <= n) r++;
    return r;
}

std::vector<uint64_t> simple_sieve(uint64_t n) {
    std::vector<uint64_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (uint64_t i = 2; i <= n; i++) {
        if (composite[i]) continue;
        out.push_back(i);
        for (uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

// Primes in [lo, hi], given every prime up to sqrt(hi).
std::vector<uint64_t> sieve_segment(uint64_t lo, uint64_t hi, std::span<const uint64_t> base) {
    std::vector<uint64_t> out;
    if (hi < 2 || lo > hi) return out;
    lo = std::max<uint64_t>(lo, 2);
    std::vector<uint8_t> composite(hi - lo + 1, 0);
    for (uint64_t p : base) {
        if (p * p > hi) break;
        uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
        for (uint64_t m = start; m <= hi; m += p) composite[m - lo] = 1;
    }
    for (uint64_t i = 0; i < composite.size(); i++) {
        if (!composite[i]) out.push_back(lo + i);
    }
    return out;
}

// Primes in (lo, hi], segment by segment.
std::vector<uint64_t> sieve_range(uint64_t lo, uint64_t hi, const WorkerPool& pool) {
    if (hi <= lo || hi < 2) return {};
    std::vector<uint64_t> base = simple_sieve(isqrt(hi));
    uint64_t first = lo + 1;
    uint64_t segments = (hi - first) / kSegmentSize + 1;

    std::vector<std::vector<uint64_t>> parts(segments);
    pool.for_each_index(segments, [&](std::size_t s) {
        uint64_t seg_lo = first + s * kSegmentSize;
        uint64_t seg_hi = std::min(hi, seg_lo + kSegmentSize - 1);
        parts[s] = sieve_segment(seg_lo, seg_hi, base);
    });

    std::vector<uint64_t> out;
    std::size_t total = 0;
    for (const auto& part : parts) total += part.size();
    out.reserve(total);
    for (const auto& part : parts) out.insert(out.end(), part.begin(), part.end());
    return out;
}

}  // namespace

bool PrimeTable::contains(uint64_t n) const {
    return std::binary_search(primes_.begin(), primes_.end(), n);
}

std::size_t PrimeTable::count_up_to(uint64_t n) const {
    return std::upper_bound(primes_.begin(), primes_.end(), n) - primes_.begin();
}

std::vector<uint64_t> PrimeTable::in_range(uint64_t lo, uint64_t hi) const {
    if (hi <= lo) return {};
    auto first = std::upper_bound(primes_.begin(), primes_.end(), lo);
    auto last = std::upper_bound(primes_.begin(), primes_.end(), hi);
    return {first, last};
}

mpz_class PrimeTable::product(uint64_t lo, uint64_t hi) const {
    mpz_class out = 1;
    for (uint64_t p : in_range(lo, hi)) out *= static_cast<unsigned long>(p);
    return out;
}

PrimeTable primes_up_to(uint64_t n, const WorkerPool& pool) {
    return PrimeTable(n, sieve_range(0, n, pool));
}

std::vector<uint64_t> primes_in_range_ap(uint64_t lo, uint64_t hi, uint64_t a, uint64_t q) {
    std::vector<uint64_t> out;
    for (uint64_t p : sieve_range(lo, hi, WorkerPool{})) {
        if (p % q == a) out.push_back(p);
    }
    return out;
}

bool is_prime_trial(uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (uint64_t d = 5; d <= n / d; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

uint64_t largest_prime_factor(uint64_t n) {
    uint64_t largest = 1;
    for (uint64_t p : {2, 3}) {
        while (n % p == 0) {
            largest = p;
            n /= p;
        }
    }
    for (uint64_t d = 5; d <= n / d; d += 6) {
        for (uint64_t p : {d, d + 2}) {
            while (n % p == 0) {
                largest = p;
                n /= p;
            }
        }
    }
    return n > 1 ? n : largest;
}

uint64_t smooth_count(uint64_t x, uint64_t z, const WorkerPool& pool) {
    if (x == 0) return 0;
    if (z >= x) return x;
    std::vector<uint64_t> small = simple_sieve(z);
    uint64_t segments = (x - 1) / kSegmentSize + 1;

    // Each segment starts from n itself and divides out every p <= z;
    // n is z-smooth exactly when the cofactor reaches 1.
    std::vector<uint64_t> counts(segments, 0);
    pool.for_each_index(segments, [&](std::size_t s) {
        uint64_t lo = 1 + s * kSegmentSize;
        uint64_t hi = std::min(x, lo + kSegmentSize - 1);
        std::vector<uint64_t> rem(hi - lo + 1);
        for (uint64_t i = 0; i < rem.size(); i++) rem[i] = lo + i;
        for (uint64_t p : small) {
            uint64_t start = (lo + p - 1) / p * p;
            for (uint64_t m = start; m <= hi; m += p) {
                uint64_t& r = rem[m - lo];
                do {
                    r /= p;
                } while (r % p == 0);
            }
        }
        counts[s] = std::count(rem.begin(), rem.end(), uint64_t{1});
    });

    uint64_t total = 0;
    for (uint64_t c : counts) total += c;
    return total;
}

}  // namespace primeavoid
