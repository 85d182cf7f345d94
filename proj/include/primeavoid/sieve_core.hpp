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
#include <span>
#include <vector>

#include <gmpxx.h>

#include "primeavoid/parallel.hpp"

namespace primeavoid {

/// All primes up to an inclusive limit, ascending. Immutable once built.
class PrimeTable {
  public:
    PrimeTable() = default;
    PrimeTable(uint64_t limit, std::vector<uint64_t> primes)
        : limit_(limit), primes_(std::move(primes)) {}

    uint64_t limit() const { return limit_; }
    std::span<const uint64_t> primes() const { return primes_; }
    std::size_t size() const { return primes_.size(); }
    bool empty() const { return primes_.empty(); }

    auto begin() const { return primes_.begin(); }
    auto end() const { return primes_.end(); }
    uint64_t operator[](std::size_t i) const { return primes_[i]; }

    // Binary search; n must not exceed limit() to be meaningful.
    bool contains(uint64_t n) const;

    // Number of primes p <= n (n clamped to limit()).
    std::size_t count_up_to(uint64_t n) const;

    // Primes p with lo < p <= hi.
    std::vector<uint64_t> in_range(uint64_t lo, uint64_t hi) const;

    // Product of primes p with lo < p <= hi.
    mpz_class product(uint64_t lo, uint64_t hi) const;

  private:
    uint64_t limit_ = 0;
    std::vector<uint64_t> primes_;
};

/// Segmented sieve of Eratosthenes. Segments may be handed to the pool;
/// the output is identical for every pool size.
PrimeTable primes_up_to(uint64_t n, const WorkerPool& pool = WorkerPool{});

/// Primes p with lo < p <= hi and p = a (mod q), ascending.
std::vector<uint64_t> primes_in_range_ap(uint64_t lo, uint64_t hi, uint64_t a, uint64_t q);

/// Largest prime factor by trial division; largest_prime_factor(1) == 1.
uint64_t largest_prime_factor(uint64_t n);

/// #{1 <= n <= x : P+(n) <= z}, exact.
uint64_t smooth_count(uint64_t x, uint64_t z, const WorkerPool& pool = WorkerPool{});

/// Deterministic trial division check, for small n and for tests.
bool is_prime_trial(uint64_t n);

}  // namespace primeavoid
