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

#include <doctest.h>

#include <random>
#include <vector>

#include "primeavoid/sieve_core.hpp"

using namespace primeavoid;

namespace {

// Test-local oracles, deliberately naive.
bool naive_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; d++) {
        if (n % d == 0) return false;
    }
    return true;
}

uint64_t naive_lpf(uint64_t n) {
    uint64_t best = 1;
    for (uint64_t d = 2; d <= n; d++) {
        while (n % d == 0) {
            best = d;
            n /= d;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("primes_up_to small tables") {
    auto t = primes_up_to(10);
    CHECK(std::vector<uint64_t>(t.begin(), t.end()) == std::vector<uint64_t>{2, 3, 5, 7});
    CHECK(t.limit() == 10);
    CHECK(primes_up_to(1).empty());
    CHECK(primes_up_to(0).empty());
    CHECK(primes_up_to(2).size() == 1);
}

TEST_CASE("primes_up_to(10^6) count matches trial division") {
    // 78498, computed once by a standalone trial-division scan.
    CHECK(primes_up_to(1'000'000).size() == 78498);
}

TEST_CASE("segment boundaries and pool size do not change the table") {
    const uint64_t n = (1 << 18) * 2 + 777;
    auto serial = primes_up_to(n);
    auto parallel = primes_up_to(n, WorkerPool(4));
    REQUIRE(serial.size() == parallel.size());
    CHECK(std::equal(serial.begin(), serial.end(), parallel.begin()));

    std::vector<uint64_t> expect;
    for (uint64_t i = (1 << 18) - 500; i <= (1 << 18) + 500; i++) {
        if (naive_prime(i)) expect.push_back(i);
    }
    CHECK(serial.in_range((1 << 18) - 501, (1 << 18) + 500) == expect);

    uint64_t prev = 0;
    for (uint64_t p : serial) {
        CHECK(p > prev);
        prev = p;
    }
}

TEST_CASE("PrimeTable helpers") {
    auto t = primes_up_to(100);
    CHECK(t.contains(97));
    CHECK_FALSE(t.contains(91));
    CHECK(t.count_up_to(10) == 4);
    CHECK(t.count_up_to(1000) == 25);
    CHECK(t.in_range(10, 20) == std::vector<uint64_t>{11, 13, 17, 19});
    CHECK(t.product(0, 10) == 210);
    CHECK(t.product(50, 50) == 1);
}

TEST_CASE("primes_in_range_ap") {
    CHECK(primes_in_range_ap(4, 20, 3, 4) == std::vector<uint64_t>{7, 11, 19});
    CHECK(primes_in_range_ap(10, 20, 2, 4).empty());
    CHECK(primes_in_range_ap(10, 30, 0, 1) == primes_up_to(30).in_range(10, 30));
    // gcd(a, q) > 1 leaves at most p = a.
    CHECK(primes_in_range_ap(0, 100, 3, 6) == std::vector<uint64_t>{3});
}

TEST_CASE("primes_in_range_ap partitions the range over residues") {
    for (uint64_t q : {1, 2, 3, 4, 7, 12, 30}) {
        for (auto [lo, hi] : {std::pair<uint64_t, uint64_t>{0, 200}, {37, 1000}, {1000, 5000}}) {
            std::size_t total = 0;
            for (uint64_t a = 0; a < q; a++) total += primes_in_range_ap(lo, hi, a, q).size();
            CHECK(total == primes_up_to(hi).in_range(lo, hi).size());
        }
    }
}

TEST_CASE("largest_prime_factor") {
    CHECK(largest_prime_factor(12) == 3);
    CHECK(largest_prime_factor(1) == 1);
    CHECK(largest_prime_factor(97) == 97);
    CHECK(largest_prime_factor(2ull * 2 * 2 * 4294967291ull) == 4294967291ull);
    for (uint64_t n = 2; n <= 10'000; n++) {
        uint64_t p = largest_prime_factor(n);
        REQUIRE(n % p == 0);
        REQUIRE(naive_prime(p));
        REQUIRE(p == naive_lpf(n));
    }
}

TEST_CASE("smooth_count") {
    CHECK(smooth_count(10, 2) == 4);   // 1, 2, 4, 8
    CHECK(smooth_count(100, 5) == 34); // direct enumeration of n <= 100
    CHECK(smooth_count(1234, 1234) == 1234);
    CHECK(smooth_count(1234, 5000) == 1234);
    for (uint64_t x : {1, 2, 50, 999}) CHECK(smooth_count(x, 1) == 1);
}

TEST_CASE("smooth_count agrees with enumeration and is monotone") {
    const uint64_t x_max = 3000;
    std::vector<uint64_t> lpf(x_max + 1);
    for (uint64_t n = 1; n <= x_max; n++) lpf[n] = naive_lpf(n);
    for (uint64_t z : {1, 2, 3, 7, 10, 31, 100, 2999}) {
        uint64_t running = 0, prev = 0;
        for (uint64_t x = 1; x <= x_max; x++) {
            if (lpf[x] <= z) running++;
            if (x % 97 == 0 || x == x_max) {
                uint64_t c = smooth_count(x, z);
                CHECK(c == running);
                CHECK(c >= prev);
                prev = c;
            }
        }
    }
    for (uint64_t z = 1; z < 60; z++) CHECK(smooth_count(5000, z) <= smooth_count(5000, z + 1));
}

TEST_CASE("smooth_count across segments, serial vs pooled") {
    const uint64_t x = 700'000;
    uint64_t brute = 0;
    for (uint64_t n = 1; n <= x; n++) {
        if (largest_prime_factor(n) <= 50) brute++;
    }
    CHECK(smooth_count(x, 50) == brute);
    CHECK(smooth_count(x, 50, WorkerPool(4)) == brute);
}

TEST_CASE("is_prime_trial matches naive check") {
    for (uint64_t n = 0; n < 5000; n++) REQUIRE(is_prime_trial(n) == naive_prime(n));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; i++) {
        uint64_t n = rng() % 100'000'000;
        REQUIRE(is_prime_trial(n) == naive_prime(n));
    }
}
