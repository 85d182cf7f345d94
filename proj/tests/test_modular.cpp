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

#include <numeric>
#include <random>

#include "primeavoid/errors.hpp"
#include "primeavoid/modular.hpp"
#include "primeavoid/primality.hpp"
#include "primeavoid/sieve_core.hpp"

using namespace primeavoid;

TEST_CASE("pow_mod") {
    CHECK(pow_mod(3, 2, 7) == 2);
    CHECK(pow_mod(123, 0, 7) == 1);
    CHECK(pow_mod(123, 0, 1) == 0);

    // 117 sequential multiplications mod 101.
    uint64_t seq = 1;
    for (int i = 0; i < 117; i++) seq = seq * 5 % 101;
    CHECK(seq == 54);
    CHECK(pow_mod(5, 117, 101) == 54);

    uint64_t big = 0xffffffffffffffc5ull;  // largest 64-bit prime
    CHECK(pow_mod(2, big - 1, big) == 1);
    CHECK(pow_mod(mpz_class(-3), mpz_class(3), mpz_class(7)) == 1);  // -27 = 1 (mod 7)
    CHECK(pow_mod(mpz_class(5), mpz_class(117), mpz_class(101)) == 54);
}

TEST_CASE("mod_floor and inverse_mod") {
    CHECK(mod_floor(-1, 7) == 6);
    CHECK(mod_floor(-14, 7) == 0);
    CHECK(mod_floor(INT64_MIN, 3) == 1);  // 2^63 = 2 (mod 3)
    CHECK(inverse_mod(3, 7) == 5u);
    CHECK_FALSE(inverse_mod(4, 8).has_value());
    CHECK(inverse_mod(5, 1) == 0u);
    for (uint64_t m = 2; m < 200; m++) {
        for (uint64_t a = 0; a < m; a++) {
            auto inv = inverse_mod(a, m);
            CHECK(inv.has_value() == (std::gcd(a, m) == 1));
            if (inv) CHECK(a * *inv % m == 1);
        }
    }
}

TEST_CASE("jacobi examples") {
    CHECK(jacobi(2, 7) == 1);  // 3^2 = 2 (mod 7)
    for (int64_t a : {-5, 0, 1, 2, 99}) CHECK(jacobi(a, 1) == 1);
    for (uint64_t p : primes_up_to(1000)) {
        if (p % 4 == 3) CHECK(jacobi(-1, p) == -1);
        if (p % 4 == 1) CHECK(jacobi(-1, p) == 1);
    }
    CHECK_THROWS_AS(jacobi(3, 8), std::invalid_argument);
    CHECK_THROWS_AS(jacobi(mpz_class(3), mpz_class(0)), std::invalid_argument);
}

TEST_CASE("jacobi equals Euler's criterion on odd primes up to 1000") {
    for (uint64_t p : primes_up_to(1000)) {
        if (p == 2) continue;
        for (uint64_t a = 0; a < p; a++) {
            uint64_t e = pow_mod(a, (p - 1) / 2, p);
            int euler = a == 0 ? 0 : (e == 1 ? 1 : -1);
            REQUIRE(jacobi(static_cast<int64_t>(a), p) == euler);
            REQUIRE(jacobi(mpz_class(static_cast<unsigned long>(a)), mpz_class(static_cast<unsigned long>(p))) == euler);
        }
    }
}

TEST_CASE("jacobi on composite moduli is multiplicative") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 3000; i++) {
        uint64_t m = (rng() % 100'000) * 2 + 1;
        int64_t a = static_cast<int64_t>(rng() % 1'000'000) - 500'000;
        // Product of Legendre symbols over the factorisation of m.
        int expect = 1;
        uint64_t rest = m;
        for (uint64_t d = 3; d * d <= rest; d += 2) {
            while (rest % d == 0) {
                expect *= jacobi(a, d);
                rest /= d;
            }
        }
        if (rest > 1) expect *= jacobi(a, rest);
        REQUIRE(jacobi(a, m) == expect);
        mpz_class A = a, M = static_cast<unsigned long>(m);
        REQUIRE(jacobi(A, M) == mpz_jacobi(A.get_mpz_t(), M.get_mpz_t()));
    }
}

TEST_CASE("rho examples") {
    for (uint64_t p : {2, 3, 7, 101}) {
        for (int64_t u : {-9, -1, 1, 5, 200}) CHECK(rho(u, 1, p) == 1);
    }
    CHECK(rho(-2, 2, 7) == 2);
    CHECK(rho_scan(-2, 2, 7) == 2);
    CHECK(rho(2, 2, 7) == 0);
    CHECK(rho_scan(2, 2, 7) == 0);
    CHECK(rho(7, 3, 7) == 1);  // p | u
}

TEST_CASE("rho subgroup path equals exhaustive scan, mass and structure") {
    for (uint64_t p : primes_up_to(200)) {
        for (uint64_t k = 1; k <= 6; k++) {
            uint64_t mass = 0;
            for (int64_t u = 1; u <= static_cast<int64_t>(p); u++) mass += rho(-u, k, p);
            REQUIRE(mass == p);
            for (int64_t u = -30; u <= 30; u++) {
                if (u == 0) continue;
                uint64_t r = rho(u, k, p);
                REQUIRE(r == rho_scan(u, k, p));
                if (u % static_cast<int64_t>(p) != 0) {
                    REQUIRE((r == 0 || r == std::gcd(k, p - 1)));
                }
            }
        }
    }
}

TEST_CASE("kth_root_mod") {
    auto r = kth_root_mod(-2, 2, 7);
    REQUIRE(r.has_value());
    CHECK((*r == 3 || *r == 4));
    CHECK_FALSE(kth_root_mod(2, 2, 7).has_value());
    for (uint64_t p : {2, 3, 11, 101}) {
        for (int64_t u : {-7, 1, 6, 50}) CHECK(kth_root_mod(u, 1, p) == mod_floor(-u, p));
    }
    CHECK(kth_root_mod(11, 3, 11) == 0u);
    CHECK_THROWS_AS(kth_root_mod(1, 2, 13), UnsupportedStructure);  // gcd 2, p = 1 mod 4
    CHECK_THROWS_AS(kth_root_mod(1, 3, 7), UnsupportedStructure);   // gcd 3
}

TEST_CASE("kth_root_mod output always re-verifies") {
    for (uint64_t p : primes_up_to(500)) {
        for (uint64_t k = 1; k <= 8; k++) {
            uint64_t g = std::gcd(k, p - 1);
            bool supported = g == 1 || (g == 2 && p % 4 == 3);
            for (int64_t u = -40; u <= 40; u++) {
                if (u == 0) continue;
                if (!supported) {
                    if (u % static_cast<int64_t>(p) != 0) CHECK_THROWS_AS(kth_root_mod(u, k, p), UnsupportedStructure);
                    continue;
                }
                auto root = kth_root_mod(u, k, p);
                REQUIRE(root.has_value() == (rho(u, k, p) > 0));
                if (root) REQUIRE(pow_mod(*root, k, p) == mod_floor(-u, p));
            }
        }
    }
}

TEST_CASE("crt_combine") {
    std::vector<Congruence> two = {{0, 2}, {1, 3}};
    auto c = crt_combine(two);
    unsigned long scan = 0;
    while (!(scan % 2 == 0 && scan % 3 == 1)) scan++;
    CHECK(scan == 4);
    CHECK(c.A == scan);
    CHECK(c.M == 6);

    auto empty = crt_combine(std::vector<Congruence>{});
    CHECK(empty.A == 0);
    CHECK(empty.M == 1);

    std::vector<Congruence> dup = {{1, 5}, {1, 5}};
    CHECK_THROWS_AS(crt_combine(dup), ConflictingConstraint);
    std::vector<Congruence> bad = {{5, 5}};
    CHECK_THROWS_AS(crt_combine(bad), std::invalid_argument);
}

TEST_CASE("crt_combine round-trips random systems") {
    auto primes = primes_up_to(3000);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; trial++) {
        std::vector<uint64_t> pool(primes.begin(), primes.end());
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<Congruence> sys;
        mpz_class M = 1;
        for (int i = 0; i < 1 + trial * 3; i++) {
            sys.push_back({rng() % pool[i], pool[i]});
            M *= static_cast<unsigned long>(pool[i]);
        }
        auto c = crt_combine(sys);
        REQUIRE(c.M == M);
        REQUIRE(c.A >= 0);
        REQUIRE(c.A < c.M);
        for (const auto& k : sys) REQUIRE(mpz_fdiv_ui(c.A.get_mpz_t(), k.modulus) == k.residue);
    }
}

TEST_CASE("crt_combine matches a scan on small moduli") {
    // Every residue pair mod (5, 7, 11) found by scanning 0..384.
    for (uint64_t a = 0; a < 5; a++) {
        for (uint64_t b = 0; b < 7; b++) {
            for (uint64_t c = 0; c < 11; c++) {
                uint64_t scan = 0;
                while (!(scan % 5 == a && scan % 7 == b && scan % 11 == c)) scan++;
                std::vector<Congruence> sys = {{a, 5}, {b, 7}, {c, 11}};
                REQUIRE(crt_combine(sys).A == static_cast<unsigned long>(scan));
            }
        }
    }
}

// ---------------------------------------------------------------- primality

TEST_CASE("is_probable_prime agrees with GMP below 2*10^5") {
    for (unsigned long n = 0; n < 200'000; n++) {
        mpz_class v = n;
        REQUIRE(is_probable_prime(v) == (mpz_probab_prime_p(v.get_mpz_t(), 30) != 0));
    }
}

TEST_CASE("is_probable_prime on large values") {
    mpz_class m127 = (mpz_class(1) << 127) - 1;
    mpz_class m89 = (mpz_class(1) << 89) - 1;
    mpz_class f7 = (mpz_class(1) << 128) + 1;  // 2^128 + 1 is composite
    CHECK(is_probable_prime(m127));
    CHECK(is_probable_prime(m89));
    CHECK_FALSE(is_probable_prime(f7));
    CHECK_FALSE(is_probable_prime(m127 * m89));

    gmp_randclass rng(gmp_randinit_default);
    rng.seed(5);
    for (int i = 0; i < 400; i++) {
        mpz_class n = rng.get_z_bits(200) | 1;
        REQUIRE(is_probable_prime(n) == (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0));
    }
}

TEST_CASE("the two halves of the battery catch each other's pseudoprimes") {
    // Strong pseudoprimes to base 2.
    for (unsigned long n : {2047ul, 3277ul, 4033ul, 4681ul, 8321ul, 15841ul, 29341ul}) {
        CHECK(strong_probable_prime(n, 2));
        CHECK_FALSE(strong_lucas_probable_prime(n));
        CHECK_FALSE(is_probable_prime(n));
    }
    // Strong Lucas pseudoprimes (Selfridge parameters).
    for (unsigned long n : {5459ul, 5777ul, 10877ul, 16109ul, 18971ul, 22499ul, 24569ul}) {
        CHECK(strong_lucas_probable_prime(n));
        CHECK_FALSE(strong_probable_prime(n, 2));
        CHECK_FALSE(is_probable_prime(n));
    }
    CHECK_FALSE(is_probable_prime(561));
}

TEST_CASE("strong Lucas test passes every prime") {
    for (uint64_t p : primes_up_to(100'000)) {
        if (p == 2) continue;
        REQUIRE(strong_lucas_probable_prime(static_cast<unsigned long>(p)));
    }
}

TEST_CASE("compositeness_bases ends in a decisive base") {
    CHECK(compositeness_bases(97).empty());
    CHECK(compositeness_bases(100).empty());
    auto b = compositeness_bases(2047);
    REQUIRE(b.size() == 2);
    CHECK(b.back() == 3);
    CHECK_FALSE(strong_probable_prime(2047, b.back()));
    for (unsigned long n = 9; n < 50'000; n += 2) {
        if (is_probable_prime(n)) continue;
        auto bases = compositeness_bases(n);
        REQUIRE_FALSE(bases.empty());
        REQUIRE_FALSE(strong_probable_prime(n, bases.back()));
    }
}
