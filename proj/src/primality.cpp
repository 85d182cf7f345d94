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

#include "primeavoid/primality.hpp"

#include <array>

#include "primeavoid/modular.hpp"

namespace primeavoid {

namespace {

constexpr std::array<unsigned long, 25> kSmallPrimes = {
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

// Halve v modulo odd n.
void half_mod(mpz_class& v, const mpz_class& n) {
    if (mpz_odd_p(v.get_mpz_t())) v += n;
    mpz_tdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), 1);
}

void reduce(mpz_class& v, const mpz_class& n) {
    mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
}

}  // namespace

bool strong_probable_prime(const mpz_class& n, unsigned long base) {
    if (n < 2) return false;
    if (n == 2) return true;
    if (mpz_even_p(n.get_mpz_t())) return false;

    mpz_class a = base;
    reduce(a, n);
    if (a == 0 || a == 1 || a == n - 1) return true;

    mpz_class n_minus_1 = n - 1;
    mp_bitcnt_t s = mpz_scan1(n_minus_1.get_mpz_t(), 0);
    mpz_class d;
    mpz_tdiv_q_2exp(d.get_mpz_t(), n_minus_1.get_mpz_t(), s);

    mpz_class x = pow_mod(a, d, n);
    if (x == 1 || x == n_minus_1) return true;
    for (mp_bitcnt_t r = 1; r < s; r++) {
        x = x * x;
        reduce(x, n);
        if (x == n_minus_1) return true;
        if (x == 1) return false;
    }
    return false;
}

bool strong_lucas_probable_prime(const mpz_class& n) {
    if (n < 2) return false;
    if (n == 2) return true;
    if (mpz_even_p(n.get_mpz_t())) return false;
    // Squares never produce (D/n) = -1.
    if (mpz_perfect_square_p(n.get_mpz_t())) return false;

    long D = 5;
    for (;;) {
        int j = jacobi(mpz_class(D), n);
        if (j == -1) break;
        // (D/n) = 0 with |D| < n means a proper factor.
        if (j == 0 && mpz_cmpabs_ui(n.get_mpz_t(), D < 0 ? -D : D) > 0) return false;
        D = D > 0 ? -(D + 2) : -(D - 2);
    }
    const long P = 1;
    const long Q = (1 - D) / 4;

    mpz_class n_plus_1 = n + 1;
    mp_bitcnt_t s = mpz_scan1(n_plus_1.get_mpz_t(), 0);
    mpz_class d;
    mpz_tdiv_q_2exp(d.get_mpz_t(), n_plus_1.get_mpz_t(), s);

    mpz_class U = 1, V = P, Qk = Q;
    mpz_class mpz_D = D, mpz_Q = Q;
    reduce(Qk, n);

    // Left-to-right binary ladder over d, skipping the leading 1 bit.
    for (long bit = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2)) - 2; bit >= 0; bit--) {
        U = U * V;
        reduce(U, n);
        V = V * V - 2 * Qk;
        reduce(V, n);
        Qk = Qk * Qk;
        reduce(Qk, n);
        if (mpz_tstbit(d.get_mpz_t(), bit)) {
            mpz_class U_next = P * U + V;
            mpz_class V_next = mpz_D * U + P * V;
            reduce(U_next, n);
            reduce(V_next, n);
            half_mod(U_next, n);
            half_mod(V_next, n);
            U = U_next;
            V = V_next;
            Qk = Qk * mpz_Q;
            reduce(Qk, n);
        }
    }

    if (U == 0 || V == 0) return true;
    for (mp_bitcnt_t r = 1; r < s; r++) {
        V = V * V - 2 * Qk;
        reduce(V, n);
        if (V == 0) return true;
        Qk = Qk * Qk;
        reduce(Qk, n);
    }
    return false;
}

bool is_probable_prime(const mpz_class& n) {
    if (n < 2) return false;
    for (unsigned long p : kSmallPrimes) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    if (n < 97 * 97) return true;
    return strong_probable_prime(n, 2) && strong_lucas_probable_prime(n);
}

std::vector<unsigned long> compositeness_bases(const mpz_class& n) {
    std::vector<unsigned long> bases;
    if (n < 4 || mpz_even_p(n.get_mpz_t()) || is_probable_prime(n)) return bases;
    for (unsigned long b : kSmallPrimes) {
        if (n <= b) break;
        bases.push_back(b);
        if (!strong_probable_prime(n, b)) return bases;
    }
    // Composite that is a strong pseudoprime to every base tried.
    return {};
}

}  // namespace primeavoid
