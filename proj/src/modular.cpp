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

#include "primeavoid/modular.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>

#include "primeavoid/errors.hpp"

namespace primeavoid {

uint64_t mod_floor(int64_t a, uint64_t m) {
    if (a >= 0) return static_cast<uint64_t>(a) % m;
    // -(a + 1) avoids overflow at INT64_MIN.
    uint64_t neg = (static_cast<uint64_t>(-(a + 1)) + 1) % m;
    return neg == 0 ? 0 : m - neg;
}

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t pow_mod(uint64_t b, uint64_t e, uint64_t m) {
    if (m == 1) return 0;
    uint64_t result = 1;
    b %= m;
    while (e > 0) {
        if (e & 1) result = mul_mod(result, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return result;
}

mpz_class pow_mod(const mpz_class& b, const mpz_class& e, const mpz_class& m) {
    if (m == 1) return 0;
    mpz_class out;
    mpz_powm(out.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return out;
}

std::optional<uint64_t> inverse_mod(uint64_t a, uint64_t m) {
    if (m == 1) return 0;
    // Extended Euclid on signed 128-bit values.
    __int128 old_r = a % m, r = m;
    __int128 old_s = 1, s = 0;
    while (r != 0) {
        __int128 q = old_r / r;
        std::swap(old_r, r);
        r -= q * old_r;
        std::swap(old_s, s);
        s -= q * old_s;
    }
    if (old_r != 1) return std::nullopt;
    __int128 inv = old_s % static_cast<__int128>(m);
    if (inv < 0) inv += m;
    return static_cast<uint64_t>(inv);
}

int jacobi(int64_t a_signed, uint64_t m) {
    if (m == 0 || m % 2 == 0) throw std::invalid_argument("jacobi: modulus must be odd and positive");
    uint64_t a = mod_floor(a_signed, m);
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            uint64_t r = m % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, m);
        if (a % 4 == 3 && m % 4 == 3) result = -result;
        a %= m;
    }
    return m == 1 ? result : 0;
}

int jacobi(const mpz_class& a_in, const mpz_class& m_in) {
    if (m_in <= 0 || mpz_even_p(m_in.get_mpz_t())) {
        throw std::invalid_argument("jacobi: modulus must be odd and positive");
    }
    mpz_class m = m_in;
    mpz_class a;
    mpz_fdiv_r(a.get_mpz_t(), a_in.get_mpz_t(), m.get_mpz_t());
    int result = 1;
    while (a != 0) {
        mp_bitcnt_t twos = mpz_scan1(a.get_mpz_t(), 0);
        if (twos > 0) {
            mpz_tdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), twos);
            unsigned long r = mpz_fdiv_ui(m.get_mpz_t(), 8);
            if ((twos & 1) && (r == 3 || r == 5)) result = -result;
        }
        std::swap(a, m);
        if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(m.get_mpz_t(), 4) == 3) result = -result;
        mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    }
    return m == 1 ? result : 0;
}

uint64_t rho(int64_t u, uint64_t k, uint64_t p) {
    uint64_t target = mod_floor(-u, p);
    if (target == 0) return 1;  // n^k = 0 forces n = 0
    // n -> n^k on the cyclic group of order p-1 has image of index g and
    // fibres of size g; -u is in the image iff (-u)^((p-1)/g) = 1.
    uint64_t g = std::gcd(k, p - 1);
    return pow_mod(target, (p - 1) / g, p) == 1 ? g : 0;
}

uint64_t rho_scan(int64_t u, uint64_t k, uint64_t p) {
    uint64_t target = mod_floor(-u, p);
    uint64_t count = 0;
    for (uint64_t n = 0; n < p; n++) {
        if (pow_mod(n, k, p) == target) count++;
    }
    return count;
}

std::optional<uint64_t> kth_root_mod(int64_t u, uint64_t k, uint64_t p) {
    uint64_t target = mod_floor(-u, p);
    if (target == 0) return 0;
    uint64_t g = std::gcd(k, p - 1);
    if (g == 1) {
        uint64_t e = *inverse_mod(k % (p - 1), p - 1);
        return pow_mod(target, e, p);
    }
    if (g == 2 && p % 4 == 3) {
        if (jacobi(static_cast<int64_t>(target), p) != 1) return std::nullopt;
        uint64_t half = (p - 1) / 2;
        uint64_t e = *inverse_mod(k % half, half);
        return pow_mod(target, e, p);
    }
    throw UnsupportedStructure("kth_root_mod: gcd(" + std::to_string(k) + ", " + std::to_string(p) +
                               " - 1) = " + std::to_string(g) + " is not supported");
}

CombinedClass crt_combine(std::span<const Congruence> constraints) {
    std::unordered_set<uint64_t> seen;
    CombinedClass out;
    for (const Congruence& c : constraints) {
        if (c.modulus < 2 || c.residue >= c.modulus) {
            throw std::invalid_argument("crt_combine: residue must lie in [0, modulus)");
        }
        if (!seen.insert(c.modulus).second) {
            throw ConflictingConstraint("conflicting or redundant constraint modulo " +
                                        std::to_string(c.modulus));
        }
        // Lift A (mod M) to A + M*t (mod M*p) with A + M*t = residue (mod p).
        uint64_t a_mod = mpz_fdiv_ui(out.A.get_mpz_t(), c.modulus);
        uint64_t m_mod = mpz_fdiv_ui(out.M.get_mpz_t(), c.modulus);
        auto m_inv_opt = inverse_mod(m_mod, c.modulus);
        if (!m_inv_opt) {
            throw ConflictingConstraint("modulus " + std::to_string(c.modulus) +
                                        " shares a factor with the system");
        }
        uint64_t m_inv = *m_inv_opt;
        uint64_t diff = (c.residue + c.modulus - a_mod) % c.modulus;
        uint64_t t = mul_mod(diff, m_inv, c.modulus);
        out.A += out.M * static_cast<unsigned long>(t);
        out.M *= static_cast<unsigned long>(c.modulus);
    }
    return out;
}

}  // namespace primeavoid
