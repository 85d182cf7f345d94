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

#include "primeavoid/construction.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <tuple>

#include "primeavoid/errors.hpp"
#include "primeavoid/high_precision.hpp"
#include "primeavoid/primality.hpp"

namespace primeavoid {

namespace {

uint64_t abs_u(int64_t u) { return u < 0 ? static_cast<uint64_t>(-(u + 1)) + 1 : u; }

uint64_t totient(uint64_t n) {
    uint64_t result = n;
    for (uint64_t p = 2; p * p <= n; p++) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

HighPrecision as_float(const Rational& r) { return HighPrecision(r.num) / HighPrecision(r.den); }

uint64_t floor_u64(const HighPrecision& v) {
    if (v < 0) return 0;
    return boost::multiprecision::floor(v).convert_to<uint64_t>();
}

bool divisible_by_any(uint64_t n, const std::vector<uint64_t>& primes) {
    return std::any_of(primes.begin(), primes.end(), [n](uint64_t p) { return n % p == 0; });
}

// Ordering key used for both matchings: candidate count, |u|, sign.
auto match_key(int64_t u, std::size_t candidates) {
    return std::make_tuple(candidates, abs_u(u), u > 0);
}

}  // namespace

// ---------------------------------------------------------------- Rational

Rational::Rational(int64_t n, int64_t d) : num(n), den(d) {
    if (d <= 0 || n <= 0) throw ParameterError("rational constants must be positive");
    int64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
}

Rational Rational::parse(const std::string& text) {
    auto digits = [&](const std::string& s) {
        if (s.empty() || s.size() > 15 ||
            !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            throw ParameterError("malformed rational: '" + text + "'");
        }
        return static_cast<int64_t>(std::stoll(s));
    };
    if (auto slash = text.find('/'); slash != std::string::npos) {
        return Rational(digits(text.substr(0, slash)), digits(text.substr(slash + 1)));
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        if (whole.empty()) whole = "0";
        int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); i++) scale *= 10;
        int64_t f = frac.empty() ? 0 : digits(frac);
        return Rational(digits(whole) * scale + f, scale);
    }
    return Rational(digits(text));
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

// ---------------------------------------------------------------- Params

bool Params::in_P1(uint64_t p) const { return std::binary_search(P1.begin(), P1.end(), p); }
bool Params::in_P2(uint64_t p) const { return std::binary_search(P2.begin(), P2.end(), p); }

bool ExceptionalSet::contains(int64_t u) const {
    return std::binary_search(members.begin(), members.end(), u);
}

Params derive_params(uint64_t k, uint64_t x, Rational c1, Rational c2, const WorkerPool& pool) {
    if (k == 0) throw ParameterError("k must be a positive integer");
    if (x < 16) throw ParameterError("parameter regime undefined: x must be at least 16");
    if (x > 10'000) throw ParameterError("x above 10000 is not supported");

    Params params;
    params.k = k;
    params.x = x;
    params.c1 = c1;
    params.c2 = c2;
    params.delta = Rational(1, static_cast<int64_t>(15 * totient(2 * k)));

    HighPrecision X(x);
    HighPrecision L = log(X);
    HighPrecision L2 = log(L);
    HighPrecision L3 = log(L2);

    params.z = floor_u64(pow(X, as_float(c1) * L3 / L2));
    params.y = floor_u64(as_float(c2) * X * L * L3 / (L2 * L2));
    params.log_x_floor = floor_u64(L);
    params.u_prime_threshold = floor_u64(as_float(params.delta) * X / L);

    if (params.y < 1) throw ParameterError("target interval empty, increase c2 or x");

    params.primes = primes_up_to(x, pool);
    for (uint64_t p : params.primes) {
        if (p <= params.log_x_floor || (params.z < p && 4 * p <= x)) {
            params.P1.push_back(p);
        } else if (p <= params.z) {
            params.P2.push_back(p);
        }
        // A large c1 can push z past x/4; P2 keeps those primes.
        if (k % 2 == 0 && 4 * p > x && 2 * p <= x && p > params.z && p % (2 * k) == 3) {
            params.P3.push_back(p);
        }
    }
    return params;
}

std::vector<Congruence> residue_system(const Params& params) {
    std::vector<Congruence> out;
    out.reserve(params.P1.size() + params.P2.size());
    for (uint64_t p : params.P1) out.push_back({0, p});
    for (uint64_t p : params.P2) out.push_back({1, p});
    std::sort(out.begin(), out.end(),
              [](const Congruence& a, const Congruence& b) { return a.modulus < b.modulus; });
    return out;
}

ExceptionalSet exceptional_set(const Params& params) {
    ExceptionalSet U;
    int64_t y = static_cast<int64_t>(params.y);
    for (int64_t u = -y; u <= y; u++) {
        if (u == 0) continue;
        uint64_t a = abs_u(u);
        if (divisible_by_any(a, params.P1)) continue;
        if (a == 1 || is_prime_trial(a)) {
            // m = 1 (mod p) sends p | u + 1 into p | m^k + u; u + 1 may be 0.
            uint64_t shifted = abs_u(u + 1);
            if (std::any_of(params.P2.begin(), params.P2.end(),
                            [shifted](uint64_t p) { return shifted % p == 0; })) {
                continue;
            }
        }
        U.members.push_back(u);
    }
    return U;
}

std::vector<uint64_t> odd_candidates(const Params& params) {
    std::vector<uint64_t> out;
    for (uint64_t p : params.primes.in_range(params.x / 4, params.x)) {
        if (p <= params.z) continue;  // already fixed by the P2 congruence
        if (params.k == 1 || p % params.k == 2) out.push_back(p);
    }
    return out;
}

Assignment match_odd(const ExceptionalSet& U, const Params& params) {
    if (params.k % 2 == 0) throw std::invalid_argument("match_odd requires odd k");
    std::vector<uint64_t> candidates = odd_candidates(params);
    if (U.size() > candidates.size()) {
        throw InsufficientPrimes("insufficient primes; shrink c2 (|U| = " + std::to_string(U.size()) +
                                 ", available = " + std::to_string(candidates.size()) + ")");
    }
    std::vector<int64_t> order = U.members;
    std::sort(order.begin(), order.end(), [&](int64_t a, int64_t b) {
        return match_key(a, candidates.size()) < match_key(b, candidates.size());
    });
    Assignment out;
    for (std::size_t i = 0; i < order.size(); i++) out.pairs[order[i]] = candidates[i];
    return out;
}

Assignment match_even(const ExceptionalSet& U, const Params& params) {
    if (params.k % 2 != 0) throw std::invalid_argument("match_even requires even k");
    struct Entry {
        int64_t u;
        std::vector<uint64_t> candidates;
    };
    std::vector<Entry> entries;
    entries.reserve(U.size());
    for (int64_t u : U.members) {
        Entry e{u, {}};
        for (uint64_t p : params.P3) {
            if (jacobi(-u, p) == 1) e.candidates.push_back(p);
        }
        entries.push_back(std::move(e));
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return match_key(a.u, a.candidates.size()) < match_key(b.u, b.candidates.size());
    });

    Assignment out;
    std::vector<uint64_t> used;
    for (const Entry& e : entries) {
        auto free = std::find_if(e.candidates.begin(), e.candidates.end(), [&](uint64_t p) {
            return std::find(used.begin(), used.end(), p) == used.end();
        });
        if (free == e.candidates.end()) {
            out.leftovers.push_back(e.u);
        } else {
            out.pairs[e.u] = *free;
            used.push_back(*free);
        }
    }
    std::sort(out.leftovers.begin(), out.leftovers.end());
    return out;
}

std::vector<int64_t> u_prime_analytic(const ExceptionalSet& U, const Params& params) {
    std::vector<int64_t> out;
    for (int64_t u : U.members) {
        uint64_t count = std::count_if(params.P3.begin(), params.P3.end(),
                                       [u](uint64_t p) { return jacobi(-u, p) == 1; });
        if (count <= params.u_prime_threshold) out.push_back(u);
    }
    return out;
}

// ---------------------------------------------------------------- j search

JSearch search_j(const CombinedClass& system, const std::vector<int64_t>& leftovers, uint64_t k,
                 const Params& params, uint64_t j_max, const WorkerPool& pool) {
    const mpz_class N = params.primes.product(0, params.x);
    const mpz_class& A = system.A;
    const mpz_class& M = system.M;

    mpz_class j_hi = (2 * N - A) / M;
    mpz_class j_lo = 1;
    if (k % 2 == 1) j_lo = (N - A) / M + 1;
    if (j_lo < 1) j_lo = 1;

    const mpz_class floor_value = mpz_class(static_cast<unsigned long>(params.x)) +
                                  static_cast<unsigned long>(params.y);

    auto admissible = [&](const mpz_class& j) {
        mpz_class m = M * j + A;
        mpz_class mk;
        mpz_pow_ui(mk.get_mpz_t(), m.get_mpz_t(), k);
        // m^k - y > x keeps every small prime divisor proper.
        if (mk <= floor_value) return false;
        for (int64_t u : leftovers) {
            mpz_class v = mk + mpz_class(static_cast<long>(u));
            if (is_probable_prime(v)) return false;
        }
        return true;
    };

    if (leftovers.empty()) {
        for (mpz_class j = j_lo; j <= j_hi; ++j) {
            if (admissible(j)) return {j, M * j + A};
        }
        throw BudgetExhausted("search budget exhausted: no j gives N < m <= 2N");
    }

    // Batches are scanned in increasing j and the first hit in a batch
    // wins, so the answer is the smallest admissible j for any pool size.
    const uint64_t batch = 16 * static_cast<uint64_t>(pool.threads());
    uint64_t examined = 0;
    while (examined < j_max) {
        uint64_t count = std::min(batch, j_max - examined);
        std::vector<char> ok(count, 0);
        pool.for_each_index(count, [&](std::size_t i) {
            mpz_class j = j_lo + static_cast<unsigned long>(examined + i);
            if (j <= j_hi) ok[i] = admissible(j);
        });
        for (uint64_t i = 0; i < count; i++) {
            if (ok[i]) {
                mpz_class j = j_lo + static_cast<unsigned long>(examined + i);
                return {j, M * j + A};
            }
        }
        examined += count;
        if (j_lo + static_cast<unsigned long>(examined) > j_hi) break;
    }
    throw BudgetExhausted("search budget exhausted after " + std::to_string(examined) +
                          " values of j");
}

// ---------------------------------------------------------------- pipeline

ConstructionResult construct(uint64_t k, uint64_t x, const ConstructOptions& options,
                             const WorkerPool& pool) {
    ConstructionResult result;
    result.params = derive_params(k, x, options.c1, options.c2, pool);
    result.y_target = result.params.y;
    result.N = result.params.primes.product(0, x);

    for (;;) {
        Params& params = result.params;
        try {
            ExceptionalSet U = exceptional_set(params);
            Assignment assignment = k % 2 == 1 ? match_odd(U, params) : match_even(U, params);

            std::vector<std::pair<int64_t, uint64_t>> pairs(assignment.pairs.begin(),
                                                            assignment.pairs.end());
            std::vector<Congruence> extra(pairs.size());
            pool.for_each_index(pairs.size(), [&](std::size_t i) {
                auto [u, p] = pairs[i];
                auto root = kth_root_mod(u, k, p);
                if (!root) throw ConstructionUnsound("matched pair has no k-th root");
                extra[i] = {*root, p};
            });

            std::vector<Congruence> congruences = residue_system(params);
            congruences.insert(congruences.end(), extra.begin(), extra.end());
            result.system = crt_combine(congruences);

            JSearch found = search_j(result.system, assignment.leftovers, k, params,
                                     options.j_max, pool);
            result.j = found.j;
            result.m = found.m;
            result.assignment = std::move(assignment);
            return result;
        } catch (const InsufficientPrimes&) {
            // Strict mode, or nothing left to shrink: the last failure stands.
            if (options.mode == Mode::Strict || params.y * 3 / 4 < 1) throw;
        } catch (const BudgetExhausted&) {
            if (options.mode == Mode::Strict || params.y * 3 / 4 < 1) throw;
        }
        params.y = params.y * 3 / 4;
    }
}

// ---------------------------------------------------------------- coverage

const char* to_string(CoverageCase c) {
    switch (c) {
        case CoverageCase::P1Divisor: return "p1_divisor";
        case CoverageCase::P2Unit: return "p2_unit";
        case CoverageCase::Matched: return "matched";
        case CoverageCase::Leftover: return "leftover";
        case CoverageCase::Uncovered: return "uncovered";
    }
    return "uncovered";
}

CoverageCase classify_coverage(const ConstructionResult& result, int64_t u) {
    const Params& params = result.params;
    uint64_t a = abs_u(u);
    if (divisible_by_any(a, params.P1)) return CoverageCase::P1Divisor;
    if (divisible_by_any(abs_u(u + 1), params.P2)) return CoverageCase::P2Unit;
    if (result.assignment.pairs.count(u)) return CoverageCase::Matched;
    const auto& left = result.assignment.leftovers;
    if (std::binary_search(left.begin(), left.end(), u)) return CoverageCase::Leftover;
    return CoverageCase::Uncovered;
}

// ---------------------------------------------------------------- JSON

nlohmann::ordered_json result_to_json(const ConstructionResult& result) {
    const Params& params = result.params;
    nlohmann::ordered_json doc;
    doc["k"] = params.k;
    doc["x"] = params.x;
    doc["c1"] = params.c1.str();
    doc["c2"] = params.c2.str();
    doc["y_target"] = result.y_target;
    doc["y_achieved"] = params.y;
    doc["A"] = result.system.A.get_str();
    doc["M"] = result.system.M.get_str();
    doc["j"] = result.j.get_str();
    doc["m"] = result.m.get_str();
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (const auto& [u, p] : result.assignment.pairs) {
        pairs.push_back(nlohmann::ordered_json{{"u", u}, {"p", p}});
    }
    doc["pairs"] = std::move(pairs);
    doc["leftovers"] = result.assignment.leftovers;
    return doc;
}

ConstructionResult result_from_json(const nlohmann::json& doc, const WorkerPool& pool) {
    auto big = [&](const char* key) {
        mpz_class v;
        if (v.set_str(doc.at(key).get<std::string>(), 10) != 0) {
            throw ParameterError(std::string("field '") + key + "' is not a decimal integer");
        }
        return v;
    };

    ConstructionResult result;
    result.params = derive_params(doc.at("k").get<uint64_t>(), doc.at("x").get<uint64_t>(),
                                  Rational::parse(doc.at("c1").get<std::string>()),
                                  Rational::parse(doc.at("c2").get<std::string>()), pool);
    result.y_target = doc.at("y_target").get<uint64_t>();
    if (result.y_target != result.params.y) {
        throw ParameterError("y_target does not match the parameters");
    }
    uint64_t achieved = doc.at("y_achieved").get<uint64_t>();
    if (achieved < 1 || achieved > result.y_target) {
        throw ParameterError("y_achieved must lie in [1, y_target]");
    }
    result.params.y = achieved;
    result.system.A = big("A");
    result.system.M = big("M");
    result.j = big("j");
    result.m = big("m");
    if (result.m != result.system.M * result.j + result.system.A) {
        throw ParameterError("m != M*j + A");
    }
    result.N = result.params.primes.product(0, result.params.x);
    for (const auto& pair : doc.at("pairs")) {
        result.assignment.pairs[pair.at("u").get<int64_t>()] = pair.at("p").get<uint64_t>();
    }
    result.assignment.leftovers = doc.at("leftovers").get<std::vector<int64_t>>();
    std::sort(result.assignment.leftovers.begin(), result.assignment.leftovers.end());
    return result;
}

}  // namespace primeavoid
