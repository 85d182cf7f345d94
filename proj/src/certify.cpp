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

#include "primeavoid/certify.hpp"

#include <istream>
#include <ostream>
#include <set>
#include <string>

#include <json.hpp>

#include "primeavoid/errors.hpp"
#include "primeavoid/modular.hpp"
#include "primeavoid/primality.hpp"
#include "primeavoid/sieve_core.hpp"

namespace primeavoid {

namespace {

// (m mod p)^k + u = 0 (mod p)
bool divides_shifted_power(const mpz_class& m, uint64_t k, int64_t u, uint64_t p) {
    uint64_t base = mpz_fdiv_ui(m.get_mpz_t(), p);
    return (pow_mod(base, k, p) + mod_floor(u, p)) % p == 0;
}

mpz_class power(const mpz_class& m, uint64_t k) {
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), m.get_mpz_t(), k);
    return out;
}

// Written independently of primality.cpp: n is odd and > 3, and the
// function reports whether `base` proves n composite.
bool base_proves_composite(const mpz_class& n, unsigned long base) {
    mpz_class n1 = n - 1;
    mpz_class odd = n1;
    unsigned long twos = 0;
    while (mpz_even_p(odd.get_mpz_t())) {
        odd /= 2;
        twos++;
    }
    mpz_class b = base;
    b %= n;
    if (b < 2 || b == n1) return false;
    mpz_class t;
    mpz_powm(t.get_mpz_t(), b.get_mpz_t(), odd.get_mpz_t(), n.get_mpz_t());
    if (t == 1 || t == n1) return false;
    for (unsigned long i = 1; i < twos; i++) {
        mpz_powm_ui(t.get_mpz_t(), t.get_mpz_t(), 2, n.get_mpz_t());
        if (t == n1) return false;
    }
    return true;
}

std::string kind_name(WitnessKind kind) {
    return kind == WitnessKind::PrimeDivisor ? "prime_divisor" : "composite_prp";
}

}  // namespace

Certificate build_certificate(const ConstructionResult& result, const WorkerPool& pool) {
    const Params& params = result.params;
    Certificate cert;
    cert.m = result.m;
    cert.k = params.k;
    cert.y = params.y;
    cert.x = params.x;

    const mpz_class mk = power(result.m, params.k);
    const int64_t y = static_cast<int64_t>(params.y);
    cert.witnesses.resize(2 * params.y + 1);

    pool.for_each_index(cert.witnesses.size(), [&](std::size_t i) {
        int64_t u = -y + static_cast<int64_t>(i);
        Witness& w = cert.witnesses[i];
        w.u = u;
        mpz_class value = mk + mpz_class(static_cast<long>(u));

        auto accept = [&](uint64_t p) {
            if (!divides_shifted_power(result.m, params.k, u, p)) return false;
            if (value <= p) {
                throw ConstructionUnsound("m^k + u equals its witness prime at u = " +
                                          std::to_string(u));
            }
            w.kind = WitnessKind::PrimeDivisor;
            w.p = p;
            return true;
        };

        for (uint64_t p : params.P1) {
            if (mod_floor(u, p) == 0 && accept(p)) return;
        }
        for (uint64_t p : params.P2) {
            if (accept(p)) return;
        }
        if (auto it = result.assignment.pairs.find(u); it != result.assignment.pairs.end()) {
            if (accept(it->second)) return;
        }
        for (uint64_t p : params.primes) {
            if (mpz_divisible_ui_p(value.get_mpz_t(), p) && accept(p)) return;
        }
        std::vector<unsigned long> bases = compositeness_bases(value);
        if (bases.empty()) {
            throw ConstructionUnsound("construction unsound: m^k + u looks prime at u = " +
                                      std::to_string(u));
        }
        w.kind = WitnessKind::CompositePrp;
        w.bases = std::move(bases);
    });
    return cert;
}

VerifyReport verify_certificate(const Certificate& cert, const WorkerPool& pool) {
    VerifyReport report;
    const int64_t y = static_cast<int64_t>(cert.y);

    // Coverage of [-y, y], one witness each.
    std::set<int64_t> seen;
    for (const Witness& w : cert.witnesses) {
        if (w.u < -y || w.u > y) {
            report.failures.push_back({w.u, "u outside [-y, y]"});
        } else if (!seen.insert(w.u).second) {
            report.failures.push_back({w.u, "duplicate witness"});
        }
    }
    for (int64_t u = -y; u <= y; u++) {
        if (!seen.count(u)) report.failures.push_back({u, "missing witness"});
    }
    for (std::size_t i = 1; i < cert.witnesses.size(); i++) {
        if (cert.witnesses[i].u <= cert.witnesses[i - 1].u) {
            report.failures.push_back({cert.witnesses[i].u, "witnesses not in ascending u order"});
            break;
        }
    }

    const mpz_class mk = power(cert.m, cert.k);
    std::vector<std::string> problems(cert.witnesses.size());
    pool.for_each_index(cert.witnesses.size(), [&](std::size_t i) {
        const Witness& w = cert.witnesses[i];
        mpz_class value = mk + mpz_class(static_cast<long>(w.u));
        if (w.kind == WitnessKind::PrimeDivisor) {
            if (w.p > cert.x) {
                problems[i] = "witness prime exceeds x";
            } else if (!is_prime_trial(w.p)) {
                problems[i] = "witness is not prime";
            } else if (!divides_shifted_power(cert.m, cert.k, w.u, w.p)) {
                problems[i] = "witness prime does not divide m^k + u";
            } else if (value <= w.p) {
                problems[i] = "witness prime is not a proper divisor";
            }
            return;
        }
        if (value < 4 || mpz_even_p(value.get_mpz_t())) {
            problems[i] = "composite_prp witness on a value below 4 or even";
            return;
        }
        bool proven = false;
        for (unsigned long b : w.bases) proven = proven || base_proves_composite(value, b);
        if (!proven) problems[i] = "no recorded base proves m^k + u composite";
    });

    for (std::size_t i = 0; i < problems.size(); i++) {
        if (!problems[i].empty()) report.failures.push_back({cert.witnesses[i].u, problems[i]});
    }
    report.checked = cert.witnesses.size();
    report.ok = report.failures.empty();
    return report;
}

void write_certificate(std::ostream& out, const Certificate& cert) {
    nlohmann::ordered_json header;
    header["m"] = cert.m.get_str();
    header["k"] = cert.k;
    header["y"] = cert.y;
    header["x"] = cert.x;
    out << header.dump() << '\n';
    for (const Witness& w : cert.witnesses) {
        nlohmann::ordered_json line;
        line["u"] = w.u;
        line["kind"] = kind_name(w.kind);
        if (w.kind == WitnessKind::PrimeDivisor) {
            line["p"] = w.p;
        } else {
            line["bases"] = w.bases;
        }
        out << line.dump() << '\n';
    }
}

Certificate read_certificate(std::istream& in) {
    Certificate cert;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty()) continue;
        try {
            nlohmann::json rec = nlohmann::json::parse(line);
            if (!have_header) {
                if (cert.m.set_str(rec.at("m").get<std::string>(), 10) != 0) {
                    throw CertificateParseError("m is not a decimal integer");
                }
                cert.k = rec.at("k").get<uint64_t>();
                cert.y = rec.at("y").get<uint64_t>();
                cert.x = rec.at("x").get<uint64_t>();
                have_header = true;
                continue;
            }
            Witness w;
            w.u = rec.at("u").get<int64_t>();
            std::string kind = rec.at("kind").get<std::string>();
            if (kind == "prime_divisor") {
                w.kind = WitnessKind::PrimeDivisor;
                w.p = rec.at("p").get<uint64_t>();
            } else if (kind == "composite_prp") {
                w.kind = WitnessKind::CompositePrp;
                w.bases = rec.at("bases").get<std::vector<unsigned long>>();
            } else {
                throw CertificateParseError("unknown witness kind '" + kind + "'");
            }
            cert.witnesses.push_back(std::move(w));
        } catch (const nlohmann::json::exception& e) {
            throw CertificateParseError("line " + std::to_string(line_no) + ": " + e.what());
        } catch (const CertificateParseError& e) {
            throw CertificateParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!have_header) throw CertificateParseError("missing header record");
    return cert;
}

}  // namespace primeavoid
