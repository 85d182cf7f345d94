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
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "primeavoid/construction.hpp"
#include "primeavoid/parallel.hpp"

namespace primeavoid {

enum class WitnessKind { PrimeDivisor, CompositePrp };

/// Evidence that m^k + u is composite: a prime p <= x dividing it, or the
/// Miller-Rabin bases under which it fails (the last base is decisive).
struct Witness {
    int64_t u = 0;
    WitnessKind kind = WitnessKind::PrimeDivisor;
    uint64_t p = 0;
    std::vector<unsigned long> bases;

    friend bool operator==(const Witness&, const Witness&) = default;
};

/// One witness for every u in [-y, y], ascending.
struct Certificate {
    mpz_class m;
    uint64_t k = 1;
    uint64_t y = 0;
    uint64_t x = 0;
    std::vector<Witness> witnesses;
};

struct VerifyFailure {
    int64_t u;
    std::string reason;
};

struct VerifyReport {
    bool ok = true;
    std::size_t checked = 0;
    std::vector<VerifyFailure> failures;
};

class CertificateParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Witness search order per u: P1 prime dividing u, P2 prime dividing
/// m^k + u, the matched p_u, trial division by primes <= x, and finally
/// Miller-Rabin bases. Throws ConstructionUnsound when m^k + u survives
/// all of them.
Certificate build_certificate(const ConstructionResult& result,
                              const WorkerPool& pool = WorkerPool{});

/// Uses only (m, k, y, x) and the witness list.
VerifyReport verify_certificate(const Certificate& cert, const WorkerPool& pool = WorkerPool{});

/// JSON lines: a header record, then one record per u.
void write_certificate(std::ostream& out, const Certificate& cert);
Certificate read_certificate(std::istream& in);

}  // namespace primeavoid
