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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "primeavoid/analysis.hpp"
#include "primeavoid/certify.hpp"
#include "primeavoid/construction.hpp"
#include "primeavoid/errors.hpp"
#include "primeavoid/sieve_core.hpp"

namespace primeavoid::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Common {
    unsigned threads = 1;
    std::string output;
    std::string format;
    uint64_t seed = 0;  // reserved; every pipeline is deterministic
};

void add_common(CLI::App* sub, Common& common, const std::string& default_format) {
    common.format = default_format;
    sub->add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--output", common.output, "Output file (default: standard output)");
    sub->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", common.seed, "Reserved; output does not depend on it");
}

// Column-ordered rows rendered as CSV or as a JSON array of objects.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
};

std::string csv_cell(const Json& v) {
    if (v.is_null()) return "";
    if (!v.is_string()) return v.dump();
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

void emit_table(const Table& table, const std::string& format, std::ostream& out) {
    if (format == "json") {
        Json doc = Json::array();
        for (const auto& row : table.rows) {
            Json obj;
            for (std::size_t i = 0; i < table.columns.size(); i++) obj[table.columns[i]] = row[i];
            doc.push_back(std::move(obj));
        }
        out << doc.dump(2) << '\n';
        return;
    }
    for (std::size_t i = 0; i < table.columns.size(); i++) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); i++) out << (i ? "," : "") << csv_cell(row[i]);
        out << '\n';
    }
}

// Writes to --output when given, otherwise to the default stream.
class Sink {
  public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (path.empty()) return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw UsageError("cannot open '" + path + "' for writing");
        stream_ = file_.get();
    }
    std::ostream& stream() { return *stream_; }
    bool to_file() const { return file_ != nullptr; }

  private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ---------------------------------------------------------------- construct

struct ConstructArgs {
    Common common;
    uint64_t k = 0;
    uint64_t x = 0;
    std::string c1 = "1";
    std::string c2 = "1";
    std::string mode = "adaptive";
    uint64_t j_max = 1'000'000;
    bool certify = false;
    std::string certificate;
};

int cmd_construct(const ConstructArgs& args, std::ostream& out, std::ostream& err) {
    WorkerPool pool(args.common.threads);
    ConstructOptions options;
    options.c1 = Rational::parse(args.c1);
    options.c2 = Rational::parse(args.c2);
    options.mode = args.mode == "strict" ? Mode::Strict : Mode::Adaptive;
    options.j_max = args.j_max;

    ConstructionResult result = construct(args.k, args.x, options, pool);

    Sink sink(args.common.output, out);
    if (args.common.format == "json") {
        sink.stream() << result_to_json(result).dump(2) << '\n';
    } else {
        Json doc = result_to_json(result);
        std::string pairs, leftovers;
        for (const auto& [u, p] : result.assignment.pairs) {
            pairs += (pairs.empty() ? "" : ";") + std::to_string(u) + ":" + std::to_string(p);
        }
        for (int64_t u : result.assignment.leftovers) {
            leftovers += (leftovers.empty() ? "" : ";") + std::to_string(u);
        }
        Table table;
        std::vector<Json> row;
        for (auto it = doc.begin(); it != doc.end(); ++it) {
            table.columns.push_back(it.key());
            if (it.key() == "pairs") {
                row.push_back(pairs);
            } else if (it.key() == "leftovers") {
                row.push_back(leftovers);
            } else {
                row.push_back(it.value());
            }
        }
        table.rows.push_back(std::move(row));
        emit_table(table, "csv", sink.stream());
    }

    std::ostream& summary = sink.to_file() ? out : err;
    summary << "constructed m with " << result.m.get_str().size() << " digits; y achieved "
            << result.params.y << " (target " << result.y_target << "); j = " << result.j.get_str()
            << "; leftovers " << result.assignment.leftovers.size() << '\n';

    if (!args.certify) return kExitOk;

    std::string path = args.certificate;
    if (path.empty()) path = args.common.output.empty() ? "certificate.jsonl"
                                                        : args.common.output + ".cert.jsonl";
    Certificate cert = build_certificate(result, pool);
    {
        std::ofstream file(path, std::ios::binary);
        if (!file) throw UsageError("cannot open '" + path + "' for writing");
        write_certificate(file, cert);
    }
    VerifyReport report = verify_certificate(cert, pool);
    summary << "certificate " << path << ": " << report.checked << " witnesses, "
            << (report.ok ? "verified" : "FAILED") << '\n';
    return report.ok ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------- certify

int cmd_certify(const Common& common, const std::string& result_path, std::ostream& out,
                std::ostream& err) {
    WorkerPool pool(common.threads);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(result_path));
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(result_path + ": " + e.what());
    }
    ConstructionResult result;
    try {
        result = result_from_json(doc, pool);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(result_path + ": " + e.what());
    }
    Certificate cert = build_certificate(result, pool);
    Sink sink(common.output, out);
    write_certificate(sink.stream(), cert);
    err << "certificate with " << cert.witnesses.size() << " witnesses\n";
    return kExitOk;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Common& common, const std::string& path, std::ostream& out,
               std::ostream& err) {
    WorkerPool pool(common.threads);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    Certificate cert;
    try {
        cert = read_certificate(in);
    } catch (const CertificateParseError& e) {
        throw UsageError(path + ": " + e.what());
    }
    VerifyReport report = verify_certificate(cert, pool);

    Sink sink(common.output, out);
    if (common.format == "json") {
        Json doc;
        doc["ok"] = report.ok;
        doc["checked"] = report.checked;
        Json failures = Json::array();
        for (const auto& f : report.failures) failures.push_back(Json{{"u", f.u}, {"reason", f.reason}});
        doc["failures"] = std::move(failures);
        sink.stream() << doc.dump(2) << '\n';
    } else {
        Table table{{"u", "reason"}, {}};
        for (const auto& f : report.failures) table.rows.push_back({f.u, f.reason});
        emit_table(table, "csv", sink.stream());
    }
    err << (report.ok ? "verified " : "verification FAILED for ") << path << '\n';
    return report.ok ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------- lemmas

struct LemmaArgs {
    Common common;
    std::vector<uint64_t> x;
    std::string z = "auto";
    int a = 1;
    std::string r = "auto";
    uint64_t r_lo = 0;
    uint64_t r_hi = 0;
    int64_t u = 0;
    uint64_t k = 0;
    std::vector<uint64_t> y;
    std::string c1 = "1";
    std::string c2 = "1";
    std::string method = "subgroup";
    uint64_t p_lo = 0;
    uint64_t p_hi = 0;
};

uint64_t single_x(const LemmaArgs& args) {
    if (args.x.size() != 1) throw UsageError("exactly one --x value is required");
    return args.x.front();
}

Table lemma_smooth(const LemmaArgs& args, const WorkerPool& pool) {
    if (args.x.empty()) throw UsageError("--x is required");
    Table table{{"x", "z", "count", "bound", "ratio", "cutoff", "within_hypothesis"}, {}};
    for (uint64_t x : args.x) {
        if (x < 16) throw UsageError("smooth: x must be at least 16");
        uint64_t z;
        if (args.z == "auto") {
            z = std::max<uint64_t>(1, static_cast<uint64_t>(std::floor(smooth_cutoff(x))));
        } else {
            try {
                z = std::stoull(args.z);
            } catch (const std::exception&) {
                throw UsageError("--z must be an integer or 'auto'");
            }
        }
        SmoothBoundCheck c = check_smooth_bound(x, z, pool);
        table.rows.push_back({c.x, c.z, c.count, c.bound, c.ratio, c.cutoff, c.within_hypothesis});
    }
    return table;
}

Table lemma_sieve(const LemmaArgs& args, const WorkerPool& pool) {
    uint64_t x = single_x(args);
    std::vector<uint64_t> R;
    if (args.r == "auto") {
        // P2 of the construction at this x: primes in (log x, z].
        R = derive_params(1, x, Rational(1), Rational(1), pool).P2;
    } else if (args.r == "range") {
        R = primes_up_to(args.r_hi, pool).in_range(args.r_lo, args.r_hi);
    } else if (args.r == "none") {
        R.clear();
    } else {
        throw UsageError("--r must be auto, range or none");
    }
    SieveBoundCheck c = check_sieve_bound(x, R, args.a);
    return Table{{"x", "a", "r_size", "count", "mertens_bound", "ratio"},
                 {{c.x, c.a, c.r_size, c.count, c.mertens_bound, c.ratio}}};
}

Table lemma_charsum(const LemmaArgs& args, const WorkerPool& pool) {
    uint64_t x = single_x(args);
    if (args.k == 0 || args.k % 2 != 0) throw UsageError("charsum needs an even --k");
    Params params = derive_params(args.k, x, Rational::parse(args.c1), Rational::parse(args.c2), pool);
    ExceptionalSet U = exceptional_set(params);
    CharSum s = char_sum_S(U.members, params.P3);
    std::vector<int64_t> u_prime = u_prime_analytic(U, params);

    Json inner_u1;  // null when 1 is not in U
    for (const auto& [u, inner] : s.per_u) {
        if (u == 1) inner_u1 = inner;
    }
    double xd = static_cast<double>(x);
    return Table{{"k", "x", "y", "u_size", "p3_size", "s_u_major", "s_p_major", "s_reciprocity",
                  "inner_u1", "u_prime_size", "u_prime_ratio", "s_over_x52"},
                 {{params.k, x, params.y, U.size(), params.P3.size(), s.s_u_major, s.s_p_major,
                   s.s_reciprocity, inner_u1, u_prime.size(),
                   static_cast<double>(u_prime.size()) / std::sqrt(xd),
                   static_cast<double>(s.s_u_major) / std::pow(xd, 2.5)}}};
}

Table lemma_rhoprod(const LemmaArgs& args, const WorkerPool& pool) {
    uint64_t x = single_x(args);
    if (args.u == 0) throw UsageError("--u must be non-zero");
    if (args.k == 0) throw UsageError("--k must be positive");
    if (args.y.empty()) throw UsageError("--y is required");
    RhoMethod method = args.method == "scan" ? RhoMethod::Scan : RhoMethod::Subgroup;
    Table table{{"u", "k", "x", "y", "product", "ratio"}, {}};
    for (uint64_t y : args.y) {
        if (y <= x) throw UsageError("--y values must exceed --x");
        RhoProduct r = rho_product(args.u, args.k, x, y, method, pool);
        table.rows.push_back({r.u, r.k, r.x, r.y, to_string(r.product), to_string(r.ratio)});
    }
    return table;
}

Table lemma_squarefree(const LemmaArgs& args, const WorkerPool& pool) {
    uint64_t x = single_x(args);
    uint64_t hi = args.p_hi == 0 ? x : args.p_hi;
    std::vector<uint64_t> P = primes_up_to(hi, pool).in_range(args.p_lo, hi);
    int64_t value = char_sum_squarefree(x, P);
    double xd = static_cast<double>(x);
    return Table{{"x", "p_count", "value", "ratio_x2"},
                 {{x, P.size(), value, static_cast<double>(value) / (xd * xd)}}};
}

// ---------------------------------------------------------------- survey

Table survey(uint64_t limit, const WorkerPool& pool) {
    Table table{{"p", "q", "gap", "merit", "rankin_ratio"}, {}};
    for (const GapRecord& r : max_gap(limit, pool)) {
        Json rankin;
        if (r.rankin_ratio) rankin = *r.rankin_ratio;
        table.rows.push_back({r.p, r.q, r.gap, r.merit, rankin});
    }
    return table;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Prime-avoiding perfect powers: construction, certificates, lemma checks"};
    app.require_subcommand(1);

    ConstructArgs construct_args;
    auto* construct_cmd = app.add_subcommand("construct", "Build m with m^k + u composite for |u| <= y");
    add_common(construct_cmd, construct_args.common, "json");
    construct_cmd->add_option("--k", construct_args.k, "Power k")->required()->check(CLI::PositiveNumber);
    construct_cmd->add_option("--x", construct_args.x, "Prime bound x")->required();
    construct_cmd->add_option("--c1", construct_args.c1, "Constant c1 (decimal or a/b)");
    construct_cmd->add_option("--c2", construct_args.c2, "Constant c2 (decimal or a/b)");
    construct_cmd->add_option("--mode", construct_args.mode, "adaptive or strict")
        ->check(CLI::IsMember({"adaptive", "strict"}));
    construct_cmd->add_option("--j-max", construct_args.j_max, "Budget for the j search");
    construct_cmd->add_flag("--certify", construct_args.certify, "Also write and verify a certificate");
    construct_cmd->add_option("--certificate", construct_args.certificate, "Certificate path");

    Common certify_common;
    std::string result_path;
    auto* certify_cmd = app.add_subcommand("certify", "Build a certificate from a result JSON");
    add_common(certify_cmd, certify_common, "json");
    certify_cmd->add_option("--result", result_path, "Construction result JSON")->required();

    Common verify_common;
    std::string cert_path;
    auto* verify_cmd = app.add_subcommand("verify", "Check a certificate file");
    add_common(verify_cmd, verify_common, "json");
    verify_cmd->add_option("certificate", cert_path, "Certificate (JSON lines)")->required();

    LemmaArgs lemma;
    auto* lemmas_cmd = app.add_subcommand("lemmas", "Exact checks of the sieve and character-sum estimates");
    lemmas_cmd->require_subcommand(1);
    auto* smooth_cmd = lemmas_cmd->add_subcommand("smooth", "Smooth-number count vs x/log^5 x");
    auto* sieve_cmd = lemmas_cmd->add_subcommand("sieve", "Primes avoiding a mod r vs Mertens product");
    auto* charsum_cmd = lemmas_cmd->add_subcommand("charsum", "Quadratic character sum S over U and P3");
    auto* rhoprod_cmd = lemmas_cmd->add_subcommand("rhoprod", "prod (1 - rho_u(p)/p) over x < p <= y");
    auto* squarefree_cmd = lemmas_cmd->add_subcommand("squarefree", "sum over odd squarefree m of |sum (p/m)|^2");
    for (auto* sub : {smooth_cmd, sieve_cmd, charsum_cmd, rhoprod_cmd, squarefree_cmd}) {
        add_common(sub, lemma.common, "csv");
        sub->add_option("--x", lemma.x, "x (smooth accepts several)")->required();
    }
    smooth_cmd->add_option("--z", lemma.z, "Smoothness bound or 'auto'");
    sieve_cmd->add_option("--a", lemma.a, "+1 or -1")->check(CLI::IsMember({1, -1}));
    sieve_cmd->add_option("--r", lemma.r, "auto (primes in (log x, z]), range, none");
    sieve_cmd->add_option("--r-lo", lemma.r_lo, "Range mode: primes above this");
    sieve_cmd->add_option("--r-hi", lemma.r_hi, "Range mode: primes up to this");
    charsum_cmd->add_option("--k", lemma.k, "Even power k")->required();
    charsum_cmd->add_option("--c1", lemma.c1, "Constant c1");
    charsum_cmd->add_option("--c2", lemma.c2, "Constant c2");
    rhoprod_cmd->add_option("--u", lemma.u, "Shift u")->required();
    rhoprod_cmd->add_option("--k", lemma.k, "Power k")->required();
    rhoprod_cmd->add_option("--y", lemma.y, "Upper end(s) y")->required();
    rhoprod_cmd->add_option("--method", lemma.method, "subgroup or scan")
        ->check(CLI::IsMember({"subgroup", "scan"}));
    squarefree_cmd->add_option("--p-lo", lemma.p_lo, "Primes above this");
    squarefree_cmd->add_option("--p-hi", lemma.p_hi, "Primes up to this (default x)");

    Common survey_common;
    uint64_t limit = 0;
    auto* survey_cmd = app.add_subcommand("survey", "Maximal prime gap records");
    add_common(survey_cmd, survey_common, "csv");
    survey_cmd->add_option("--limit", limit, "Upper bound for the larger prime")->required();

    std::vector<std::string> argv_store{"primeavoid"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*construct_cmd) return cmd_construct(construct_args, out, err);
        if (*certify_cmd) return cmd_certify(certify_common, result_path, out, err);
        if (*verify_cmd) return cmd_verify(verify_common, cert_path, out, err);
        if (*survey_cmd) {
            if (limit < 3) throw UsageError("--limit must be at least 3");
            WorkerPool pool(survey_common.threads);
            Sink sink(survey_common.output, out);
            emit_table(survey(limit, pool), survey_common.format, sink.stream());
            return kExitOk;
        }
        WorkerPool pool(lemma.common.threads);
        Table table;
        if (*smooth_cmd) table = lemma_smooth(lemma, pool);
        else if (*sieve_cmd) table = lemma_sieve(lemma, pool);
        else if (*charsum_cmd) table = lemma_charsum(lemma, pool);
        else if (*rhoprod_cmd) table = lemma_rhoprod(lemma, pool);
        else table = lemma_squarefree(lemma, pool);
        Sink sink(lemma.common.output, out);
        emit_table(table, lemma.common.format, sink.stream());
        return kExitOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        // ParameterError and friends: the request itself is unusable.
        err << "error: " << e.what() << '\n' << app.help();
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace primeavoid::cli
