// Copyright 2026 The psdrank Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "psdrank/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "psdrank/bounds.hpp"
#include "psdrank/factorization.hpp"
#include "psdrank/generators.hpp"
#include "psdrank/io.hpp"
#include "psdrank/protocol.hpp"
#include "psdrank/reproduce.hpp"

namespace psdrank::cli {

namespace {

/// Thrown for argument combinations CLI11 cannot express.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
    const char* env = std::getenv("PSDRANK_SEED");
    if (env == nullptr || *env == '\0') return 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw UsageError("PSDRANK_SEED must be a nonnegative integer");
    return v;
}

std::string fmt(double x) {
    std::ostringstream s;
    s << std::setprecision(12) << x;
    return s.str();
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& items) {
    std::map<std::string, std::string> out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw UsageError("--params entry '" + item + "' must look like key=value");
        }
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

template <class T>
T param(const std::map<std::string, std::string>& p, const std::string& key, T fallback) {
    auto it = p.find(key);
    if (it == p.end()) return fallback;
    std::istringstream in(it->second);
    T v{};
    if (!(in >> v) || !in.eof()) throw UsageError("--params " + key + ": bad value '" + it->second + "'");
    return v;
}

void emit(const Json& report, const std::string& path, std::ostream& out) {
    if (path.empty()) return;
    write_json_file(path, report);
    out << "report written to " << path << "\n";
}

// ---------------------------------------------------------------------------

struct GenArgs {
    std::string family;
    std::optional<long> n;
    std::optional<double> eps, c, a;
    std::string out;
};

int cmd_gen(const GenArgs& g, std::ostream& out) {
    MatrixFamilySpec spec;
    spec.family = parse_family(g.family);
    spec.n = g.n;
    spec.eps = g.eps;
    spec.c = g.c;
    spec.a = g.a;
    const Json j = matrix_to_json(generate(spec).values());
    if (g.out.empty()) {
        out << dump_json(j);
    } else {
        write_json_file(g.out, j);
        out << "matrix written to " << g.out << "\n";
    }
    return kExitOk;
}

struct BoundsArgs {
    std::string matrix;
    std::string bounds = "b1,b1r,b2,b3,b4,b5";
    bool rescale = false;
    std::size_t restarts = 16;
    std::optional<std::uint64_t> seed;
    std::string q_file;
    bool also_transpose = false;
    std::vector<long> block_split;
    std::string report;
};

Json report_to_json(const BoundReport& r) {
    Json j;
    j["bound"] = bound_name(r.kind);
    j["value"] = r.value;
    j["certificate"] = certificate_to_json(r.certificate);
    j["iterations"] = r.stats.iterations;
    j["restarts"] = r.stats.restarts;
    return j;
}

struct BoundsRun {
    Json reports = Json::array();
    double best = 0.0;
    bool certificates_ok = true;
};

BoundsRun run_bounds(const NonnegativeMatrix& a, const std::vector<BoundKind>& kinds,
                     const SimplexOptConfig& cfg, const Certificate& given,
                     const std::vector<long>& block_split, std::ostream& out,
                     const std::string& label) {
    BoundsRun run;
    for (BoundKind k : kinds) {
        BoundReport r;
        switch (k) {
            case BoundKind::b1: r = bound_b1(a); break;
            case BoundKind::b1_real: r = bound_b1_real(a); break;
            case BoundKind::b2: r = bound_b2(a); break;
            case BoundKind::b3:
                r = bound_b3(a, cfg, given.q.empty() ? std::nullopt
                                                     : std::optional<std::vector<double>>(given.q));
                break;
            case BoundKind::b4: r = bound_b4(a); break;
            case BoundKind::b5:
                r = bound_b5(a, cfg,
                             given.q_rows.empty()
                                 ? std::nullopt
                                 : std::optional<std::vector<std::vector<double>>>(given.q_rows));
                break;
            case BoundKind::b3_rescaled:
            case BoundKind::b4_rescaled:
            case BoundKind::b5_rescaled: {
                const InnerBound inner = k == BoundKind::b3_rescaled   ? InnerBound::b3
                                         : k == BoundKind::b4_rescaled ? InnerBound::b4
                                                                       : InnerBound::b5;
                r = rescaled_bound(a, inner, cfg,
                                   given.d.empty() ? std::nullopt
                                                   : std::optional<std::vector<double>>(given.d));
                break;
            }
            case BoundKind::block_zero: {
                if (block_split.size() != 2) {
                    throw UsageError("block_zero needs --block-split ROW,COL");
                }
                const auto bz = block_zero_bound(a, block_split[0], block_split[1],
                                                 LeafBound::b1, cfg);
                r = bz.report;
                break;
            }
        }
        Json j = report_to_json(r);
        if (k != BoundKind::block_zero) {
            const double again = evaluate_certificate(a, r);
            const bool ok = std::abs(again - r.value) <= 1e-9;
            j["certificate_check"] = ok;
            run.certificates_ok = run.certificates_ok && ok;
        }
        out << label << std::left << std::setw(12) << bound_name(k) << " " << fmt(r.value) << "\n";
        run.best = std::max(run.best, r.value);
        run.reports.push_back(std::move(j));
    }
    return run;
}

int cmd_bounds(const BoundsArgs& b, std::ostream& out, std::ostream& err) {
    const NonnegativeMatrix a = read_nonnegative_matrix_file(b.matrix);
    std::vector<BoundKind> kinds;
    for (const auto& name : split_list(b.bounds)) {
        try {
            kinds.push_back(parse_bound_name(name));
        } catch (const DomainError& e) {
            throw UsageError(std::string("--bounds: ") + e.what());
        }
    }
    if (b.rescale) {
        for (BoundKind k : {BoundKind::b3, BoundKind::b4, BoundKind::b5}) {
            const BoundKind r = k == BoundKind::b3   ? BoundKind::b3_rescaled
                                : k == BoundKind::b4 ? BoundKind::b4_rescaled
                                                     : BoundKind::b5_rescaled;
            if (std::count(kinds.begin(), kinds.end(), k) &&
                !std::count(kinds.begin(), kinds.end(), r)) {
                kinds.push_back(r);
            }
        }
    }
    SimplexOptConfig cfg;
    cfg.restarts = b.restarts;
    cfg.seed = b.seed.value_or(default_seed());
    Certificate given;
    if (!b.q_file.empty()) given = certificate_from_json(read_json_file(b.q_file));

    const BoundsRun main_run = run_bounds(a, kinds, cfg, given, b.block_split, out, "");
    Json report;
    report["schema"] = 1;
    report["command"] = "bounds";
    report["matrix"] = b.matrix;
    report["rows"] = a.rows();
    report["cols"] = a.cols();
    report["seed"] = cfg.seed;
    report["bounds"] = main_run.reports;
    double best = main_run.best;
    bool ok = main_run.certificates_ok;
    if (b.also_transpose) {
        // Certificates are shaped for A, not its transpose; the zero block
        // moves with the split swapped.
        const std::vector<long> split_t(b.block_split.rbegin(), b.block_split.rend());
        const BoundsRun t =
            run_bounds(a.transpose(), kinds, cfg, Certificate{}, split_t, out, "T ");
        report["transpose_bounds"] = t.reports;
        best = std::max(best, t.best);
        ok = ok && t.certificates_ok;
    }
    report["best"] = best;
    report["certificates_ok"] = ok;
    out << "best " << fmt(best) << "\n";
    emit(report, b.report, out);
    if (!ok) {
        err << "certificate re-evaluation did not reproduce a reported value\n";
        return kExitFailed;
    }
    return kExitOk;
}

struct FactorizeArgs {
    std::string family;
    std::vector<std::string> params;
    std::string matrix;
    bool realify = false;
    std::string target_out;
    std::string out;
};

int cmd_factorize(const FactorizeArgs& f, std::ostream& out, std::ostream& err) {
    const auto p = parse_params(f.params);
    PsdFactorization fact;
    RMatrix target;
    std::string family = f.family;
    std::replace(family.begin(), family.end(), '_', '-');
    if (family == "ne") {
        const long n = param<long>(p, "n", 3);
        fact = n % 2 ? ne_factorization_odd(n) : ne_factorization_even(n);
        target = generate({Family::derangement, n % 2 ? n * n : n * n - 1, {}, {}, {}}).values();
    } else if (family == "mc") {
        const long n = param<long>(p, "n", 9);
        const double c = param<double>(p, "c", 3.0);
        fact = mc_factorization(n, c);
        target = generate({Family::m_c, n, {}, c, {}}).values();
    } else if (family == "ip") {
        const long n = param<long>(p, "n", 4);
        const long k = param<long>(p, "k", (n + 1) / 2);
        const RMatrix m = ip_sign_matrix(n, k);
        fact = hadamard_root_factorization(m);
        target = generate({Family::inner_product, n, {}, {}, {}}).values();
    } else if (family == "disj") {
        const long n = param<long>(p, "n", 2);
        fact = disj_factorization(n);
        target = generate({Family::disjointness, n, {}, {}, {}}).values();
    } else if (family == "not-full") {
        NonnegativeMatrix a = f.matrix.empty()
                                  ? generate({Family::tensor_pair, {}, {}, {},
                                              param<double>(p, "a", 0.5)})
                                  : read_nonnegative_matrix_file(f.matrix);
        fact = not_full_factorization(a);
        target = a.values();
    } else {
        throw UsageError("--family must be one of ne, mc, ip, not-full, disj");
    }
    if (f.realify) fact = realify(fact);

    const VerifyReport rep = verify(fact, target);
    out << "family " << f.family << " size " << fact.size << " field " << to_string(fact.field)
        << " max_abs_error " << fmt(rep.max_abs_error) << "\n";
    if (!f.out.empty()) {
        write_json_file(f.out, factorization_to_json(fact));
        out << "factorization written to " << f.out << "\n";
    }
    if (!f.target_out.empty()) {
        write_json_file(f.target_out, matrix_to_json(target));
        out << "target written to " << f.target_out << "\n";
    }
    if (!rep.passed(1e-9)) {
        err << "construction does not verify its target\n";
        return kExitFailed;
    }
    return kExitOk;
}

struct VerifyArgs {
    std::string matrix;
    std::string factorization;
    double tol = 1e-9;
    std::string report;
};

int cmd_verify(const VerifyArgs& v, std::ostream& out) {
    const CMatrix m = read_matrix_file(v.matrix);
    if (field_of(m) != Field::real) throw FormatError(v.matrix + ": 'data' must be real");
    const PsdFactorization f = factorization_from_json(read_json_file(v.factorization));
    ToleranceConfig tol;
    tol.verify_abs_tol = v.tol;
    const VerifyReport rep = verify(f, m.real(), tol);
    const bool ok = rep.passed(v.tol);
    out << (ok ? "OK" : "FAILED") << " size " << f.size << " max_abs_error "
        << fmt(rep.max_abs_error) << " min_eigenvalue " << fmt(rep.min_eigenvalue) << "\n";
    Json report;
    report["schema"] = 1;
    report["command"] = "verify";
    report["size"] = f.size;
    report["max_abs_error"] = rep.max_abs_error;
    report["min_eigenvalue"] = rep.min_eigenvalue;
    report["non_psd_E"] = rep.non_psd_e;
    report["non_psd_F"] = rep.non_psd_f;
    report["tol"] = v.tol;
    report["pass"] = ok;
    emit(report, v.report, out);
    return ok ? kExitOk : kExitFailed;
}

struct ProtocolIpArgs {
    int n = 4;
    std::string x, y;
    std::size_t samples = 0;
    std::optional<std::uint64_t> seed;
    std::string report;
};

Json outcome_to_json(const ProtocolOutcome& o) {
    Json j;
    j["outcome_probs"] = o.outcome_probs;
    j["output_values"] = o.output_values;
    j["expectation"] = o.expectation;
    if (!o.samples.empty()) {
        j["samples"] = o.samples.size();
        j["sample_mean"] = o.sample_mean;
    }
    return j;
}

int cmd_protocol_ip(const ProtocolIpArgs& a, std::ostream& out) {
    IpProtocolOptions opts;
    opts.samples = a.samples;
    opts.seed = a.seed.value_or(default_seed());
    const ProtocolOutcome o = ip_protocol(a.n, a.x, a.y, opts);
    out << "expectation " << fmt(o.expectation) << "\n";
    if (a.samples > 0) out << "sample_mean " << fmt(o.sample_mean) << "\n";
    Json report;
    report["schema"] = 1;
    report["command"] = "protocol ip";
    report["n"] = a.n;
    report["x"] = a.x;
    report["y"] = a.y;
    report["seed"] = opts.seed;
    report["outcome"] = outcome_to_json(o);
    emit(report, a.report, out);
    return kExitOk;
}

struct ProtocolEvalArgs {
    std::string factorization;
    std::size_t column = 0;
    std::string values;
    std::string report;
};

int cmd_protocol_eval(const ProtocolEvalArgs& a, std::ostream& out) {
    const PsdFactorization f = factorization_from_json(read_json_file(a.factorization));
    std::vector<double> values;
    Json j = read_json_file(a.values);
    if (j.is_object()) {
        if (!j.contains("values")) throw FormatError(a.values + ": missing field 'values'");
        j = j["values"];
    }
    if (!j.is_array()) throw FormatError(a.values + ": field 'values' must be an array");
    for (std::size_t k = 0; k < j.size(); ++k) {
        if (!j[k].is_number()) {
            throw FormatError(a.values + ": field 'values[" + std::to_string(k) +
                              "]' must be a number");
        }
        values.push_back(j[k].get<double>());
    }
    const ProtocolOutcome o = evaluate_protocol(f, a.column, values);
    out << "expectation " << fmt(o.expectation) << "\n";
    Json report;
    report["schema"] = 1;
    report["command"] = "protocol eval";
    report["column"] = a.column;
    report["outcome"] = outcome_to_json(o);
    emit(report, a.report, out);
    return kExitOk;
}

struct ReproduceArgs {
    std::string example = "all";
    std::optional<std::uint64_t> seed;
    std::string report;
};

int cmd_reproduce(const ReproduceArgs& r, std::ostream& out) {
    std::vector<std::string> ids;
    if (r.example == "all") {
        ids = example_ids();
    } else {
        if (std::find(example_ids().begin(), example_ids().end(), r.example) ==
            example_ids().end()) {
            throw UsageError("--example: unknown id '" + r.example + "'");
        }
        ids = {r.example};
    }
    const std::uint64_t seed = r.seed.value_or(default_seed());
    bool all_ok = true;
    Json reports = Json::array();
    for (const auto& id : ids) {
        const ReproductionReport rep = reproduce(id, seed);
        for (const auto& row : rep.rows) {
            out << (row.pass ? "PASS " : "FAIL ") << id << ": " << row.quantity << ": computed "
                << fmt(row.computed) << " " << relation_symbol(row.relation) << " "
                << fmt(row.expected);
            if (row.relation == Relation::approx || (row.relation == Relation::eq && row.tolerance > 0)) {
                out << " (tol " << fmt(row.tolerance) << ")";
            }
            out << "\n";
        }
        all_ok = all_ok && rep.all_pass();
        reports.push_back(reproduction_to_json(rep));
    }
    Json report;
    report["schema"] = 1;
    report["command"] = "reproduce";
    report["seed"] = seed;
    report["pass"] = all_ok;
    report["examples"] = std::move(reports);
    emit(report, r.report, out);
    return all_ok ? kExitOk : kExitFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lower bounds and explicit factorizations for PSD-rank", "psdrank"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a matrix family");
    gen_cmd->add_option("--family", gen.family, "Family name")->required();
    gen_cmd->add_option("--n", gen.n, "Size parameter");
    gen_cmd->add_option("--eps", gen.eps, "Epsilon");
    gen_cmd->add_option("--c", gen.c, "Diagonal value for m_c");
    gen_cmd->add_option("--a", gen.a, "Off-diagonal value for tensor_pair");
    gen_cmd->add_option("--out", gen.out, "Output JSON file (default: stdout)");

    BoundsArgs bounds;
    auto* bounds_cmd = app.add_subcommand("bounds", "Compute PSD-rank lower bounds");
    bounds_cmd->add_option("--matrix", bounds.matrix, "Matrix JSON or CSV")->required();
    bounds_cmd->add_option("--bounds", bounds.bounds, "Comma-separated bound names");
    bounds_cmd->add_flag("--rescale", bounds.rescale, "Also run rescaled b3/b4/b5");
    bounds_cmd->add_option("--restarts", bounds.restarts, "Restarts")->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--seed", bounds.seed, "Seed (default: $PSDRANK_SEED or 0)");
    bounds_cmd->add_option("--q-file", bounds.q_file, "Certificate JSON with q, q_rows, d");
    bounds_cmd->add_flag("--also-transpose", bounds.also_transpose, "Also bound the transpose");
    bounds_cmd->add_option("--block-split", bounds.block_split, "ROW,COL for block_zero")
        ->delimiter(',')
        ->expected(2);
    bounds_cmd->add_option("--report", bounds.report, "Report JSON file");

    FactorizeArgs fac;
    auto* fac_cmd = app.add_subcommand("factorize", "Build an explicit factorization");
    fac_cmd->add_option("--family", fac.family, "ne, mc, ip, not-full or disj")->required();
    fac_cmd->add_option("--params", fac.params, "key=value pairs (n, c, k, a)");
    fac_cmd->add_option("--matrix", fac.matrix, "Target for not-full");
    fac_cmd->add_flag("--realify", fac.realify, "Convert to a real factorization");
    fac_cmd->add_option("--target-out", fac.target_out, "Write the target matrix");
    fac_cmd->add_option("--out", fac.out, "Factorization JSON file");

    VerifyArgs ver;
    auto* ver_cmd = app.add_subcommand("verify", "Check a factorization against a matrix");
    ver_cmd->add_option("--matrix", ver.matrix, "Matrix JSON or CSV")->required();
    ver_cmd->add_option("--factorization", ver.factorization, "Factorization JSON")->required();
    ver_cmd->add_option("--tol", ver.tol, "Absolute tolerance")->check(CLI::PositiveNumber);
    ver_cmd->add_option("--report", ver.report, "Report JSON file");

    auto* proto_cmd = app.add_subcommand("protocol", "Simulate one-way protocols");
    proto_cmd->require_subcommand(1);
    ProtocolIpArgs pip;
    auto* ip_cmd = proto_cmd->add_subcommand("ip", "Inner-product protocol");
    ip_cmd->add_option("--n", pip.n, "Input length (even)");
    ip_cmd->add_option("--x", pip.x, "Alice's bits, MSB first")->required();
    ip_cmd->add_option("--y", pip.y, "Bob's bits, MSB first")->required();
    ip_cmd->add_option("--samples", pip.samples, "Number of samples");
    ip_cmd->add_option("--seed", pip.seed, "Seed (default: $PSDRANK_SEED or 0)");
    ip_cmd->add_option("--report", pip.report, "Report JSON file");
    ProtocolEvalArgs pev;
    auto* eval_cmd = proto_cmd->add_subcommand("eval", "Evaluate a normal-form factorization");
    eval_cmd->add_option("--factorization", pev.factorization, "Factorization JSON")->required();
    eval_cmd->add_option("--column", pev.column, "Column index")->required();
    eval_cmd->add_option("--values", pev.values, "Output values JSON: array or {\"values\": [...]}")
        ->required();
    eval_cmd->add_option("--report", pev.report, "Report JSON file");

    ReproduceArgs rep;
    auto* rep_cmd = app.add_subcommand("reproduce", "Reproduce worked examples");
    rep_cmd->add_option("--example", rep.example, "Example id or 'all'");
    rep_cmd->add_option("--seed", rep.seed, "Seed (default: $PSDRANK_SEED or 0)");
    rep_cmd->add_option("--report", rep.report, "Report JSON file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen, out);
        if (*bounds_cmd) return cmd_bounds(bounds, out, err);
        if (*fac_cmd) return cmd_factorize(fac, out, err);
        if (*ver_cmd) return cmd_verify(ver, out);
        if (*ip_cmd) return cmd_protocol_ip(pip, out);
        if (*eval_cmd) return cmd_protocol_eval(pev, out);
        if (*rep_cmd) return cmd_reproduce(rep, out);
    } catch (const FormatError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {  // DimensionError, PreconditionError
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
    return run(args, std::cout, std::cerr);
}

}  // namespace psdrank::cli
