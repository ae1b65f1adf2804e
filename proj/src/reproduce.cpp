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

#include "psdrank/reproduce.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <sstream>

#include "psdrank/bounds.hpp"
#include "psdrank/factorization.hpp"
#include "psdrank/generators.hpp"
#include "psdrank/protocol.hpp"

namespace psdrank {

namespace {

constexpr double kApprox = 0.01;

class Builder {
  public:
    explicit Builder(std::string id) { report_.example_id = std::move(id); }

    void add(std::string quantity, double expected, double computed, Relation rel,
             double tol = 0.0) {
        report_.rows.push_back({std::move(quantity), expected, computed, rel, tol,
                                relation_holds(rel, computed, expected, tol)});
    }

    ReproductionReport done() { return std::move(report_); }

  private:
    ReproductionReport report_;
};

NonnegativeMatrix family(Family f, std::optional<long> n = std::nullopt,
                         std::optional<double> eps = std::nullopt) {
    MatrixFamilySpec spec;
    spec.family = f;
    spec.n = n;
    spec.eps = eps;
    return generate(spec);
}

SimplexOptConfig solver(std::uint64_t seed) {
    SimplexOptConfig cfg;
    cfg.seed = seed;
    return cfg;
}

std::vector<double> uniform(Eigen::Index n) {
    return std::vector<double>(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
}

std::vector<double> example_4_4_scaling(long n) {
    std::vector<double> d(static_cast<std::size_t>(n), 10.0);
    d[0] = 0.0;
    return d;
}

double ceil_bound(double v) { return std::ceil(v - 1e-9); }

ReproductionReport ex4_4(std::uint64_t seed) {
    Builder b("ex4.4");
    const long n = 10;
    const double eps = 0.01;
    const auto a = family(Family::example_4_4, n, eps);
    const RMatrix p = stochastic_core(a.values());
    const double nn = static_cast<double>(n);
    const double se = std::sqrt(eps);
    const double f1 = (1.0 + se + (nn - 2.0) * eps) /
                      (std::sqrt(1.0 + (nn - 1.0) * eps) * std::sqrt(2.0 + (nn - 2.0) * eps));
    const double f2 = (1.0 + 2.0 * se + (nn - 3.0) * eps) / (2.0 + (nn - 2.0) * eps);
    const RVector p0 = p.col(0), p1 = p.col(1), p2 = p.col(2);
    b.add("f1 = F(P_1, P_2)", f1, bhattacharyya(as_span(p0), as_span(p1)), Relation::eq, 1e-9);
    b.add("f2 = F(P_2, P_3)", f2, bhattacharyya(as_span(p1), as_span(p2)), Relation::eq, 1e-9);
    const double closed =
        nn * nn / (nn + 2.0 * (nn - 1.0) * f1 * f1 + (nn - 2.0) * (nn - 1.0) * f2 * f2);
    const double b3u = bound_b3(a, solver(seed), uniform(n)).value;
    b.add("B3 closed form, uniform q", closed, b3u, Relation::eq, 1e-9);
    b.add("B3, uniform q", 2.09, b3u, Relation::approx, kApprox);
    b.add("B3", 2.09, bound_b3(a, solver(seed)).value, Relation::ge);

    const auto d = example_4_4_scaling(n);
    const NonnegativeMatrix scaled(
        Eigen::Map<const RVector>(d.data(), n).asDiagonal() * a.values());
    b.add("B3(DA), uniform q", 4.88, bound_b3(scaled, solver(seed), uniform(n)).value,
          Relation::approx, kApprox);
    b.add("B3' with D = diag(0,10,...,10)", 4.88,
          rescaled_bound(a, InnerBound::b3, solver(seed), d).value, Relation::ge);
    return b.done();
}

ReproductionReport ex4_7(std::uint64_t seed) {
    Builder b("ex4.7");
    const long n = 10;
    const double eps = 0.01;
    const double nn = static_cast<double>(n);
    const auto a = family(Family::example_4_4, n, eps);
    const double b4 = bound_b4(a).value;
    const double closed = 1.0 / (1.0 + (nn - 1.0) * eps) + (nn - 1.0) / (2.0 + (nn - 2.0) * eps);
    b.add("B4 closed form", closed, b4, Relation::eq, 1e-9);
    b.add("B4", 5.24, b4, Relation::approx, kApprox);
    const auto d = example_4_4_scaling(n);
    const double b4r = rescaled_bound(a, InnerBound::b4, solver(seed), d).value;
    b.add("B4' with D = diag(0,10,...,10)", 8.33, b4r, Relation::ge);
    b.add("ceil B4'", 9.0, ceil_bound(b4r), Relation::eq);
    const double b1 = bound_b1(a).value;
    b.add("B1", 3.16, b1, Relation::approx, kApprox);
    b.add("ceil B1", 4.0, ceil_bound(b1), Relation::eq);
    const NonnegativeMatrix scaled(
        Eigen::Map<const RVector>(d.data(), n).asDiagonal() * a.values());
    b.add("ceil B2(DA)", 6.0, ceil_bound(bound_b2(scaled).value), Relation::eq);
    return b.done();
}

ReproductionReport ex4_10(std::uint64_t seed) {
    Builder b("ex4.10");
    const long n = 10;
    const auto a = family(Family::example_4_10, n, 0.01);
    b.add("B4", 4.81, bound_b4(a).value, Relation::approx, kApprox);
    std::vector<std::vector<double>> q(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) {
            if (a.values()(i, j) == 1.0) q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 0.5;
        }
    }
    b.add("B5 with half/half q", 5.36, bound_b5(a, solver(seed), q).value, Relation::ge);
    return b.done();
}

ReproductionReport ex5_1(std::uint64_t) {
    Builder b("ex5.1");
    const long n = 10;
    const double nn = static_cast<double>(n);
    const auto a = family(Family::example_5_1, n);
    b.add("B4 = (n+1)/2", (nn + 1.0) / 2.0, bound_b4(a).value, Relation::eq, 1e-9);
    b.add("B2 ~ (n+1)/(2 sqrt n)", (nn + 1.0) / (2.0 * std::sqrt(nn)), bound_b2(a).value,
          Relation::approx, kApprox);
    return b.done();
}

ReproductionReport ex5_2(std::uint64_t seed) {
    Builder b("ex5.2");
    const long n = 10;
    const auto a = family(Family::example_5_2, n, 0.001);
    b.add("B1", 3.16, bound_b1(a).value, Relation::approx, kApprox);
    b.add("B2", 3.42, bound_b2(a).value, Relation::approx, kApprox);
    b.add("B4", 3.99, bound_b4(a).value, Relation::approx, kApprox);
    const double b3u = bound_b3(a, solver(seed), uniform(n)).value;
    b.add("B3, uniform q", 4.52, b3u, Relation::ge);
    b.add("ceil B3", 5.0, ceil_bound(b3u), Relation::eq);
    return b.done();
}

ReproductionReport ex5_3(std::uint64_t seed) {
    Builder b("ex5.3");
    const long n = 10;
    const auto a = family(Family::example_5_3, n, 0.9);
    b.add("B1", 3.16, bound_b1(a).value, Relation::approx, kApprox);
    b.add("B2", 1.0005, bound_b2(a).value, Relation::approx, 0.001);
    b.add("B4", 1.099, bound_b4(a).value, Relation::approx, 0.001);
    b.add("B5 (heuristic)", 1.1, bound_b5(a, solver(seed)).value, Relation::lt);
    return b.done();
}

ReproductionReport ex5_4(std::uint64_t seed) {
    Builder b("ex5.4");
    const auto a = family(Family::hexagon_slack);
    b.add("B1 = sqrt(3)", std::sqrt(3.0), bound_b1(a).value, Relation::eq, 1e-9);
    b.add("B2", 1.59, bound_b2(a).value, Relation::approx, kApprox);
    b.add("B4", 2.0, bound_b4(a).value, Relation::eq);
    b.add("B3, uniform q", 2.1, bound_b3(a, solver(seed), uniform(6)).value, Relation::gt);
    return b.done();
}

ReproductionReport ne(std::uint64_t) {
    Builder b("ne");
    for (long n : {3L, 5L, 7L}) {
        const PsdFactorization f = ne_factorization_odd(n);
        const auto target = family(Family::derangement, n * n);
        const std::string tag = " (n=" + std::to_string(n) + ")";
        b.add("size" + tag, static_cast<double>(n), static_cast<double>(f.size), Relation::eq);
        b.add("max error" + tag, 1e-12, verify(f, target.values()).max_abs_error, Relation::lt);
        b.add("B1 of target" + tag, static_cast<double>(n), bound_b1(target).value, Relation::eq,
              1e-9);
    }
    for (long n : {2L, 4L}) {
        const PsdFactorization f = ne_factorization_even(n);
        const auto target = family(Family::derangement, n * n - 1);
        const std::string tag = " (n=" + std::to_string(n) + ")";
        b.add("size" + tag, static_cast<double>(n), static_cast<double>(f.size), Relation::eq);
        b.add("max error" + tag, 1e-12, verify(f, target.values()).max_abs_error, Relation::lt);
    }
    const PsdFactorization real3 = realify(ne_factorization_odd(3));
    b.add("realified size (n=3)", 6.0, static_cast<double>(real3.size), Relation::eq);
    b.add("realified max error (n=3)", 1e-12,
          verify(real3, family(Family::derangement, 9).values()).max_abs_error, Relation::lt);
    return b.done();
}

ReproductionReport mc(std::uint64_t) {
    Builder b("mc");
    const std::vector<std::pair<long, double>> cases{{9, 3.0}, {25, 4.0}, {10, 2.0}, {9, 2.5},
                                                     {16, 0.5}};
    for (const auto& [n, c] : cases) {
        MatrixFamilySpec spec{Family::m_c, n, std::nullopt, c, std::nullopt};
        const auto target = generate(spec);
        const PsdFactorization f = mc_factorization(n, c);
        const double nn = static_cast<double>(n);
        const double ceiling =
            c > 2.0 ? 2.0 * std::ceil(c) * std::ceil(std::sqrt(nn)) : std::ceil(std::sqrt(2.0 * nn)) + 1.0;
        std::ostringstream tag;
        tag << " (n=" << n << ", c=" << c << ")";
        b.add("size" + tag.str(), ceiling, static_cast<double>(f.size), Relation::le);
        b.add("max error" + tag.str(), 1e-10, verify(f, target.values()).max_abs_error,
              Relation::le);
    }
    return b.done();
}

ReproductionReport ip(std::uint64_t) {
    Builder b("ip");
    for (long n : {2L, 3L, 4L, 5L}) {
        const long k = (n + 1) / 2;
        const RMatrix m = ip_sign_matrix(n, k);
        const auto target = family(Family::inner_product, n);
        const double big_n = std::ldexp(1.0, static_cast<int>(n));
        const double ceiling = n % 2 == 0 ? 2.0 * std::sqrt(big_n) - 1.0
                                          : 1.5 * std::sqrt(2.0) * std::sqrt(big_n) - 1.0;
        const std::string tag = " (n=" + std::to_string(n) + ")";
        b.add("|M o conj M - IP| max" + tag, 0.0,
              (m.cwiseProduct(m) - target.values()).cwiseAbs().maxCoeff(), Relation::eq);
        b.add("rank M" + tag, ceiling, static_cast<double>(numeric_rank(m)), Relation::le);
        b.add("hadamard-root max error" + tag, 1e-9,
              verify(hadamard_root_factorization(m), target.values()).max_abs_error,
              Relation::le);
    }
    const long n = 4;
    const auto target = family(Family::inner_product, n);
    double worst = 0.0;
    for (unsigned x = 0; x < 16; ++x) {
        for (unsigned y = 0; y < 16; ++y) {
            std::string xs, ys;
            for (int bit = n - 1; bit >= 0; --bit) {
                xs += ((x >> bit) & 1) ? '1' : '0';
                ys += ((y >> bit) & 1) ? '1' : '0';
            }
            const double e = ip_protocol(n, xs, ys).expectation;
            worst = std::max(worst, std::abs(e - target.values()(x, y)));
        }
    }
    b.add("protocol max |E - IP| (n=4)", 1e-12, worst, Relation::le);
    return b.done();
}

ReproductionReport disj(std::uint64_t seed) {
    Builder b("disj");
    for (long n = 1; n <= 4; ++n) {
        const auto target = family(Family::disjointness, n);
        const PsdFactorization f = disj_factorization(n);
        const double size = std::ldexp(1.0, static_cast<int>(n));
        const std::string tag = " (n=" + std::to_string(n) + ")";
        b.add("tensor size" + tag, size, static_cast<double>(f.size), Relation::eq);
        b.add("tensor max error" + tag, 1e-12, verify(f, target.values()).max_abs_error,
              Relation::le);
        const Eigen::Index half = target.rows() / 2;
        b.add("block-zero bound" + tag, size,
              block_zero_bound(target, half, half, LeafBound::b1, solver(seed)).report.value,
              Relation::ge);
    }
    return b.done();
}

}  // namespace

std::string relation_symbol(Relation r) {
    switch (r) {
        case Relation::ge: return ">=";
        case Relation::gt: return ">";
        case Relation::le: return "<=";
        case Relation::lt: return "<";
        case Relation::approx: return "~=";
        case Relation::eq: return "=";
    }
    return "?";
}

bool relation_holds(Relation r, double computed, double expected, double tolerance) {
    switch (r) {
        case Relation::ge: return computed >= expected;
        case Relation::gt: return computed > expected;
        case Relation::le: return computed <= expected;
        case Relation::lt: return computed < expected;
        case Relation::approx:
        case Relation::eq: return std::abs(computed - expected) <= tolerance;
    }
    return false;
}

bool ReproductionReport::all_pass() const {
    for (const auto& row : rows) {
        if (!row.pass) return false;
    }
    return !rows.empty();
}

const std::vector<std::string>& example_ids() {
    static const std::vector<std::string> ids{"ex4.4", "ex4.7", "ex4.10", "ex5.1",
                                              "ex5.2", "ex5.3", "ex5.4",  "ne",
                                              "mc",    "ip",    "disj"};
    return ids;
}

ReproductionReport reproduce(const std::string& example_id, std::uint64_t seed) {
    using Fn = ReproductionReport (*)(std::uint64_t);
    static const std::map<std::string, Fn> table{
        {"ex4.4", ex4_4}, {"ex4.7", ex4_7}, {"ex4.10", ex4_10}, {"ex5.1", ex5_1},
        {"ex5.2", ex5_2}, {"ex5.3", ex5_3}, {"ex5.4", ex5_4},   {"ne", ne},
        {"mc", mc},       {"ip", ip},       {"disj", disj},
    };
    auto it = table.find(example_id);
    if (it == table.end()) throw DomainError("unknown example '" + example_id + "'");
    return it->second(seed);
}

Json reproduction_to_json(const ReproductionReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json j;
        j["quantity"] = row.quantity;
        j["expected"] = row.expected;
        j["computed"] = row.computed;
        j["relation"] = relation_symbol(row.relation);
        j["tolerance"] = row.tolerance;
        j["pass"] = row.pass;
        rows.push_back(std::move(j));
    }
    Json out;
    out["schema"] = 1;
    out["example"] = r.example_id;
    out["pass"] = r.all_pass();
    out["rows"] = std::move(rows);
    return out;
}

}  // namespace psdrank
