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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <bitset>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "property_suites.hpp"
#include "psdrank/bounds.hpp"
#include "psdrank/factorization.hpp"
#include "psdrank/generators.hpp"
#include "psdrank/protocol.hpp"
#include "psdrank/reproduce.hpp"

using namespace psdrank;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

NonnegativeMatrix gen(Family f, std::optional<long> n = {}, std::optional<double> c = {},
                      std::optional<double> a = {}) {
    return generate({f, n, {}, c, a});
}

// Criteria 1-5 are worked examples; their rows live in the reproduction table.
void examples(Outcome& o, std::initializer_list<const char*> ids) {
    for (const char* id : ids) {
        const ReproductionReport rep = reproduce(id, 0);
        for (const auto& row : rep.rows) {
            o.require(row.pass, std::string(id) + " " + row.quantity);
            o.detail << " " << row.quantity << " = " << row.computed << " "
                     << relation_symbol(row.relation) << " " << row.expected << ";";
        }
    }
}

void nonequality(Outcome& o) {
    for (long n : {3L, 5L, 7L}) {
        const auto target = gen(Family::derangement, n * n);
        const PsdFactorization f = ne_factorization_odd(n);
        const double err = verify(f, target.values()).max_abs_error;
        const double b1 = bound_b1(target).value;
        o.require(err < 1e-12, "odd n=" + std::to_string(n) + " error");
        o.require(f.size == static_cast<std::size_t>(n) && std::abs(b1 - double(n)) < 1e-9,
                  "odd n=" + std::to_string(n) + " tightness");
        o.detail << " n=" << n << " err=" << err;
    }
    for (long n : {2L, 4L}) {
        const PsdFactorization f = ne_factorization_even(n);
        const double err = verify(f, gen(Family::derangement, n * n - 1).values()).max_abs_error;
        o.require(f.size == static_cast<std::size_t>(n) && err < 1e-12,
                  "even n=" + std::to_string(n));
        o.detail << " n=" << n << " err=" << err;
    }
    const PsdFactorization real = realify(ne_factorization_odd(3));
    o.require(real.size == 6 && real.field == Field::real &&
                  verify(real, gen(Family::derangement, 9).values()).passed(1e-12),
              "realify");
}

void mc(Outcome& o) {
    for (const auto& [n, c] : std::initializer_list<std::pair<long, double>>{
             {9, 3.0}, {25, 4.0}, {10, 2.0}, {9, 2.5}, {16, 0.5}}) {
        const PsdFactorization f = mc_factorization(n, c);
        const auto rn = static_cast<double>(std::ceil(std::sqrt(double(n)) - 1e-12));
        const double ceiling = c > 2.0 ? 2.0 * std::ceil(c) * rn
                                       : std::ceil(std::sqrt(2.0 * double(n)) - 1e-12) + 1.0;
        const double err = verify(f, gen(Family::m_c, n, c).values()).max_abs_error;
        o.require(err <= 1e-10 && double(f.size) <= ceiling,
                  "n=" + std::to_string(n) + " c=" + std::to_string(c));
        o.detail << " (" << n << "," << c << ")->" << f.size << "<=" << ceiling;
    }
}

std::string bits(std::uint64_t v, int n) {
    return std::bitset<64>(v).to_string().substr(static_cast<std::size_t>(64 - n));
}

void inner_product(Outcome& o) {
    for (long n = 2; n <= 5; ++n) {
        const long k = (n + 1) / 2;
        const RMatrix m = ip_sign_matrix(n, k);
        const auto ip = gen(Family::inner_product, n);
        o.require((m.cwiseAbs2() - ip.values()).cwiseAbs().maxCoeff() == 0.0,
                  "M o M = IP_" + std::to_string(n));
        const double big_n = std::ldexp(1.0, static_cast<int>(n));
        const double cap = n % 2 == 0 ? 2 * std::sqrt(big_n) - 1
                                      : 1.5 * std::numbers::sqrt2 * std::sqrt(big_n) - 1;
        const std::size_t rank = numeric_rank(m);
        o.require(double(rank) <= cap + 1e-12, "rank n=" + std::to_string(n));
        o.require(verify(hadamard_root_factorization(m), ip.values()).passed(1e-10),
                  "hadamard root n=" + std::to_string(n));
        o.detail << " n=" << n << " rank=" << rank;
    }
    const auto ip4 = gen(Family::inner_product, 4);
    double worst = 0.0;
    for (std::uint64_t x = 0; x < 16; ++x) {
        for (std::uint64_t y = 0; y < 16; ++y) {
            const double e = ip_protocol(4, bits(x, 4), bits(y, 4)).expectation;
            worst = std::max(worst, std::abs(e - ip4(Eigen::Index(x), Eigen::Index(y))));
        }
    }
    o.require(worst <= 1e-12, "protocol n=4");
    o.detail << " protocol err=" << worst;
}

void disjointness(Outcome& o) {
    PsdFactorization acc = disj_factorization(1);
    for (long n = 1; n <= 4; ++n) {
        if (n > 1) acc = tensor_factorization(acc, disj_factorization(1));
        const auto target = gen(Family::disjointness, n);
        const double need = std::ldexp(1.0, static_cast<int>(n));
        o.require(double(acc.size) == need && verify(acc, target.values()).passed(1e-12),
                  "tensor n=" + std::to_string(n));
        const Eigen::Index h = target.rows() / 2;
        const double lower = block_zero_bound(target, h, h).report.value;
        o.require(lower >= need, "block zero n=" + std::to_string(n));
        o.detail << " n=" << n << " [" << lower << "," << acc.size << "]";
    }
}

void tensor_example(Outcome& o) {
    for (double a : {std::numbers::sqrt2 - 1, 0.5, 1.5, std::numbers::sqrt2 + 1}) {
        const auto target = gen(Family::tensor_pair, {}, {}, a);
        const PsdFactorization f = not_full_factorization(target);
        o.require(f.size <= 3 && verify(f, target.values()).passed(1e-9),
                  "a=" + std::to_string(a));
        o.detail << " a=" << a << "->" << f.size;
    }
    bool rejected = false;
    try {
        not_full_factorization(gen(Family::tensor_pair, {}, {}, 0.1));
    } catch (const PreconditionError&) {
        rejected = true;
    }
    o.require(rejected, "a=0.1 precondition");
    o.detail << " a=0.1 rejected=" << (rejected ? "yes" : "no");
}

void properties(Outcome& o) {
    using namespace psdrank::testing;
    constexpr int kTrials = 1000;
    for (const SuiteResult& r :
         {overlap_below_fidelity(kTrials, 2026), measurement_fidelity(kTrials, 2027),
          trace_norm_ratio(kTrials, 2028), normal_form(kTrials, 2029),
          bounds_below_size(kTrials, 2030), certificates_reproduce(kTrials, 2031)}) {
        o.require(r.ok() && r.instances == kTrials, r.name);
        o.detail << " " << r.failures << "/" << r.instances;
    }
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "ex4.4 fidelity bounds", [](Outcome& o) { examples(o, {"ex4.4"}); }},
        {2, "ex4.7 rescaled row-max bound", [](Outcome& o) { examples(o, {"ex4.7"}); }},
        {3, "ex4.10 per-row bound", [](Outcome& o) { examples(o, {"ex4.10"}); }},
        {4, "ex5.1-5.3 bound comparison",
         [](Outcome& o) { examples(o, {"ex5.1", "ex5.2", "ex5.3"}); }},
        {5, "hexagon slack matrix", [](Outcome& o) { examples(o, {"ex5.4"}); }},
        {6, "nonequality factorizations", nonequality},
        {7, "M_c factorizations", mc},
        {8, "inner product", inner_product},
        {9, "disjointness", disjointness},
        {10, "A (x) A below prank(A)^2", tensor_example},
        {11, "property suites", properties},
    };
    bool all = true;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %d: %s:%s (%.2fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.title,
                    o.detail.str().c_str(), secs);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
