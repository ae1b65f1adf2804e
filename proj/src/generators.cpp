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

#include "psdrank/generators.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <utility>

namespace psdrank {

namespace {

constexpr long kMaxBitFamilyN = 12;

struct FamilyEntry {
    Family family;
    const char* name;
};

constexpr std::array<FamilyEntry, 12> kFamilies{{
    {Family::derangement, "derangement"},
    {Family::eps_identity, "eps_identity"},
    {Family::m_c, "m_c"},
    {Family::inner_product, "inner_product"},
    {Family::disjointness, "disjointness"},
    {Family::hexagon_slack, "hexagon_slack"},
    {Family::example_4_4, "ex4.4"},
    {Family::example_4_10, "ex4.10"},
    {Family::example_5_1, "ex5.1"},
    {Family::example_5_2, "ex5.2"},
    {Family::example_5_3, "ex5.3"},
    {Family::tensor_pair, "tensor_pair"},
}};

long require_n(const MatrixFamilySpec& spec, long fallback, long min_n, long max_n) {
    const long n = spec.n.value_or(fallback);
    if (n < min_n || n > max_n) {
        throw DomainError(family_name(spec.family) + ": n = " + std::to_string(n) +
                          " outside [" + std::to_string(min_n) + ", " + std::to_string(max_n) +
                          "]");
    }
    return n;
}

double require_nonnegative(const char* what, const MatrixFamilySpec& spec, double value) {
    if (!std::isfinite(value) || value < 0.0) {
        throw DomainError(family_name(spec.family) + ": " + what + " must be finite and >= 0");
    }
    return value;
}

RMatrix constant_off_diagonal(long n, double diag, double off) {
    RMatrix m = RMatrix::Constant(n, n, off);
    m.diagonal().setConstant(diag);
    return m;
}

RMatrix bit_family(long n, bool (*entry)(unsigned long, unsigned long)) {
    const long size = 1L << n;
    RMatrix m(size, size);
    for (long x = 0; x < size; ++x) {
        for (long y = 0; y < size; ++y) {
            m(x, y) = entry(static_cast<unsigned long>(x), static_cast<unsigned long>(y)) ? 1.0
                                                                                          : 0.0;
        }
    }
    return m;
}

}  // namespace

std::string family_name(Family f) {
    for (const auto& e : kFamilies) {
        if (e.family == f) return e.name;
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    std::string key(name);
    std::replace(key.begin(), key.end(), '-', '_');
    for (const auto& e : kFamilies) {
        if (key == e.name) return e.family;
    }
    if (key == "mc") return Family::m_c;
    if (key == "ip") return Family::inner_product;
    if (key == "disj") return Family::disjointness;
    if (key == "hexagon") return Family::hexagon_slack;
    if (key == "ne" || key == "nonequality") return Family::derangement;
    throw DomainError("unknown matrix family '" + std::string(name) + "'");
}

NonnegativeMatrix generate(const MatrixFamilySpec& spec) {
    switch (spec.family) {
        case Family::derangement: {
            const long n = require_n(spec, 9, 1, 1L << 16);
            return NonnegativeMatrix(constant_off_diagonal(n, 0.0, 1.0));
        }
        case Family::eps_identity: {
            const long n = require_n(spec, 10, 1, 1L << 16);
            const double eps = require_nonnegative("eps", spec, spec.eps.value_or(0.01));
            return NonnegativeMatrix(constant_off_diagonal(n, 1.0, eps));
        }
        case Family::m_c: {
            const long n = require_n(spec, 9, 1, 1L << 16);
            const double c = require_nonnegative("c", spec, spec.c.value_or(3.0));
            return NonnegativeMatrix(constant_off_diagonal(n, c, 1.0));
        }
        case Family::inner_product: {
            const long n = require_n(spec, 2, 1, kMaxBitFamilyN);
            return NonnegativeMatrix(bit_family(n, [](unsigned long x, unsigned long y) {
                return (std::popcount(x & y) & 1) == 1;
            }));
        }
        case Family::disjointness: {
            const long n = require_n(spec, 2, 1, kMaxBitFamilyN);
            return NonnegativeMatrix(
                bit_family(n, [](unsigned long x, unsigned long y) { return (x & y) == 0; }));
        }
        case Family::hexagon_slack: {
            RMatrix m(6, 6);
            m << 0, 0, 1, 2, 2, 1,  //
                1, 0, 0, 1, 2, 2,   //
                2, 1, 0, 0, 1, 2,   //
                2, 2, 1, 0, 0, 1,   //
                1, 2, 2, 1, 0, 0,   //
                0, 1, 2, 2, 1, 0;
            return NonnegativeMatrix(std::move(m));
        }
        case Family::example_4_4: {
            const long n = require_n(spec, 10, 2, 1L << 16);
            const double eps = require_nonnegative("eps", spec, spec.eps.value_or(0.01));
            RMatrix m = constant_off_diagonal(n, 1.0, eps);
            m.row(0).setOnes();
            return NonnegativeMatrix(std::move(m));
        }
        case Family::example_4_10: {
            const long n = require_n(spec, 10, 2, 1L << 16);
            const double eps = require_nonnegative("eps", spec, spec.eps.value_or(0.01));
            RMatrix m = RMatrix::Constant(n, n, eps);
            for (long i = 0; i < n; ++i) {
                m(i, i) = 1.0;
                m(i, (i + 1) % n) = 1.0;
            }
            return NonnegativeMatrix(std::move(m));
        }
        case Family::example_5_1: {
            const long n = require_n(spec, 10, 1, 1L << 16);
            const double eps =
                require_nonnegative("eps", spec, spec.eps.value_or(1.0 / static_cast<double>(n)));
            return NonnegativeMatrix(constant_off_diagonal(n + 1, 1.0, eps));
        }
        case Family::example_5_2: {
            const long n = require_n(spec, 10, 1, 1L << 16);
            const double eps = require_nonnegative("eps", spec, spec.eps.value_or(0.001));
            if (eps > 1.0) throw DomainError("ex5.2: eps must lie in [0, 1]");
            RMatrix m = RMatrix::Constant(n, n, eps);
            for (long i = 0; i < n; ++i) {
                for (long j = std::max(0L, i - 1); j <= std::min(n - 1, i + 1); ++j) {
                    m(i, j) = 1.0;
                }
            }
            return NonnegativeMatrix(std::move(m));
        }
        case Family::example_5_3: {
            const long n = require_n(spec, 10, 1, 1L << 16);
            const double eps = require_nonnegative("eps", spec, spec.eps.value_or(0.9));
            return NonnegativeMatrix(constant_off_diagonal(n, 1.0, eps));
        }
        case Family::tensor_pair: {
            const double a = require_nonnegative("a", spec, spec.a.value_or(0.5));
            RMatrix base(2, 2);
            base << 1.0, a, a, 1.0;
            return NonnegativeMatrix(kronecker(base, base));
        }
    }
    throw DomainError("generate: unknown family");
}

std::optional<std::size_t> dominant_entry(std::span<const double> v) {
    if (v.empty()) return std::nullopt;
    double total = 0.0;
    std::size_t arg = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        total += std::abs(v[k]);
        if (std::abs(v[k]) > std::abs(v[arg])) arg = k;
    }
    const double top = std::abs(v[arg]);
    // Relative slack keeps exact-boundary cases (top == rest) balanced.
    if (top - (total - top) > 1e-12 * std::max(1.0, total)) return arg;
    return std::nullopt;
}

std::vector<bool> has_no_dominant_entry_columns(const NonnegativeMatrix& a) {
    std::vector<bool> out;
    out.reserve(static_cast<std::size_t>(a.cols()));
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        const RVector root = a.values().col(j).cwiseSqrt();
        out.push_back(!dominant_entry(as_span(root)).has_value());
    }
    return out;
}

}  // namespace psdrank
