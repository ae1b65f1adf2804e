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

#include <doctest.h>

#include <bit>
#include <cmath>

#include "psdrank/generators.hpp"

using namespace psdrank;

namespace {

NonnegativeMatrix gen(Family f, std::optional<long> n = {}, std::optional<double> eps = {},
                      std::optional<double> c = {}, std::optional<double> a = {}) {
    return generate({f, n, eps, c, a});
}

RMatrix d1() {
    RMatrix m(2, 2);
    m << 1, 1, 1, 0;
    return m;
}

}  // namespace

TEST_CASE("derangement") {
    RMatrix expected(2, 2);
    expected << 0, 1, 1, 0;
    CHECK(gen(Family::derangement, 2).values() == expected);
    const RMatrix big = gen(Family::derangement, 7).values();
    CHECK(big.diagonal().isZero(0.0));
    CHECK(big.sum() == 42.0);
}

TEST_CASE("hexagon slack matrix") {
    const RMatrix h = gen(Family::hexagon_slack).values();
    RVector first(6);
    first << 0, 0, 1, 2, 2, 1;
    CHECK(h.row(0).transpose() == first);
    // each row is a cyclic shift of the previous one
    for (Eigen::Index i = 1; i < 6; ++i) {
        for (Eigen::Index j = 0; j < 6; ++j) CHECK(h(i, j) == h(i - 1, (j + 5) % 6));
    }
}

TEST_CASE("disjointness is a Kronecker power of D_1") {
    CHECK(gen(Family::disjointness, 2).values() == kronecker(d1(), d1()));
    RMatrix power = d1();
    for (long n = 2; n <= 5; ++n) {
        power = kronecker(d1(), power);
        CHECK(gen(Family::disjointness, n).values() == power);
    }
}

TEST_CASE("inner product recursion and symmetry") {
    for (long k = 1; k <= 5; ++k) {
        const RMatrix ip = gen(Family::inner_product, k).values();
        const RMatrix next = gen(Family::inner_product, k + 1).values();
        const Eigen::Index s = ip.rows();
        CHECK(next == next.transpose());
        CHECK(next.topLeftCorner(s, s) == ip);
        CHECK(next.topRightCorner(s, s) == ip);
        CHECK(next.bottomLeftCorner(s, s) == ip);
        CHECK(next.bottomRightCorner(s, s) == RMatrix::Ones(s, s) - ip);
    }
    // lexicographic order, least significant bit last: x=01, y=11 -> IP = 1
    CHECK(gen(Family::inner_product, 2)(1, 3) == 1.0);
    CHECK(gen(Family::inner_product, 2)(3, 3) == 0.0);
}

TEST_CASE("example and parametrised families") {
    const RMatrix m = gen(Family::m_c, 4, {}, 2.5).values();
    CHECK(m.diagonal().isConstant(2.5));
    CHECK(m(0, 1) == 1.0);

    const RMatrix e = gen(Family::example_4_4).values();
    CHECK(e.rows() == 10);
    CHECK(e.row(0).isOnes());
    CHECK(e(1, 0) == 0.01);

    const RMatrix t = gen(Family::example_4_10).values();
    CHECK(t(9, 0) == 1.0);
    CHECK(t(0, 1) == 1.0);
    CHECK(t(0, 2) == 0.01);

    const RMatrix f = gen(Family::example_5_1).values();
    CHECK(f.rows() == 11);
    CHECK(f(0, 1) == doctest::Approx(0.1));

    const RMatrix g = gen(Family::example_5_2).values();
    CHECK(g(1, 0) == 1.0);
    CHECK(g(0, 2) == 0.001);

    const RMatrix tp = gen(Family::tensor_pair, {}, {}, {}, 0.25).values();
    CHECK(tp(0, 3) == 0.0625);
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(gen(Family::derangement, 0), DomainError);
    CHECK_THROWS_AS(gen(Family::eps_identity, 3, -0.1), DomainError);
    CHECK_THROWS_AS(gen(Family::inner_product, 13), DomainError);
    CHECK_THROWS_AS(parse_family("octagon"), DomainError);
}

TEST_CASE("family names round-trip") {
    for (Family f : {Family::derangement, Family::eps_identity, Family::m_c,
                     Family::inner_product, Family::disjointness, Family::hexagon_slack,
                     Family::example_4_4, Family::example_4_10, Family::example_5_1,
                     Family::example_5_2, Family::example_5_3, Family::tensor_pair}) {
        CHECK(parse_family(family_name(f)) == f);
    }
    CHECK(parse_family("mc") == Family::m_c);
    CHECK(parse_family("tensor-pair") == Family::tensor_pair);
}

TEST_CASE("dominant entries of the entrywise root") {
    const auto id = has_no_dominant_entry_columns(NonnegativeMatrix(RMatrix::Identity(2, 2)));
    CHECK(id == std::vector<bool>{false, false});

    const auto half = has_no_dominant_entry_columns(gen(Family::tensor_pair, {}, {}, {}, 0.5));
    for (bool b : half) CHECK(b);

    const auto small = has_no_dominant_entry_columns(gen(Family::tensor_pair, {}, {}, {}, 0.1));
    bool all = true;
    for (bool b : small) all = all && b;
    CHECK_FALSE(all);
}

TEST_CASE("generated matrices are nonnegative") {
    for (long n = 1; n <= 4; ++n) {
        CHECK(gen(Family::disjointness, n).values().minCoeff() >= 0.0);
        CHECK(gen(Family::inner_product, n).values().minCoeff() >= 0.0);
    }
}
