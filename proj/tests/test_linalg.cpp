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

#include <cmath>
#include <numbers>

#include "psdrank/generators.hpp"
#include "psdrank/linalg.hpp"
#include "test_support.hpp"

using namespace psdrank;
using doctest::Approx;

namespace {

const Complex I1(0.0, 1.0);

CMatrix c2(Complex a, Complex b, Complex c, Complex d) {
    CMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

TEST_CASE("singular values come back sorted and nonnegative") {
    const RVector id = singular_values(RMatrix(RMatrix::Identity(3, 3)));
    CHECK(id.size() == 3);
    for (Eigen::Index k = 0; k < 3; ++k) CHECK(id(k) == Approx(1.0));

    RMatrix d(2, 2);
    d << 3, 0, 0, 4;
    const RVector s = singular_values(d);
    CHECK(s(0) == Approx(4.0));
    CHECK(s(1) == Approx(3.0));

    const RVector j = singular_values(RMatrix(RMatrix::Ones(2, 2)));
    CHECK(j(0) == Approx(2.0));
    CHECK(std::abs(j(1)) < 1e-12);

    CHECK_THROWS_AS(singular_values(RMatrix(0, 0)), DimensionError);
}

TEST_CASE("numeric rank") {
    CHECK(numeric_rank(RMatrix(RMatrix::Ones(4, 4))) == 1);
    CHECK(numeric_rank(generate({Family::derangement, 4, {}, {}, {}}).values()) == 4);
    CHECK(numeric_rank(generate({Family::hexagon_slack, {}, {}, {}, {}}).values()) == 3);
    CHECK(numeric_rank(RMatrix(RMatrix::Zero(3, 2))) == 0);
}

TEST_CASE("trace and Frobenius norms") {
    const RMatrix id = RMatrix::Identity(3, 3);
    CHECK(trace_norm(id) == Approx(3.0));
    CHECK(frobenius_norm(id) == Approx(std::sqrt(3.0)));

    RMatrix d(2, 2);
    d << 1, 0, 0, 2;
    CHECK(trace_norm(d) == Approx(3.0));
    CHECK(frobenius_norm(d) == Approx(std::sqrt(5.0)));

    testing::Rng rng(7);
    const CMatrix m = rng.complex_gaussian(5, 5);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < 5; ++i) {
        for (Eigen::Index j = 0; j < 5; ++j) sum += std::norm(m(i, j));
    }
    CHECK(frobenius_norm(m) == Approx(std::sqrt(sum)).epsilon(1e-12));
    CHECK(frobenius_norm(m) <= trace_norm(m));
}

TEST_CASE("trace-norm rank bound") {
    CHECK(trace_norm_rank_bound(RMatrix(RMatrix::Identity(5, 5))) == Approx(5.0));
    CHECK(trace_norm_rank_bound(RMatrix(RMatrix::Ones(3, 4))) == Approx(1.0));
    RMatrix d = RMatrix::Zero(3, 3);
    d.diagonal() << 2, 1, 1;
    // (2+1+1)^2 / (4+1+1)
    CHECK(trace_norm_rank_bound(d) == Approx(8.0 / 3.0));
    CHECK_THROWS(trace_norm_rank_bound(RMatrix(RMatrix::Zero(2, 2))));
}

TEST_CASE("PSD check with minimal eigenvalue witness") {
    const PsdCheck id = is_psd(CMatrix(CMatrix::Identity(3, 3)));
    CHECK(id.psd);
    CHECK(id.min_eigenvalue == Approx(1.0));

    const PsdCheck bad = is_psd(c2(1, 2, 2, 1));
    CHECK_FALSE(bad.psd);
    CHECK(bad.min_eigenvalue == Approx(-1.0));

    const PsdCheck edge = is_psd(c2(1, I1, -I1, 1));
    CHECK(edge.psd);
    CHECK(std::abs(edge.min_eigenvalue) < 1e-12);

    CHECK_THROWS_AS(is_psd(CMatrix(2, 3)), DimensionError);
}

TEST_CASE("PSD square root squares back") {
    testing::Rng rng(3);
    const CMatrix p = rng.psd(4, 2);
    const CMatrix r = psd_sqrt(p);
    CHECK((r * r - p).cwiseAbs().maxCoeff() < 1e-10);
    CHECK_THROWS_AS(psd_sqrt(c2(1, 2, 2, 1)), DomainError);
}

TEST_CASE("Hadamard and Kronecker products") {
    const CMatrix m = c2(1, I1, -I1, 1);
    const CMatrix h = hadamard_product(m, CMatrix(m.conjugate()));
    CHECK((h - CMatrix::Ones(2, 2)).cwiseAbs().maxCoeff() == 0.0);

    const RMatrix k = kronecker(RMatrix(RMatrix::Identity(2, 2)), RMatrix(RMatrix::Identity(2, 2)));
    CHECK(k == RMatrix::Identity(4, 4));

    const double a = 0.5;
    RMatrix base(2, 2);
    base << 1, a, a, 1;
    RMatrix expected(4, 4);
    expected << 1, a, a, a * a,  //
        a, 1, a * a, a,          //
        a, a * a, 1, a,          //
        a * a, a, a, 1;
    CHECK(kronecker(base, base) == expected);

    CHECK_THROWS_AS(hadamard_product(RMatrix(2, 2), RMatrix(2, 3)), DimensionError);
}

TEST_CASE("classical fidelity") {
    const std::vector<double> p{0.2, 0.3, 0.5};
    CHECK(classical_fidelity(p, p) == Approx(1.0));
    const std::vector<double> x{1.0, 0.0};
    const std::vector<double> y{0.0, 1.0};
    CHECK(classical_fidelity(x, y) == 0.0);

    const long n = 10;
    const double eps = 0.01;
    const NonnegativeMatrix a = generate({Family::example_4_4, n, eps, {}, {}});
    const RMatrix pm = StochasticMatrix::normalize_columns(a).values();
    const RVector p0 = pm.col(0), p1 = pm.col(1);
    const double f1 = (1 + std::sqrt(eps) + (n - 2) * eps) /
                      (std::sqrt(1 + (n - 1) * eps) * std::sqrt(2 + (n - 2) * eps));
    CHECK(classical_fidelity(as_span(p0), as_span(p1)) == Approx(f1).epsilon(1e-12));

    const std::vector<double> neg{1.5, -0.5};
    CHECK_THROWS_AS(classical_fidelity(neg, x), DomainError);
    const std::vector<double> short_sum{0.5, 0.4};
    CHECK_THROWS_AS(classical_fidelity(short_sum, x), DomainError);
}

TEST_CASE("quantum fidelity") {
    testing::Rng rng(11);
    const DensityMatrix rho = rng.density(3);
    CHECK(quantum_fidelity(rho, rho) == Approx(1.0).epsilon(1e-9));

    CVector e0 = CVector::Zero(2), e1 = CVector::Zero(2);
    e0(0) = 1.0;
    e1(1) = 1.0;
    CHECK(quantum_fidelity(DensityMatrix::pure(e0), DensityMatrix::pure(e1)) ==
          Approx(0.0).epsilon(1e-12));

    const std::vector<double> p{0.1, 0.6, 0.3};
    const std::vector<double> q{0.5, 0.25, 0.25};
    CHECK(quantum_fidelity(DensityMatrix::diagonal(p), DensityMatrix::diagonal(q)) ==
          Approx(classical_fidelity(p, q)).epsilon(1e-12));
}

TEST_CASE("density matrix validation") {
    CHECK_THROWS_AS(DensityMatrix(c2(1, 2, 2, 1) / 2.0), DomainError);
    CHECK_THROWS_AS(DensityMatrix(CMatrix(CMatrix::Identity(2, 2))), DomainError);
}

TEST_CASE("mutual information in bits") {
    CHECK(mutual_information_bits(NonnegativeMatrix(RMatrix::Ones(3, 4))) ==
          Approx(0.0).epsilon(1e-12));
    CHECK(mutual_information_bits(NonnegativeMatrix(RMatrix::Identity(4, 4))) == Approx(2.0));
    const NonnegativeMatrix a = generate({Family::example_5_3, 10, 0.9, {}, {}});
    CHECK(std::exp2(mutual_information_bits(a)) == Approx(1.0005).epsilon(5e-4));
    CHECK_THROWS_AS(mutual_information_bits(NonnegativeMatrix(RMatrix::Zero(2, 2))), DomainError);
}

TEST_CASE("stripping zero rows and columns") {
    RMatrix m(3, 3);
    m << 1, 0, 2,  //
        0, 0, 0,   //
        3, 0, 4;
    const StrippedMatrix s = strip_zero_lines(m);
    RMatrix expected(2, 2);
    expected << 1, 2, 3, 4;
    CHECK(s.values == expected);
    CHECK(s.kept_rows == std::vector<Eigen::Index>{0, 2});
    CHECK(s.kept_cols == std::vector<Eigen::Index>{0, 2});
}

TEST_CASE("nonnegative and stochastic wrappers validate") {
    RMatrix neg(1, 2);
    neg << 1, -1;
    CHECK_THROWS_AS(NonnegativeMatrix{neg}, DomainError);
    RMatrix m(2, 2);
    m << 1, 0, 3, 2;
    const StochasticMatrix s = StochasticMatrix::normalize_columns(NonnegativeMatrix(m));
    CHECK(s.values().colwise().sum().isApproxToConstant(1.0, 1e-14));
    CHECK_THROWS_AS(StochasticMatrix(NonnegativeMatrix(m)), DomainError);
    CHECK_THROWS_AS(StochasticMatrix::normalize_columns(NonnegativeMatrix(RMatrix::Zero(2, 1))),
                    DomainError);
}

TEST_CASE("tolerance config validation") {
    ToleranceConfig t;
    CHECK_NOTHROW(t.validate());
    t.rank_rel_threshold = 1.0;
    CHECK_THROWS_AS(t.validate(), DomainError);
    t = {};
    t.verify_abs_tol = 0.0;
    CHECK_THROWS_AS(t.validate(), DomainError);
}

TEST_CASE("field detection and real part") {
    CHECK(field_of(to_complex(RMatrix::Ones(2, 2))) == Field::real);
    const CMatrix z = c2(1, I1, -I1, 1);
    CHECK(field_of(z) == Field::complex);
    CHECK_THROWS_AS(real_part_checked(z, 1e-12), DomainError);
    CHECK(real_part_checked(to_complex(RMatrix::Ones(2, 2)), 0.0) == RMatrix::Ones(2, 2));
}
