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

#include "psdrank/simplex.hpp"
#include "test_support.hpp"

using namespace psdrank;
using doctest::Approx;

TEST_CASE("projection onto the simplex") {
    RVector v(3);
    v << 0.2, 0.3, 0.5;
    CHECK((project_to_simplex(v) - v).norm() < 1e-15);

    v << 2.0, 0.0, 0.0;
    RVector e(3);
    e << 1.0, 0.0, 0.0;
    CHECK((project_to_simplex(v) - e).norm() < 1e-15);

    // (1, 1, 0) - 1/2 -> (0.5, 0.5, 0)
    v << 1.0, 1.0, 0.0;
    RVector h(3);
    h << 0.5, 0.5, 0.0;
    CHECK((project_to_simplex(v) - h).norm() < 1e-15);
}

TEST_CASE("quadratic minimisation matches the closed form for diagonal G") {
    // min q' diag(g) q over the simplex: q_k proportional to 1/g_k, value 1/sum(1/g_k)
    RVector g(4);
    g << 1.0, 2.0, 4.0, 8.0;
    const RMatrix gram = g.asDiagonal();
    const double expected = 1.0 / g.cwiseInverse().sum();
    for (StepRule rule : {StepRule::frank_wolfe, StepRule::projected_gradient}) {
        SimplexOptConfig cfg;
        cfg.step_rule = rule;
        const SimplexSolution s = minimize_quadratic_on_simplex(gram, cfg);
        CHECK(s.objective == Approx(expected).epsilon(1e-9));
        CHECK(s.q.sum() == Approx(1.0));
    }
}

TEST_CASE("both step rules agree on random PSD Gram matrices") {
    testing::Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const RMatrix b = rng.real_gaussian(5, 3);
        const RMatrix gram = b * b.transpose() + 0.01 * RMatrix::Identity(5, 5);
        SimplexOptConfig fw, pg;
        pg.step_rule = StepRule::projected_gradient;
        const double a = minimize_quadratic_on_simplex(gram, fw).objective;
        const double c = minimize_quadratic_on_simplex(gram, pg).objective;
        CHECK(a == Approx(c).epsilon(1e-6));
        const RVector uniform = RVector::Constant(5, 0.2);
        CHECK(a <= uniform.dot(gram * uniform) + 1e-15);
    }
}

TEST_CASE("ratio ascent never loses to its start") {
    testing::Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const RMatrix b = rng.nonnegative(4, 4);
        const RMatrix gram = (b.transpose() * b).cwiseAbs2();
        const RVector a = rng.distribution(4);
        const RVector start = rng.distribution(4);
        const SimplexSolution s = maximize_ratio_on_simplex(a, gram, start, {});
        CHECK(s.objective >= ratio_objective(a, gram, start) - 1e-15);
        CHECK(s.objective == Approx(ratio_objective(a, gram, s.q)).epsilon(1e-15));
    }
}

TEST_CASE("config validation") {
    SimplexOptConfig cfg;
    cfg.max_iters = 0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = {};
    cfg.restarts = 0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = {};
    cfg.convergence_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
}
