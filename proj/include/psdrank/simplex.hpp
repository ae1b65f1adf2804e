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

/**
 * @file
 * Optimisation over the probability simplex: a convex quadratic minimiser
 * (Frank-Wolfe with away steps, or projected gradient) and a projected
 * gradient ascent for the ratio  a.q / sqrt(q' G q).
 */

#pragma once

#include <cstddef>
#include <cstdint>

#include "psdrank/linalg.hpp"

namespace psdrank {

enum class StepRule { frank_wolfe, projected_gradient };

struct SimplexOptConfig {
    std::size_t max_iters = 20000;
    std::size_t restarts = 16;
    StepRule step_rule = StepRule::frank_wolfe;
    double convergence_tol = 1e-12;
    std::uint64_t seed = 0;

    /// Throws DomainError on zero counts or a non-positive tolerance.
    void validate() const;
};

struct SimplexSolution {
    RVector q;
    double objective = 0.0;
    std::size_t iterations = 0;
};

/// Euclidean projection onto { q >= 0, sum q = 1 } (sort-based).
RVector project_to_simplex(const RVector& v);

/// Minimises q' G q over the simplex for symmetric PSD G, starting from the
/// uniform distribution. The returned objective is evaluated at the returned
/// q and never exceeds the uniform value.
SimplexSolution minimize_quadratic_on_simplex(const RMatrix& gram, const SimplexOptConfig& cfg);

/// a.q / sqrt(q' G q); zero when q' G q is zero.
double ratio_objective(const RVector& a, const RMatrix& gram, const RVector& q);

/// Projected-gradient ascent on ratio_objective from `start`, with
/// backtracking. Returns the best point visited.
SimplexSolution maximize_ratio_on_simplex(const RVector& a, const RMatrix& gram,
                                          const RVector& start, const SimplexOptConfig& cfg);

}  // namespace psdrank
