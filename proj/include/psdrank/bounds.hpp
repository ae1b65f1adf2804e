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
 * Lower bounds on the PSD-rank of a nonnegative matrix.
 *
 * Every bound first removes all-zero rows and columns. Bounds that need a
 * stochastic matrix normalise the columns of what remains. Distributions
 * in a certificate index the rows/columns of that stripped matrix; for
 * the rescaled bounds, of strip(D * A), with D indexing the rows of the
 * input as given.
 *
 * Any feasible certificate yields a valid lower bound, so optimiser output
 * is reported as a certified value, not as a claimed maximum.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psdrank/linalg.hpp"
#include "psdrank/simplex.hpp"

namespace psdrank {

enum class BoundKind {
    b1,            // sqrt(rank)
    b1_real,       // (sqrt(1 + 8 rank) - 1) / 2, for real factorizations
    b2,            // 2^(mutual information)
    b3,            // fidelity Gram bound
    b4,            // sum of row maxima
    b5,            // per-row fidelity/POVM bound
    b3_rescaled,
    b4_rescaled,
    b5_rescaled,
    block_zero,
};

std::string bound_name(BoundKind k);
/// Accepts "b1", "b1r", "b2", ..., "b3r"/"b3'" for rescaled variants.
BoundKind parse_bound_name(const std::string& name);

struct Certificate {
    std::vector<double> q;                    // b3
    std::vector<std::vector<double>> q_rows;  // b5, one distribution per row
    std::vector<double> d;                    // rescaled bounds

    bool empty() const { return q.empty() && q_rows.empty() && d.empty(); }
};

struct SolverStats {
    std::size_t iterations = 0;
    std::size_t restarts = 0;
    std::uint64_t seed = 0;
};

struct BoundReport {
    BoundKind kind = BoundKind::b1;
    double value = 0.0;
    Certificate certificate;
    SolverStats stats;
};

/// Squared pairwise fidelities of the columns of a stochastic matrix.
RMatrix fidelity_gram(const RMatrix& stochastic);

/// Column-normalised strip(a); throws DomainError for the zero matrix.
RMatrix stochastic_core(const RMatrix& a);

BoundReport bound_b1(const NonnegativeMatrix& a, const ToleranceConfig& tol = {});
BoundReport bound_b1_real(const NonnegativeMatrix& a, const ToleranceConfig& tol = {});
BoundReport bound_b2(const NonnegativeMatrix& a);

/// Minimises q' G q over the simplex; with `q_override`, evaluates that q.
BoundReport bound_b3(const NonnegativeMatrix& a, const SimplexOptConfig& cfg = {},
                     const std::optional<std::vector<double>>& q_override = std::nullopt);

BoundReport bound_b4(const NonnegativeMatrix& a);

/// Per-row ratio ascent with restarts; with `q_overrides`, evaluates them.
BoundReport bound_b5(const NonnegativeMatrix& a, const SimplexOptConfig& cfg = {},
                     const std::optional<std::vector<std::vector<double>>>& q_overrides =
                         std::nullopt);

enum class InnerBound { b3, b4, b5 };

/// Best inner bound over row rescalings D. With `d_override` only that D is
/// evaluated (the inner q is still optimised).
BoundReport rescaled_bound(const NonnegativeMatrix& a, InnerBound inner,
                           const SimplexOptConfig& cfg = {},
                           const std::optional<std::vector<double>>& d_override = std::nullopt);

// ---------------------------------------------------------------------------
// certificate evaluation (closed-form, no optimisation)

double evaluate_b3(const NonnegativeMatrix& a, const std::vector<double>& q);
double evaluate_b5(const NonnegativeMatrix& a, const std::vector<std::vector<double>>& q_rows);
double evaluate_rescaled(const NonnegativeMatrix& a, InnerBound inner, const std::vector<double>& d,
                         const Certificate& inner_certificate);

/// Re-derives report.value from report.certificate. Throws DomainError for
/// kinds whose value is not certificate-determined (block_zero).
double evaluate_certificate(const NonnegativeMatrix& a, const BoundReport& report,
                            const ToleranceConfig& tol = {});

// ---------------------------------------------------------------------------
// zero-block splitting

enum class LeafBound { b1, b2, b3, b4, b5 };

struct BlockNode {
    Eigen::Index row0 = 0, row1 = 0, col0 = 0, col1 = 0;  // half-open ranges
    double value = 0.0;
    /// empty for leaves; otherwise {upper-right C, lower-left D}
    std::vector<BlockNode> children;
};

struct BlockZeroReport {
    BoundReport report;  // kind = block_zero
    BlockNode tree;
};

/// For A = [[B, C], [D, 0]] with B of size row_split x col_split, returns a
/// bound on prank(C) + prank(D), recursing into C and D wherever they again
/// have a zero lower-right block. Leaf values are rounded up to integers.
/// Throws PreconditionError if the lower-right block is not zero (1e-12).
BlockZeroReport block_zero_bound(const NonnegativeMatrix& a, Eigen::Index row_split,
                                 Eigen::Index col_split, LeafBound leaf = LeafBound::b1,
                                 const SimplexOptConfig& cfg = {},
                                 const ToleranceConfig& tol = {});

}  // namespace psdrank
