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
 * Explicit PSD factorizations A(i,j) = Tr(E_i F_j): constructions for the
 * nonequality, M_c, inner-product and disjointness families, generic
 * transformations, and verification.
 */

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "psdrank/linalg.hpp"

namespace psdrank {

struct PsdFactorization {
    std::size_t size = 0;
    Field field = Field::complex;
    std::vector<CMatrix> e_factors;  // one per row of the target
    std::vector<CMatrix> f_factors;  // one per column

    /// Matrix of Tr(E_i F_j).
    RMatrix realized() const;
    /// Throws DimensionError unless every factor is size x size and
    /// real-tagged factors have zero imaginary parts.
    void validate() const;
};

struct VerifyReport {
    double max_abs_error = 0.0;
    double min_eigenvalue = 0.0;
    std::vector<std::size_t> non_psd_e;
    std::vector<std::size_t> non_psd_f;

    bool passed(double abs_tol) const {
        return max_abs_error <= abs_tol && non_psd_e.empty() && non_psd_f.empty();
    }
};

VerifyReport verify(const PsdFactorization& fact, const RMatrix& target,
                    const ToleranceConfig& tol = {});

struct NormalFormResult {
    PsdFactorization factorization;
    /// size of the input; differs from factorization.size when sum E_i was
    /// singular and the factors were compressed onto its support
    std::size_t original_size = 0;
};

/// Rewrites a factorization of a column-stochastic target so that
/// sum E_i = I and Tr(F_j) = 1.
NormalFormResult normalize_to_povm_form(const PsdFactorization& fact,
                                        const StochasticMatrix& target,
                                        const ToleranceConfig& tol = {});

struct PhaseAssignment {
    std::vector<double> thetas;
    double residual = 0.0;  // |sum v_j e^{i theta_j}|
};

/// Unit phases making the weighted sum vanish. Throws PreconditionError
/// naming the index of a dominant entry.
PhaseAssignment phase_balance(std::span<const double> v);

/// Factorization of m o conj(m) from a truncated SVD of m.
PsdFactorization hadamard_root_factorization(const CMatrix& m, const ToleranceConfig& tol = {});
PsdFactorization hadamard_root_factorization(const RMatrix& m, const ToleranceConfig& tol = {});

/// Size < rows whenever no column of the entrywise root has a dominant entry.
PsdFactorization not_full_factorization(const NonnegativeMatrix& a,
                                        const ToleranceConfig& tol = {});

/// Kronecker-ordered: row index i1 * rows2 + i2.
PsdFactorization tensor_factorization(const PsdFactorization& f1, const PsdFactorization& f2);

/// The n^2 Hermitian unitaries G_ij (index i*n + j) for odd n.
std::vector<CMatrix> ne_generators_odd(long n);
/// The n^2 - 1 Hermitian unitaries for even n, in target order.
std::vector<CMatrix> ne_generators_even(long n);

/// Size-n factorization of J - I of order n^2.
PsdFactorization ne_factorization_odd(long n);
/// Size-n factorization of J - I of order n^2 - 1. Needs a Sylvester
/// Hadamard matrix, so n must be a power of two.
PsdFactorization ne_factorization_even(long n);

/// Real factorization of (c - 1) I + J of order n.
PsdFactorization mc_factorization(long n, double c);

/// Signed 0/+-1 matrix whose entrywise square is IP_n.
RMatrix ip_sign_matrix(long n, long k);

/// Real factorization of size 2r.
PsdFactorization realify(const PsdFactorization& fact);

struct NonnegativeCode {
    RMatrix vectors;   // n x ell, row i = sqrt(2 / ell) * C_i
    RMatrix realized;  // vectors * vectors^T
};

NonnegativeCode random_code_nonneg_factorization(long n, long ell, std::uint64_t seed);

/// n-fold tensor power of the size-2 factorization of [[1, 1], [1, 0]].
PsdFactorization disj_factorization(long n);

/// E_i = diag(row i of a), F_j = diag(e_j).
PsdFactorization trivial_factorization(const NonnegativeMatrix& a);

}  // namespace psdrank
