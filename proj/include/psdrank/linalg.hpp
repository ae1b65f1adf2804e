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
 * Dense real/complex matrix helpers used throughout psdrank: spectral
 * routines, norms, PSD checks, fidelities and mutual information.
 *
 * Matrices are carried as Eigen dense types. A complex matrix whose
 * imaginary parts are all exactly zero is said to be over the real field.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace psdrank {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

enum class Field { real, complex };

std::string to_string(Field f);

/// Shape mismatch, empty input, or out-of-range index.
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A documented precondition of a construction does not hold.
class PreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct ToleranceConfig {
    /// singular values <= this * sigma_max count as zero
    double rank_rel_threshold = 1e-10;
    /// eigenvalues down to this value are accepted as PSD (and clipped to 0)
    double psd_eig_floor = -1e-9;
    double verify_abs_tol = 1e-9;

    /// Throws DomainError if any magnitude is non-positive or the rank
    /// threshold is not below 1.
    void validate() const;
};

Field field_of(const CMatrix& m);
CMatrix to_complex(const RMatrix& m);

/// Real part; throws DomainError if some imaginary part exceeds `tol`.
RMatrix real_part_checked(const CMatrix& m, double tol);

// ---------------------------------------------------------------------------
// spectral quantities

/// Singular values in descending order, length min(rows, cols).
RVector singular_values(const CMatrix& m);
RVector singular_values(const RMatrix& m);

std::size_t numeric_rank(const CMatrix& m, const ToleranceConfig& tol = {});
std::size_t numeric_rank(const RMatrix& m, const ToleranceConfig& tol = {});

double trace_norm(const CMatrix& m);
double trace_norm(const RMatrix& m);
double frobenius_norm(const CMatrix& m);
double frobenius_norm(const RMatrix& m);

/// (trace norm / Frobenius norm)^2, a lower bound on the rank.
double trace_norm_rank_bound(const CMatrix& m);
double trace_norm_rank_bound(const RMatrix& m);

struct PsdCheck {
    bool psd = false;
    double min_eigenvalue = 0.0;
    /// max |m - m^dagger| entry
    double hermitian_defect = 0.0;
};

PsdCheck is_psd(const CMatrix& m, const ToleranceConfig& tol = {});

/// Hermitian eigen-decomposition based square root. Eigenvalues in
/// [psd_eig_floor, 0) are clipped to zero; anything lower is a DomainError.
CMatrix psd_sqrt(const CMatrix& m, const ToleranceConfig& tol = {});

/// (m + m^dagger) / 2
CMatrix hermitian_part(const CMatrix& m);

// ---------------------------------------------------------------------------
// products

RMatrix hadamard_product(const RMatrix& a, const RMatrix& b);
CMatrix hadamard_product(const CMatrix& a, const CMatrix& b);

/// Standard block order: (a (x) b)(i*rb + k, j*cb + l) = a(i,j) b(k,l).
RMatrix kronecker(const RMatrix& a, const RMatrix& b);
CMatrix kronecker(const CMatrix& a, const CMatrix& b);

/// Re Tr(a b) without forming the product.
double trace_product(const CMatrix& a, const CMatrix& b);

// ---------------------------------------------------------------------------
// nonnegative matrices and states

/// Real matrix with every entry finite and >= 0.
class NonnegativeMatrix {
  public:
    NonnegativeMatrix() = default;
    explicit NonnegativeMatrix(RMatrix values);

    const RMatrix& values() const noexcept { return values_; }
    Eigen::Index rows() const noexcept { return values_.rows(); }
    Eigen::Index cols() const noexcept { return values_.cols(); }
    double operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }
    bool is_zero() const { return values_.isZero(0.0); }

    NonnegativeMatrix transpose() const { return NonnegativeMatrix(values_.transpose()); }

  private:
    RMatrix values_;
};

/// Nonnegative matrix whose columns sum to one within 1e-12.
class StochasticMatrix {
  public:
    StochasticMatrix() = default;
    explicit StochasticMatrix(NonnegativeMatrix base);

    /// Divides each column by its sum; zero columns are a DomainError.
    static StochasticMatrix normalize_columns(const NonnegativeMatrix& a);

    const RMatrix& values() const noexcept { return base_.values(); }
    const NonnegativeMatrix& base() const noexcept { return base_; }
    Eigen::Index rows() const noexcept { return base_.rows(); }
    Eigen::Index cols() const noexcept { return base_.cols(); }

  private:
    NonnegativeMatrix base_;
};

/// Hermitian (1e-12), PSD (eigenvalues >= -1e-10), unit trace (1e-10).
class DensityMatrix {
  public:
    explicit DensityMatrix(CMatrix rho);

    static DensityMatrix diagonal(std::span<const double> p);
    static DensityMatrix pure(const CVector& psi);

    const CMatrix& values() const noexcept { return rho_; }
    Eigen::Index dim() const noexcept { return rho_.rows(); }

  private:
    CMatrix rho_;
};

/// Result of removing all-zero rows and columns.
struct StrippedMatrix {
    RMatrix values;
    std::vector<Eigen::Index> kept_rows;
    std::vector<Eigen::Index> kept_cols;
};

StrippedMatrix strip_zero_lines(const RMatrix& m);

/// Bhattacharyya coefficient sum_k sqrt(p_k q_k), no validation.
double bhattacharyya(std::span<const double> p, std::span<const double> q);

/// Fidelity of two probability distributions (validated).
double classical_fidelity(std::span<const double> p, std::span<const double> q);

/// || sqrt(sigma) sqrt(rho) ||_tr
double quantum_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Mutual information (bits) of the joint distribution p / sum(p).
double mutual_information_bits(const NonnegativeMatrix& p);

inline std::span<const double> as_span(const RVector& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace psdrank
