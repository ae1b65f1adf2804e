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

#include "psdrank/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace psdrank {

namespace {

template <typename M>
RVector singular_values_impl(const M& m) {
    if (m.rows() == 0 || m.cols() == 0) {
        throw DimensionError("singular_values: empty matrix");
    }
    Eigen::BDCSVD<M> svd(m);
    return svd.singularValues();
}

template <typename M>
std::size_t numeric_rank_impl(const M& m, const ToleranceConfig& tol) {
    const RVector s = singular_values_impl(m);
    if (s(0) == 0.0) return 0;
    const double cut = tol.rank_rel_threshold * s(0);
    return static_cast<std::size_t>((s.array() > cut).count());
}

template <typename M>
double trace_norm_rank_bound_impl(const M& m) {
    const RVector s = singular_values_impl(m);
    const double fro2 = s.squaredNorm();
    if (fro2 == 0.0) {
        throw DomainError("trace_norm_rank_bound: zero matrix has undefined ratio");
    }
    const double tr = s.sum();
    return tr * tr / fro2;
}

template <typename M>
M kronecker_impl(const M& a, const M& b) {
    M out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

template <typename M>
M hadamard_impl(const M& a, const M& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream msg;
        msg << "hadamard_product: shape mismatch " << a.rows() << "x" << a.cols() << " vs "
            << b.rows() << "x" << b.cols();
        throw DimensionError(msg.str());
    }
    return a.cwiseProduct(b);
}

void check_distribution(std::span<const double> p, const char* name) {
    double total = 0.0;
    for (double x : p) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw DomainError(std::string("classical_fidelity: ") + name +
                              " has a negative or non-finite entry");
        }
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw DomainError(std::string("classical_fidelity: ") + name + " does not sum to 1");
    }
}

}  // namespace

std::string to_string(Field f) { return f == Field::real ? "real" : "complex"; }

void ToleranceConfig::validate() const {
    if (!(rank_rel_threshold > 0.0) || !(rank_rel_threshold < 1.0)) {
        throw DomainError("ToleranceConfig: rank_rel_threshold must lie in (0, 1)");
    }
    if (!(psd_eig_floor < 0.0)) {
        throw DomainError("ToleranceConfig: psd_eig_floor must be a negative slack");
    }
    if (!(verify_abs_tol > 0.0)) {
        throw DomainError("ToleranceConfig: verify_abs_tol must be positive");
    }
}

Field field_of(const CMatrix& m) {
    for (Eigen::Index k = 0; k < m.size(); ++k) {
        if (m.data()[k].imag() != 0.0) return Field::complex;
    }
    return Field::real;
}

CMatrix to_complex(const RMatrix& m) { return m.cast<Complex>(); }

RMatrix real_part_checked(const CMatrix& m, double tol) {
    if (m.size() > 0 && m.imag().cwiseAbs().maxCoeff() > tol) {
        throw DomainError("expected a real matrix, found imaginary parts above tolerance");
    }
    return m.real();
}

RVector singular_values(const CMatrix& m) { return singular_values_impl(m); }
RVector singular_values(const RMatrix& m) { return singular_values_impl(m); }

std::size_t numeric_rank(const CMatrix& m, const ToleranceConfig& tol) {
    return numeric_rank_impl(m, tol);
}
std::size_t numeric_rank(const RMatrix& m, const ToleranceConfig& tol) {
    return numeric_rank_impl(m, tol);
}

double trace_norm(const CMatrix& m) { return singular_values(m).sum(); }
double trace_norm(const RMatrix& m) { return singular_values(m).sum(); }
double frobenius_norm(const CMatrix& m) { return singular_values(m).norm(); }
double frobenius_norm(const RMatrix& m) { return singular_values(m).norm(); }

double trace_norm_rank_bound(const CMatrix& m) { return trace_norm_rank_bound_impl(m); }
double trace_norm_rank_bound(const RMatrix& m) { return trace_norm_rank_bound_impl(m); }

CMatrix hermitian_part(const CMatrix& m) { return (m + m.adjoint()) / 2.0; }

PsdCheck is_psd(const CMatrix& m, const ToleranceConfig& tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DimensionError("is_psd: matrix must be square and nonempty");
    }
    PsdCheck out;
    out.hermitian_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
    out.min_eigenvalue = es.eigenvalues()(0);
    out.psd = out.hermitian_defect <= tol.verify_abs_tol && out.min_eigenvalue >= tol.psd_eig_floor;
    return out;
}

CMatrix psd_sqrt(const CMatrix& m, const ToleranceConfig& tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DimensionError("psd_sqrt: matrix must be square and nonempty");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m));
    RVector w = es.eigenvalues();
    if (w(0) < tol.psd_eig_floor) {
        std::ostringstream msg;
        msg << "psd_sqrt: matrix is not PSD (min eigenvalue " << w(0) << ")";
        throw DomainError(msg.str());
    }
    w = w.cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * w.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

RMatrix hadamard_product(const RMatrix& a, const RMatrix& b) { return hadamard_impl(a, b); }
CMatrix hadamard_product(const CMatrix& a, const CMatrix& b) { return hadamard_impl(a, b); }
RMatrix kronecker(const RMatrix& a, const RMatrix& b) { return kronecker_impl(a, b); }
CMatrix kronecker(const CMatrix& a, const CMatrix& b) { return kronecker_impl(a, b); }

double trace_product(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw DimensionError("trace_product: incompatible shapes");
    }
    return a.cwiseProduct(b.transpose()).sum().real();
}

NonnegativeMatrix::NonnegativeMatrix(RMatrix values) : values_(std::move(values)) {
    for (Eigen::Index i = 0; i < values_.rows(); ++i) {
        for (Eigen::Index j = 0; j < values_.cols(); ++j) {
            const double x = values_(i, j);
            if (!std::isfinite(x) || x < 0.0) {
                std::ostringstream msg;
                msg << "NonnegativeMatrix: entry (" << i << "," << j << ") = " << x
                    << " is negative or non-finite";
                throw DomainError(msg.str());
            }
        }
    }
}

StochasticMatrix::StochasticMatrix(NonnegativeMatrix base) : base_(std::move(base)) {
    for (Eigen::Index j = 0; j < base_.cols(); ++j) {
        const double s = base_.values().col(j).sum();
        if (std::abs(s - 1.0) > 1e-12) {
            std::ostringstream msg;
            msg << "StochasticMatrix: column " << j << " sums to " << s;
            throw DomainError(msg.str());
        }
    }
}

StochasticMatrix StochasticMatrix::normalize_columns(const NonnegativeMatrix& a) {
    RMatrix p = a.values();
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
        const double s = p.col(j).sum();
        if (s <= 0.0) {
            throw DomainError("normalize_columns: column " + std::to_string(j) + " is zero");
        }
        p.col(j) /= s;
    }
    return StochasticMatrix(NonnegativeMatrix(std::move(p)));
}

DensityMatrix::DensityMatrix(CMatrix rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
        throw DimensionError("DensityMatrix: must be square and nonempty");
    }
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw DomainError("DensityMatrix: not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(rho_), Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -1e-10) {
        throw DomainError("DensityMatrix: not positive semidefinite");
    }
    if (std::abs(rho_.trace().real() - 1.0) > 1e-10) {
        throw DomainError("DensityMatrix: trace differs from 1");
    }
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> p) {
    CMatrix rho = CMatrix::Zero(static_cast<Eigen::Index>(p.size()),
                                static_cast<Eigen::Index>(p.size()));
    for (std::size_t k = 0; k < p.size(); ++k) {
        rho(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = p[k];
    }
    return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
    const double nrm = psi.norm();
    if (nrm == 0.0) throw DomainError("DensityMatrix::pure: zero vector");
    const CVector u = psi / nrm;
    return DensityMatrix(u * u.adjoint());
}

StrippedMatrix strip_zero_lines(const RMatrix& m) {
    StrippedMatrix out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (!m.row(i).isZero(0.0)) out.kept_rows.push_back(i);
    }
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (!m.col(j).isZero(0.0)) out.kept_cols.push_back(j);
    }
    out.values = m(out.kept_rows, out.kept_cols);
    return out;
}

double bhattacharyya(std::span<const double> p, std::span<const double> q) {
    double f = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) f += std::sqrt(p[k] * q[k]);
    return f;
}

double classical_fidelity(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw DomainError("classical_fidelity: distributions differ in length");
    }
    check_distribution(p, "p");
    check_distribution(q, "q");
    return std::min(1.0, bhattacharyya(p, q));
}

double quantum_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionError("quantum_fidelity: states differ in dimension");
    }
    const CMatrix prod = psd_sqrt(sigma.values()) * psd_sqrt(rho.values());
    return std::min(1.0, trace_norm(prod));
}

double mutual_information_bits(const NonnegativeMatrix& p) {
    const double total = p.values().sum();
    if (!(total > 0.0)) {
        throw DomainError("mutual_information_bits: all-zero matrix");
    }
    const RMatrix joint = p.values() / total;
    const RVector row = joint.rowwise().sum();
    const RVector col = joint.colwise().sum().transpose();
    double info = 0.0;
    for (Eigen::Index i = 0; i < joint.rows(); ++i) {
        for (Eigen::Index j = 0; j < joint.cols(); ++j) {
            const double pij = joint(i, j);
            if (pij > 0.0) info += pij * std::log2(pij / (row(i) * col(j)));
        }
    }
    return std::max(0.0, info);
}

}  // namespace psdrank
