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

#include "psdrank/factorization.hpp"

#include "psdrank/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace psdrank {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
    t = std::fmod(t, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return t;
}

bool is_prime(long q) {
    if (q < 2) return false;
    for (long d = 2; d * d <= q; ++d) {
        if (q % d == 0) return false;
    }
    return true;
}

long next_prime(long from) {
    long q = std::max(from, 2L);
    while (!is_prime(q)) ++q;
    return q;
}

long ceil_sqrt(long n) {
    long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (r * r < n) ++r;
    while (r > 0 && (r - 1) * (r - 1) >= n) --r;
    return r;
}

Complex root_of_unity(long k, long n) {
    const double t = -kTwoPi * static_cast<double>((k % n + n) % n) / static_cast<double>(n);
    return {std::cos(t), std::sin(t)};
}

/// Above-diagonal cells (k < l) with latin(k, l) == symbol, row-major order.
std::vector<std::pair<Eigen::Index, Eigen::Index>> upper_cells(
    const Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic>& latin, long symbol) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> cells;
    for (Eigen::Index k = 0; k < latin.rows(); ++k) {
        for (Eigen::Index l = k + 1; l < latin.cols(); ++l) {
            if (latin(k, l) == symbol) cells.emplace_back(k, l);
        }
    }
    return cells;
}

void place_pair(CMatrix& g, std::pair<Eigen::Index, Eigen::Index> cell, Complex z) {
    g(cell.first, cell.second) = z;
    g(cell.second, cell.first) = std::conj(z);
}

PsdFactorization ne_from_generators(const std::vector<CMatrix>& gens, long n) {
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    const CMatrix id = CMatrix::Identity(n, n);
    PsdFactorization f;
    f.size = static_cast<std::size_t>(n);
    f.field = Field::complex;
    for (const CMatrix& g : gens) {
        f.e_factors.push_back(s * (id + g));
        f.f_factors.push_back(s * (id - g));
    }
    return f;
}

/// a * J_S + (1 - a) * P_S, scaled, on the index set S.
CMatrix block_on_set(long r, const std::vector<long>& set, double diag, double off) {
    CMatrix m = CMatrix::Zero(r, r);
    for (long p : set) {
        for (long q : set) m(p, q) = p == q ? diag : off;
    }
    return m;
}

CMatrix ones_plus_outside(long r, const std::vector<long>& set) {
    CMatrix m = CMatrix::Identity(r, r);
    for (long p : set) {
        for (long q : set) m(p, q) = 1.0;
    }
    return m;
}

PsdFactorization set_system_factorization(long r, const std::vector<std::vector<long>>& sets,
                                          double scale, double diag, double off) {
    PsdFactorization f;
    f.size = static_cast<std::size_t>(r);
    f.field = Field::real;
    for (const auto& s : sets) {
        f.e_factors.push_back(scale * block_on_set(r, s, diag, off));
        f.f_factors.push_back(ones_plus_outside(r, s));
    }
    return f;
}

PsdFactorization from_rank_factors(const CMatrix& left, const CMatrix& right, Field field) {
    PsdFactorization f;
    f.size = static_cast<std::size_t>(left.cols());
    f.field = field;
    for (Eigen::Index i = 0; i < left.rows(); ++i) {
        const CVector l = left.row(i).transpose().conjugate();
        f.e_factors.push_back(l * l.adjoint());
    }
    for (Eigen::Index j = 0; j < right.cols(); ++j) {
        const CVector r = right.col(j);
        f.f_factors.push_back(r * r.adjoint());
    }
    return f;
}

}  // namespace

RMatrix PsdFactorization::realized() const {
    RMatrix out(static_cast<Eigen::Index>(e_factors.size()),
                static_cast<Eigen::Index>(f_factors.size()));
    for (std::size_t i = 0; i < e_factors.size(); ++i) {
        for (std::size_t j = 0; j < f_factors.size(); ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                trace_product(e_factors[i], f_factors[j]);
        }
    }
    return out;
}

void PsdFactorization::validate() const {
    const auto r = static_cast<Eigen::Index>(size);
    auto check = [&](const std::vector<CMatrix>& list, const char* side) {
        for (std::size_t k = 0; k < list.size(); ++k) {
            if (list[k].rows() != r || list[k].cols() != r) {
                std::ostringstream msg;
                msg << "factorization: " << side << "[" << k << "] is " << list[k].rows() << "x"
                    << list[k].cols() << ", expected " << size << "x" << size;
                throw DimensionError(msg.str());
            }
            if (field == Field::real && field_of(list[k]) != Field::real) {
                throw DimensionError(std::string("factorization: ") + side + "[" +
                                     std::to_string(k) + "] is complex in a real factorization");
            }
        }
    };
    check(e_factors, "E");
    check(f_factors, "F");
}

VerifyReport verify(const PsdFactorization& fact, const RMatrix& target,
                    const ToleranceConfig& tol) {
    fact.validate();
    if (static_cast<Eigen::Index>(fact.e_factors.size()) != target.rows() ||
        static_cast<Eigen::Index>(fact.f_factors.size()) != target.cols()) {
        std::ostringstream msg;
        msg << "verify: factorization has " << fact.e_factors.size() << " x "
            << fact.f_factors.size() << " factors, target is " << target.rows() << " x "
            << target.cols();
        throw DimensionError(msg.str());
    }
    VerifyReport rep;
    rep.max_abs_error = (fact.realized() - target).cwiseAbs().maxCoeff();
    rep.min_eigenvalue = std::numeric_limits<double>::infinity();
    auto scan = [&](const std::vector<CMatrix>& list, std::vector<std::size_t>& bad) {
        for (std::size_t k = 0; k < list.size(); ++k) {
            const PsdCheck c = is_psd(list[k], tol);
            rep.min_eigenvalue = std::min(rep.min_eigenvalue, c.min_eigenvalue);
            if (!c.psd) bad.push_back(k);
        }
    };
    scan(fact.e_factors, rep.non_psd_e);
    scan(fact.f_factors, rep.non_psd_f);
    return rep;
}

NormalFormResult normalize_to_povm_form(const PsdFactorization& fact,
                                        const StochasticMatrix& target,
                                        const ToleranceConfig& tol) {
    const VerifyReport rep = verify(fact, target.values(), tol);
    if (!rep.passed(std::max(tol.verify_abs_tol, 1e-9))) {
        throw PreconditionError("normalize_to_povm_form: factorization does not verify target");
    }
    CMatrix sum = CMatrix::Zero(static_cast<Eigen::Index>(fact.size),
                                static_cast<Eigen::Index>(fact.size));
    for (const CMatrix& e : fact.e_factors) sum += e;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(sum));
    const RVector& lambda = es.eigenvalues();
    const double cutoff = tol.rank_rel_threshold * std::max(lambda.maxCoeff(), 0.0);
    std::vector<Eigen::Index> support;
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        if (lambda(k) > cutoff) support.push_back(k);
    }
    const auto r = static_cast<Eigen::Index>(support.size());
    CMatrix w(static_cast<Eigen::Index>(fact.size), r);
    RVector inv_sqrt(r);
    for (Eigen::Index k = 0; k < r; ++k) {
        w.col(k) = es.eigenvectors().col(support[static_cast<std::size_t>(k)]);
        inv_sqrt(k) = 1.0 / std::sqrt(lambda(support[static_cast<std::size_t>(k)]));
    }
    const CMatrix v = inv_sqrt.cast<Complex>().asDiagonal();
    const CMatrix v_inv = inv_sqrt.cwiseInverse().cast<Complex>().asDiagonal();

    NormalFormResult out;
    out.original_size = fact.size;
    out.factorization.size = static_cast<std::size_t>(r);
    out.factorization.field = fact.field;
    for (const CMatrix& e : fact.e_factors) {
        out.factorization.e_factors.push_back(hermitian_part(v * w.adjoint() * e * w * v));
    }
    for (const CMatrix& f : fact.f_factors) {
        out.factorization.f_factors.push_back(
            hermitian_part(v_inv * w.adjoint() * f * w * v_inv));
    }
    if (fact.field == Field::real) {
        // Eigenvectors of a real matrix may carry complex phases.
        for (auto* list : {&out.factorization.e_factors, &out.factorization.f_factors}) {
            for (CMatrix& m : *list) {
                if (field_of(m) != Field::real) out.factorization.field = Field::complex;
            }
        }
    }
    return out;
}

PhaseAssignment phase_balance(std::span<const double> v) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!std::isfinite(v[k]) || v[k] < 0.0) {
            throw DomainError("phase_balance: entry " + std::to_string(k) +
                              " is negative or not finite");
        }
    }
    PhaseAssignment out;
    out.thetas.assign(v.size(), 0.0);
    if (v.empty()) return out;
    if (auto dom = dominant_entry(v)) {
        throw PreconditionError("phase_balance: entry " + std::to_string(*dom) +
                                " dominates the sum of the others");
    }

    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return v[x] > v[y]; });
    const double a = v[order[0]];
    if (a == 0.0) return out;
    const double rest = std::accumulate(v.begin(), v.end(), 0.0) - a;

    // Group 1 = order[1..k), group 2 = order[k..). Prefer c <= b <= c + a,
    // otherwise any split with |b - c| <= a.
    std::size_t split = 0;
    bool found = false;
    double b = 0.0;
    const double slack = 1e-12 * std::max(1.0, a + rest);
    for (std::size_t k = 1; k <= v.size(); ++k) {
        if (k > 1) b += v[order[k - 1]];
        const double c = rest - b;
        if (c <= b + slack && b <= c + a + slack) {
            split = k;
            found = true;
            break;
        }
    }
    if (!found) {
        b = 0.0;
        for (std::size_t k = 1; k <= v.size(); ++k) {
            if (k > 1) b += v[order[k - 1]];
            if (std::abs(b - (rest - b)) <= a + slack) {
                split = k;
                found = true;
                break;
            }
        }
    }
    if (!found) throw PreconditionError("phase_balance: no balancing split exists");
    b = 0.0;
    for (std::size_t k = 1; k < split; ++k) b += v[order[k]];
    const double c = std::max(rest - b, 0.0);

    double phi = 0.0;
    if (b > 0.0) phi = std::acos(std::clamp((c * c - a * a - b * b) / (2.0 * a * b), -1.0, 1.0));
    const Complex partial = a + b * std::polar(1.0, phi);
    const double psi = std::arg(-partial);
    for (std::size_t k = 1; k < v.size(); ++k) {
        const std::size_t idx = order[k];
        if (v[idx] == 0.0) continue;
        out.thetas[idx] = wrap_angle(k < split ? phi : psi);
    }
    Complex total = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) total += v[k] * std::polar(1.0, out.thetas[k]);
    out.residual = std::abs(total);
    return out;
}

PsdFactorization hadamard_root_factorization(const CMatrix& m, const ToleranceConfig& tol) {
    if (m.size() == 0 || m.isZero(0.0)) {
        throw DomainError("hadamard_root_factorization: matrix must be nonzero");
    }
    if (field_of(m) == Field::real) return hadamard_root_factorization(RMatrix(m.real()), tol);
    Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto r = static_cast<Eigen::Index>(numeric_rank(m, tol));
    const CMatrix left = svd.matrixU().leftCols(r) * svd.singularValues().head(r).asDiagonal();
    const CMatrix right = svd.matrixV().leftCols(r).adjoint();
    return from_rank_factors(left, right, Field::complex);
}

PsdFactorization hadamard_root_factorization(const RMatrix& m, const ToleranceConfig& tol) {
    if (m.size() == 0 || m.isZero(0.0)) {
        throw DomainError("hadamard_root_factorization: matrix must be nonzero");
    }
    Eigen::BDCSVD<RMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto r = static_cast<Eigen::Index>(numeric_rank(m, tol));
    const RMatrix left = svd.matrixU().leftCols(r) * svd.singularValues().head(r).asDiagonal();
    const RMatrix right = svd.matrixV().leftCols(r).transpose();
    return from_rank_factors(to_complex(left), to_complex(right), Field::real);
}

PsdFactorization not_full_factorization(const NonnegativeMatrix& a, const ToleranceConfig& tol) {
    const RMatrix root = a.values().cwiseSqrt();
    CMatrix m(root.rows(), root.cols());
    for (Eigen::Index j = 0; j < root.cols(); ++j) {
        const RVector col = root.col(j);
        if (auto dom = dominant_entry(as_span(col))) {
            throw PreconditionError("not_full_factorization: column " + std::to_string(j) +
                                    " of the entrywise root has dominant entry at row " +
                                    std::to_string(*dom));
        }
        const PhaseAssignment p = phase_balance(as_span(col));
        for (Eigen::Index i = 0; i < root.rows(); ++i) {
            m(i, j) = col(i) * std::polar(1.0, p.thetas[static_cast<std::size_t>(i)]);
        }
    }
    return hadamard_root_factorization(m, tol);
}

PsdFactorization tensor_factorization(const PsdFactorization& f1, const PsdFactorization& f2) {
    f1.validate();
    f2.validate();
    PsdFactorization out;
    out.size = f1.size * f2.size;
    out.field = f1.field == Field::real && f2.field == Field::real ? Field::real : Field::complex;
    for (const CMatrix& x : f1.e_factors) {
        for (const CMatrix& y : f2.e_factors) out.e_factors.push_back(kronecker(x, y));
    }
    for (const CMatrix& x : f1.f_factors) {
        for (const CMatrix& y : f2.f_factors) out.f_factors.push_back(kronecker(x, y));
    }
    return out;
}

std::vector<CMatrix> ne_generators_odd(long n) {
    if (n < 1 || n % 2 == 0) {
        throw DomainError("ne_factorization_odd: n must be odd and >= 1 (use the even variant)");
    }
    Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic> latin(n, n);
    for (long k = 0; k < n; ++k) {
        for (long l = 0; l < n; ++l) latin(k, l) = (k + l) % n;
    }
    std::vector<CMatrix> gens;
    gens.reserve(static_cast<std::size_t>(n * n));
    for (long i = 0; i < n; ++i) {
        const auto cells = upper_cells(latin, i);
        for (long j = 0; j < n; ++j) {
            CMatrix g = CMatrix::Zero(n, n);
            for (long k = 0; k < n; ++k) {
                if (latin(k, k) == i) g(k, k) = 1.0;
            }
            for (std::size_t t = 0; t < cells.size(); ++t) {
                place_pair(g, cells[t], root_of_unity(j * static_cast<long>(t + 1), n));
            }
            gens.push_back(std::move(g));
        }
    }
    return gens;
}

std::vector<CMatrix> ne_generators_even(long n) {
    if (n < 2 || n % 2 != 0) throw DomainError("ne_factorization_even: n must be even and >= 2");
    if (!std::has_single_bit(static_cast<unsigned long>(n))) {
        throw DomainError("ne_factorization_even: n must be a power of two");
    }
    // Round-robin symmetric Latin square with zero diagonal.
    Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic> latin =
        Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    const long m = n - 1;
    for (long k = 0; k < m; ++k) {
        for (long l = 0; l < m; ++l) {
            if (k != l) latin(k, l) = (k + l) % m + 1;
        }
        latin(k, m) = latin(m, k) = (2 * k) % m + 1;
    }

    std::vector<CMatrix> gens;
    gens.reserve(static_cast<std::size_t>(n * n - 1));
    // Block 0 (diagonal support): rows 1..n-1 of the Sylvester Hadamard matrix.
    for (long j = 1; j < n; ++j) {
        CMatrix g = CMatrix::Zero(n, n);
        for (long k = 0; k < n; ++k) {
            g(k, k) = (std::popcount(static_cast<unsigned long>(j & k)) & 1) ? -1.0 : 1.0;
        }
        gens.push_back(std::move(g));
    }
    for (long i = 1; i < n; ++i) {
        const auto cells = upper_cells(latin, i);
        for (long j = 0; j < n; ++j) {
            CMatrix g = CMatrix::Zero(n, n);
            place_pair(g, cells[0], j % 2 == 0 ? Complex(1.0, 0.0) : Complex(0.0, 1.0));
            for (std::size_t t = 1; t < cells.size(); ++t) {
                place_pair(g, cells[t], root_of_unity(j * static_cast<long>(t), n));
            }
            gens.push_back(std::move(g));
        }
    }
    return gens;
}

PsdFactorization ne_factorization_odd(long n) { return ne_from_generators(ne_generators_odd(n), n); }

PsdFactorization ne_factorization_even(long n) {
    return ne_from_generators(ne_generators_even(n), n);
}

PsdFactorization disj_factorization(long n) {
    if (n < 1 || n > 12) throw DomainError("disj_factorization: n must lie in [1, 12]");
    PsdFactorization base;
    base.size = 2;
    base.field = Field::real;
    auto diag = [](double a, double b) { return to_complex(RMatrix(RVector{{a, b}}.asDiagonal())); };
    base.e_factors = {diag(1, 0), diag(0, 1)};
    base.f_factors = {diag(1, 1), diag(1, 0)};
    PsdFactorization out = base;
    for (long k = 1; k < n; ++k) out = tensor_factorization(base, out);
    return out;
}

PsdFactorization trivial_factorization(const NonnegativeMatrix& a) {
    const RMatrix& v = a.values();
    PsdFactorization f;
    f.size = static_cast<std::size_t>(v.cols());
    f.field = Field::real;
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
        f.e_factors.push_back(to_complex(RMatrix(v.row(i).asDiagonal())));
    }
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
        f.f_factors.push_back(to_complex(RMatrix(RVector::Unit(v.cols(), j).asDiagonal())));
    }
    return f;
}

PsdFactorization mc_factorization(long n, double c) {
    if (n < 2) throw DomainError("mc_factorization: n must be >= 2");
    if (!std::isfinite(c) || c < 0.0) throw DomainError("mc_factorization: c must be >= 0");
    if (c == 1.0) {
        PsdFactorization f;
        f.size = 1;
        f.field = Field::real;
        f.e_factors.assign(static_cast<std::size_t>(n), CMatrix::Ones(1, 1));
        f.f_factors.assign(static_cast<std::size_t>(n), CMatrix::Ones(1, 1));
        return f;
    }

    std::vector<std::vector<long>> sets;
    if (c <= 2.0) {
        const long r = ceil_sqrt(2 * n) + 1;
        for (long p = 0; p < r && static_cast<long>(sets.size()) < n; ++p) {
            for (long q = p + 1; q < r && static_cast<long>(sets.size()) < n; ++q) {
                sets.push_back({p, q});
            }
        }
        return set_system_factorization(r, sets, 0.5, 1.0, c - 1.0);
    }

    const long cc = static_cast<long>(std::ceil(c));
    const long root = ceil_sqrt(n);
    long q = next_prime(root);
    if (cc > q) {
        // Lines over F_q meet at most once only when x ranges over <= q values.
        q = next_prime(std::max(root, cc));
        if (cc * q >= n) {
            MatrixFamilySpec spec{Family::m_c, n, std::nullopt, c, std::nullopt};
            return trivial_factorization(generate(spec));
        }
    }
    for (long a = 0; a < q && static_cast<long>(sets.size()) < n; ++a) {
        for (long b = 0; b < q && static_cast<long>(sets.size()) < n; ++b) {
            std::vector<long> s;
            for (long x = 0; x < cc; ++x) s.push_back(x * q + (a * x + b) % q);
            sets.push_back(std::move(s));
        }
    }
    const double off = (c - 1.0) / static_cast<double>(cc - 1);
    return set_system_factorization(cc * q, sets, 1.0 / static_cast<double>(cc), 1.0, off);
}

RMatrix ip_sign_matrix(long n, long k) {
    if (n < 2 || n > 12) throw DomainError("ip_sign_matrix: n must lie in [2, 12]");
    if (k < 1 || k >= n) throw DomainError("ip_sign_matrix: k must satisfy 1 <= k < n");
    const unsigned long size = 1UL << n;
    const unsigned long low_mask = (1UL << k) - 1;
    RMatrix m(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
    for (unsigned long x = 0; x < size; ++x) {
        const unsigned long hx = x >> k;
        for (unsigned long y = 0; y < size; ++y) {
            const unsigned long hy = y >> k;
            const bool outer = std::popcount(hx & hy) & 1;
            const bool inner = std::popcount(x & y & low_mask) & 1;
            const bool ip = outer != inner;
            double value = ip ? 1.0 : 0.0;
            if (hx != 0 && !outer) value = -value;
            m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = value;
        }
    }
    return m;
}

PsdFactorization realify(const PsdFactorization& fact) {
    fact.validate();
    const auto r = static_cast<Eigen::Index>(fact.size);
    const double s = 1.0 / std::sqrt(2.0);
    auto embed = [&](const CMatrix& e) {
        const CMatrix h = hermitian_part(e);
        const RMatrix c = h.real();
        const RMatrix d = h.imag();
        RMatrix out(2 * r, 2 * r);
        out << c, d, -d, c;
        return to_complex(RMatrix(s * out));
    };
    PsdFactorization out;
    out.size = 2 * fact.size;
    out.field = Field::real;
    for (const CMatrix& e : fact.e_factors) out.e_factors.push_back(embed(e));
    for (const CMatrix& f : fact.f_factors) out.f_factors.push_back(embed(f));
    return out;
}

NonnegativeCode random_code_nonneg_factorization(long n, long ell, std::uint64_t seed) {
    if (n < 1) throw DomainError("random_code_nonneg_factorization: n must be >= 1");
    if (ell < 1) throw DomainError("random_code_nonneg_factorization: ell must be >= 1");
    std::mt19937_64 rng(seed);
    NonnegativeCode out;
    out.vectors.resize(n, ell);
    const double scale = std::sqrt(2.0 / static_cast<double>(ell));
    for (long i = 0; i < n; ++i) {
        for (long b = 0; b < ell; ++b) out.vectors(i, b) = (rng() >> 63) ? scale : 0.0;
    }
    out.realized = out.vectors * out.vectors.transpose();
    return out;
}

}  // namespace psdrank
