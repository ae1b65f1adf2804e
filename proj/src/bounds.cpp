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

#include "psdrank/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace psdrank {

namespace {

/// Uniform double in [0, 1) from the top 53 bits, independent of the
/// standard library's distribution implementations.
double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index)};
    return std::mt19937_64(seq);
}

RVector random_simplex_point(std::mt19937_64& rng, Eigen::Index n) {
    RVector q(n);
    for (Eigen::Index k = 0; k < n; ++k) q(k) = -std::log1p(-unit_uniform(rng));
    return q / q.sum();
}

RVector to_distribution(const std::vector<double>& q, Eigen::Index expected, const char* what) {
    if (static_cast<Eigen::Index>(q.size()) != expected) {
        std::ostringstream msg;
        msg << what << ": distribution has length " << q.size() << ", expected " << expected;
        throw DimensionError(msg.str());
    }
    double total = 0.0;
    for (double x : q) {
        if (!std::isfinite(x) || x < 0.0) {
            throw DomainError(std::string(what) + ": distribution has a negative entry");
        }
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw DomainError(std::string(what) + ": distribution does not sum to 1");
    }
    return Eigen::Map<const RVector>(q.data(), expected) / total;
}

std::vector<double> to_std(const RVector& v) { return {v.data(), v.data() + v.size()}; }

double ceil_integer(double x) { return std::ceil(x - 1e-9); }

BoundKind rescaled_kind(InnerBound inner) {
    switch (inner) {
        case InnerBound::b3: return BoundKind::b3_rescaled;
        case InnerBound::b4: return BoundKind::b4_rescaled;
        case InnerBound::b5: return BoundKind::b5_rescaled;
    }
    return BoundKind::b3_rescaled;
}

RMatrix apply_row_scaling(const RMatrix& a, const std::vector<double>& d) {
    if (static_cast<Eigen::Index>(d.size()) != a.rows()) {
        throw DimensionError("rescaled_bound: D has " + std::to_string(d.size()) +
                             " entries for " + std::to_string(a.rows()) + " rows");
    }
    for (double x : d) {
        if (!std::isfinite(x) || x < 0.0) {
            throw DomainError("rescaled_bound: D must be nonnegative and finite");
        }
    }
    const RMatrix scaled = Eigen::Map<const RVector>(d.data(), a.rows()).asDiagonal() * a;
    if (scaled.isZero(0.0)) throw DomainError("rescaled_bound: D zeroes the whole matrix");
    return scaled;
}

BoundReport inner_bound(const NonnegativeMatrix& scaled, InnerBound inner,
                        const SimplexOptConfig& cfg) {
    switch (inner) {
        case InnerBound::b3: return bound_b3(scaled, cfg);
        case InnerBound::b4: return bound_b4(scaled);
        case InnerBound::b5: return bound_b5(scaled, cfg);
    }
    throw DomainError("rescaled_bound: unknown inner bound");
}

BoundReport evaluate_at_scaling(const NonnegativeMatrix& a, InnerBound inner,
                                const SimplexOptConfig& cfg, const std::vector<double>& d) {
    BoundReport r =
        inner_bound(NonnegativeMatrix(apply_row_scaling(a.values(), d)), inner, cfg);
    r.kind = rescaled_kind(inner);
    r.certificate.d = d;
    return r;
}

/// A row may be dropped only if some other kept row still covers each
/// column it covers.
bool can_drop_row(const RMatrix& a, const std::vector<double>& d, Eigen::Index row) {
    bool other_row = false;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        if (i != row && d[static_cast<std::size_t>(i)] > 0.0) other_row = true;
    }
    if (!other_row) return false;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        if (a(row, j) <= 0.0) continue;
        bool covered = false;
        for (Eigen::Index i = 0; i < a.rows() && !covered; ++i) {
            covered = i != row && d[static_cast<std::size_t>(i)] > 0.0 && a(i, j) > 0.0;
        }
        if (!covered) return false;
    }
    return true;
}

double leaf_value(const RMatrix& block, LeafBound leaf, const SimplexOptConfig& cfg,
                  const ToleranceConfig& tol) {
    if (block.isZero(0.0)) return 0.0;
    const NonnegativeMatrix m(block);
    double v = 0.0;
    switch (leaf) {
        case LeafBound::b1: v = bound_b1(m, tol).value; break;
        case LeafBound::b2: v = bound_b2(m).value; break;
        case LeafBound::b3: v = bound_b3(m, cfg).value; break;
        case LeafBound::b4: v = bound_b4(m).value; break;
        case LeafBound::b5: v = bound_b5(m, cfg).value; break;
    }
    return ceil_integer(v);
}

class BlockSplitter {
  public:
    BlockSplitter(const RMatrix& a, LeafBound leaf, const SimplexOptConfig& cfg,
                  const ToleranceConfig& tol)
        : a_(a), leaf_(leaf), cfg_(cfg), tol_(tol) {}

    BlockNode solve(Eigen::Index r0, Eigen::Index r1, Eigen::Index c0, Eigen::Index c1) {
        const std::array<Eigen::Index, 4> key{r0, r1, c0, c1};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        BlockNode node{r0, r1, c0, c1, 0.0, {}};
        const RMatrix block = a_.block(r0, c0, r1 - r0, c1 - c0);
        node.value = leaf_value(block, leaf_, cfg_, tol_);

        // last_nz[i]: one past the last nonzero column of row i (relative)
        const Eigen::Index rows = r1 - r0;
        const Eigen::Index cols = c1 - c0;
        std::vector<Eigen::Index> last_nz(static_cast<std::size_t>(rows), 0);
        for (Eigen::Index i = 0; i < rows; ++i) {
            for (Eigen::Index j = cols - 1; j >= 0; --j) {
                if (block(i, j) > kZero) {
                    last_nz[static_cast<std::size_t>(i)] = j + 1;
                    break;
                }
            }
        }
        Eigen::Index l_min = 0;
        for (Eigen::Index k = rows - 1; k >= 1; --k) {
            l_min = std::max(l_min, last_nz[static_cast<std::size_t>(k)]);
            if (l_min < 1 || l_min > cols - 1) continue;
            BlockNode upper_right = solve(r0, r0 + k, c0 + l_min, c1);
            BlockNode lower_left = solve(r0 + k, r1, c0, c0 + l_min);
            const double total = upper_right.value + lower_left.value;
            if (total > node.value) {
                node.value = total;
                node.children = {std::move(upper_right), std::move(lower_left)};
            }
        }
        memo_.emplace(key, node);
        return node;
    }

    static constexpr double kZero = 1e-12;

  private:
    const RMatrix& a_;
    LeafBound leaf_;
    SimplexOptConfig cfg_;
    ToleranceConfig tol_;
    std::map<std::array<Eigen::Index, 4>, BlockNode> memo_;
};

}  // namespace

std::string bound_name(BoundKind k) {
    switch (k) {
        case BoundKind::b1: return "b1";
        case BoundKind::b1_real: return "b1r";
        case BoundKind::b2: return "b2";
        case BoundKind::b3: return "b3";
        case BoundKind::b4: return "b4";
        case BoundKind::b5: return "b5";
        case BoundKind::b3_rescaled: return "b3_rescaled";
        case BoundKind::b4_rescaled: return "b4_rescaled";
        case BoundKind::b5_rescaled: return "b5_rescaled";
        case BoundKind::block_zero: return "block_zero";
    }
    return "unknown";
}

BoundKind parse_bound_name(const std::string& name) {
    static const std::map<std::string, BoundKind> names{
        {"b1", BoundKind::b1},
        {"b1r", BoundKind::b1_real},
        {"b1_real", BoundKind::b1_real},
        {"b2", BoundKind::b2},
        {"b3", BoundKind::b3},
        {"b4", BoundKind::b4},
        {"b5", BoundKind::b5},
        {"b3'", BoundKind::b3_rescaled},
        {"b4'", BoundKind::b4_rescaled},
        {"b5'", BoundKind::b5_rescaled},
        {"b3_rescaled", BoundKind::b3_rescaled},
        {"b4_rescaled", BoundKind::b4_rescaled},
        {"b5_rescaled", BoundKind::b5_rescaled},
        {"block_zero", BoundKind::block_zero},
    };
    if (auto it = names.find(name); it != names.end()) return it->second;
    throw DomainError("unknown bound '" + name + "'");
}

RMatrix fidelity_gram(const RMatrix& stochastic) {
    const RMatrix root = stochastic.cwiseSqrt();
    const RMatrix f = root.transpose() * root;
    return f.cwiseProduct(f);
}

RMatrix stochastic_core(const RMatrix& a) {
    StrippedMatrix s = strip_zero_lines(a);
    if (s.values.size() == 0) throw DomainError("bound requires a nonzero matrix");
    return StochasticMatrix::normalize_columns(NonnegativeMatrix(std::move(s.values))).values();
}

BoundReport bound_b1(const NonnegativeMatrix& a, const ToleranceConfig& tol) {
    if (a.is_zero()) throw DomainError("b1: zero matrix");
    BoundReport r;
    r.kind = BoundKind::b1;
    r.value = std::sqrt(static_cast<double>(numeric_rank(strip_zero_lines(a.values()).values, tol)));
    return r;
}

BoundReport bound_b1_real(const NonnegativeMatrix& a, const ToleranceConfig& tol) {
    if (a.is_zero()) throw DomainError("b1r: zero matrix");
    const double rank =
        static_cast<double>(numeric_rank(strip_zero_lines(a.values()).values, tol));
    BoundReport r;
    r.kind = BoundKind::b1_real;
    r.value = (std::sqrt(1.0 + 8.0 * rank) - 1.0) / 2.0;
    return r;
}

BoundReport bound_b2(const NonnegativeMatrix& a) {
    if (a.is_zero()) throw DomainError("b2: zero matrix");
    BoundReport r;
    r.kind = BoundKind::b2;
    r.value = std::exp2(mutual_information_bits(a));
    return r;
}

BoundReport bound_b3(const NonnegativeMatrix& a, const SimplexOptConfig& cfg,
                     const std::optional<std::vector<double>>& q_override) {
    const RMatrix p = stochastic_core(a.values());
    const RMatrix g = fidelity_gram(p);
    BoundReport r;
    r.kind = BoundKind::b3;
    r.stats.seed = cfg.seed;
    if (q_override) {
        const RVector q = to_distribution(*q_override, p.cols(), "b3");
        r.value = 1.0 / q.dot(g * q);
        r.certificate.q = to_std(q);
        return r;
    }
    const SimplexSolution sol = minimize_quadratic_on_simplex(g, cfg);
    r.value = 1.0 / sol.objective;
    r.certificate.q = to_std(sol.q);
    r.stats.iterations = sol.iterations;
    r.stats.restarts = 1;  // convex: a single run from the uniform start
    return r;
}

BoundReport bound_b4(const NonnegativeMatrix& a) {
    const RMatrix p = stochastic_core(a.values());
    BoundReport r;
    r.kind = BoundKind::b4;
    r.value = p.rowwise().maxCoeff().sum();
    return r;
}

BoundReport bound_b5(const NonnegativeMatrix& a, const SimplexOptConfig& cfg,
                     const std::optional<std::vector<std::vector<double>>>& q_overrides) {
    const RMatrix p = stochastic_core(a.values());
    const RMatrix g = fidelity_gram(p);
    BoundReport r;
    r.kind = BoundKind::b5;
    r.stats.seed = cfg.seed;
    if (q_overrides) {
        if (static_cast<Eigen::Index>(q_overrides->size()) != p.rows()) {
            throw DimensionError("b5: expected one distribution per row");
        }
        for (Eigen::Index i = 0; i < p.rows(); ++i) {
            const RVector q = to_distribution((*q_overrides)[static_cast<std::size_t>(i)],
                                              p.cols(), "b5");
            r.value += ratio_objective(p.row(i).transpose(), g, q);
            r.certificate.q_rows.push_back(to_std(q));
        }
        return r;
    }
    cfg.validate();
    const Eigen::Index n = p.cols();
    r.stats.restarts = cfg.restarts;
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        const RVector row = p.row(i).transpose();
        SimplexSolution best;
        best.objective = -1.0;
        for (std::size_t k = 0; k < cfg.restarts; ++k) {
            RVector start;
            if (k == 0) {
                start = RVector::Constant(n, 1.0 / static_cast<double>(n));
            } else if (k == 1) {
                Eigen::Index arg = 0;
                row.maxCoeff(&arg);
                start = RVector::Unit(n, arg);
            } else {
                auto rng = make_rng(cfg.seed, static_cast<std::uint64_t>(i), k);
                start = random_simplex_point(rng, n);
            }
            SimplexSolution sol = maximize_ratio_on_simplex(row, g, start, cfg);
            r.stats.iterations += sol.iterations;
            if (sol.objective > best.objective) best = std::move(sol);
        }
        r.value += best.objective;
        r.certificate.q_rows.push_back(to_std(best.q));
    }
    return r;
}

BoundReport rescaled_bound(const NonnegativeMatrix& a, InnerBound inner,
                           const SimplexOptConfig& cfg,
                           const std::optional<std::vector<double>>& d_override) {
    if (a.is_zero()) throw DomainError("rescaled_bound: zero matrix");
    cfg.validate();
    if (d_override) {
        BoundReport r = evaluate_at_scaling(a, inner, cfg, *d_override);
        r.stats.restarts = 0;
        return r;
    }

    // Candidate evaluations inside the search use a lighter inner solver for
    // b5; D = I is always evaluated with the full configuration.
    SimplexOptConfig search_cfg = cfg;
    if (inner == InnerBound::b5) {
        search_cfg.restarts = std::min<std::size_t>(cfg.restarts, 2);
        search_cfg.max_iters = std::min<std::size_t>(cfg.max_iters, 500);
    }
    const RMatrix& values = a.values();
    const auto rows = static_cast<std::size_t>(values.rows());
    const double log_lo = std::log(1e-2);
    const double log_hi = std::log(1e2);

    BoundReport best;
    std::size_t total_iters = 0;
    for (std::size_t restart = 0; restart < cfg.restarts; ++restart) {
        std::vector<double> d(rows, 1.0);
        if (restart > 0) {
            auto rng = make_rng(cfg.seed, 0x5eed, restart);
            for (double& x : d) x = std::exp(log_lo + (log_hi - log_lo) * unit_uniform(rng));
        }
        BoundReport current =
            evaluate_at_scaling(a, inner, restart == 0 ? cfg : search_cfg, d);
        total_iters += current.stats.iterations;

        double step = std::log(4.0);
        for (int sweep = 0; sweep < 60 && step > 0.02; ++sweep) {
            bool improved = false;
            for (std::size_t i = 0; i < rows; ++i) {
                if (d[i] == 0.0) continue;
                std::vector<std::vector<double>> candidates;
                for (double factor : {std::exp(step), std::exp(-step)}) {
                    auto c = d;
                    c[i] *= factor;
                    candidates.push_back(std::move(c));
                }
                if (can_drop_row(values, d, static_cast<Eigen::Index>(i))) {
                    auto c = d;
                    c[i] = 0.0;
                    candidates.push_back(std::move(c));
                }
                for (auto& c : candidates) {
                    BoundReport trial = evaluate_at_scaling(a, inner, search_cfg, c);
                    total_iters += trial.stats.iterations;
                    if (trial.value > current.value + 1e-12 * std::max(1.0, current.value)) {
                        current = std::move(trial);
                        d = c;
                        improved = true;
                    }
                }
            }
            if (!improved) step /= 2.0;
        }
        if (restart == 0 || current.value > best.value) best = std::move(current);
    }
    best.kind = rescaled_kind(inner);
    best.stats.iterations = total_iters;
    best.stats.restarts = cfg.restarts;
    best.stats.seed = cfg.seed;
    return best;
}

double evaluate_b3(const NonnegativeMatrix& a, const std::vector<double>& q) {
    const RMatrix p = stochastic_core(a.values());
    const RVector qv = to_distribution(q, p.cols(), "b3");
    return 1.0 / qv.dot(fidelity_gram(p) * qv);
}

double evaluate_b5(const NonnegativeMatrix& a, const std::vector<std::vector<double>>& q_rows) {
    const RMatrix p = stochastic_core(a.values());
    if (static_cast<Eigen::Index>(q_rows.size()) != p.rows()) {
        throw DimensionError("b5: expected one distribution per row");
    }
    const RMatrix g = fidelity_gram(p);
    double total = 0.0;
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        const RVector q = to_distribution(q_rows[static_cast<std::size_t>(i)], p.cols(), "b5");
        total += ratio_objective(p.row(i).transpose(), g, q);
    }
    return total;
}

double evaluate_rescaled(const NonnegativeMatrix& a, InnerBound inner, const std::vector<double>& d,
                         const Certificate& inner_certificate) {
    const NonnegativeMatrix scaled(apply_row_scaling(a.values(), d));
    switch (inner) {
        case InnerBound::b3: return evaluate_b3(scaled, inner_certificate.q);
        case InnerBound::b4: return bound_b4(scaled).value;
        case InnerBound::b5: return evaluate_b5(scaled, inner_certificate.q_rows);
    }
    throw DomainError("evaluate_rescaled: unknown inner bound");
}

double evaluate_certificate(const NonnegativeMatrix& a, const BoundReport& report,
                            const ToleranceConfig& tol) {
    const Certificate& c = report.certificate;
    switch (report.kind) {
        case BoundKind::b1: return bound_b1(a, tol).value;
        case BoundKind::b1_real: return bound_b1_real(a, tol).value;
        case BoundKind::b2: return bound_b2(a).value;
        case BoundKind::b3: return evaluate_b3(a, c.q);
        case BoundKind::b4: return bound_b4(a).value;
        case BoundKind::b5: return evaluate_b5(a, c.q_rows);
        case BoundKind::b3_rescaled: return evaluate_rescaled(a, InnerBound::b3, c.d, c);
        case BoundKind::b4_rescaled: return evaluate_rescaled(a, InnerBound::b4, c.d, c);
        case BoundKind::b5_rescaled: return evaluate_rescaled(a, InnerBound::b5, c.d, c);
        case BoundKind::block_zero: break;
    }
    throw DomainError("evaluate_certificate: block_zero reports carry a block tree, not a q/D");
}

BlockZeroReport block_zero_bound(const NonnegativeMatrix& a, Eigen::Index row_split,
                                 Eigen::Index col_split, LeafBound leaf,
                                 const SimplexOptConfig& cfg, const ToleranceConfig& tol) {
    const RMatrix& m = a.values();
    if (row_split < 1 || row_split >= m.rows() || col_split < 1 || col_split >= m.cols()) {
        throw DimensionError("block_zero_bound: split must leave all four blocks nonempty");
    }
    const double corner =
        m.bottomRightCorner(m.rows() - row_split, m.cols() - col_split).cwiseAbs().maxCoeff();
    if (corner > BlockSplitter::kZero) {
        std::ostringstream msg;
        msg << "block_zero_bound: lower-right block is not zero (max entry " << corner << ")";
        throw PreconditionError(msg.str());
    }
    BlockSplitter splitter(m, leaf, cfg, tol);
    BlockZeroReport out;
    out.tree = BlockNode{0, m.rows(), 0, m.cols(), 0.0, {}};
    out.tree.children.push_back(splitter.solve(0, row_split, col_split, m.cols()));
    out.tree.children.push_back(splitter.solve(row_split, m.rows(), 0, col_split));
    out.tree.value = out.tree.children[0].value + out.tree.children[1].value;
    out.report.kind = BoundKind::block_zero;
    out.report.value = out.tree.value;
    out.report.stats.seed = cfg.seed;
    return out;
}

}  // namespace psdrank
