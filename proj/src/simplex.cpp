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

#include "psdrank/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Eigenvalues>

namespace psdrank {

namespace {

double quad(const RMatrix& g, const RVector& q) { return q.dot(g * q); }

SimplexSolution frank_wolfe(const RMatrix& g, const SimplexOptConfig& cfg) {
    const Eigen::Index n = g.rows();
    RVector q = RVector::Constant(n, 1.0 / static_cast<double>(n));
    RVector gq = g * q;
    SimplexSolution out;
    for (std::size_t it = 0; it < cfg.max_iters; ++it) {
        out.iterations = it + 1;
        if (it % 256 == 255) gq = g * q;  // limit drift from rank-one updates
        // gradient is 2 G q; the factor 2 does not change any argmin/argmax
        const double gq_dot_q = gq.dot(q);
        Eigen::Index s = 0;
        gq.minCoeff(&s);
        const double fw_gap = 2.0 * (gq_dot_q - gq(s));
        if (fw_gap <= cfg.convergence_tol) break;

        Eigen::Index v = -1;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (q(i) > 0.0 && (v < 0 || gq(i) > gq(v))) v = i;
        }
        const double away_gap = 2.0 * (gq(v) - gq_dot_q);

        RVector d;
        RVector gd;
        double gamma_max = 1.0;
        bool away = false;
        if (fw_gap >= away_gap || q(v) >= 1.0) {
            d = -q;
            d(s) += 1.0;
            gd = g.col(s) - gq;
        } else {
            away = true;
            d = q;
            d(v) -= 1.0;
            gd = gq - g.col(v);
            gamma_max = q(v) / (1.0 - q(v));
        }
        const double dgd = d.dot(gd);
        const double slope = gq.dot(d);
        double gamma = gamma_max;
        if (dgd > 0.0) gamma = std::clamp(-slope / dgd, 0.0, gamma_max);
        if (!(gamma > 0.0)) break;
        q += gamma * d;
        gq += gamma * gd;
        if (away && gamma == gamma_max) q(v) = 0.0;
        q = q.cwiseMax(0.0);
        q /= q.sum();
    }
    out.q = std::move(q);
    out.objective = quad(g, out.q);
    return out;
}

SimplexSolution projected_gradient(const RMatrix& g, const SimplexOptConfig& cfg) {
    const Eigen::Index n = g.rows();
    Eigen::SelfAdjointEigenSolver<RMatrix> es(g, Eigen::EigenvaluesOnly);
    const double lipschitz = std::max(2.0 * es.eigenvalues().maxCoeff(), 1e-300);
    RVector q = RVector::Constant(n, 1.0 / static_cast<double>(n));
    SimplexSolution out;
    for (std::size_t it = 0; it < cfg.max_iters; ++it) {
        out.iterations = it + 1;
        const RVector next = project_to_simplex(q - (2.0 / lipschitz) * (g * q));
        const double move = (next - q).cwiseAbs().maxCoeff();
        q = next;
        if (move <= cfg.convergence_tol) break;
    }
    out.q = std::move(q);
    out.objective = quad(g, out.q);
    return out;
}

}  // namespace

void SimplexOptConfig::validate() const {
    if (max_iters == 0) throw DomainError("SimplexOptConfig: max_iters must be positive");
    if (restarts == 0) throw DomainError("SimplexOptConfig: restarts must be positive");
    if (!(convergence_tol > 0.0)) {
        throw DomainError("SimplexOptConfig: convergence_tol must be positive");
    }
}

RVector project_to_simplex(const RVector& v) {
    const Eigen::Index n = v.size();
    std::vector<double> u(v.data(), v.data() + n);
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        cumulative += u[static_cast<std::size_t>(k)];
        const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
        if (u[static_cast<std::size_t>(k)] - t > 0.0) theta = t;
    }
    RVector q = (v.array() - theta).cwiseMax(0.0);
    const double s = q.sum();
    return s > 0.0 ? RVector(q / s) : RVector::Constant(n, 1.0 / static_cast<double>(n));
}

SimplexSolution minimize_quadratic_on_simplex(const RMatrix& gram, const SimplexOptConfig& cfg) {
    if (gram.rows() == 0 || gram.rows() != gram.cols()) {
        throw DimensionError("minimize_quadratic_on_simplex: Gram matrix must be square");
    }
    cfg.validate();
    SimplexSolution sol = cfg.step_rule == StepRule::frank_wolfe ? frank_wolfe(gram, cfg)
                                                                  : projected_gradient(gram, cfg);
    const RVector uniform =
        RVector::Constant(gram.rows(), 1.0 / static_cast<double>(gram.rows()));
    const double uniform_value = quad(gram, uniform);
    if (!(sol.objective <= uniform_value)) {
        sol.q = uniform;
        sol.objective = uniform_value;
    }
    return sol;
}

double ratio_objective(const RVector& a, const RMatrix& gram, const RVector& q) {
    const double s2 = quad(gram, q);
    if (!(s2 > 0.0)) return 0.0;
    return a.dot(q) / std::sqrt(s2);
}

SimplexSolution maximize_ratio_on_simplex(const RVector& a, const RMatrix& gram,
                                          const RVector& start, const SimplexOptConfig& cfg) {
    if (a.size() != gram.rows() || start.size() != gram.rows()) {
        throw DimensionError("maximize_ratio_on_simplex: size mismatch");
    }
    SimplexSolution out;
    RVector q = project_to_simplex(start);
    double f = ratio_objective(a, gram, q);
    double step = 1.0;
    for (std::size_t it = 0; it < cfg.max_iters; ++it) {
        out.iterations = it + 1;
        const RVector gq = gram * q;
        const double s2 = q.dot(gq);
        if (!(s2 > 0.0)) break;
        const double s = std::sqrt(s2);
        const RVector grad = a / s - (a.dot(q) / (s2 * s)) * gq;

        bool accepted = false;
        bool converged = false;
        step = std::min(step * 4.0, 1e6);
        while (step > 1e-18) {
            const RVector trial = project_to_simplex(q + step * grad);
            const double ft = ratio_objective(a, gram, trial);
            if (ft >= f + 1e-4 * grad.dot(trial - q) && ft > f) {
                const double gain = ft - f;
                q = trial;
                f = ft;
                accepted = true;
                converged = gain <= cfg.convergence_tol * std::max(1.0, std::abs(f));
                break;
            }
            step *= 0.5;
        }
        if (!accepted || converged) break;
    }
    out.q = std::move(q);
    out.objective = f;
    return out;
}

}  // namespace psdrank
