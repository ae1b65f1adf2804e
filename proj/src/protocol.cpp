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

#include "psdrank/protocol.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <string>

namespace psdrank {

namespace {

void walsh_hadamard(std::vector<double>& amp, std::size_t offset, std::size_t len) {
    const double s = 1.0 / std::sqrt(2.0);
    for (std::size_t h = 1; h < len; h *= 2) {
        for (std::size_t i = 0; i < len; i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                const double u = amp[offset + j];
                const double v = amp[offset + j + h];
                amp[offset + j] = s * (u + v);
                amp[offset + j + h] = s * (u - v);
            }
        }
    }
}

}  // namespace

ProtocolOutcome evaluate_protocol(const PsdFactorization& fact, std::size_t column,
                                  std::span<const double> values, const ToleranceConfig& tol) {
    fact.validate();
    if (column >= fact.f_factors.size()) {
        throw DimensionError("evaluate_protocol: column " + std::to_string(column) +
                             " out of range");
    }
    if (values.size() != fact.e_factors.size()) {
        throw DimensionError("evaluate_protocol: need one output value per outcome");
    }
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0) {
            throw DomainError("evaluate_protocol: output values must be nonnegative");
        }
    }
    const auto r = static_cast<Eigen::Index>(fact.size);
    CMatrix sum = CMatrix::Zero(r, r);
    for (const CMatrix& e : fact.e_factors) sum += e;
    const double povm_defect = (sum - CMatrix::Identity(r, r)).cwiseAbs().maxCoeff();
    const double trace_defect = std::abs(fact.f_factors[column].trace().real() - 1.0);
    const double limit = std::max(tol.verify_abs_tol, 1e-9);
    if (povm_defect > limit) throw PreconditionError("evaluate_protocol: sum of E_i is not I");
    if (trace_defect > limit) throw PreconditionError("evaluate_protocol: Tr(F_j) is not 1");

    ProtocolOutcome out;
    out.output_values.assign(values.begin(), values.end());
    for (std::size_t i = 0; i < fact.e_factors.size(); ++i) {
        const double p = trace_product(fact.e_factors[i], fact.f_factors[column]);
        out.outcome_probs.push_back(p);
        out.expectation += p * values[i];
    }
    return out;
}

std::uint64_t parse_bits(std::string_view bits, int n) {
    if (static_cast<int>(bits.size()) != n) {
        throw DimensionError("bit string '" + std::string(bits) + "' must have " +
                             std::to_string(n) + " characters");
    }
    std::uint64_t v = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') {
            throw DomainError("bit string '" + std::string(bits) + "' may contain only 0 and 1");
        }
        v = (v << 1) | static_cast<std::uint64_t>(ch == '1');
    }
    return v;
}

ProtocolOutcome ip_protocol(int n, std::string_view x, std::string_view y,
                            const IpProtocolOptions& opts) {
    if (n < 2 || n % 2 != 0) throw DomainError("ip_protocol: n must be even and >= 2");
    if (n > kMaxIpBits) {
        throw DomainError("ip_protocol: n must be <= " + std::to_string(kMaxIpBits));
    }
    const int half = n / 2;
    const std::uint64_t xv = parse_bits(x, n);
    const std::uint64_t yv = parse_bits(y, n);
    const std::uint64_t mask = (std::uint64_t{1} << half) - 1;
    const std::uint64_t x0 = xv >> half;
    const std::uint64_t x1 = xv & mask;

    HalfFunction f = opts.f ? opts.f : [half](std::uint64_t d, std::uint64_t yy) {
        return (std::popcount(d & (yy >> half)) & 1) == 1;
    };
    HalfFunction g = opts.g ? opts.g : [mask](std::uint64_t d, std::uint64_t yy) {
        return (std::popcount(d & yy & mask) & 1) == 1;
    };

    const std::size_t data_dim = std::size_t{1} << half;
    std::vector<double> amp(2 * data_dim, 0.0);
    const double s = 1.0 / std::sqrt(2.0);
    amp[x0] = s;
    amp[data_dim + x1] = s;

    // Bob's diagonal phase, controlled by the flag qubit.
    for (std::size_t d = 0; d < data_dim; ++d) {
        if (f(d, yv)) amp[d] = -amp[d];
        if (g(d, yv)) amp[data_dim + d] = -amp[data_dim + d];
    }
    walsh_hadamard(amp, 0, data_dim);
    walsh_hadamard(amp, data_dim, data_dim);
    for (std::size_t d = 0; d < data_dim; ++d) {
        const double a0 = amp[d];
        const double a1 = amp[data_dim + d];
        amp[d] = s * (a0 + a1);
        amp[data_dim + d] = s * (a0 - a1);
    }

    ProtocolOutcome out;
    out.outcome_probs.resize(amp.size());
    out.output_values.assign(amp.size(), 0.0);
    out.output_values[data_dim] = std::sqrt(std::ldexp(1.0, n));
    for (std::size_t k = 0; k < amp.size(); ++k) {
        out.outcome_probs[k] = amp[k] * amp[k];
        out.expectation += out.outcome_probs[k] * out.output_values[k];
    }
    if (opts.samples > 0) {
        std::mt19937_64 rng(opts.seed);
        std::discrete_distribution<std::size_t> dist(out.outcome_probs.begin(),
                                                     out.outcome_probs.end());
        double total = 0.0;
        out.samples.reserve(opts.samples);
        for (std::size_t k = 0; k < opts.samples; ++k) {
            const std::size_t o = dist(rng);
            out.samples.push_back(o);
            total += out.output_values[o];
        }
        out.sample_mean = total / static_cast<double>(opts.samples);
    }
    return out;
}

}  // namespace psdrank
