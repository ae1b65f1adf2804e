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
 * One-way quantum protocols that compute a nonnegative matrix in
 * expectation: evaluation of a factorization in POVM normal form, and a
 * state-vector simulation of the inner-product protocol.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "psdrank/factorization.hpp"

namespace psdrank {

struct ProtocolOutcome {
    std::vector<double> outcome_probs;
    std::vector<double> output_values;
    double expectation = 0.0;
    /// sample mode only
    std::vector<std::size_t> samples;
    double sample_mean = 0.0;
};

/// Alice sends F_column, Bob measures {E_i} and outputs values[i].
ProtocolOutcome evaluate_protocol(const PsdFactorization& fact, std::size_t column,
                                  std::span<const double> values,
                                  const ToleranceConfig& tol = {});

/// Boolean function of (half of Alice's input, Bob's full input).
using HalfFunction = std::function<bool(std::uint64_t half, std::uint64_t y)>;

struct IpProtocolOptions {
    /// 0 = exact expectation only
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    /// default: IP of the matching halves of x and y
    HalfFunction f;
    HalfFunction g;
};

inline constexpr int kMaxIpBits = 20;

/// Bit strings, most significant bit first; the first n/2 characters of x
/// form x0. Outcomes are indexed flag * 2^(n/2) + data.
ProtocolOutcome ip_protocol(int n, std::string_view x, std::string_view y,
                            const IpProtocolOptions& opts = {});

/// Parses a 0/1 string of exactly n characters.
std::uint64_t parse_bits(std::string_view bits, int n);

}  // namespace psdrank
