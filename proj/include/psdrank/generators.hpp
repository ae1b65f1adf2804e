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
 * Named nonnegative matrix families.
 *
 * Matrices indexed by n-bit strings (inner_product, disjointness) list the
 * strings in lexicographic order: index 0 is 0...0 and the last character
 * of the string is the least significant bit of the index.
 */

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psdrank/linalg.hpp"

namespace psdrank {

enum class Family {
    derangement,    // J_n - I_n
    eps_identity,   // unit diagonal, eps off the diagonal
    m_c,            // c on the diagonal, 1 off the diagonal
    inner_product,  // IP_n, 2^n x 2^n
    disjointness,   // DISJ_n, 2^n x 2^n
    hexagon_slack,  // 6x6 slack matrix of the regular hexagon
    example_4_4,    // first row all ones, unit diagonal, eps elsewhere
    example_4_10,   // ones at (i,i) and (i,i+1 mod n), eps elsewhere
    example_5_1,    // (n+1)x(n+1) eps-identity with eps = 1/n
    example_5_2,    // (1-eps) * tridiagonal ones + eps * J
    example_5_3,    // eps-identity, defaults n=10, eps=0.9
    tensor_pair,    // [[1,a],[a,1]] (x) [[1,a],[a,1]]
};

/// Canonical name used on the command line ("ex4.4", "m_c", ...).
std::string family_name(Family f);

/// Accepts canonical names; '-' is treated as '_'. Throws DomainError.
Family parse_family(std::string_view name);

struct MatrixFamilySpec {
    Family family = Family::derangement;
    std::optional<long> n;
    std::optional<double> eps;
    std::optional<double> c;
    std::optional<double> a;
};

/// Builds the matrix; unset parameters take the family default.
/// Out-of-domain parameters are a DomainError.
NonnegativeMatrix generate(const MatrixFamilySpec& spec);

/// For each column v of the entrywise square root of `a`: true iff the
/// largest entry of v is at most the sum of the others.
std::vector<bool> has_no_dominant_entry_columns(const NonnegativeMatrix& a);

/// Index of a dominant entry (strictly larger than the sum of the rest).
std::optional<std::size_t> dominant_entry(std::span<const double> v);

}  // namespace psdrank
