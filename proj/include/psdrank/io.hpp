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
 * JSON/CSV serialisation of matrices, factorizations and certificates.
 *
 * Matrix: {"rows", "cols", "field": "real"|"complex", "data"} with row-major
 * data; real matrices use bare numbers, complex ones [re, im] pairs (bare
 * numbers are also accepted on input). Factorization: {"size", "field",
 * "E": [matrix...], "F": [matrix...]}.
 */

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "psdrank/bounds.hpp"
#include "psdrank/factorization.hpp"
#include "psdrank/linalg.hpp"

namespace psdrank {

using Json = nlohmann::ordered_json;

/// Malformed input file; the message names the offending field.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Rounds to 12 significant digits.
double round12(double x);

Json matrix_to_json(const CMatrix& m);
Json matrix_to_json(const RMatrix& m);
/// `where` prefixes error messages, e.g. "E[3]".
CMatrix matrix_from_json(const Json& j, const std::string& where = "matrix");

/// Comma-separated rows of real numbers.
RMatrix matrix_from_csv(const std::string& text);

/// JSON or CSV (by extension, ".csv"); throws FormatError.
CMatrix read_matrix_file(const std::string& path);
/// As above, requiring a real nonnegative matrix.
NonnegativeMatrix read_nonnegative_matrix_file(const std::string& path);

Json factorization_to_json(const PsdFactorization& f);
PsdFactorization factorization_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);
/// Keys "q", "q_rows", "d", each optional.
Certificate certificate_from_json(const Json& j);

Json read_json_file(const std::string& path);
/// Deterministic output: keys in insertion order, numbers at 12 digits.
void write_json_file(const std::string& path, const Json& j);
std::string dump_json(const Json& j);

}  // namespace psdrank
