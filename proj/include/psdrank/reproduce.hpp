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
 * Worked examples: regenerate a matrix, run the relevant bounds or
 * constructions and compare with reference values.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psdrank/io.hpp"

namespace psdrank {

enum class Relation { ge, gt, le, lt, approx, eq };

std::string relation_symbol(Relation r);

struct ReproductionRow {
    std::string quantity;
    double expected = 0.0;
    double computed = 0.0;
    Relation relation = Relation::approx;
    double tolerance = 0.0;
    bool pass = false;
};

/// ge/gt/le/lt compare exactly against the expected value; approx and eq
/// accept |computed - expected| <= tolerance.
bool relation_holds(Relation r, double computed, double expected, double tolerance);

struct ReproductionReport {
    std::string example_id;
    std::vector<ReproductionRow> rows;

    bool all_pass() const;
};

/// ex4.4, ex4.7, ex4.10, ex5.1, ex5.2, ex5.3, ex5.4, ne, mc, ip, disj
const std::vector<std::string>& example_ids();

ReproductionReport reproduce(const std::string& example_id, std::uint64_t seed = 0);

Json reproduction_to_json(const ReproductionReport& r);

}  // namespace psdrank
