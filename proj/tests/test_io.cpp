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

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "psdrank/io.hpp"
#include "test_support.hpp"

using namespace psdrank;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / ("psdrank_test_io_" + name);
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST_CASE("rounding to twelve digits") {
    CHECK(round12(0.1 + 0.2) == 0.3);
    CHECK(round12(1.0 / 3.0) == 0.333333333333);
    CHECK(round12(-2.5e-20) == -2.5e-20);
    CHECK(dump_json(Json{{"x", 0.1 + 0.2}}) == "{\n  \"x\": 0.3\n}\n");
}

TEST_CASE("real matrix round trip") {
    RMatrix m(2, 3);
    m << 1, 2.5, 0, -1, 1e-3, 7;
    const Json j = matrix_to_json(m);
    CHECK(j["field"] == "real");
    CHECK(j["rows"] == 2);
    CHECK(j["data"].size() == 6);
    const CMatrix back = matrix_from_json(j);
    CHECK(field_of(back) == Field::real);
    CHECK(back.real() == m);
}

TEST_CASE("complex matrix round trip") {
    testing::Rng rng(1);
    const CMatrix m = rng.complex_gaussian(3, 2);
    const Json j = matrix_to_json(m);
    CHECK(j["field"] == "complex");
    CHECK(j["data"][0].is_array());
    CHECK(matrix_from_json(j) == m);
}

TEST_CASE("malformed matrices name the field") {
    Json j = matrix_to_json(RMatrix(RMatrix::Identity(2, 2)));
    Json missing = j;
    missing.erase("rows");
    CHECK_THROWS_WITH_AS(matrix_from_json(missing), doctest::Contains("'rows'"), FormatError);

    Json short_data = j;
    short_data["data"].erase(short_data["data"].begin());
    CHECK_THROWS_WITH_AS(matrix_from_json(short_data), doctest::Contains("'data'"), FormatError);

    Json bad_field = j;
    bad_field["field"] = "quaternion";
    CHECK_THROWS_WITH_AS(matrix_from_json(bad_field, "E[2]"), doctest::Contains("E[2]"),
                         FormatError);

    Json imag = matrix_to_json(CMatrix(CMatrix::Identity(2, 2) * Complex(0, 1)));
    imag["field"] = "real";
    CHECK_THROWS_AS(matrix_from_json(imag), FormatError);

    Json text = j;
    text["data"][1] = "one";
    CHECK_THROWS_AS(matrix_from_json(text), FormatError);
}

TEST_CASE("csv input") {
    const RMatrix m = matrix_from_csv("1,2,3\n4, 5 ,6\n\n");
    CHECK(m.rows() == 2);
    CHECK(m(1, 1) == 5.0);
    CHECK_THROWS_WITH_AS(matrix_from_csv("1,2\n3\n"), doctest::Contains("line 2"), FormatError);
    CHECK_THROWS_WITH_AS(matrix_from_csv("1,x\n"), doctest::Contains("line 1"), FormatError);
    CHECK_THROWS_AS(matrix_from_csv(""), FormatError);
}

TEST_CASE("matrix files") {
    const auto csv = temp_file("a.csv", "1,0\n0,1\n");
    CHECK(read_nonnegative_matrix_file(csv.string()).values() == RMatrix::Identity(2, 2));

    const auto neg = temp_file("neg.json", dump_json(matrix_to_json(RMatrix(RMatrix::Constant(1, 1, -1.0)))));
    CHECK_THROWS_AS(read_nonnegative_matrix_file(neg.string()), FormatError);

    const auto broken = temp_file("broken.json", "{\"rows\": ");
    CHECK_THROWS_WITH_AS(read_json_file(broken.string()), doctest::Contains("invalid JSON"),
                         FormatError);
    CHECK_THROWS_AS(read_json_file("/nonexistent/psdrank.json"), FormatError);
}

TEST_CASE("factorization round trip") {
    const PsdFactorization f = ne_factorization_odd(3);
    const Json j = factorization_to_json(f);
    CHECK(j["size"] == 3);
    CHECK(j["E"].size() == 9);
    const PsdFactorization back = factorization_from_json(j);
    CHECK(back.size == 3);
    CHECK(back.field == f.field);
    for (std::size_t i = 0; i < 9; ++i) CHECK(back.e_factors[i] == f.e_factors[i]);

    // the rounded file form still verifies
    const Json rounded = Json::parse(dump_json(j));
    CHECK(verify(factorization_from_json(rounded), f.realized()).passed(1e-10));

    Json wrong = j;
    wrong["size"] = 4;
    CHECK_THROWS_AS(factorization_from_json(wrong), FormatError);
    Json no_f = j;
    no_f.erase("F");
    CHECK_THROWS_WITH_AS(factorization_from_json(no_f), doctest::Contains("'F'"), FormatError);
}

TEST_CASE("certificate round trip") {
    Certificate c;
    c.q = {0.25, 0.75};
    c.q_rows = {{1.0, 0.0}, {0.5, 0.5}};
    c.d = {0.0, 10.0};
    const Certificate back = certificate_from_json(certificate_to_json(c));
    CHECK(back.q == c.q);
    CHECK(back.q_rows == c.q_rows);
    CHECK(back.d == c.d);

    const Certificate partial = certificate_from_json(Json{{"q", {0.5, 0.5}}});
    CHECK(partial.q_rows.empty());
    CHECK_THROWS_AS(certificate_from_json(Json::array()), FormatError);
}

TEST_CASE("json output is deterministic") {
    const Json j = factorization_to_json(disj_factorization(2));
    CHECK(dump_json(j) == dump_json(factorization_to_json(disj_factorization(2))));
}
