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

#include "psdrank/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace psdrank {

namespace {

const Json& require(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw FormatError(where + ": expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw FormatError(where + ": missing field '" + key + "'");
    return *it;
}

long require_count(const Json& j, const char* key, const std::string& where) {
    const Json& v = require(j, key, where);
    if (!v.is_number_integer() || v.get<long>() < 0) {
        throw FormatError(where + ": field '" + key + "' must be a nonnegative integer");
    }
    return v.get<long>();
}

double as_number(const Json& v, const std::string& where) {
    if (!v.is_number()) throw FormatError(where + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw FormatError(where + " must be finite");
    return x;
}

std::vector<double> number_list(const Json& v, const std::string& where) {
    if (!v.is_array()) throw FormatError(where + " must be an array of numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        out.push_back(as_number(v[k], where + "[" + std::to_string(k) + "]"));
    }
    return out;
}

Field parse_field(const Json& v, const std::string& where) {
    if (v == "real") return Field::real;
    if (v == "complex") return Field::complex;
    throw FormatError(where + ": field 'field' must be \"real\" or \"complex\"");
}

Json rounded(const Json& j) {
    if (j.is_number_float()) return round12(j.get<double>());
    if (j.is_array() || j.is_object()) {
        Json out = j;
        for (auto& v : out) v = rounded(v);
        return out;
    }
    return j;
}

}  // namespace

double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

Json matrix_to_json(const CMatrix& m) {
    const Field field = field_of(m);
    Json data = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            if (field == Field::real) {
                data.push_back(m(i, k).real());
            } else {
                data.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
            }
        }
    }
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["field"] = to_string(field);
    j["data"] = std::move(data);
    return j;
}

Json matrix_to_json(const RMatrix& m) { return matrix_to_json(to_complex(m)); }

CMatrix matrix_from_json(const Json& j, const std::string& where) {
    const long rows = require_count(j, "rows", where);
    const long cols = require_count(j, "cols", where);
    Field field = Field::real;
    if (j.contains("field")) field = parse_field(j["field"], where);
    const Json& data = require(j, "data", where);
    if (!data.is_array() || static_cast<long>(data.size()) != rows * cols) {
        throw FormatError(where + ": field 'data' must be an array of rows*cols = " +
                          std::to_string(rows * cols) + " entries");
    }
    CMatrix m(rows, cols);
    for (long k = 0; k < rows * cols; ++k) {
        const Json& e = data[static_cast<std::size_t>(k)];
        const std::string at = where + ": data[" + std::to_string(k) + "]";
        if (e.is_array()) {
            if (e.size() != 2) throw FormatError(at + " must be [re, im]");
            m(k / cols, k % cols) = Complex(as_number(e[0], at), as_number(e[1], at));
        } else {
            m(k / cols, k % cols) = Complex(as_number(e, at), 0.0);
        }
    }
    if (field == Field::real && field_of(m) != Field::real) {
        throw FormatError(where + ": field is \"real\" but 'data' has imaginary parts");
    }
    return m;
}

RMatrix matrix_from_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            char* end = nullptr;
            const double x = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || cell.find_first_not_of(" \t\r", end - cell.c_str()) !=
                                           std::string::npos) {
                throw FormatError("csv line " + std::to_string(line_no) + ": '" + cell +
                                  "' is not a number");
            }
            row.push_back(x);
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw FormatError("csv line " + std::to_string(line_no) + ": expected " +
                              std::to_string(rows.front().size()) + " columns");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw FormatError("csv: no data");
    RMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t k = 0; k < rows[i].size(); ++k) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
        }
    }
    return m;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError(path + ": cannot open file");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(path + ": invalid JSON (" + e.what() + ")");
    }
}

CMatrix read_matrix_file(const std::string& path) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
        std::ifstream in(path);
        if (!in) throw FormatError(path + ": cannot open file");
        std::stringstream buf;
        buf << in.rdbuf();
        return to_complex(matrix_from_csv(buf.str()));
    }
    return matrix_from_json(read_json_file(path), path);
}

NonnegativeMatrix read_nonnegative_matrix_file(const std::string& path) {
    const CMatrix m = read_matrix_file(path);
    if (field_of(m) != Field::real) throw FormatError(path + ": 'data' must be real");
    const RMatrix r = m.real();
    if (r.size() > 0 && r.minCoeff() < 0.0) throw FormatError(path + ": 'data' must be >= 0");
    return NonnegativeMatrix(r);
}

Json factorization_to_json(const PsdFactorization& f) {
    Json j;
    j["size"] = f.size;
    j["field"] = to_string(f.field);
    Json e = Json::array();
    for (const CMatrix& m : f.e_factors) e.push_back(matrix_to_json(m));
    Json fs = Json::array();
    for (const CMatrix& m : f.f_factors) fs.push_back(matrix_to_json(m));
    j["E"] = std::move(e);
    j["F"] = std::move(fs);
    return j;
}

PsdFactorization factorization_from_json(const Json& j) {
    PsdFactorization f;
    f.size = static_cast<std::size_t>(require_count(j, "size", "factorization"));
    f.field = parse_field(require(j, "field", "factorization"), "factorization");
    for (const char* side : {"E", "F"}) {
        const Json& list = require(j, side, "factorization");
        if (!list.is_array()) throw FormatError(std::string("factorization: field '") + side +
                                                "' must be an array of matrices");
        auto& out = side[0] == 'E' ? f.e_factors : f.f_factors;
        for (std::size_t k = 0; k < list.size(); ++k) {
            out.push_back(matrix_from_json(list[k], std::string(side) + "[" +
                                                        std::to_string(k) + "]"));
        }
    }
    try {
        f.validate();
    } catch (const DimensionError& e) {
        throw FormatError(e.what());
    }
    return f;
}

Json certificate_to_json(const Certificate& c) {
    Json j = Json::object();
    if (!c.q.empty()) j["q"] = c.q;
    if (!c.q_rows.empty()) j["q_rows"] = c.q_rows;
    if (!c.d.empty()) j["d"] = c.d;
    return j;
}

Certificate certificate_from_json(const Json& j) {
    if (!j.is_object()) throw FormatError("q-file: expected a JSON object");
    Certificate c;
    if (j.contains("q")) c.q = number_list(j["q"], "q-file: field 'q'");
    if (j.contains("q_rows")) {
        const Json& rows = j["q_rows"];
        if (!rows.is_array()) throw FormatError("q-file: field 'q_rows' must be an array");
        for (std::size_t k = 0; k < rows.size(); ++k) {
            c.q_rows.push_back(
                number_list(rows[k], "q-file: field 'q_rows[" + std::to_string(k) + "]'"));
        }
    }
    if (j.contains("d")) c.d = number_list(j["d"], "q-file: field 'd'");
    return c;
}

std::string dump_json(const Json& j) { return rounded(j).dump(2) + "\n"; }

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw FormatError(path + ": cannot write file");
    out << dump_json(j);
}

}  // namespace psdrank
