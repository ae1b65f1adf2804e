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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "psdrank/bounds.hpp"
#include "psdrank/factorization.hpp"
#include "psdrank/generators.hpp"
#include "psdrank/protocol.hpp"
#include "psdrank/reproduce.hpp"

namespace py = pybind11;
using namespace psdrank;

namespace {

NonnegativeMatrix nonneg(const RMatrix& m) { return NonnegativeMatrix(m); }

SimplexOptConfig solver(std::size_t restarts, std::size_t max_iters, std::uint64_t seed) {
    SimplexOptConfig cfg;
    cfg.restarts = restarts;
    cfg.max_iters = max_iters;
    cfg.seed = seed;
    return cfg;
}

py::dict report_dict(const BoundReport& r) {
    py::dict cert;
    if (!r.certificate.q.empty()) cert["q"] = r.certificate.q;
    if (!r.certificate.q_rows.empty()) cert["q_rows"] = r.certificate.q_rows;
    if (!r.certificate.d.empty()) cert["d"] = r.certificate.d;
    py::dict d;
    d["kind"] = bound_name(r.kind);
    d["value"] = r.value;
    d["certificate"] = cert;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "PSD-rank bounds, factorizations and protocols";

    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

    m.def(
        "generate",
        [](const std::string& family, std::optional<long> n, std::optional<double> eps,
           std::optional<double> c, std::optional<double> a) {
            return generate({parse_family(family), n, eps, c, a}).values();
        },
        py::arg("family"), py::arg("n") = py::none(), py::arg("eps") = py::none(),
        py::arg("c") = py::none(), py::arg("a") = py::none());

    m.def(
        "bound",
        [](const std::string& name, const RMatrix& a, std::size_t restarts,
           std::size_t max_iters, std::uint64_t seed) {
            const NonnegativeMatrix x = nonneg(a);
            const SimplexOptConfig cfg = solver(restarts, max_iters, seed);
            switch (parse_bound_name(name)) {
                case BoundKind::b1: return report_dict(bound_b1(x));
                case BoundKind::b1_real: return report_dict(bound_b1_real(x));
                case BoundKind::b2: return report_dict(bound_b2(x));
                case BoundKind::b3: return report_dict(bound_b3(x, cfg));
                case BoundKind::b4: return report_dict(bound_b4(x));
                case BoundKind::b5: return report_dict(bound_b5(x, cfg));
                case BoundKind::b3_rescaled:
                    return report_dict(rescaled_bound(x, InnerBound::b3, cfg));
                case BoundKind::b4_rescaled:
                    return report_dict(rescaled_bound(x, InnerBound::b4, cfg));
                case BoundKind::b5_rescaled:
                    return report_dict(rescaled_bound(x, InnerBound::b5, cfg));
                case BoundKind::block_zero: break;
            }
            throw DomainError("use block_zero_bound for block_zero");
        },
        py::arg("name"), py::arg("matrix"), py::arg("restarts") = 16,
        py::arg("max_iters") = 20000, py::arg("seed") = 0);

    m.def(
        "b3_value",
        [](const RMatrix& a, const std::vector<double>& q) { return evaluate_b3(nonneg(a), q); },
        py::arg("matrix"), py::arg("q"));

    m.def(
        "block_zero_bound",
        [](const RMatrix& a, Eigen::Index row_split, Eigen::Index col_split) {
            return block_zero_bound(nonneg(a), row_split, col_split).report.value;
        },
        py::arg("matrix"), py::arg("row_split"), py::arg("col_split"));

    py::class_<PsdFactorization>(m, "Factorization")
        .def_readonly("size", &PsdFactorization::size)
        .def_property_readonly("field", [](const PsdFactorization& f) { return to_string(f.field); })
        .def_readonly("e_factors", &PsdFactorization::e_factors)
        .def_readonly("f_factors", &PsdFactorization::f_factors)
        .def("realized", &PsdFactorization::realized)
        .def("__repr__", [](const PsdFactorization& f) {
            return "<Factorization size=" + std::to_string(f.size) + " field=" +
                   to_string(f.field) + " rows=" + std::to_string(f.e_factors.size()) +
                   " cols=" + std::to_string(f.f_factors.size()) + ">";
        });

    m.def(
        "verify",
        [](const PsdFactorization& f, const RMatrix& target) {
            const VerifyReport r = verify(f, target);
            py::dict d;
            d["max_abs_error"] = r.max_abs_error;
            d["min_eigenvalue"] = r.min_eigenvalue;
            d["non_psd_e"] = r.non_psd_e;
            d["non_psd_f"] = r.non_psd_f;
            return d;
        },
        py::arg("factorization"), py::arg("target"));

    m.def("ne_factorization", [](long n) {
        return n % 2 ? ne_factorization_odd(n) : ne_factorization_even(n);
    }, py::arg("n"));
    m.def("mc_factorization", &mc_factorization, py::arg("n"), py::arg("c"));
    m.def("disj_factorization", &disj_factorization, py::arg("n"));
    m.def("ip_sign_matrix", &ip_sign_matrix, py::arg("n"), py::arg("k"));
    m.def(
        "hadamard_root_factorization",
        [](const CMatrix& mat) { return hadamard_root_factorization(mat); }, py::arg("m"));
    m.def(
        "not_full_factorization",
        [](const RMatrix& a) { return not_full_factorization(nonneg(a)); }, py::arg("matrix"));
    m.def("tensor_factorization", &tensor_factorization);
    m.def("realify", &realify);

    m.def(
        "phase_balance",
        [](const std::vector<double>& v) { return phase_balance(v).thetas; }, py::arg("v"));

    m.def(
        "ip_protocol",
        [](int n, const std::string& x, const std::string& y, std::size_t samples,
           std::uint64_t seed) {
            IpProtocolOptions opts;
            opts.samples = samples;
            opts.seed = seed;
            const ProtocolOutcome o = ip_protocol(n, x, y, opts);
            py::dict d;
            d["outcome_probs"] = o.outcome_probs;
            d["output_values"] = o.output_values;
            d["expectation"] = o.expectation;
            if (samples > 0) d["sample_mean"] = o.sample_mean;
            return d;
        },
        py::arg("n"), py::arg("x"), py::arg("y"), py::arg("samples") = 0, py::arg("seed") = 0);

    m.def("example_ids", &example_ids);
    m.def(
        "reproduce",
        [](const std::string& id, std::uint64_t seed) {
            py::list rows;
            for (const auto& row : reproduce(id, seed).rows) {
                py::dict d;
                d["quantity"] = row.quantity;
                d["expected"] = row.expected;
                d["computed"] = row.computed;
                d["relation"] = relation_symbol(row.relation);
                d["pass"] = row.pass;
                rows.append(d);
            }
            return rows;
        },
        py::arg("example"), py::arg("seed") = 0);
}
