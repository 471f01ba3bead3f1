#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "draper/analytic.hpp"
#include "draper/bounds.hpp"
#include "draper/phase.hpp"
#include "draper/statevector.hpp"

namespace py = pybind11;
using namespace draper;

namespace {

Register to_register(const py::int_& value, int n) {
    if (n < 1) throw PreconditionError("n must be at least 1");
    if (value < py::int_(0)) throw py::value_error("operands must be nonnegative");
    const auto text = py::str(py::module_::import("builtins").attr("hex")(value)).cast<std::string>();
    return Register::parse(text, static_cast<std::size_t>(n));
}

py::int_ to_int(const Register& r) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(r.hex().c_str(), nullptr, 0));
}

std::vector<Register> to_registers(const std::vector<py::int_>& xs, int n) {
    std::vector<Register> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(to_register(x, n));
    return out;
}

PsiMode to_mode(const std::string& mode) {
    if (mode == "classical") return PsiMode::classical;
    if (mode == "quantum") return PsiMode::quantum;
    throw py::value_error("mode must be 'classical' or 'quantum'");
}

}  // namespace

PYBIND11_MODULE(_draper, m) {
    m.doc() = "Exact fidelity, error bounds and statevector checks for the truncated Draper adder";

    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<SizeLimitError>(m, "SizeLimitError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<FidelityResult>(m, "FidelityResult")
        .def_readonly("fidelity", &FidelityResult::fidelity)
        .def_readonly("error_probability", &FidelityResult::error_probability)
        .def_readonly("carry_profile", &FidelityResult::carry_profile)
        .def_readonly("n", &FidelityResult::n)
        .def_readonly("k", &FidelityResult::k)
        .def_readonly("summands", &FidelityResult::summands)
        .def_property_readonly("total_carries", &FidelityResult::total_carries)
        .def("__repr__", [](const FidelityResult& r) {
            return "FidelityResult(n=" + std::to_string(r.n) + ", k=" + std::to_string(r.k) +
                   ", fidelity=" + std::to_string(r.fidelity) + ")";
        });

    py::class_<BoundReport>(m, "BoundReport")
        .def_readonly("n", &BoundReport::n)
        .def_readonly("k", &BoundReport::k)
        .def_readonly("m_additions", &BoundReport::m_additions)
        .def_readonly("gamma_norm_bound", &BoundReport::gamma_norm_bound)
        .def_readonly("magnitude_bound", &BoundReport::magnitude_bound)
        .def_readonly("probability_bound", &BoundReport::probability_bound)
        .def_readonly("probability_bound_clamped", &BoundReport::probability_bound_clamped)
        .def_readonly("first_order_estimate", &BoundReport::first_order_estimate)
        .def_readonly("first_order_relative_gap", &BoundReport::first_order_relative_gap)
        .def_property_readonly("vacuous", &BoundReport::vacuous);

    m.def(
        "exact_fidelity",
        [](const py::int_& a, const py::int_& b, int n, int k) {
            return exact_fidelity(to_register(a, n), to_register(b, n), n, k);
        },
        py::arg("a"), py::arg("b"), py::arg("n"), py::arg("k"));

    m.def(
        "multi_add_fidelity",
        [](const py::int_& x0, const std::vector<py::int_>& addends, int n, int k) {
            return multi_add_fidelity(to_register(x0, n), to_registers(addends, n), n, k);
        },
        py::arg("x0"), py::arg("addends"), py::arg("n"), py::arg("k"));

    m.def(
        "overlap_product_fidelity",
        [](const py::int_& x0, const std::vector<py::int_>& addends, int n, int k) {
            return overlap_product_fidelity(to_register(x0, n), to_registers(addends, n), n, k);
        },
        py::arg("x0"), py::arg("addends"), py::arg("n"), py::arg("k"));

    m.def("closed_form_fidelity", [](std::uint64_t carries, int k) {
        const ClosedForm c = closed_form_fidelity(carries, k);
        return py::make_tuple(c.fidelity, c.error_probability);
    });

    m.def(
        "worst_case_fidelity",
        [](int n, int k, const std::string& mode) {
            if (mode != "witness" && mode != "exhaustive") {
                throw py::value_error("mode must be 'witness' or 'exhaustive'");
            }
            const WorstCase w =
                worst_case_fidelity(n, k, mode == "witness" ? WorstCaseMode::witness : WorstCaseMode::exhaustive);
            return py::make_tuple(w.result, to_int(w.a), to_int(w.b));
        },
        py::arg("n"), py::arg("k"), py::arg("mode") = "witness");

    m.def(
        "truncation",
        [](int k, int m_digits, const py::int_& a, int width) {
            const DyadicPhase p = truncation(k, m_digits, to_register(a, width));
            return py::make_tuple(to_int(p.numerator()), p.exponent());
        },
        py::arg("k"), py::arg("m"), py::arg("a"), py::arg("width"),
        "Tr(k; m; a) as (numerator, exponent) in lowest terms");

    m.def(
        "carry_indicator",
        [](const py::int_& a, const py::int_& b, int m_digits, int width) {
            return carry_indicator(to_register(a, width), to_register(b, width), m_digits);
        },
        py::arg("a"), py::arg("b"), py::arg("m"), py::arg("width"));

    m.def("gamma_norm_bound", &gamma_norm_bound, py::arg("k"));
    m.def("error_magnitude_bound", &error_magnitude_bound, py::arg("n"), py::arg("k"));
    m.def("error_probability_bound", &error_probability_bound, py::arg("n"), py::arg("k"));
    m.def("first_order_estimate", &first_order_estimate, py::arg("n"), py::arg("k"));
    m.def("multi_add_magnitude_bound", &multi_add_magnitude_bound, py::arg("n"), py::arg("k"), py::arg("m"));
    m.def("bound_report", &bound_report, py::arg("n"), py::arg("k"), py::arg("m") = 1);

    m.def(
        "draper_add",
        [](const py::int_& a, const py::int_& b, int n, int k, const std::string& mode) {
            return draper_add(to_register(a, n), to_register(b, n), n, k, to_mode(mode));
        },
        py::arg("a"), py::arg("b"), py::arg("n"), py::arg("k"), py::arg("mode") = "classical");

    m.def(
        "draper_multi_add",
        [](const py::int_& x0, const std::vector<py::int_>& addends, int n, int k, const std::string& mode) {
            return draper_multi_add(to_register(x0, n), to_registers(addends, n), n, k, to_mode(mode));
        },
        py::arg("x0"), py::arg("addends"), py::arg("n"), py::arg("k"), py::arg("mode") = "classical");

    m.def(
        "full_distribution",
        [](const py::int_& a, const py::int_& b, int n, int k, const std::string& mode) {
            return full_distribution(to_register(a, n), to_register(b, n), n, k, to_mode(mode));
        },
        py::arg("a"), py::arg("b"), py::arg("n"), py::arg("k"), py::arg("mode") = "classical");

    m.def(
        "qft_gate_counts",
        [](int n, int k) {
            const GateCounts c = count_gates(qft_circuit(n, k));
            py::dict d;
            d["hadamard"] = c.hadamard;
            d["controlled_rotation"] = c.controlled_rotation;
            d["swap"] = c.swap;
            return d;
        },
        py::arg("n"), py::arg("k"));
}
