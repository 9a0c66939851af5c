#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "edgegap/error.hpp"
#include "edgegap/fredholm.hpp"
#include "edgegap/hypergeom.hpp"
#include "edgegap/montecarlo.hpp"
#include "edgegap/version.hpp"

namespace py = pybind11;
using namespace edgegap;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hard- and soft-edge gap probabilities, LIS distributions and Haar averages";
    m.attr("__version__") = kVersion;

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", error.ptr());
    py::register_exception<ZeroDenominator>(m, "ZeroDenominator", error.ptr());
    py::register_exception<NonConvergence>(m, "NonConvergence", error.ptr());
    py::register_exception<SingularFactorization>(m, "SingularFactorization", error.ptr());
    py::register_exception<NegativeDeterminant>(m, "NegativeDeterminant", error.ptr());
    py::register_exception<DivisionUnderflow>(m, "DivisionUnderflow", error.ptr());
    py::register_exception<SizeLimit>(m, "SizeLimit", error.ptr());

    py::class_<GapValue>(m, "GapValue")
        .def_readonly("value", &GapValue::value)
        .def_readonly("nodes_used", &GapValue::nodes_used)
        .def_readonly("series_k_used", &GapValue::series_k_used)
        .def_readonly("err_estimate", &GapValue::err_estimate)
        .def_property_readonly("method", [](const GapValue& g) { return std::string(to_string(g.method)); })
        .def("__float__", [](const GapValue& g) { return g.value; })
        .def("__repr__", [](const GapValue& g) {
            return "GapValue(value=" + py::repr(py::float_(g.value)).cast<std::string>() + ", method=" +
                   std::string(to_string(g.method)) + ")";
        });

    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("mean", &McEstimate::mean)
        .def_readonly("std_error", &McEstimate::std_error)
        .def_readonly("trials", &McEstimate::trials)
        .def_property_readonly("seed", [](const McEstimate& e) { return e.seed.value; })
        .def("__repr__", [](const McEstimate& e) {
            return "McEstimate(mean=" + py::repr(py::float_(e.mean)).cast<std::string>() +
                   ", std_error=" + py::repr(py::float_(e.std_error)).cast<std::string>() +
                   ", trials=" + std::to_string(e.trials) + ")";
        });

    py::class_<TransitionRow>(m, "TransitionRow")
        .def_readonly("a", &TransitionRow::a)
        .def_readonly("s", &TransitionRow::s)
        .def_readonly("hard_value", &TransitionRow::hard_value)
        .def_readonly("soft_value", &TransitionRow::soft_value)
        .def_readonly("abs_error", &TransitionRow::abs_error);

    py::enum_<Shape>(m, "Shape")
        .value("SQUARE", Shape::Square)
        .value("ANTIDIAGONAL", Shape::AntiDiagonal)
        .value("DIAGONAL", Shape::Diagonal);
    py::enum_<Group>(m, "Group")
        .value("UNITARY", Group::Unitary)
        .value("ORTHOGONAL", Group::Orthogonal)
        .value("SYMPLECTIC", Group::Symplectic);
    py::enum_<EnumKind>(m, "EnumKind")
        .value("PERMUTATION", EnumKind::Permutation)
        .value("FPF_INVOLUTION", EnumKind::FpfInvolution);

    m.def("e2_hard", &e2_hard, py::arg("s"), py::arg("a"), py::arg("m") = kHardEdgeNodes);
    m.def("e1_hard", &e1_hard, py::arg("s"), py::arg("half_index"), py::arg("m") = kHardEdgeNodes);
    m.def("e4_hard", &e4_hard, py::arg("s"), py::arg("a"), py::arg("m") = kHardEdgeNodes);
    m.def("f1", &f1, py::arg("s"), py::arg("m") = kSoftEdgeNodes);
    m.def("f2", &f2, py::arg("s"), py::arg("m") = kSoftEdgeNodes);
    m.def("f4", &f4, py::arg("s"), py::arg("m") = kSoftEdgeNodes);
    m.def("hard_gap_hyper", &hard_gap_hyper, py::arg("beta"), py::arg("s"), py::arg("a"),
          py::arg("rel_tol") = 1e-14);
    m.def("transition_scale", &transition_scale, py::arg("a"), py::arg("s"));
    m.def(
        "transition_sweep",
        [](int beta, const std::vector<double>& s, const std::vector<int>& a, int nodes) {
            py::gil_scoped_release release;
            return transition_sweep(beta, s, a, nodes);
        },
        py::arg("beta"), py::arg("s_values"), py::arg("a_values"), py::arg("m") = kHardEdgeNodes);

    m.def(
        "poissonized_lis_cdf",
        [](Shape shape, double t, int l, std::int64_t trials, std::uint64_t seed) {
            py::gil_scoped_release release;
            return poissonized_lis_cdf(shape, t, l, trials, {seed});
        },
        py::arg("shape"), py::arg("t"), py::arg("l"), py::arg("trials"), py::arg("seed"));
    m.def(
        "group_average",
        [](Group g, int n, double t, std::int64_t trials, std::uint64_t seed) {
            py::gil_scoped_release release;
            return group_average(g, n, t, trials, {seed});
        },
        py::arg("group"), py::arg("n"), py::arg("t"), py::arg("trials"), py::arg("seed"));
    m.def("group_average_series", &group_average_series, py::arg("group"), py::arg("n"), py::arg("t"));

    // Exact probabilities as (numerator, denominator) pairs; the package wraps them in Fraction.
    m.def(
        "_exact_lis_distribution",
        [](int n, EnumKind kind) {
            std::vector<std::pair<std::int64_t, std::int64_t>> out;
            for (const auto& q : exact_lis_distribution(n, kind))
                out.emplace_back(q.numerator(), q.denominator());
            return out;
        },
        py::arg("n"), py::arg("kind"));
    m.def(
        "hook_length_count",
        [](std::vector<int> parts) { return hook_length_count(Partition(std::move(parts))); },
        py::arg("parts"));
}
