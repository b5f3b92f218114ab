// Python bindings for the entanglement-dynamics core. NumPy arrays cross the
// boundary as complex128 matrices; validation errors surface as LambdaEsdError.

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lambda_esd/complex_matrix.hpp"
#include "lambda_esd/dephasing.hpp"
#include "lambda_esd/entanglement.hpp"
#include "lambda_esd/errors.hpp"
#include "lambda_esd/jc.hpp"
#include "lambda_esd/state.hpp"
#include "lambda_esd/trajectory.hpp"

namespace py = pybind11;

namespace {

using ComplexArray =
    py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

lambda_esd::ComplexMatrix to_matrix(const ComplexArray& arr) {
    if (arr.ndim() != 2) {
        throw py::value_error("expected a 2-D complex array");
    }
    lambda_esd::ComplexMatrix m(static_cast<std::size_t>(arr.shape(0)),
                                static_cast<std::size_t>(arr.shape(1)));
    auto view = arr.unchecked<2>();
    for (py::ssize_t i = 0; i < arr.shape(0); ++i) {
        for (py::ssize_t j = 0; j < arr.shape(1); ++j) {
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = view(i, j);
        }
    }
    return m;
}

py::array_t<std::complex<double>> to_array(const lambda_esd::ComplexMatrix& m) {
    py::array_t<std::complex<double>> arr(
        {static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
    auto view = arr.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = m(i, j);
        }
    }
    return arr;
}

lambda_esd::DensityMatrix to_state(const ComplexArray& arr) {
    return lambda_esd::DensityMatrix(to_matrix(arr));
}

lambda_esd::JCFamily family_from_name(const std::string& name) {
    if (name == "phi") return lambda_esd::JCFamily::Phi;
    if (name == "psi") return lambda_esd::JCFamily::Psi;
    throw lambda_esd::InvalidParams("family must be \"phi\" or \"psi\", got \"" +
                                    name + "\"");
}

py::dict report_to_dict(const lambda_esd::CrossingReport& report) {
    py::list crossings;
    for (const lambda_esd::Crossing& c : report.crossings) {
        py::dict d;
        d["time"] = c.time;
        d["direction"] = lambda_esd::to_string(c.direction);
        crossings.append(d);
    }
    py::list intervals;
    for (const lambda_esd::NegativeInterval& iv : report.negative_intervals) {
        py::dict d;
        d["start"] = iv.start;
        d["end"] = iv.end;
        d["open"] = iv.open;
        intervals.append(d);
    }
    py::dict out;
    out["crossings"] = crossings;
    out["touches"] = report.touches;
    out["negative_intervals"] = intervals;
    out["classification"] = lambda_esd::to_string(report.classification);
    out["window_limited"] = report.window_limited;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two-qubit entanglement dynamics: signed separability distance, "
              "exact dephasing and atom-cavity evolution, sudden-death detection";

    py::register_exception<lambda_esd::Error>(m, "LambdaEsdError");

    py::class_<lambda_esd::XStateParams>(m, "XStateParams")
        .def(py::init([](double a, double b, double c, double d,
                         std::complex<double> z, std::complex<double> w) {
                 return lambda_esd::XStateParams{a, b, c, d, w, z};
             }),
             py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"),
             py::arg("z") = std::complex<double>(0.0, 0.0),
             py::arg("w") = std::complex<double>(0.0, 0.0))
        .def_readwrite("a", &lambda_esd::XStateParams::a)
        .def_readwrite("b", &lambda_esd::XStateParams::b)
        .def_readwrite("c", &lambda_esd::XStateParams::c)
        .def_readwrite("d", &lambda_esd::XStateParams::d)
        .def_readwrite("z", &lambda_esd::XStateParams::z)
        .def_readwrite("w", &lambda_esd::XStateParams::w)
        .def("__repr__", [](const lambda_esd::XStateParams& p) {
            return "XStateParams(a=" + std::to_string(p.a) + ", b=" +
                   std::to_string(p.b) + ", c=" + std::to_string(p.c) + ", d=" +
                   std::to_string(p.d) + ", z=(" + std::to_string(p.z.real()) + "," +
                   std::to_string(p.z.imag()) + "), w=(" + std::to_string(p.w.real()) +
                   "," + std::to_string(p.w.imag()) + "))";
        });

    py::class_<lambda_esd::LambdaResult>(m, "LambdaResult")
        .def_readonly("lambda_", &lambda_esd::LambdaResult::lambda)
        .def_readonly("concurrence", &lambda_esd::LambdaResult::concurrence)
        .def_readonly("sqrt_eigs", &lambda_esd::LambdaResult::sqrt_eigs)
        .def_readonly("residual", &lambda_esd::LambdaResult::residual)
        .def("__repr__", [](const lambda_esd::LambdaResult& r) {
            return "LambdaResult(lambda_=" + std::to_string(r.lambda) +
                   ", concurrence=" + std::to_string(r.concurrence) + ")";
        });

    m.def(
        "x_state",
        [](const lambda_esd::XStateParams& p) {
            return to_array(lambda_esd::x_state(p).matrix());
        },
        py::arg("params"),
        "Assemble and validate the X-patterned density matrix (basis "
        "pp,pm,mp,mm).");

    m.def(
        "lambda_", [](const ComplexArray& rho) { return lambda_esd::lambda(to_state(rho)); },
        py::arg("rho"),
        "Signed separability distance of a two-qubit density matrix.");

    m.def(
        "lambda_x_closed",
        [](const lambda_esd::XStateParams& p) { return lambda_esd::lambda_x_closed(p); },
        py::arg("params"), "Closed-form separability distance of an X state.");

    m.def(
        "concurrence",
        [](const ComplexArray& rho) { return lambda_esd::concurrence(to_state(rho)); },
        py::arg("rho"), "Wootters concurrence, max(0, lambda).");

    m.def(
        "negativity",
        [](const ComplexArray& rho) { return lambda_esd::negativity(to_state(rho)); },
        py::arg("rho"), "Partial-transpose negativity.");

    m.def(
        "purity",
        [](const ComplexArray& rho) { return lambda_esd::purity(to_state(rho)); },
        py::arg("rho"), "Tr(rho^2).");

    m.def(
        "dephase",
        [](const ComplexArray& rho, double gamma_a, double gamma_b, double t) {
            return to_array(lambda_esd::dephase(to_state(rho),
                                                {gamma_a, gamma_b}, t)
                                .matrix());
        },
        py::arg("rho"), py::arg("gamma_a"), py::arg("gamma_b"), py::arg("t"),
        "Exact broadband-dephasing map applied for duration t.");

    m.def(
        "lambda_dephasing_closed",
        [](const lambda_esd::XStateParams& p, double gamma, double t) {
            return lambda_esd::lambda_dephasing_closed(p, gamma, t);
        },
        py::arg("params"), py::arg("gamma"), py::arg("t"),
        "Closed-form separability distance under equal-rate dephasing "
        "(requires w = 0).");

    m.def(
        "esd_time_dephasing",
        [](const lambda_esd::XStateParams& p, double gamma) -> py::object {
            const lambda_esd::EsdTime r = lambda_esd::esd_time_dephasing(p, gamma);
            py::dict d;
            d["time"] = r.time ? py::cast(*r.time) : py::none();
            d["initially_separable"] = r.initially_separable;
            return d;
        },
        py::arg("params"), py::arg("gamma"),
        "Finite sudden-death time under equal-rate dephasing, if one exists.");

    m.def(
        "jc_simulate",
        [](const std::string& family, double alpha, double t, double g,
           double omega0, double omega, std::size_t n_max) {
            const lambda_esd::JCInitialFamily init{family_from_name(family), alpha};
            const lambda_esd::JCParams params{g, omega0, omega, n_max};
            return to_array(lambda_esd::simulate(init, params, t).matrix());
        },
        py::arg("family"), py::arg("alpha"), py::arg("t"), py::arg("g") = 1.0,
        py::arg("omega0") = 0.0, py::arg("omega") = 0.0, py::arg("n_max") = 1,
        "Reduced two-qubit state after double atom-cavity evolution from "
        "vacuum cavities.");

    m.def("lambda_jc_phi", &lambda_esd::lambda_jc_phi, py::arg("alpha"), py::arg("g"),
          py::arg("t"), "Closed-form separability distance for the phi family.");
    m.def("lambda_jc_psi", &lambda_esd::lambda_jc_psi, py::arg("alpha"), py::arg("g"),
          py::arg("t"), "Closed-form separability distance for the psi family.");

    m.def(
        "esd_onset_jc_phi",
        [](double alpha, double g) -> py::object {
            const std::optional<double> t = lambda_esd::esd_onset_jc_phi(alpha, g);
            return t ? py::cast(*t) : py::none();
        },
        py::arg("alpha"), py::arg("g"),
        "First sudden-death onset for the phi family, or None.");

    m.def(
        "find_crossings",
        [](const std::function<double(double)>& model, double t_start, double t_end,
           std::size_t steps) {
            const lambda_esd::Trajectory traj =
                lambda_esd::sample(model, t_start, t_end, steps, "python");
            return report_to_dict(lambda_esd::find_crossings(traj, model));
        },
        py::arg("model"), py::arg("t_start"), py::arg("t_end"), py::arg("steps"),
        "Sample model(t) on a uniform grid, refine its zeros, and classify "
        "the trajectory.");

    m.def(
        "partial_transpose",
        [](const ComplexArray& rho, const std::string& subsystem) {
            const lambda_esd::Subsystem which =
                subsystem == "A" ? lambda_esd::Subsystem::A
                                 : lambda_esd::Subsystem::B;
            if (subsystem != "A" && subsystem != "B") {
                throw lambda_esd::InvalidParams("subsystem must be \"A\" or \"B\"");
            }
            return to_array(lambda_esd::partial_transpose(to_state(rho), which));
        },
        py::arg("rho"), py::arg("subsystem"),
        "Partial transpose of a two-qubit state over one subsystem.");

    m.attr("separability_distance") = m.attr("lambda_");
}
