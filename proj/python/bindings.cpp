#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>
#include <sstream>

#include "ftsmfc/config.hpp"
#include "ftsmfc/csv_log.hpp"
#include "ftsmfc/errors.hpp"
#include "ftsmfc/fts_core.hpp"
#include "ftsmfc/metrics.hpp"
#include "ftsmfc/output_filter.hpp"
#include "ftsmfc/plant_models.hpp"
#include "ftsmfc/simulation.hpp"
#include "ftsmfc/tracking_control.hpp"
#include "ftsmfc/ulm_observer.hpp"
#include "ftsmfc/verify_suite.hpp"

namespace py = pybind11;
using namespace ftsmfc;

namespace {

// Stacks one field of every record into a (records x dim) array.
template <typename Get>
py::array_t<double> stack(const SimLog& log, Index dim, Get get) {
    py::array_t<double> a({static_cast<py::ssize_t>(log.records.size()), static_cast<py::ssize_t>(dim)});
    auto w = a.mutable_unchecked<2>();
    for (std::size_t i = 0; i < log.records.size(); ++i) {
        const Vector& v = get(log.records[i]);
        for (Index j = 0; j < dim; ++j) w(static_cast<py::ssize_t>(i), j) = v(j);
    }
    return a;
}

py::dict log_to_dict(const SimLog& log) {
    const Index n = log.output_dim, m = log.input_dim;
    py::array_t<double> t(static_cast<py::ssize_t>(log.records.size()));
    auto tw = t.mutable_unchecked<1>();
    for (std::size_t i = 0; i < log.records.size(); ++i) tw(static_cast<py::ssize_t>(i)) = log.records[i].t;
    py::dict d;
    d["t"] = t;
    d["y"] = stack(log, n, [](const SimRecord& r) -> const Vector& { return r.y; });
    d["y_meas"] = stack(log, n, [](const SimRecord& r) -> const Vector& { return r.y_meas; });
    d["y_hat"] = stack(log, n, [](const SimRecord& r) -> const Vector& { return r.y_hat; });
    d["y_d"] = stack(log, n, [](const SimRecord& r) -> const Vector& { return r.y_d; });
    d["e_y"] = stack(log, n, [](const SimRecord& r) -> const Vector& { return r.e_y; });
    d["F"] = stack(log, n, [](const SimRecord& r) -> const Vector& { return r.F; });
    d["F_hat"] = stack(log, n, [](const SimRecord& r) -> const Vector& { return r.F_hat; });
    d["e_F"] = stack(log, n, [](const SimRecord& r) -> const Vector& { return r.e_F; });
    d["u"] = stack(log, m, [](const SimRecord& r) -> const Vector& { return r.u; });
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite-time-stable model-free control core";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    static py::exception<NumericalError> numerical(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<SingularMatrixError>(m, "SingularMatrixError", numerical.ptr());
    py::register_exception<DivergenceError>(m, "DivergenceError", numerical.ptr());

    py::class_<HolderGainParams>(m, "HolderGainParams")
        .def(py::init<double, double>(), py::arg("exponent"), py::arg("scale"))
        .def(py::init<double, double, Matrix>(), py::arg("exponent"), py::arg("scale"), py::arg("weight"))
        .def_static("with_scalar_weight", &HolderGainParams::with_scalar_weight, py::arg("exponent"),
                    py::arg("scale"), py::arg("weight"))
        .def_property_readonly("exponent", &HolderGainParams::exponent)
        .def_property_readonly("scale", &HolderGainParams::scale)
        .def_property_readonly("power", &HolderGainParams::power)
        .def("__repr__", [](const HolderGainParams& p) {
            std::ostringstream ss;
            ss << "HolderGainParams(exponent=" << p.exponent() << ", scale=" << p.scale() << ")";
            return ss.str();
        });

    m.def("holder_gain", &holder_gain, py::arg("e"), py::arg("params"));
    m.def("gamma_of_V", &gamma_of_V, py::arg("V"), py::arg("params"));
    m.def("robustness_radius", &robustness_radius, py::arg("gain_value"));
    m.def("robustness_radius_from_zeta", &robustness_radius_from_zeta, py::arg("zeta"));
    m.def(
        "fts_recursion",
        [](double V0, double eta, double alpha, std::size_t max_steps) {
            const auto r = fts_recursion(V0, eta, alpha, max_steps);
            return py::make_tuple(r.trace.values, r.settle_index);
        },
        py::arg("V0"), py::arg("eta"), py::arg("alpha"), py::arg("max_steps"));
    m.def(
        "verify_fts_condition",
        [](std::vector<double> values, double alpha, double eta, const GammaFn& gamma, double epsilon) {
            LyapunovTrace t{std::move(values), alpha, eta};
            return verify_fts_condition(t, gamma, epsilon);
        },
        py::arg("values"), py::arg("alpha"), py::arg("eta"), py::arg("gamma"), py::arg("epsilon"));
    m.def(
        "verify_holder_continuity",
        [](std::vector<double> values, double alpha, double epsilon) {
            LyapunovTrace t{std::move(values), alpha, 1.0};
            return verify_holder_continuity(t, epsilon);
        },
        py::arg("values"), py::arg("alpha"), py::arg("epsilon"));

    m.def("compute_F", &compute_F, py::arg("y_future"), py::arg("G"), py::arg("u"));
    m.def("neighborhood_measure", &neighborhood_measure, py::arg("e"), py::arg("params"));
    m.def("in_neighborhood_F", &in_neighborhood_F, py::arg("e"), py::arg("bound"), py::arg("params"));
    m.def("in_neighborhood_y", &in_neighborhood_y, py::arg("e_y"), py::arg("bound"), py::arg("params"));

    py::enum_<ObserverOrder>(m, "ObserverOrder")
        .value("First", ObserverOrder::First)
        .value("Second", ObserverOrder::Second);

    py::class_<UlmObserver>(m, "UlmObserver")
        .def(py::init<ObserverOrder, Vector, HolderGainParams, HolderGainParams>(), py::arg("order"),
             py::arg("F_hat0"), py::arg("params_F"), py::arg("params_delta"))
        .def_property_readonly("estimate", &UlmObserver::estimate)
        .def("update", &UlmObserver::update, py::arg("F_k"))
        .def("delta_error", &UlmObserver::delta_error);

    m.def("solve_input", &solve_input, py::arg("G"), py::arg("rhs"));
    m.def(
        "control_law_basic",
        [](const Vector& yd, const Vector& F_hat, const HolderGainParams& p, const Matrix& G, int nu) {
            return control_law_basic(yd, F_hat, ControlGains(p, G, nu));
        },
        py::arg("y_d_future"), py::arg("F_hat"), py::arg("params"), py::arg("G"), py::arg("relative_degree") = 1);
    m.def(
        "control_law_fts",
        [](const Vector& yd, const Vector& F_hat, const Vector& e, const HolderGainParams& p, const Matrix& G,
           int nu) { return control_law_fts(yd, F_hat, e, ControlGains(p, G, nu)); },
        py::arg("y_d_future"), py::arg("F_hat"), py::arg("e_y_recent"), py::arg("params"), py::arg("G"),
        py::arg("relative_degree") = 1);

    m.def(
        "filter_update",
        [](const Vector& y_hat, const Vector& y_meas, const Vector& y_meas_next, const HolderGainParams& p) {
            return filter_update(OutputFilterState(y_hat, y_meas, p), y_meas_next).y_hat;
        },
        py::arg("y_hat"), py::arg("y_meas"), py::arg("y_meas_next"), py::arg("params"));

    py::class_<PendulumParams>(m, "PendulumParams")
        .def(py::init<>())
        .def_readwrite("M_cart", &PendulumParams::M_cart)
        .def_readwrite("m_pend", &PendulumParams::m_pend)
        .def_readwrite("l_half", &PendulumParams::l_half)
        .def_readwrite("I_pend", &PendulumParams::I_pend)
        .def_readwrite("g", &PendulumParams::g)
        .def_readwrite("c_x", &PendulumParams::c_x)
        .def_readwrite("c_theta", &PendulumParams::c_theta);

    m.def("mass_matrix", &mass_matrix, py::arg("theta"), py::arg("params") = PendulumParams{});
    m.def("bias_vector", &bias_vector, py::arg("theta"), py::arg("xdot"), py::arg("thetadot"),
          py::arg("params") = PendulumParams{});
    m.def("open_loop_input", &open_loop_input, py::arg("theta"), py::arg("thetadot"),
          py::arg("params") = PendulumParams{});
    m.def(
        "pendulum_step",
        [](const Eigen::Vector2d& y_prev, const Eigen::Vector2d& y_curr, const Eigen::Vector2d& u, double dt,
           const PendulumParams& p) {
            const auto s = pendulum_step(LiftedPlantState{y_prev, y_curr}, u, dt, p);
            return py::make_tuple(s.y_next, s.F_true, s.G_true);
        },
        py::arg("y_prev"), py::arg("y_curr"), py::arg("u"), py::arg("dt"), py::arg("params") = PendulumParams{});
    m.def(
        "generate_desired_trajectory",
        [](const Eigen::Vector4d& init, double T, double dt, const PendulumParams& p) {
            const auto yd = generate_desired_trajectory(init, T, dt, p);
            Matrix out(static_cast<Index>(yd.size()), 2);
            for (std::size_t k = 0; k < yd.size(); ++k) out.row(static_cast<Index>(k)) = yd[k].transpose();
            return out;
        },
        py::arg("init"), py::arg("T"), py::arg("dt"), py::arg("params") = PendulumParams{});
    m.def(
        "noise_sample", [](double t) { return noise_sample(t, NoiseConfig{}); }, py::arg("t"),
        "Default FM-sinusoid measurement noise at time t");

    py::class_<SimConfig>(m, "SimConfig")
        .def_readwrite("dt", &SimConfig::dt)
        .def_readwrite("T", &SimConfig::T);
    m.def("reference_config", &reference_config);
    m.def(
        "parse_config",
        [](const std::string& text, const std::map<std::string, std::string>& overrides) {
            std::vector<Override> ov(overrides.begin(), overrides.end());
            return parse_config(text, ov);
        },
        py::arg("text"), py::arg("overrides") = std::map<std::string, std::string>{});
    m.def(
        "load_config",
        [](const std::filesystem::path& path, const std::map<std::string, std::string>& overrides) {
            std::vector<Override> ov(overrides.begin(), overrides.end());
            return load_config(path, ov);
        },
        py::arg("path"), py::arg("overrides") = std::map<std::string, std::string>{});

    m.def(
        "simulate",
        [](const SimConfig& cfg) {
            SimOutcome out;
            {
                py::gil_scoped_release release;
                out = simulate(cfg);
            }
            py::dict d = log_to_dict(out.log);
            d["status"] = "ok";
            if (out.error) {
                try {
                    std::rethrow_exception(out.error);
                } catch (const NumericalError& e) {
                    d["status"] = "failed";
                    d["error"] = std::string(e.what());
                    d["failure_step"] = e.step();
                }
            }
            return d;
        },
        py::arg("config"), "Run the closed loop; returns per-signal arrays and a status");
    m.def(
        "simulate_csv",
        [](const SimConfig& cfg) {
            const SimOutcome out = simulate(cfg);
            std::ostringstream ss;
            write_log_csv(out.log, ss);
            return ss.str();
        },
        py::arg("config"));

    m.def("suite_selectors", &suite_selectors);
    m.def(
        "run_suite",
        [](const std::string& selector) {
            SuiteReport rep;
            {
                py::gil_scoped_release release;
                rep = run_suite(selector);
            }
            py::list props;
            for (const auto& p : rep.properties) {
                py::dict d;
                d["property"] = p.property;
                d["samples"] = p.samples;
                d["worst_margin"] = p.worst_margin;
                d["passed"] = p.passed;
                d["note"] = p.note;
                props.append(d);
            }
            return py::make_tuple(rep.passed(), props);
        },
        py::arg("selector"));
}
