#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "riotwave/equilibria.hpp"
#include "riotwave/kpp.hpp"
#include "riotwave/pde.hpp"
#include "riotwave/reduced.hpp"
#include "riotwave/spectra.hpp"

namespace py = pybind11;
using namespace riotwave;

namespace {

py::dict spectrum_dict(const Spectrum& s) {
    py::dict d;
    d["lambda1"] = s.lambda1;
    d["lambda2"] = s.lambda2;
    d["class"] = classification_name(s.classification);
    return d;
}

py::dict equilibrium_dict(const Equilibrium& e) {
    py::dict d;
    d["u"] = e.u_star;
    d["v"] = e.v_star;
    d["label"] = e.label == EquilibriumLabel::RelaxedA ? "A" : "B";
    d["residual"] = e.residual;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "traveling fronts of the unrest/tension reaction-diffusion system";

    py::register_exception<ModelError>(m, "ModelError");
    py::register_exception<NoPositiveEquilibrium>(m, "NoPositiveEquilibrium");
    py::register_exception<DomainError>(m, "DomainError");
    py::register_exception<NoFront>(m, "NoFront");

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double gamma, double beta, double p, double omega,
                         double alpha, double c, double d1, double d2) {
                 return ModelParams{gamma, beta, p, omega, alpha, c, d1, d2};
             }),
             py::arg("gamma") = 4.0, py::arg("beta") = 1.0, py::arg("p") = 2.0,
             py::arg("omega") = 1.0, py::arg("alpha") = 1.0, py::arg("c") = 1.0,
             py::arg("d1") = 0.0, py::arg("d2") = 0.0)
        .def_readwrite("gamma", &ModelParams::gamma)
        .def_readwrite("beta", &ModelParams::beta)
        .def_readwrite("p", &ModelParams::p)
        .def_readwrite("omega", &ModelParams::omega)
        .def_readwrite("alpha", &ModelParams::alpha)
        .def_readwrite("c", &ModelParams::c)
        .def_readwrite("d1", &ModelParams::d1)
        .def_readwrite("d2", &ModelParams::d2);

    py::class_<GridConfig>(m, "GridConfig")
        .def(py::init([](double L, int nx, double dtau, double t_end) {
                 return GridConfig{L, nx, dtau, t_end};
             }),
             py::arg("L"), py::arg("nx"), py::arg("dtau"), py::arg("t_end"))
        .def_readwrite("L", &GridConfig::L)
        .def_readwrite("nx", &GridConfig::nx)
        .def_readwrite("dtau", &GridConfig::dtau)
        .def_readwrite("t_end", &GridConfig::t_end)
        .def("dx", &GridConfig::dx);

    py::class_<InitialData>(m, "InitialData")
        .def(py::init([](double A, double k, double B) {
                 return InitialData{A, k, B};
             }),
             py::arg("A"), py::arg("k"), py::arg("B"))
        .def_readwrite("A", &InitialData::A)
        .def_readwrite("k", &InitialData::k)
        .def_readwrite("B", &InitialData::B);

    py::class_<FieldState>(m, "FieldState")
        .def(py::init([](std::vector<double> u, std::vector<double> v, double tau) {
                 FieldState s;
                 s.u = std::move(u);
                 s.v = std::move(v);
                 s.tau = tau;
                 return s;
             }),
             py::arg("u"), py::arg("v") = std::vector<double>{},
             py::arg("tau") = 0.0)
        .def_readonly("u", &FieldState::u)
        .def_readonly("v", &FieldState::v)
        .def_readonly("tau", &FieldState::tau);

    py::class_<SimulationResult>(m, "SimulationResult")
        .def_readonly("snapshots", &SimulationResult::snapshots)
        .def_readonly("min_u", &SimulationResult::min_u)
        .def_readonly("min_v", &SimulationResult::min_v);

    py::class_<StepOptions>(m, "StepOptions")
        .def(py::init<>())
        .def_readwrite("zero_kinetics", &StepOptions::zero_kinetics);

    // kinetics and equilibria
    m.def("sigma", &sigma_gate, py::arg("v"), py::arg("params"));
    m.def(
        "kinetics",
        [](double u, double v, const ModelParams& mp) {
            KineticsValue k = kinetics(u, v, mp);
            return py::make_tuple(k.fu, k.fv);
        },
        py::arg("u"), py::arg("v"), py::arg("params"));
    m.def(
        "reduced_rhs",
        [](double u, double v, const ModelParams& mp) {
            Deriv2 d = reduced_rhs(u, v, mp);
            return py::make_tuple(d.du, d.dv);
        },
        py::arg("u"), py::arg("v"), py::arg("params"));
    m.def("solve_ubar", &solve_ubar, py::arg("params"), py::arg("tol") = 1e-12);
    m.def("vbar", &vbar, py::arg("u_bar"), py::arg("params"));
    m.def("nullcline_u_of_v", &nullcline_u_of_v, py::arg("v"), py::arg("params"));
    m.def("equilibrium_A", [] { return equilibrium_dict(equilibrium_A()); });
    m.def(
        "equilibrium_B",
        [](const ModelParams& mp) { return equilibrium_dict(equilibrium_B(mp)); },
        py::arg("params"));

    // spectra
    m.def(
        "eigen_A", [](const ModelParams& mp) { return spectrum_dict(eigen_A(mp)); },
        py::arg("params"));
    m.def(
        "eigen_B", [](const ModelParams& mp) { return spectrum_dict(eigen_B(mp)); },
        py::arg("params"));
    m.def(
        "partials_at_B",
        [](const ModelParams& mp) {
            PartialsAtB pb = partials_at_B(mp, equilibrium_B(mp));
            py::dict d;
            d["f1u"] = pb.f1u;
            d["f1v"] = pb.f1v;
            d["f2u"] = pb.f2u;
            d["f2v"] = pb.f2v;
            return d;
        },
        py::arg("params"));
    m.def(
        "omega_thresholds",
        [](const ModelParams& mp) {
            OmegaThresholds th = omega_thresholds(mp);
            return py::make_tuple(th.omega1, th.omega2);
        },
        py::arg("params"));

    // reduced flows and shooting
    m.def(
        "stable_eigenvector_A",
        [](const ModelParams& mp) {
            std::array<double, 2> e = stable_eigenvector_A(mp);
            return py::make_tuple(e[0], e[1]);
        },
        py::arg("params"));
    m.def(
        "rotation_angle",
        [](double u, double v, const ModelParams& mp) {
            RotationAngle r = rotation_angle(u, v, mp);
            return py::make_tuple(r.phi, r.dphi_domega);
        },
        py::arg("u"), py::arg("v"), py::arg("params"));
    m.def(
        "shoot_heteroclinic",
        [](const ModelParams& mp, double delta_seed, double capture_radius,
           bool include_orbit) {
            HeteroclinicResult res = [&] {
                py::gil_scoped_release release;
                return shoot_heteroclinic(mp, delta_seed, capture_radius);
            }();
            py::dict d;
            d["connected"] = res.connected;
            d["approach"] =
                res.approach == Approach::Oscillatory ? "Oscillatory" : "Monotone";
            d["distance_to_B"] = res.distance_to_B;
            if (include_orbit) {
                std::vector<double> u, v;
                u.reserve(res.orbit.states.size());
                v.reserve(res.orbit.states.size());
                for (const auto& s : res.orbit.states) {
                    u.push_back(s[0]);
                    v.push_back(s[1]);
                }
                d["xi"] = res.orbit.xi;
                d["u"] = u;
                d["v"] = v;
            }
            return d;
        },
        py::arg("params"), py::arg("delta_seed") = 1e-6,
        py::arg("capture_radius") = 1e-3, py::arg("include_orbit") = false);

    // scalar reduction
    m.def("f_kpp", &f_kpp, py::arg("u"), py::arg("params"));
    m.def("fprime_ubar", &fprime_ubar, py::arg("params"));
    m.def("p_threshold", &p_threshold, py::arg("beta"));
    m.def(
        "kpp_region_check",
        [](double beta, double p) {
            KppRegion r = kpp_region_check(beta, p);
            return py::make_tuple(r.guaranteed, r.p_threshold);
        },
        py::arg("beta"), py::arg("p"));
    m.def(
        "concavity_scan",
        [](const ModelParams& mp, int n_samples) {
            ConcavityScan s = concavity_scan(mp, n_samples);
            return py::make_tuple(s.is_concave, s.max_f2);
        },
        py::arg("params"), py::arg("n_samples") = 1000);
    m.def("min_speed", &min_speed, py::arg("gamma"));
    m.def(
        "kpp_3d_eigenvalues",
        [](const ModelParams& mp) {
            auto ev = kpp_3d_eigenvalues(mp);
            return std::vector<std::complex<double>>(ev.begin(), ev.end());
        },
        py::arg("params"));
    m.def(
        "kpp_verdict",
        [](const ModelParams& mp, int n_samples) {
            KppVerdict v = kpp_verdict(mp, n_samples);
            py::dict d;
            d["guaranteed_by_region"] = v.guaranteed_by_region;
            d["numeric_concave"] = v.numeric_concave;
            d["p_threshold"] = v.p_threshold;
            d["min_speed"] = v.min_speed;
            d["max_f2"] = v.max_f2;
            return d;
        },
        py::arg("params"), py::arg("n_samples") = 1000);

    // semi-implicit solver
    m.def("grid_x", &grid_x, py::arg("grid"));
    m.def("simulate", &simulate, py::arg("params"), py::arg("grid"),
          py::arg("initial"), py::arg("snapshot_every"),
          py::arg("options") = StepOptions{},
          py::call_guard<py::gil_scoped_release>());
    m.def("simulate_scalar", &simulate_scalar, py::arg("params"), py::arg("grid"),
          py::arg("initial"), py::arg("snapshot_every"),
          py::call_guard<py::gil_scoped_release>());
    m.def("simulate_from_state", &simulate_from_state, py::arg("params"),
          py::arg("grid"), py::arg("state"), py::arg("snapshot_every"),
          py::arg("options") = StepOptions{},
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "measure_front_speed",
        [](const std::vector<FieldState>& snaps, const GridConfig& grid,
           double level, double t_from) {
            FrontSpeed fs = measure_front_speed(snaps, grid, level, t_from);
            py::dict d;
            d["speed"] = fs.speed;
            d["fit_residual"] = fs.fit_residual;
            d["n_points"] = fs.n_points;
            return d;
        },
        py::arg("snapshots"), py::arg("grid"), py::arg("level"),
        py::arg("t_from") = -1.0);
    m.def("stationarity_residual", &stationarity_residual, py::arg("s1"),
          py::arg("s2"));
}
