#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "eit4/scenario.hpp"

namespace py = pybind11;
using namespace eit4;

namespace {

template <typename Fn>
std::string to_text(Fn&& fn)
{
    std::ostringstream out;
    fn(out);
    return out.str();
}

} // namespace

PYBIND11_MODULE(_eit4, m)
{
    m.doc() = "Five-level rf-dressed EIT model of the hydrogen ground state";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<NoTransparencyAngle>(m, "NoTransparencyAngle", PyExc_ValueError);

    py::class_<DriveConfig>(m, "DriveConfig")
        .def(py::init<>())
        .def(py::init([](real delta, real omega_c, complex omega_r, complex omega_r_prime, complex omega_p,
                         complex omega_p_prime) {
                 return DriveConfig{delta, omega_c, omega_r, omega_r_prime, omega_p, omega_p_prime};
             }),
             py::arg("delta") = 0.0, py::arg("omega_c") = 0.0, py::arg("omega_r") = complex{},
             py::arg("omega_r_prime") = complex{}, py::arg("omega_p") = complex{},
             py::arg("omega_p_prime") = complex{})
        .def_readwrite("delta", &DriveConfig::delta)
        .def_readwrite("omega_c", &DriveConfig::omega_c)
        .def_readwrite("omega_r", &DriveConfig::omega_r)
        .def_readwrite("omega_r_prime", &DriveConfig::omega_r_prime)
        .def_readwrite("omega_p", &DriveConfig::omega_p)
        .def_readwrite("omega_p_prime", &DriveConfig::omega_p_prime)
        .def("validate", &DriveConfig::validate);

    py::class_<RelaxationParams>(m, "RelaxationParams")
        .def(py::init([](real gamma_sp, real gamma_ex, bool dephase) {
                 return RelaxationParams{gamma_sp, gamma_ex, dephase};
             }),
             py::arg("gamma_sp") = 1.0, py::arg("gamma_ex") = 1e-4, py::arg("exchange_dephases_optical") = false)
        .def_readwrite("gamma_sp", &RelaxationParams::gamma_sp)
        .def_readwrite("gamma_ex", &RelaxationParams::gamma_ex)
        .def_readwrite("exchange_dephases_optical", &RelaxationParams::exchange_dephases_optical);

    py::class_<PolarizationConfig>(m, "PolarizationConfig")
        .def_static("from_angle", &PolarizationConfig::from_angle, py::arg("e_amp"), py::arg("psi"),
                    py::arg("h_amp"))
        .def_static("from_components", &PolarizationConfig::from_components, py::arg("ex"), py::arg("ey"),
                    py::arg("hx"), py::arg("hy"))
        .def_static("rf_polarized_along_x", &PolarizationConfig::rf_polarized_along_x, py::arg("omega_r"),
                    py::arg("psi"), py::arg("probe_amp") = 1.0)
        .def_property_readonly("ex", &PolarizationConfig::ex)
        .def_property_readonly("ey", &PolarizationConfig::ey)
        .def_property_readonly("hx", &PolarizationConfig::hx)
        .def_property_readonly("hy", &PolarizationConfig::hy);

    m.def("probe_rabi", &probe_rabi);
    m.def("rf_rabi", &rf_rabi);
    m.def("dressed_rabi_geometric", &dressed_rabi_geometric);
    m.def("drive_from_polarization", &drive_from_polarization, py::arg("p"), py::arg("delta"), py::arg("omega_c"));

    m.def("build_hamiltonian", &build_hamiltonian);
    m.def("build_h0", &build_h0);
    m.def("build_probe_potential", &build_probe_potential);
    m.def("light_shift", &light_shift);

    py::class_<DressedBasis>(m, "DressedBasis")
        .def_readonly("sigma", &DressedBasis::sigma)
        .def_readonly("minus", &DressedBasis::minus)
        .def_readonly("zero", &DressedBasis::zero)
        .def_readonly("plus", &DressedBasis::plus)
        .def_readonly("omega0", &DressedBasis::omega0)
        .def_readonly("omega", &DressedBasis::omega);
    m.def("dressed_basis", &dressed_basis);

    py::enum_<DarkKind>(m, "DarkKind")
        .value("raman", DarkKind::raman)
        .value("non_raman", DarkKind::non_raman)
        .value("bright", DarkKind::bright);

    py::class_<DarkStateRecord>(m, "DarkStateRecord")
        .def_readonly("eigenvalue", &DarkStateRecord::eigenvalue)
        .def_readonly("eigenvector", &DarkStateRecord::eigenvector)
        .def_readonly("excited_overlap", &DarkStateRecord::excited_overlap)
        .def_readonly("kind", &DarkStateRecord::kind);
    py::class_<DarkStateReport>(m, "DarkStateReport")
        .def_readonly("records", &DarkStateReport::records)
        .def_readonly("warnings", &DarkStateReport::warnings)
        .def("count", &DarkStateReport::count)
        .def("has_dark", &DarkStateReport::has_dark);
    m.def("find_dark_states", [](const DriveConfig& cfg) { return find_dark_states(cfg); });

    m.def("liouvillian", [](const Matrix5& h, const RelaxationParams& r) { return liouvillian(h, r).matrix(); });
    m.def("steady_state_numeric", &steady_state_numeric);
    m.def("steady_state_analytic",
          [](const DriveConfig& cfg, const RelaxationParams& r) { return steady_state_analytic(cfg, r); });

    py::class_<ChiComponents>(m, "ChiComponents")
        .def_readonly("chi_x", &ChiComponents::chi_x)
        .def_readonly("chi_y", &ChiComponents::chi_y)
        .def_readonly("cross_x", &ChiComponents::cross_x)
        .def_readonly("cross_y", &ChiComponents::cross_y);
    py::class_<SusceptibilityPoint>(m, "SusceptibilityPoint")
        .def_readonly("delta", &SusceptibilityPoint::delta)
        .def_readonly("psi", &SusceptibilityPoint::psi)
        .def_readonly("chi_x", &SusceptibilityPoint::chi_x)
        .def_readonly("chi_y", &SusceptibilityPoint::chi_y)
        .def_readonly("chi_psi", &SusceptibilityPoint::chi_psi)
        .def_readonly("delta_chi", &SusceptibilityPoint::delta_chi)
        .def_readonly("f_abs", &SusceptibilityPoint::f_abs)
        .def_readonly("n_eff", &SusceptibilityPoint::n_eff);

    m.def("chi_components",
          [](const DriveConfig& cfg, const RelaxationParams& r, const PolarizationConfig& p, real delta) {
              return chi_components(cfg, r, p, delta);
          },
          py::arg("cfg"), py::arg("relax"), py::arg("pol"), py::arg("delta"));
    m.def("chi_of_psi", &chi_of_psi, py::arg("chi"), py::arg("psi"), py::arg("delta") = 0.0);
    m.def("im_chi_resonant_analytic", &im_chi_resonant_analytic, py::arg("omega_c"), py::arg("omega_r"),
          py::arg("gamma_ex"), py::arg("psi"), py::arg("gamma_sp") = 1.0);
    m.def("transparency_sin2_analytic", &transparency_sin2_analytic, py::arg("omega_c"), py::arg("omega_r"),
          py::arg("gamma_ex"), py::arg("gamma_sp") = 1.0);
    m.def("non_raman_angle_analytic", &non_raman_angle_analytic, py::arg("omega_c"), py::arg("omega_r"),
          py::arg("gamma_ex"), py::arg("gamma_sp") = 1.0);
    m.def("spectrum_sweep", &spectrum_sweep, py::arg("cfg"), py::arg("relax"), py::arg("pol"),
          py::arg("delta_grid"), py::arg("psi"), py::arg("workers") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("local_minima", &local_minima);

    py::enum_<PlotQuantity>(m, "PlotQuantity")
        .value("chi_psi", PlotQuantity::chi_psi)
        .value("delta_chi", PlotQuantity::delta_chi);

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("omega_c", &ScenarioConfig::omega_c)
        .def_readwrite("omega_r", &ScenarioConfig::omega_r)
        .def_readwrite("psi", &ScenarioConfig::psi)
        .def_readwrite("gamma_ratio", &ScenarioConfig::gamma_ratio)
        .def_readwrite("delta_min", &ScenarioConfig::delta_min)
        .def_readwrite("delta_max", &ScenarioConfig::delta_max)
        .def_readwrite("delta_points", &ScenarioConfig::delta_points)
        .def_readwrite("outputs", &ScenarioConfig::outputs)
        .def_readwrite("preset", &ScenarioConfig::preset)
        .def_readwrite("plot", &ScenarioConfig::plot)
        .def_readwrite("workers", &ScenarioConfig::workers)
        .def_readwrite("psi_points", &ScenarioConfig::psi_points)
        .def_readwrite("probe_amp", &ScenarioConfig::probe_amp)
        .def("validate", &ScenarioConfig::validate)
        .def("sigma", &ScenarioConfig::sigma)
        .def("delta_range", &ScenarioConfig::delta_range)
        .def("delta_grid", &ScenarioConfig::delta_grid)
        .def("polarization", &ScenarioConfig::polarization, py::arg("probe") = 1.0)
        .def("relaxation", &ScenarioConfig::relaxation)
        .def("drive", &ScenarioConfig::drive);

    m.def("preset_names", &preset_names);
    m.def("preset", [](const std::string& name) {
        ScenarioConfig sc;
        apply_preset(sc, name);
        return sc;
    });
    m.def("parse_config", [](const std::string& text) {
        std::istringstream in(text);
        return parse_config(in, "<string>");
    });
    m.def("load_config", &load_config);
    m.def("run_spectrum", &run_spectrum, py::call_guard<py::gil_scoped_release>());
    m.def("format_real", &format_real);
    m.def("spectrum_csv", [](const std::vector<SusceptibilityPoint>& pts) {
        return to_text([&](std::ostream& o) { write_spectrum_csv(o, pts); });
    });
    m.def("spectrum_json", [](const ScenarioConfig& sc, const std::vector<SusceptibilityPoint>& pts) {
        return to_text([&](std::ostream& o) { write_spectrum_json(o, sc, pts); });
    });
    m.def("spectrum_svg", [](const ScenarioConfig& sc, const std::vector<SusceptibilityPoint>& pts) {
        return to_text([&](std::ostream& o) { write_spectrum_svg(o, sc, pts); });
    });
}
