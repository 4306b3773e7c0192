#include "eit4/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace eit4 {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

real parse_real(const std::string& key, const std::string& value)
{
    std::size_t used = 0;
    real out = 0.0;
    try {
        out = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ConfigError("invalid number for '" + key + "': " + value);
    }
    if (used != value.size() || !std::isfinite(out))
        throw ConfigError("invalid number for '" + key + "': " + value);
    return out;
}

int parse_int(const std::string& key, const std::string& value)
{
    const real v = parse_real(key, value);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw ConfigError("expected an integer for '" + key + "': " + value);
    return static_cast<int>(v);
}

std::vector<std::string> split_list(const std::string& value)
{
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
        if (auto t = trim(item); !t.empty())
            out.push_back(t);
    return out;
}

} // namespace

void ScenarioConfig::validate() const
{
    if (!std::isfinite(omega_c) || omega_c < 0.0)
        throw ConfigError("omega_c must be finite and non-negative");
    if (!std::isfinite(omega_r) || omega_r < 0.0)
        throw ConfigError("omega_r must be finite and non-negative");
    if (!std::isfinite(psi))
        throw ConfigError("psi must be finite");
    if (!(gamma_ratio > 0.0) || !std::isfinite(gamma_ratio))
        throw ConfigError("gamma_ratio must be positive");
    if (delta_points < 2)
        throw ConfigError("delta_points must be at least 2");
    if (psi_points < 2)
        throw ConfigError("psi_points must be at least 2");
    const auto [lo, hi] = delta_range();
    if (!(lo < hi))
        throw ConfigError("delta_min must be smaller than delta_max");
    if (!(probe_amp >= 0.0) || !std::isfinite(probe_amp))
        throw ConfigError("probe_amp must be non-negative");
    for (const auto& fmt : outputs)
        if (fmt != "csv" && fmt != "json" && fmt != "svg")
            throw ConfigError("unknown output format: " + fmt);
}

real ScenarioConfig::sigma() const { return omega_r / std::sqrt(2.0); }

std::pair<real, real> ScenarioConfig::delta_range() const
{
    const real half = 2.0 * sigma() + 1.0;
    return {delta_min.value_or(-half), delta_max.value_or(half)};
}

std::vector<real> ScenarioConfig::delta_grid() const
{
    const auto [lo, hi] = delta_range();
    std::vector<real> grid(static_cast<std::size_t>(delta_points));
    const real step = (hi - lo) / static_cast<real>(delta_points - 1);
    for (int i = 0; i < delta_points; ++i)
        grid[static_cast<std::size_t>(i)] = lo + step * static_cast<real>(i);
    grid.back() = hi;
    return grid;
}

PolarizationConfig ScenarioConfig::polarization(real probe) const
{
    return PolarizationConfig::rf_polarized_along_x(omega_r, psi, probe);
}

RelaxationParams ScenarioConfig::relaxation() const
{
    RelaxationParams r;
    r.gamma_sp = 1.0;
    r.gamma_ex = gamma_ratio;
    return r;
}

DriveConfig ScenarioConfig::drive(real delta) const
{
    return drive_from_polarization(polarization(probe_amp), delta, omega_c);
}

std::vector<std::string> preset_names() { return {"fig2a", "fig2b", "fig3a", "fig3b"}; }

void apply_preset(ScenarioConfig& sc, const std::string& name)
{
    constexpr real half_pi = 0.5 * std::numbers::pi;
    struct Preset
    {
        real omega_c, omega_r, psi;
        PlotQuantity plot;
    };
    static const std::map<std::string, Preset> presets = {
        {"fig2a", {4.0, 0.0, 0.0, PlotQuantity::chi_psi}},
        {"fig2b", {4.0, 1.0, half_pi, PlotQuantity::chi_psi}},
        {"fig3a", {1.0, 0.1, half_pi, PlotQuantity::delta_chi}},
        {"fig3b", {0.1, 0.01, half_pi, PlotQuantity::delta_chi}},
    };
    const auto it = presets.find(name);
    if (it == presets.end())
        throw ConfigError("unknown preset: " + name);
    sc.preset = name;
    sc.omega_c = it->second.omega_c;
    sc.omega_r = it->second.omega_r;
    sc.psi = it->second.psi;
    sc.plot = it->second.plot;
    sc.gamma_ratio = 1e-4;
    sc.delta_min.reset();
    sc.delta_max.reset();
    sc.delta_points = 801;
}

ScenarioConfig parse_config(std::istream& in, const std::string& source)
{
    ScenarioConfig sc;
    std::string preset;
    std::map<std::string, std::function<void(const std::string&)>> setters = {
        {"omega_c", [&](const std::string& v) { sc.omega_c = parse_real("omega_c", v); }},
        {"omega_r", [&](const std::string& v) { sc.omega_r = parse_real("omega_r", v); }},
        {"psi", [&](const std::string& v) { sc.psi = parse_real("psi", v); }},
        {"gamma_ratio", [&](const std::string& v) { sc.gamma_ratio = parse_real("gamma_ratio", v); }},
        {"delta_min", [&](const std::string& v) { sc.delta_min = parse_real("delta_min", v); }},
        {"delta_max", [&](const std::string& v) { sc.delta_max = parse_real("delta_max", v); }},
        {"delta_points", [&](const std::string& v) { sc.delta_points = parse_int("delta_points", v); }},
        {"psi_points", [&](const std::string& v) { sc.psi_points = parse_int("psi_points", v); }},
        {"probe_amp", [&](const std::string& v) { sc.probe_amp = parse_real("probe_amp", v); }},
        {"workers",
         [&](const std::string& v) {
             const int w = parse_int("workers", v);
             if (w < 1)
                 throw ConfigError("workers must be >= 1");
             sc.workers = static_cast<unsigned>(w);
         }},
        {"outputs", [&](const std::string& v) { sc.outputs = split_list(v); }},
        {"plot",
         [&](const std::string& v) {
             if (v == "chi_psi")
                 sc.plot = PlotQuantity::chi_psi;
             else if (v == "delta_chi")
                 sc.plot = PlotQuantity::delta_chi;
             else
                 throw ConfigError("plot must be chi_psi or delta_chi");
         }},
        {"preset", [&](const std::string& v) { preset = v; }},
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end())
            throw ConfigError(source + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        it->second(value);
    }
    if (!preset.empty())
        apply_preset(sc, preset);
    return sc;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    return parse_config(in, path.string());
}

std::vector<SusceptibilityPoint> run_spectrum(const ScenarioConfig& sc)
{
    sc.validate();
    return spectrum_sweep(sc.drive(0.0), sc.relaxation(), sc.polarization(), sc.delta_grid(), sc.psi, sc.workers);
}

DarkStateScan run_darkstates(const ScenarioConfig& sc, const std::vector<real>& deltas)
{
    sc.validate();
    DarkStateScan scan;
    scan.deltas = deltas;
    scan.reports.reserve(deltas.size());
    for (real d : deltas)
        scan.reports.push_back(find_dark_states(sc.drive(d)));
    return scan;
}

AngleScan run_angle_scan(const ScenarioConfig& sc)
{
    sc.validate();
    const DriveConfig base = sc.drive(0.0);
    const RelaxationParams r = sc.relaxation();
    const PolarizationConfig p = sc.polarization();

    AngleScan scan;
    scan.components = chi_components(base, r, p, 0.0);
    const real half_pi = 0.5 * std::numbers::pi;
    for (int i = 0; i < sc.psi_points; ++i) {
        const real psi = half_pi * static_cast<real>(i) / static_cast<real>(sc.psi_points - 1);
        scan.psi.push_back(psi);
        scan.im_chi.push_back(chi_of_psi(scan.components, psi).chi_psi.imag());
    }

    scan.analytic_sin2 = transparency_sin2_analytic(sc.omega_c, sc.omega_r, sc.gamma_ratio);
    std::ostringstream msg;
    try {
        scan.analytic_root = non_raman_angle_analytic(sc.omega_c, sc.omega_r, sc.gamma_ratio);
    } catch (const NoTransparencyAngle& e) {
        msg << "no transparency angle (perturbative sin^2 psi = " << format_real(e.rhs()) << ")";
    } catch (const ConfigError&) {
        msg << "no transparency angle (perturbative sin^2 psi undefined)";
    }
    try {
        scan.numeric_root = find_transparency_angle(base, r, p, sc.omega_r).psi;
    } catch (const NoTransparencyAngle&) {
        if (msg.str().empty())
            msg << "no transparency angle in numeric scan";
    }
    if (scan.numeric_root && scan.analytic_root)
        scan.relative_difference = (*scan.numeric_root - *scan.analytic_root) / *scan.analytic_root;
    scan.message = msg.str();
    return scan;
}

SteadyComparison run_steady(const ScenarioConfig& sc)
{
    sc.validate();
    const DriveConfig cfg = sc.drive(0.0);
    SteadyComparison out;
    out.numeric = steady_state_numeric(cfg, sc.relaxation());
    out.analytic = steady_state_analytic(cfg, sc.relaxation(), &out.warning);
    out.max_difference = max_abs(out.numeric - out.analytic);
    Eigen::SelfAdjointEigenSolver<Matrix5> eig(out.numeric, Eigen::EigenvaluesOnly);
    out.min_eigenvalue = eig.eigenvalues().minCoeff();
    return out;
}

} // namespace eit4
