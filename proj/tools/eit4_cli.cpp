// eit4: command-line front end for the four-level EIT simulator.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "eit4/scenario.hpp"

namespace fs = std::filesystem;
using namespace eit4;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kSolverError = 2;

struct Overrides
{
    std::string config;
    std::string out = "out";
    std::vector<std::string> formats;
    std::optional<double> omega_c, omega_r, psi, gamma_ratio, delta_min, delta_max, probe_amp;
    std::optional<int> delta_points, psi_points;
    std::optional<unsigned> workers;
};

void add_common(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--config", o.config, "Scenario file (key = value lines)");
    cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
    cmd->add_option("--format", o.formats, "Output format, repeatable")
        ->check(CLI::IsMember({"csv", "json", "svg"}))
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    cmd->add_option("--omega-c", o.omega_c, "Coupling Rabi frequency (units of Gamma)");
    cmd->add_option("--omega-r", o.omega_r, "rf Rabi frequency (units of Gamma)");
    cmd->add_option("--psi", o.psi, "Probe angle to the rf polarization axis (rad)");
    cmd->add_option("--gamma-ratio", o.gamma_ratio, "Spin-exchange rate over Gamma");
    cmd->add_option("--delta-min", o.delta_min, "Lower detuning bound");
    cmd->add_option("--delta-max", o.delta_max, "Upper detuning bound");
    cmd->add_option("--delta-points", o.delta_points, "Number of detuning points");
    cmd->add_option("--psi-points", o.psi_points, "Number of angles for angle-scan");
    cmd->add_option("--probe-amp", o.probe_amp, "Probe Rabi amplitude for darkstates");
    cmd->add_option("--workers", o.workers, "Worker threads for sweeps")->check(CLI::PositiveNumber);
}

ScenarioConfig resolve(const Overrides& o, const std::string& preset)
{
    ScenarioConfig sc = o.config.empty() ? ScenarioConfig{} : load_config(o.config);
    if (!preset.empty())
        apply_preset(sc, preset);
    auto set = [](auto& field, const auto& opt) {
        if (opt)
            field = *opt;
    };
    set(sc.omega_c, o.omega_c);
    set(sc.omega_r, o.omega_r);
    set(sc.psi, o.psi);
    set(sc.gamma_ratio, o.gamma_ratio);
    set(sc.delta_points, o.delta_points);
    set(sc.psi_points, o.psi_points);
    set(sc.probe_amp, o.probe_amp);
    set(sc.workers, o.workers);
    if (o.delta_min)
        sc.delta_min = *o.delta_min;
    if (o.delta_max)
        sc.delta_max = *o.delta_max;
    if (!o.formats.empty())
        sc.outputs = o.formats;
    sc.validate();
    return sc;
}

bool wants(const ScenarioConfig& sc, const std::string& fmt)
{
    return std::find(sc.outputs.begin(), sc.outputs.end(), fmt) != sc.outputs.end();
}

void emit(const fs::path& dir, const std::string& name, const std::function<void(std::ostream&)>& body)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write " + path.string());
    body(out);
    out.flush();
    if (!out)
        throw ConfigError("write failed for " + path.string());
    std::cout << "wrote " << path.string() << '\n';
}

void cmd_spectrum(const ScenarioConfig& sc, const fs::path& dir, const std::string& stem)
{
    const auto points = run_spectrum(sc);
    if (wants(sc, "csv"))
        emit(dir, stem + ".csv", [&](std::ostream& o) { write_spectrum_csv(o, points); });
    if (wants(sc, "json"))
        emit(dir, stem + ".json", [&](std::ostream& o) { write_spectrum_json(o, sc, points); });
    if (wants(sc, "svg"))
        emit(dir, stem + ".svg", [&](std::ostream& o) { write_spectrum_svg(o, sc, points); });
}

void cmd_darkstates(const ScenarioConfig& sc, const fs::path& dir)
{
    const DarkStateScan scan = run_darkstates(sc, sc.delta_grid());
    std::size_t raman = 0, non_raman = 0;
    for (const auto& rep : scan.reports) {
        raman += rep.count(DarkKind::raman);
        non_raman += rep.count(DarkKind::non_raman);
    }
    for (const auto& w : scan.reports.front().warnings)
        std::cerr << "warning: " << w << '\n';
    std::cout << "detunings: " << scan.deltas.size() << ", raman records: " << raman
              << ", non_raman records: " << non_raman << '\n';
    emit(dir, "darkstates.json", [&](std::ostream& o) { write_darkstates_json(o, sc, scan); });
}

void cmd_angle_scan(const ScenarioConfig& sc, const fs::path& dir)
{
    const AngleScan scan = run_angle_scan(sc);
    if (scan.numeric_root)
        std::cout << "numeric root psi = " << format_real(*scan.numeric_root) << '\n';
    if (scan.analytic_root)
        std::cout << "analytic root psi = " << format_real(*scan.analytic_root) << '\n';
    if (scan.relative_difference)
        std::cout << "relative difference = " << format_real(*scan.relative_difference) << '\n';
    if (!scan.message.empty())
        std::cout << scan.message << '\n';
    if (wants(sc, "csv"))
        emit(dir, "angle_scan.csv", [&](std::ostream& o) { write_angle_scan_csv(o, scan); });
    if (wants(sc, "json"))
        emit(dir, "angle_scan.json", [&](std::ostream& o) { write_angle_scan_json(o, sc, scan); });
    if (wants(sc, "svg"))
        emit(dir, "angle_scan.svg", [&](std::ostream& o) {
            write_svg_chart(o, "Im chi at zero detuning", "psi (rad)", "Im chi / lambda",
                            {Series{"Im chi(psi)", scan.psi, scan.im_chi, false}});
        });
}

void cmd_steady(const ScenarioConfig& sc, const fs::path& dir)
{
    const SteadyComparison steady = run_steady(sc);
    if (!steady.warning.empty())
        std::cerr << "warning: " << steady.warning << '\n';
    std::cout << "max |numeric - analytic| = " << format_real(steady.max_difference) << '\n'
              << "min eigenvalue = " << format_real(steady.min_eigenvalue) << '\n';
    emit(dir, "steady.json", [&](std::ostream& o) { write_steady_json(o, sc, steady); });
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Four-level EIT simulator: spectra, dark states and steady states"};
    app.require_subcommand(1);

    Overrides spectrum_o, dark_o, angle_o, steady_o, preset_o;
    std::string preset_name;

    auto* spectrum = app.add_subcommand("spectrum", "Susceptibility spectrum over the detuning grid");
    add_common(spectrum, spectrum_o);
    auto* dark = app.add_subcommand("darkstates", "Dark-state classification over the detuning grid");
    add_common(dark, dark_o);
    auto* angle = app.add_subcommand("angle-scan", "Im chi(psi) at zero detuning and the transparency angle");
    add_common(angle, angle_o);
    auto* steady = app.add_subcommand("steady", "Numeric against closed-form steady state");
    add_common(steady, steady_o);
    auto* preset = app.add_subcommand("preset", "Spectrum for a named scenario");
    preset->add_option("name", preset_name, "fig2a | fig2b | fig3a | fig3b")->required();
    add_common(preset, preset_o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (spectrum->parsed()) {
            cmd_spectrum(resolve(spectrum_o, {}), spectrum_o.out, "spectrum");
        } else if (dark->parsed()) {
            cmd_darkstates(resolve(dark_o, {}), dark_o.out);
        } else if (angle->parsed()) {
            cmd_angle_scan(resolve(angle_o, {}), angle_o.out);
        } else if (steady->parsed()) {
            cmd_steady(resolve(steady_o, {}), steady_o.out);
        } else if (preset->parsed()) {
            cmd_spectrum(resolve(preset_o, preset_name), preset_o.out, preset_name);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const SweepError& e) {
        std::cerr << "solver error: " << e.what() << "\nfailed detunings:";
        for (real d : e.failed_deltas())
            std::cerr << ' ' << format_real(d);
        std::cerr << '\n';
        return kSolverError;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kSolverError;
    }
    return kOk;
}
