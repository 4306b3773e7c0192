#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eit4/model.hpp"
#include "eit4/spectroscopy.hpp"

namespace eit4 {

enum class PlotQuantity { chi_psi, delta_chi };

/**
 * One run of the command-line harness. Frequencies in units of Gamma,
 * psi in radians measured from the rf polarization axis (x).
 */
struct ScenarioConfig
{
    real omega_c = 1.0;
    real omega_r = 0.0;
    real psi = 0.0;
    real gamma_ratio = 1e-4;
    std::optional<real> delta_min;
    std::optional<real> delta_max;
    int delta_points = 801;
    std::vector<std::string> outputs{"csv"};
    std::string preset;
    PlotQuantity plot = PlotQuantity::chi_psi;
    unsigned workers = 1;
    int psi_points = 91;
    /// |Omega_p| for the dark-state analysis.
    real probe_amp = 0.1;

    void validate() const;

    /// Light shift of the scenario rf field.
    real sigma() const;
    /// Explicit bounds if set, otherwise [-2 Sigma - 1, 2 Sigma + 1].
    std::pair<real, real> delta_range() const;
    std::vector<real> delta_grid() const;

    PolarizationConfig polarization(real probe = 1.0) const;
    RelaxationParams relaxation() const;
    DriveConfig drive(real delta) const;
};

std::vector<std::string> preset_names();

/// Overwrites the fields the named preset defines. Throws ConfigError for unknown names.
void apply_preset(ScenarioConfig& sc, const std::string& name);

/**
 * Reads a flat "key = value" file ('#' starts a comment). A `preset` key is
 * applied after the remaining keys are read, overriding the fields it defines.
 */
ScenarioConfig parse_config(std::istream& in, const std::string& source = "<config>");
ScenarioConfig load_config(const std::filesystem::path& path);

// --- runs -------------------------------------------------------------------

std::vector<SusceptibilityPoint> run_spectrum(const ScenarioConfig& sc);

struct DarkStateScan
{
    std::vector<real> deltas;
    std::vector<DarkStateReport> reports;
};

DarkStateScan run_darkstates(const ScenarioConfig& sc, const std::vector<real>& deltas);

struct AngleScan
{
    std::vector<real> psi;
    std::vector<real> im_chi;
    ChiComponents components;
    std::optional<real> numeric_root;
    std::optional<real> analytic_root;
    real analytic_sin2 = 0.0;
    std::optional<real> relative_difference;
    std::string message;
};

AngleScan run_angle_scan(const ScenarioConfig& sc);

struct SteadyComparison
{
    Matrix5 numeric;
    Matrix5 analytic;
    real max_difference = 0.0;
    real min_eigenvalue = 0.0;
    std::string warning;
};

SteadyComparison run_steady(const ScenarioConfig& sc);

// --- emitters ---------------------------------------------------------------

/// 17 significant digits, scientific notation.
std::string format_real(real value);

void write_spectrum_csv(std::ostream& out, const std::vector<SusceptibilityPoint>& points);
void write_spectrum_json(std::ostream& out, const ScenarioConfig& sc, const std::vector<SusceptibilityPoint>& points);
void write_spectrum_svg(std::ostream& out, const ScenarioConfig& sc, const std::vector<SusceptibilityPoint>& points);
void write_darkstates_json(std::ostream& out, const ScenarioConfig& sc, const DarkStateScan& scan);
void write_angle_scan_csv(std::ostream& out, const AngleScan& scan);
void write_angle_scan_json(std::ostream& out, const ScenarioConfig& sc, const AngleScan& scan);
void write_steady_json(std::ostream& out, const ScenarioConfig& sc, const SteadyComparison& steady);

struct Series
{
    std::string label;
    std::vector<real> x;
    std::vector<real> y;
    bool dashed = false;
};

/// Self-contained SVG line chart.
void write_svg_chart(std::ostream& out, const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<Series>& series);

} // namespace eit4
