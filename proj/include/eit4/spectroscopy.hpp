#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "eit4/geometry.hpp"
#include "eit4/liouville.hpp"

namespace eit4 {

/*
 * Susceptibilities are reported in units of lambda = sqrt(2) rho d^2 / (hbar Gamma).
 * With Rabi-unit fields (d/hbar = 1) the polarization amplitudes
 *   Px ~ sigma_41' + sigma_41,   Py ~ i (sigma_41' - sigma_41)
 * give chi_a / lambda = sqrt(2) Gamma P_a / E_a, where E_a is the probe
 * component in Rabi units. Derived quantities (F, epsilon, k) treat the
 * numbers as if lambda = 1.
 */

struct ChiComponents
{
    complex chi_x{};
    complex chi_y{};
    /// |P_y| / |P_x| for the x-polarized solve and vice versa.
    real cross_x = 0.0;
    real cross_y = 0.0;
};

struct SusceptibilityPoint
{
    real delta = 0.0;
    real psi = 0.0;
    complex chi_x{};
    complex chi_y{};
    complex chi_psi{};
    complex delta_chi{};
    real f_abs = 0.0;
    real n_eff = 1.0;
};

struct DispersionPoint
{
    real n_eff = 1.0;
    real k2_exact = 1.0;
    real phi_psi_ratio = -1.0;
};

struct ChiOptions
{
    /// |Omega_p| used for the two aligned solves; cancels in chi.
    real probe_amp = 1e-3;
    real cross_tolerance = 1e-10;
};

/**
 * Diagonal susceptibility tensor at one detuning. Only omega_c is read from
 * cfg_base; the rf field comes from p and the probe is replaced by two
 * aligned solves (along x and along y). Throws SolverError("anisotropy model
 * violated") when either solve shows a cross-polarized response.
 */
ChiComponents chi_components(const DriveConfig& cfg_base, const RelaxationParams& r, const PolarizationConfig& p,
                             real delta, const ChiOptions& opts = {});

SusceptibilityPoint chi_of_psi(const ChiComponents& chi, real psi, real delta = 0.0);

/// 8 pi^2 Im chi(psi).
real absorption_F(const SusceptibilityPoint& point);

/// Transparent-medium propagation quantities; imaginary parts are dropped.
DispersionPoint dispersion(const SusceptibilityPoint& point, real psi);

/// Resonant Im chi(psi)/lambda to second order in Omega_r/Omega_c (rf along its polarization axis).
real im_chi_resonant_analytic(real omega_c, real omega_r, real gamma_ex, real psi, real gamma_sp = 1.0);

/// sin^2 of the predicted transparency angle (may exceed 1).
real transparency_sin2_analytic(real omega_c, real omega_r, real gamma_ex, real gamma_sp = 1.0);

class NoTransparencyAngle : public std::domain_error
{
public:
    NoTransparencyAngle(const std::string& what, real rhs) : std::domain_error(what), rhs_(rhs) {}
    real rhs() const { return rhs_; }

private:
    real rhs_;
};

/// Throws NoTransparencyAngle when sin^2 > 1, ConfigError when it is not positive.
real non_raman_angle_analytic(real omega_c, real omega_r, real gamma_ex, real gamma_sp = 1.0);

struct TransparencyRoot
{
    real psi = 0.0;
    /// -Im chi(0) / Im delta_chi from the same components.
    real sin2_decomposition = 0.0;
    ChiComponents components;
    int iterations = 0;
};

/**
 * Bisection root of psi -> Im chi(psi) at zero detuning, to 1e-8 in psi.
 * Throws NoTransparencyAngle when Im chi does not change sign over the bracket.
 */
TransparencyRoot non_raman_angle_numeric(const DriveConfig& cfg_base, const RelaxationParams& r,
                                         const PolarizationConfig& p, std::pair<real, real> bracket);

/**
 * Same root, starting from a narrow bracket around the perturbative
 * prediction and widening towards [0, pi/2] until Im chi changes sign.
 */
TransparencyRoot find_transparency_angle(const DriveConfig& cfg_base, const RelaxationParams& r,
                                         const PolarizationConfig& p, real omega_r);

class SweepError : public SolverError
{
public:
    SweepError(const std::string& what, std::vector<real> deltas) : SolverError(what), deltas_(std::move(deltas)) {}
    const std::vector<real>& failed_deltas() const { return deltas_; }

private:
    std::vector<real> deltas_;
};

/// One chi_components + chi_of_psi per grid point, distributed over `workers` threads; input order kept.
std::vector<SusceptibilityPoint> spectrum_sweep(const DriveConfig& cfg_base, const RelaxationParams& r,
                                                const PolarizationConfig& p, const std::vector<real>& delta_grid,
                                                real psi, unsigned workers = 1);

/// Indices of strict three-point local minima.
std::vector<std::size_t> local_minima(const std::vector<real>& values);

} // namespace eit4
