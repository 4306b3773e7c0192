#pragma once

#include <array>
#include <string_view>
#include <utility>

#include "eit4/model.hpp"

namespace eit4 {

/*
 * Hydrogen realization of the degenerate four-level scheme:
 *   |1>  = |1S, F=1, m=+1>     |1'> = |1S, F=1, m=-1>
 *   |2>  = |1S, F=1, m= 0>     |3>  = |1S, F=0, m= 0>
 *   |4>  = |2P1/2, F=0, m=0>
 * Dipole constants d/hbar and m/hbar are absorbed into the field amplitudes,
 * so field components are quoted directly in Rabi units (units of Gamma).
 */
inline constexpr std::array<std::string_view, kLevels> kHydrogenLabels = {
    "|S,F=1,m=+1>", "|S,F=1,m=-1>", "|S,F=1,m=0>", "|S,F=0,m=0>", "|P,F=0,m=0>"};

/**
 * Probe electric-field and rf magnetic-field components in the x-y plane.
 * Components may be complex (elliptic polarization).
 */
class PolarizationConfig
{
public:
    /// Linear polarizations: rf magnetic field along x, probe field at angle psi from it.
    static PolarizationConfig from_angle(real e_amp, real psi, real h_amp);

    /// General (possibly elliptic) components.
    static PolarizationConfig from_components(complex ex, complex ey, complex hx, complex hy);

    /**
     * Scenario frame used for susceptibility spectra: the rf wave is linearly
     * polarized along x, so its magnetic field points along y; the probe is
     * polarized at angle psi from x. omega_r is |Omega_r| = |Omega_r'|.
     */
    static PolarizationConfig rf_polarized_along_x(real omega_r, real psi, real probe_amp = 1.0);

    complex ex() const { return ex_; }
    complex ey() const { return ey_; }
    complex hx() const { return hx_; }
    complex hy() const { return hy_; }
    real h_norm() const;

    /// Same rf field with the probe components replaced.
    PolarizationConfig with_probe(complex ex, complex ey) const;

private:
    PolarizationConfig(complex ex, complex ey, complex hx, complex hy);

    complex ex_{};
    complex ey_{};
    complex hx_{};
    complex hy_{};
};

/// (Omega_p, Omega_p') = ((Ex + iEy)/sqrt2, (Ex - iEy)/sqrt2).
std::pair<complex, complex> probe_rabi(const PolarizationConfig& p);

/// (Omega_r, Omega_r') = ((Hx + iHy)/sqrt2, (Hx - iHy)/sqrt2).
std::pair<complex, complex> rf_rabi(const PolarizationConfig& p);

/**
 * Dressed Rabi frequencies from the field vectors: Omega_0 from the z
 * component of E x H, Omega from E . conj(H), both divided by |H|.
 * Throws ConfigError when |H| = 0.
 */
std::pair<complex, complex> dressed_rabi_geometric(const PolarizationConfig& p);

/// DriveConfig with probe and rf Rabi frequencies taken from p.
DriveConfig drive_from_polarization(const PolarizationConfig& p, real delta, real omega_c);

} // namespace eit4
