#pragma once

#include <array>
#include <string>
#include <vector>

#include "eit4/types.hpp"

namespace eit4 {

/**
 * Field amplitudes and probe detuning, all in units of the excited-state
 * decay rate. The coupling Rabi frequency is real and non-negative; rf and
 * probe Rabi frequencies may be complex (polarization phases).
 */
struct DriveConfig
{
    real delta = 0.0;
    real omega_c = 0.0;
    complex omega_r{};
    complex omega_r_prime{};
    complex omega_p{};
    complex omega_p_prime{};

    /// Throws ConfigError on non-finite entries or negative omega_c.
    void validate() const;

    bool probe_off() const { return omega_p == complex{} && omega_p_prime == complex{}; }
    bool rf_off() const { return omega_r == complex{} && omega_r_prime == complex{}; }
};

using Vector3 = Eigen::Matrix<complex, 3, 1>;

/**
 * Eigenbasis of the "atom + rf field" block over (|1>, |1'>, |3>).
 *
 * |-> has energy -sigma, |0> energy 0, |+> energy +sigma. The probe couples
 * |4> to |0> with omega0 and to (|+> + |->)/sqrt(2) with omega.
 */
struct DressedBasis
{
    real sigma = 0.0;
    Vector3 minus;
    Vector3 zero;
    Vector3 plus;
    complex omega0{};
    complex omega{};

    /// Embeds a dressed 3-vector into the 5-level basis.
    static Vector5 embed(const Vector3& v);
};

Matrix5 build_hamiltonian(const DriveConfig& cfg);

/// Hamiltonian without the probe terms ("atom + coupling + rf").
Matrix5 build_h0(const DriveConfig& cfg);

/// Probe potential V = -1/2 (Op |4><1| + O'p |4><1'| + h.c.).
Matrix5 build_probe_potential(const DriveConfig& cfg);

/// rf light shift: half the norm of (omega_r, omega_r_prime).
real light_shift(const DriveConfig& cfg);

/// Throws ConfigError when the rf field is off.
DressedBasis dressed_basis(const DriveConfig& cfg);

enum class DarkKind { raman, non_raman, bright };

std::string to_string(DarkKind kind);

struct DarkStateRecord
{
    real eigenvalue = 0.0;
    Vector5 eigenvector;
    real excited_overlap = 0.0;
    DarkKind kind = DarkKind::bright;
};

struct DarkStateReport
{
    std::vector<DarkStateRecord> records;
    std::vector<std::string> warnings;

    std::size_t count(DarkKind kind) const;
    bool has_dark() const { return count(DarkKind::raman) + count(DarkKind::non_raman) > 0; }
};

struct DarkStateOptions
{
    real dark_tolerance = 1e-10;
    /// Detuning offset used to tell Raman from non-Raman dark states.
    real delta_probe_step = 0.1;
    /// Eigenvalues closer than this (times the Hamiltonian scale) share an eigenspace.
    real degeneracy_tolerance = 1e-9;
};

/**
 * Diagonalizes the full Hamiltonian and flags eigenvectors orthogonal to |4>.
 *
 * Within each degenerate eigenspace the basis is rotated so that all excited
 * character sits in one vector; the remaining directions are dark. A dark
 * direction that survives a +/- delta_probe_step change of the detuning is
 * non-Raman, otherwise Raman.
 */
DarkStateReport find_dark_states(const DriveConfig& cfg, const DarkStateOptions& opts = {});

} // namespace eit4
