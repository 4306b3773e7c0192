#include "eit4/geometry.hpp"

#include <cmath>

namespace eit4 {

namespace {

constexpr complex kI{0.0, 1.0};

bool finite(complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace

PolarizationConfig::PolarizationConfig(complex ex, complex ey, complex hx, complex hy)
    : ex_(ex), ey_(ey), hx_(hx), hy_(hy)
{
    if (!finite(ex) || !finite(ey) || !finite(hx) || !finite(hy))
        throw ConfigError("polarization components must be finite");
}

PolarizationConfig PolarizationConfig::from_angle(real e_amp, real psi, real h_amp)
{
    if (!(e_amp >= 0.0) || !(h_amp >= 0.0) || !std::isfinite(psi))
        throw ConfigError("field amplitudes must be non-negative and psi finite");
    return {e_amp * std::cos(psi), e_amp * std::sin(psi), h_amp, 0.0};
}

PolarizationConfig PolarizationConfig::from_components(complex ex, complex ey, complex hx, complex hy)
{
    return {ex, ey, hx, hy};
}

PolarizationConfig PolarizationConfig::rf_polarized_along_x(real omega_r, real psi, real probe_amp)
{
    if (!(omega_r >= 0.0) || !(probe_amp >= 0.0) || !std::isfinite(psi))
        throw ConfigError("field amplitudes must be non-negative and psi finite");
    const real e = std::sqrt(2.0) * probe_amp;
    return {e * std::cos(psi), e * std::sin(psi), 0.0, std::sqrt(2.0) * omega_r};
}

real PolarizationConfig::h_norm() const { return std::sqrt(std::norm(hx_) + std::norm(hy_)); }

PolarizationConfig PolarizationConfig::with_probe(complex ex, complex ey) const
{
    return {ex, ey, hx_, hy_};
}

std::pair<complex, complex> probe_rabi(const PolarizationConfig& p)
{
    const real s = 1.0 / std::sqrt(2.0);
    return {s * (p.ex() + kI * p.ey()), s * (p.ex() - kI * p.ey())};
}

std::pair<complex, complex> rf_rabi(const PolarizationConfig& p)
{
    const real s = 1.0 / std::sqrt(2.0);
    return {s * (p.hx() + kI * p.hy()), s * (p.hx() - kI * p.hy())};
}

std::pair<complex, complex> dressed_rabi_geometric(const PolarizationConfig& p)
{
    const real h = p.h_norm();
    if (!(h > 0.0))
        throw ConfigError("rf field required");
    const complex omega0 = kI * (p.ey() * p.hx() - p.ex() * p.hy()) / h;
    const complex omega = (p.ex() * std::conj(p.hx()) + p.ey() * std::conj(p.hy())) / h;
    return {omega0, omega};
}

DriveConfig drive_from_polarization(const PolarizationConfig& p, real delta, real omega_c)
{
    DriveConfig cfg;
    cfg.delta = delta;
    cfg.omega_c = omega_c;
    std::tie(cfg.omega_p, cfg.omega_p_prime) = probe_rabi(p);
    std::tie(cfg.omega_r, cfg.omega_r_prime) = rf_rabi(p);
    cfg.validate();
    return cfg;
}

} // namespace eit4
