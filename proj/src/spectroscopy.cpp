#include "eit4/spectroscopy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

namespace eit4 {

namespace {

constexpr complex kI{0.0, 1.0};
constexpr real kPi = std::numbers::pi;

struct ProbeSolve
{
    complex px;
    complex py;
};

ProbeSolve polarization_amplitudes(const Superoperator& generator, const Matrix5& rho, const DriveConfig& probe)
{
    const LinearResponse resp = linear_response(generator, build_probe_potential(probe), rho);
    const complex s41 = resp.sigma(L4, L1);
    const complex s41p = resp.sigma(L4, L1p);
    return {s41p + s41, kI * (s41p - s41)};
}

real relative(complex cross, complex main)
{
    const real denom = std::abs(main);
    if (denom == 0.0)
        return std::abs(cross) == 0.0 ? 0.0 : std::numeric_limits<real>::infinity();
    return std::abs(cross) / denom;
}

} // namespace

ChiComponents chi_components(const DriveConfig& cfg_base, const RelaxationParams& r, const PolarizationConfig& p,
                             real delta, const ChiOptions& opts)
{
    if (!(opts.probe_amp > 0.0))
        throw ConfigError("probe amplitude must be positive");
    const real gamma = r.gamma_sp;
    const real field = std::sqrt(2.0) * opts.probe_amp;

    const PolarizationConfig px = p.with_probe(field, 0.0);
    const PolarizationConfig py = p.with_probe(0.0, field);
    const DriveConfig cfg_x = drive_from_polarization(px, delta, cfg_base.omega_c);
    const DriveConfig cfg_y = drive_from_polarization(py, delta, cfg_base.omega_c);

    // cfg_x and cfg_y share H0
    const Superoperator generator = liouvillian(build_h0(cfg_x), r);
    const Vector25 stationary = solve_constrained(generator, Vector25::Zero(), 1.0);
    Matrix5 rho = unvectorize(stationary);
    rho = 0.5 * (rho + rho.adjoint()).eval();

    const ProbeSolve along_x = polarization_amplitudes(generator, rho, cfg_x);
    const ProbeSolve along_y = polarization_amplitudes(generator, rho, cfg_y);

    ChiComponents out;
    out.chi_x = std::sqrt(2.0) * gamma * along_x.px / field;
    out.chi_y = std::sqrt(2.0) * gamma * along_y.py / field;
    out.cross_x = relative(along_x.py, along_x.px);
    out.cross_y = relative(along_y.px, along_y.py);
    if (out.cross_x > opts.cross_tolerance || out.cross_y > opts.cross_tolerance) {
        std::ostringstream msg;
        msg << "anisotropy model violated: cross-polarized response " << std::max(out.cross_x, out.cross_y)
            << " at delta=" << delta;
        throw SolverError(msg.str());
    }
    return out;
}

SusceptibilityPoint chi_of_psi(const ChiComponents& chi, real psi, real delta)
{
    const real c2 = std::cos(psi) * std::cos(psi);
    const real s2 = std::sin(psi) * std::sin(psi);
    SusceptibilityPoint pt;
    pt.delta = delta;
    pt.psi = psi;
    pt.chi_x = chi.chi_x;
    pt.chi_y = chi.chi_y;
    pt.chi_psi = chi.chi_x * c2 + chi.chi_y * s2;
    pt.delta_chi = chi.chi_y - chi.chi_x;
    pt.f_abs = absorption_F(pt);
    pt.n_eff = 1.0 + 2.0 * kPi * pt.chi_psi.real();
    return pt;
}

real absorption_F(const SusceptibilityPoint& point)
{
    const real c2 = std::cos(point.psi) * std::cos(point.psi);
    const real s2 = std::sin(point.psi) * std::sin(point.psi);
    return 8.0 * kPi * kPi * (point.chi_x * c2 + point.chi_y * s2).imag();
}

DispersionPoint dispersion(const SusceptibilityPoint& point, real psi)
{
    const real c2 = std::cos(psi) * std::cos(psi);
    const real s2 = std::sin(psi) * std::sin(psi);
    const real eps_x = 1.0 + 4.0 * kPi * point.chi_x.real();
    const real eps_y = 1.0 + 4.0 * kPi * point.chi_y.real();
    const real denom = eps_x * c2 + eps_y * s2;
    if (std::abs(denom) < 1e-12 || std::abs(eps_y) < 1e-12)
        throw SolverError("propagation singular");

    DispersionPoint out;
    out.k2_exact = (eps_x * eps_x * c2 + eps_y * eps_y * s2) / denom;
    out.n_eff = 1.0 + 2.0 * kPi * (point.chi_x.real() * c2 + point.chi_y.real() * s2);
    out.phi_psi_ratio = -eps_x / eps_y;
    return out;
}

real im_chi_resonant_analytic(real omega_c, real omega_r, real gamma_ex, real psi, real gamma_sp)
{
    const real big = gamma_sp;
    const real g = gamma_ex;
    const real oc2 = omega_c * omega_c;
    const real prefactor = 4.0 * g * big * big / (8.0 * g * big * big + 3.0 * oc2 * big + 10.0 * oc2 * g);
    const real ratio = (big * oc2 - 2.0 * g * oc2 + 4.0 * big * big * g) / (g * (oc2 + 2.0 * big * g));
    const real s = std::sin(psi);
    return prefactor * (ratio * (omega_r * omega_r / oc2) * s * s - 1.0);
}

real transparency_sin2_analytic(real omega_c, real omega_r, real gamma_ex, real gamma_sp)
{
    const real big = gamma_sp;
    const real g = gamma_ex;
    const real oc2 = omega_c * omega_c;
    return g * (oc2 + 2.0 * big * g) / (big * oc2 - 2.0 * g * oc2 + 4.0 * big * big * g) * oc2
           / (omega_r * omega_r);
}

real non_raman_angle_analytic(real omega_c, real omega_r, real gamma_ex, real gamma_sp)
{
    const real rhs = transparency_sin2_analytic(omega_c, omega_r, gamma_ex, gamma_sp);
    if (std::isnan(rhs) || !(rhs > 0.0))
        throw ConfigError("transparency angle undefined for these parameters");
    if (rhs > 1.0) {
        std::ostringstream msg;
        msg << "no transparency angle: rf field too weak (sin^2 psi = " << rhs << ")";
        throw NoTransparencyAngle(msg.str(), rhs);
    }
    return std::asin(std::sqrt(rhs));
}

namespace {

TransparencyRoot bisect_components(const ChiComponents& chi, std::pair<real, real> bracket)
{
    auto im_chi = [&chi](real psi) { return chi_of_psi(chi, psi).chi_psi.imag(); };
    real lo = bracket.first;
    real hi = bracket.second;
    real f_lo = im_chi(lo);
    const real f_hi = im_chi(hi);
    if (!(f_lo * f_hi <= 0.0) || (f_lo == 0.0 && f_hi == 0.0))
        throw NoTransparencyAngle("no non-Raman resonance in bracket", std::numeric_limits<real>::quiet_NaN());

    TransparencyRoot out;
    while (hi - lo > 1e-8 && out.iterations < 200) {
        const real mid = 0.5 * (lo + hi);
        const real f_mid = im_chi(mid);
        if ((f_mid <= 0.0) == (f_lo <= 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        ++out.iterations;
    }
    out.psi = 0.5 * (lo + hi);
    out.components = chi;
    out.sin2_decomposition = -chi.chi_x.imag() / (chi.chi_y - chi.chi_x).imag();
    return out;
}

} // namespace

TransparencyRoot non_raman_angle_numeric(const DriveConfig& cfg_base, const RelaxationParams& r,
                                         const PolarizationConfig& p, std::pair<real, real> bracket)
{
    if (!(bracket.first < bracket.second))
        throw ConfigError("bracket must satisfy lo < hi");
    return bisect_components(chi_components(cfg_base, r, p, 0.0), bracket);
}

TransparencyRoot find_transparency_angle(const DriveConfig& cfg_base, const RelaxationParams& r,
                                         const PolarizationConfig& p, real omega_r)
{
    const ChiComponents chi = chi_components(cfg_base, r, p, 0.0);
    real center = 0.25 * kPi;
    const real rhs = transparency_sin2_analytic(cfg_base.omega_c, omega_r, r.gamma_ex, r.gamma_sp);
    if (rhs > 0.0 && rhs <= 1.0)
        center = std::asin(std::sqrt(rhs));
    for (real half = 0.01; ; half *= 2.0) {
        const real lo = std::max(0.0, center - half);
        const real hi = std::min(0.5 * kPi, center + half);
        try {
            return bisect_components(chi, {lo, hi});
        } catch (const NoTransparencyAngle&) {
            if (lo == 0.0 && hi == 0.5 * kPi)
                throw NoTransparencyAngle("no transparency angle", rhs);
        }
    }
}

std::vector<SusceptibilityPoint> spectrum_sweep(const DriveConfig& cfg_base, const RelaxationParams& r,
                                                const PolarizationConfig& p, const std::vector<real>& delta_grid,
                                                real psi, unsigned workers)
{
    for (real d : delta_grid)
        if (!std::isfinite(d))
            throw ConfigError("detuning grid must be finite");

    const std::size_t n = delta_grid.size();
    std::vector<SusceptibilityPoint> out(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};

    auto work = [&]() {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                out[i] = chi_of_psi(chi_components(cfg_base, r, p, delta_grid[i]), psi, delta_grid[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const unsigned pool = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
    if (pool == 1) {
        work();
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(pool);
        for (unsigned t = 0; t < pool; ++t)
            threads.emplace_back(work);
    }

    std::vector<real> failed;
    std::string first_message;
    for (std::size_t i = 0; i < n; ++i) {
        if (!errors[i])
            continue;
        failed.push_back(delta_grid[i]);
        if (first_message.empty()) {
            try {
                std::rethrow_exception(errors[i]);
            } catch (const std::exception& e) {
                first_message = e.what();
            }
        }
    }
    if (!failed.empty()) {
        std::ostringstream msg;
        msg << failed.size() << " sweep point(s) failed, first at delta=" << failed.front() << ": " << first_message;
        throw SweepError(msg.str(), std::move(failed));
    }
    return out;
}

std::vector<std::size_t> local_minima(const std::vector<real>& values)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < values.size(); ++i)
        if (values[i] < values[i - 1] && values[i] < values[i + 1])
            out.push_back(i);
    return out;
}

} // namespace eit4
