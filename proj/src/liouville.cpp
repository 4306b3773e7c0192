#include "eit4/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

namespace eit4 {

namespace {

constexpr complex kI{0.0, 1.0};
constexpr int kGround[] = {L1, L1p, L2, L3};

using wide_complex = std::complex<long double>;
using WideMatrix25 = Eigen::Matrix<wide_complex, kLiouvilleDim, kLiouvilleDim>;
using WideMatrix = Eigen::Matrix<wide_complex, Eigen::Dynamic, Eigen::Dynamic>;
using WideVector = Eigen::Matrix<wide_complex, Eigen::Dynamic, 1>;

Eigen::Matrix<complex, 1, kLiouvilleDim> balance_functional()
{
    Eigen::Matrix<complex, 1, kLiouvilleDim> row = Eigen::Matrix<complex, 1, kLiouvilleDim>::Zero();
    row(vec_index(L1, L1)) = 1.0;
    row(vec_index(L1p, L1p)) = -1.0;
    return row;
}

} // namespace

void RelaxationParams::validate() const
{
    if (!(gamma_sp > 0.0) || !std::isfinite(gamma_sp))
        throw ConfigError("gamma_sp must be positive and finite");
    if (!(gamma_ex >= 0.0) || !std::isfinite(gamma_ex))
        throw ConfigError("gamma_ex must be non-negative and finite");
}

Superoperator spontaneous_superop(const RelaxationParams& r)
{
    r.validate();
    const real g = r.gamma_sp;
    return Superoperator::from_map([g](const Matrix5& s) {
        Matrix5 out = Matrix5::Zero();
        out(L4, L4) = -g * s(L4, L4);
        for (int b : kGround) {
            out(b, b) = 0.25 * g * s(L4, L4);
            out(L4, b) = -0.5 * g * s(L4, b);
            out(b, L4) = -0.5 * g * s(b, L4);
        }
        return out;
    });
}

Superoperator spin_exchange_superop(const RelaxationParams& r)
{
    r.validate();
    const real g = r.gamma_ex;
    const bool optical = r.exchange_dephases_optical;
    return Superoperator::from_map([g, optical](const Matrix5& s) {
        Matrix5 out = Matrix5::Zero();
        const complex p1 = s(L1, L1), p1p = s(L1p, L1p), p2 = s(L2, L2), p3 = s(L3, L3);
        out(L1, L1) = -0.5 * g * (p1 + p1p - p2 - p3);
        out(L1p, L1p) = -0.5 * g * (p1 + p1p - p2 - p3);
        out(L2, L2) = -0.5 * g * (3.0 * p2 - p1p - p1 - p3);
        out(L3, L3) = -0.5 * g * (3.0 * p3 - p1p - p1 - p2);

        // sigma_21 pairs with sigma_1'2; the conjugate pair is (sigma_12, sigma_21').
        out(L2, L1) = -g * (s(L2, L1) - s(L1p, L2));
        out(L1p, L2) = -g * (s(L1p, L2) - s(L2, L1));
        out(L1, L2) = -g * (s(L1, L2) - s(L2, L1p));
        out(L2, L1p) = -g * (s(L2, L1p) - s(L1, L2));

        out(L1p, L1) = -2.0 * g * s(L1p, L1);
        out(L1, L1p) = -2.0 * g * s(L1, L1p);

        for (int a : {L1, L1p, L2}) {
            out(L3, a) = -g * s(L3, a);
            out(a, L3) = -g * s(a, L3);
        }
        if (optical) {
            for (int b : kGround) {
                out(L4, b) = -g * s(L4, b);
                out(b, L4) = -g * s(b, L4);
            }
        }
        return out;
    });
}

Superoperator coherent_superop(const Matrix5& h)
{
    if (!h.allFinite() || !is_hermitian(h, 1e-14 * std::max<real>(1.0, max_abs(h))))
        throw ConfigError("coherent_superop requires a Hermitian matrix");
    return Superoperator::from_map([&h](const Matrix5& x) -> Matrix5 { return kI * (h * x - x * h); });
}

Superoperator liouvillian(const Matrix5& h, const RelaxationParams& r)
{
    return spontaneous_superop(r) + spin_exchange_superop(r) - coherent_superop(h);
}

Eigen::Matrix<complex, 1, kLiouvilleDim> trace_functional()
{
    Eigen::Matrix<complex, 1, kLiouvilleDim> row = Eigen::Matrix<complex, 1, kLiouvilleDim>::Zero();
    for (int i = 0; i < kLevels; ++i)
        row(vec_index(i, i)) = 1.0;
    return row;
}

Vector25 solve_constrained(const Superoperator& l, const Vector25& rhs, complex trace_value,
                           ConstrainedSolveInfo* info, real tolerance)
{
    const Matrix25& gen = l.matrix();
    const auto trace_row = trace_functional();
    constexpr int replaced = vec_index(L1, L1);

    Matrix25 bordered = gen;
    bordered.row(replaced) = trace_row;
    Vector25 b = rhs;
    b(replaced) = trace_value;

    // Nearly conserved modes (weak rf, zero detuning) push the condition
    // number to ~1e7; factoring in extended precision keeps the symmetry-zero
    // entries of the solution at roundoff level.
    ConstrainedSolveInfo local;
    Vector25 x;
    Eigen::FullPivLU<WideMatrix25> lu(bordered.cast<wide_complex>());
    lu.setThreshold(1e-13);
    local.condition_estimate = static_cast<real>(lu.rcond());
    if (lu.rank() == kLiouvilleDim) {
        x = lu.solve(b.cast<wide_complex>()).cast<complex>();
        local.generator_rank = kLiouvilleDim - 1;
    } else {
        WideMatrix augmented(kLiouvilleDim + 2, kLiouvilleDim);
        augmented.topRows(kLiouvilleDim) = gen.cast<wide_complex>();
        augmented.row(kLiouvilleDim) = trace_row.cast<wide_complex>();
        augmented.row(kLiouvilleDim + 1) = balance_functional().cast<wide_complex>();
        WideVector b_aug = WideVector::Zero(kLiouvilleDim + 2);
        b_aug.head(kLiouvilleDim) = rhs.cast<wide_complex>();
        b_aug(kLiouvilleDim) = trace_value;

        Eigen::CompleteOrthogonalDecomposition<WideMatrix> cod(augmented);
        cod.setThreshold(1e-13);
        x = cod.solve(b_aug).cast<complex>();
        Eigen::FullPivLU<Matrix25> gen_lu(gen);
        gen_lu.setThreshold(1e-13);
        local.generator_rank = static_cast<int>(gen_lu.rank());
        local.used_balance_constraint = true;
    }

    const real scale = std::max<real>(1.0, rhs.cwiseAbs().maxCoeff());
    local.residual = std::max((gen * x - rhs).cwiseAbs().maxCoeff(), std::abs((trace_row * x)(0) - trace_value));
    if (info)
        *info = local;
    if (!x.allFinite() || local.residual > tolerance * scale) {
        std::ostringstream msg;
        msg << "constrained solve failed: residual " << local.residual << ", rcond " << local.condition_estimate
            << ", generator rank " << local.generator_rank;
        throw SolverError(msg.str());
    }
    return x;
}

Matrix5 steady_state_numeric(const DriveConfig& cfg, const RelaxationParams& r)
{
    const Superoperator l = liouvillian(build_h0(cfg), r);
    const Vector25 x = solve_constrained(l, Vector25::Zero(), 1.0);
    Matrix5 rho = unvectorize(x);
    rho = 0.5 * (rho + rho.adjoint()).eval();

    Eigen::SelfAdjointEigenSolver<Matrix5> spectrum(rho, Eigen::EigenvaluesOnly);
    if (spectrum.eigenvalues().minCoeff() < -1e-12)
        throw SolverError("steady state is not positive semidefinite");
    return rho;
}

Matrix5 steady_state_analytic(const DriveConfig& cfg, const RelaxationParams& r, std::string* warning)
{
    cfg.validate();
    r.validate();
    const real big = r.gamma_sp;
    const real g = r.gamma_ex;
    const real oc2 = cfg.omega_c * cfg.omega_c;
    const real denom = 8.0 * big * big * g + 10.0 * oc2 * g + 3.0 * big * oc2;

    Matrix5 rho = Matrix5::Zero();
    if (denom == 0.0) {
        if (warning)
            *warning = "no coupling field and no spin exchange: stationary state not unique, using equipartition";
        for (int b : kGround)
            rho(b, b) = 0.25;
        return rho;
    }
    const real p1 = (2.0 * g * (big * big + oc2) + oc2 * big) / denom;
    const real p2 = 2.0 * g * (big * big + oc2) / denom;
    const real p4 = 2.0 * g * oc2 / denom;
    rho(L1, L1) = p1;
    rho(L1p, L1p) = p1;
    rho(L3, L3) = p1;
    rho(L2, L2) = p2;
    rho(L4, L4) = p4;
    // i (Gamma / Omega_c) rho_44 with the Omega_c factor cancelled
    const complex coherence = kI * (2.0 * g * big * cfg.omega_c / denom);
    rho(L4, L2) = coherence;
    rho(L2, L4) = std::conj(coherence);
    return rho;
}

LinearResponse linear_response(const Superoperator& generator, const Matrix5& probe_potential, const Matrix5& rho)
{
    const Matrix5 source = kI * (probe_potential * rho - rho * probe_potential);
    const real scale = std::max<real>(1e-300, max_abs(source));
    if (std::abs(source.trace()) > 1e-12 * scale)
        throw SolverError("probe source term is not traceless");

    LinearResponse out;
    if (max_abs(source) == 0.0) {
        out.sigma = Matrix5::Zero();
        return out;
    }
    ConstrainedSolveInfo info;
    Vector25 x;
    try {
        x = solve_constrained(generator, vectorize(source), 0.0, &info);
    } catch (const SolverError& e) {
        throw SolverError(std::string("ill-conditioned response solve: ") + e.what());
    }
    out.sigma = unvectorize(x);
    out.residual = info.residual;
    return out;
}

LinearResponse linear_response(const DriveConfig& cfg, const RelaxationParams& r, const Matrix5& rho)
{
    return linear_response(liouvillian(build_h0(cfg), r), build_probe_potential(cfg), rho);
}

real recommended_time_step(const DriveConfig& cfg)
{
    const real scale = std::max({1.0, cfg.omega_c, light_shift(cfg), std::abs(cfg.delta)});
    return 0.05 / scale;
}

namespace {

// One classical RK4 step applied column-wise to the identity: the exact
// one-step propagator of the linear autonomous system.
Matrix25 rk4_propagator(const Matrix25& l, real h)
{
    const Matrix25 id = Matrix25::Identity();
    const Matrix25 k1 = l;
    const Matrix25 k2 = l * (id + 0.5 * h * k1);
    const Matrix25 k3 = l * (id + 0.5 * h * k2);
    const Matrix25 k4 = l * (id + h * k3);
    return id + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

} // namespace

Matrix5 time_evolve(const DriveConfig& cfg, const RelaxationParams& r, const Matrix5& rho0, real t_final, real dt,
                    const EvolveOptions& opts)
{
    if (!(dt > 0.0) || !(t_final >= 0.0) || !std::isfinite(t_final))
        throw ConfigError("time_evolve needs dt > 0 and finite t_final >= 0");
    if (!is_hermitian(rho0, 1e-12) || std::abs(rho0.trace() - 1.0) > 1e-12)
        throw ConfigError("initial state must be Hermitian with unit trace");

    const Matrix25 l = liouvillian(build_h0(cfg), r).matrix();
    const auto steps = static_cast<long long>(std::floor(t_final / dt));
    const real remainder = t_final - static_cast<real>(steps) * dt;
    const Matrix25 step = rk4_propagator(l, dt);
    const auto trace_row = trace_functional();

    auto check = [&](const Vector25& v, real t) {
        const real drift = std::abs((trace_row * v)(0) - 1.0);
        if (!(drift <= opts.max_trace_drift)) {
            std::ostringstream msg;
            msg << "RK4 integration unstable at t=" << t << ": trace drift " << drift << " (dt=" << dt << ")";
            throw SolverError(msg.str());
        }
    };

    Vector25 v = vectorize(rho0);
    Vector25 next;
    constexpr long long kCheckEvery = 1024;
    for (long long n = 1; n <= steps; ++n) {
        next.noalias() = step * v;
        v = next;
        if (n % kCheckEvery == 0)
            check(v, static_cast<real>(n) * dt);
    }
    if (remainder > 0.0)
        v = rk4_propagator(l, remainder) * v;
    check(v, t_final);
    return unvectorize(v);
}

} // namespace eit4
