#pragma once

#include <string>

#include "eit4/model.hpp"

namespace eit4 {

struct RelaxationParams
{
    /// Excited-state decay rate; 1 in reduced units.
    real gamma_sp = 1.0;
    /// Ground-state spin-exchange rate.
    real gamma_ex = 1e-4;
    /// Sensitivity switch: let spin exchange also damp the optical coherences rho_4b at rate gamma_ex.
    bool exchange_dephases_optical = false;

    void validate() const;
};

/**
 * Linear map on 5x5 matrices, stored as a 25x25 matrix acting on the
 * column-major vectorization (see vec_index).
 */
class Superoperator
{
public:
    Superoperator() : m_(Matrix25::Zero()) {}
    explicit Superoperator(const Matrix25& m) : m_(m) {}

    template <class Map>
    static Superoperator from_map(Map&& map)
    {
        Matrix25 m;
        for (int k = 0; k < kLiouvilleDim; ++k) {
            Matrix5 basis = Matrix5::Zero();
            basis(k % kLevels, k / kLevels) = 1.0;
            m.col(k) = vectorize(map(basis));
        }
        return Superoperator(m);
    }

    const Matrix25& matrix() const { return m_; }
    complex operator()(int out_row, int out_col, int in_row, int in_col) const
    {
        return m_(vec_index(out_row, out_col), vec_index(in_row, in_col));
    }

    Matrix5 apply(const Matrix5& x) const { return unvectorize(m_ * vectorize(x)); }

    friend Superoperator operator+(const Superoperator& a, const Superoperator& b)
    {
        return Superoperator(a.m_ + b.m_);
    }
    friend Superoperator operator-(const Superoperator& a, const Superoperator& b)
    {
        return Superoperator(a.m_ - b.m_);
    }
    friend Superoperator operator-(const Superoperator& a) { return Superoperator(-a.m_); }

private:
    Matrix25 m_;
};

/// Radiative decay of |4>: equal branching 1/4 into |1>, |1'>, |2>, |3>.
Superoperator spontaneous_superop(const RelaxationParams& r);

/// Linearized spin-exchange relaxation within the ground manifold.
Superoperator spin_exchange_superop(const RelaxationParams& r);

/// X -> i[h, X]. Throws ConfigError if h is not Hermitian.
Superoperator coherent_superop(const Matrix5& h);

/**
 * Generator of the dynamics, d(rho)/dt = L(rho):
 *   L = -i[h, .] + spontaneous + spin exchange.
 */
Superoperator liouvillian(const Matrix5& h, const RelaxationParams& r);

/// Row vector r with r . vec(X) = trace(X).
Eigen::Matrix<complex, 1, kLiouvilleDim> trace_functional();

struct ConstrainedSolveInfo
{
    real residual = 0.0;
    /// Rank of the generator (24 when the stationary state is unique).
    int generator_rank = 0;
    /// True when the trace row replacement alone was singular and the
    /// population-balance constraint was added.
    bool used_balance_constraint = false;
    real condition_estimate = 0.0;
};

/**
 * Solves L x = rhs together with trace(x) = trace_value.
 *
 * The trace constraint replaces the |1><1| equation. When that system is
 * still singular (rf off: rho_11 - rho_1'1' is conserved), the condition
 * rho_11 = rho_1'1' is appended and the minimum-norm solution of the
 * augmented system is returned. Throws SolverError when the constrained
 * residual exceeds tolerance.
 */
Vector25 solve_constrained(const Superoperator& l, const Vector25& rhs, complex trace_value,
                           ConstrainedSolveInfo* info = nullptr, real tolerance = 1e-9);

/// Stationary state of the probe-free system (probe fields in cfg ignored).
Matrix5 steady_state_numeric(const DriveConfig& cfg, const RelaxationParams& r);

/// Closed-form stationary state; rf- and detuning-independent.
Matrix5 steady_state_analytic(const DriveConfig& cfg, const RelaxationParams& r,
                              std::string* warning = nullptr);

struct LinearResponse
{
    Matrix5 sigma;
    real residual = 0.0;
};

/**
 * First-order correction sigma driven by the probe potential V built from
 * cfg's probe Rabi frequencies:  L sigma = i[V, rho],  trace(sigma) = 0.
 */
LinearResponse linear_response(const DriveConfig& cfg, const RelaxationParams& r, const Matrix5& rho);

/// Overload reusing an already assembled probe-free generator.
LinearResponse linear_response(const Superoperator& generator, const Matrix5& probe_potential,
                               const Matrix5& rho);

struct EvolveOptions
{
    /// Abort when |trace - 1| drifts beyond this.
    real max_trace_drift = 1e-6;
};

/**
 * Fixed-step classical RK4 integration of d(rho)/dt = L(rho) with the
 * probe-free generator. The final step is shortened to land on t_final.
 */
Matrix5 time_evolve(const DriveConfig& cfg, const RelaxationParams& r, const Matrix5& rho0, real t_final,
                    real dt, const EvolveOptions& opts = {});

/// Step size bound 0.05 / max(1, Omega_c, Sigma, |Delta|).
real recommended_time_step(const DriveConfig& cfg);

} // namespace eit4
