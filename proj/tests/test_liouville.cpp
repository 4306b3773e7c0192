#include <doctest.h>

#include <cmath>
#include <random>

#include "eit4/liouville.hpp"

using namespace eit4;

namespace {

constexpr complex I{0.0, 1.0};

Matrix5 unit(int r, int c)
{
    Matrix5 m = Matrix5::Zero();
    m(r, c) = 1.0;
    return m;
}

Matrix5 random_hermitian(std::mt19937_64& rng)
{
    std::normal_distribution<real> g;
    Matrix5 a;
    for (int i = 0; i < kLevels; ++i)
        for (int j = 0; j < kLevels; ++j)
            a(i, j) = {g(rng), g(rng)};
    return a + a.adjoint();
}

DriveConfig drive(real oc, real orf, real delta)
{
    DriveConfig c;
    c.omega_c = oc;
    c.omega_r = c.omega_r_prime = orf;
    c.delta = delta;
    return c;
}

// Closed-form stationary populations, written out independently.
struct Oracle
{
    real p1, p2, p4;
    complex r42;
};

Oracle oracle(real oc, real g)
{
    const real d = 8 * g + 10 * oc * oc * g + 3 * oc * oc;
    Oracle o;
    o.p1 = (2 * g * (1 + oc * oc) + oc * oc) / d;
    o.p2 = 2 * g * (1 + oc * oc) / d;
    o.p4 = 2 * g * oc * oc / d;
    o.r42 = oc == 0.0 ? complex{} : I * o.p4 / oc;
    return o;
}

} // namespace

TEST_CASE("spontaneous emission rates")
{
    const Superoperator s = spontaneous_superop({});
    Matrix5 out = s.apply(unit(L4, L4));
    CHECK(out(L4, L4) == complex(-1.0));
    for (int b : {L1, L1p, L2, L3})
        CHECK(out(b, b) == complex(0.25));

    out = s.apply(unit(L4, L1));
    CHECK(out(L4, L1) == complex(-0.5));
    CHECK(max_abs(out - out(L4, L1) * unit(L4, L1)) == 0.0);

    CHECK(max_abs(s.apply(unit(L2, L1))) == 0.0);
}

TEST_CASE("spin exchange rates")
{
    RelaxationParams r;
    r.gamma_ex = 0.3;
    const Superoperator s = spin_exchange_superop(r);

    Matrix5 eq = Matrix5::Zero();
    for (int b : {L1, L1p, L2, L3})
        eq(b, b) = 0.25;
    const Matrix5 out = s.apply(eq);
    for (int b : {L1, L1p, L2, L3})
        CHECK(std::abs(out(b, b)) < 1e-16);

    const Matrix5 pair = s.apply(unit(L2, L1) + unit(L1p, L2));
    CHECK(pair(L2, L1) == complex{});
    CHECK(pair(L1p, L2) == complex{});

    CHECK(s(L1p, L1, L1p, L1) == complex(-0.6));
    CHECK(s(L1, L1p, L1, L1p) == complex(-0.6));
    CHECK(s(L3, L2, L3, L2) == complex(-0.3));

    // optical coherences untouched by default
    CHECK(max_abs(s.apply(unit(L4, L1))) == 0.0);
    r.exchange_dephases_optical = true;
    CHECK(spin_exchange_superop(r).apply(unit(L4, L1))(L4, L1) == complex(-0.3));
}

TEST_CASE("coherent part")
{
    CHECK(coherent_superop(Matrix5::Zero()).matrix().cwiseAbs().maxCoeff() == 0.0);

    Matrix5 h = Matrix5::Zero();
    h(L2, L2) = h(L4, L4) = 1.0;
    CHECK(max_abs(coherent_superop(h).apply(unit(L4, L2))) == 0.0);

    // i[h, |2><2|] with h = -Oc/2 (|4><2| + |2><4|) by hand
    const real oc = 3.0;
    h = Matrix5::Zero();
    h(L4, L2) = h(L2, L4) = -0.5 * oc;
    const Matrix5 out = coherent_superop(h).apply(unit(L2, L2));
    Matrix5 expect = Matrix5::Zero();
    expect(L4, L2) = -0.5 * oc * I;
    expect(L2, L4) = 0.5 * oc * I;
    CHECK(max_abs(out - expect) < 1e-15);

    Matrix5 bad = Matrix5::Zero();
    bad(L1, L2) = 1.0;
    CHECK_THROWS_AS(coherent_superop(bad), ConfigError);
}

TEST_CASE("generator properties on random Hermitian inputs")
{
    std::mt19937_64 rng(3);
    const auto trace_row = trace_functional();
    for (int trial = 0; trial < 100; ++trial) {
        const Matrix5 h = random_hermitian(rng);
        RelaxationParams r;
        r.gamma_ex = std::abs(std::normal_distribution<real>()(rng));
        const Superoperator l = liouvillian(h, r);
        CHECK((trace_row * l.matrix()).cwiseAbs().maxCoeff() < 1e-12);

        const Matrix5 x = random_hermitian(rng);
        const Matrix5 y = l.apply(x);
        CHECK(max_abs(y - y.adjoint()) < 1e-12);
        CHECK(std::abs(coherent_superop(h).apply(x).trace()) < 1e-12);
    }
}

TEST_CASE("steady state matches the closed form")
{
    const RelaxationParams r;
    for (real oc : {0.1, 1.0, 4.0}) {
        const Oracle o = oracle(oc, r.gamma_ex);
        for (real orf : {0.0, 0.01, 1.0}) {
            const real sigma = orf / std::sqrt(2.0);
            for (real d : {0.0, sigma, -sigma, 2.0}) {
                const DriveConfig c = drive(oc, orf, d);
                const Matrix5 num = steady_state_numeric(c, r);
                const Matrix5 ana = steady_state_analytic(c, r);
                CHECK(max_abs(num - ana) < 1e-9);

                CHECK(std::abs(num(L1, L1) - o.p1) < 1e-9);
                CHECK(std::abs(num(L1p, L1p) - o.p1) < 1e-9);
                CHECK(std::abs(num(L3, L3) - o.p1) < 1e-9);
                CHECK(std::abs(num(L2, L2) - o.p2) < 1e-9);
                CHECK(std::abs(num(L4, L4) - o.p4) < 1e-9);
                CHECK(std::abs(num(L4, L2) - o.r42) < 1e-9);
                CHECK(std::abs(num.trace() - 1.0) < 1e-12);
            }
        }
    }
}

TEST_CASE("steady state examples")
{
    const RelaxationParams r;
    const Matrix5 fig2 = steady_state_numeric(drive(4.0, 0.0, 0.0), r);
    CHECK(fig2(L4, L4).real() == doctest::Approx(3.2e-3 / 48.0168).epsilon(1e-12));
    CHECK(fig2(L4, L2).imag() == doctest::Approx(fig2(L4, L4).real() / 4.0).epsilon(1e-9));
    CHECK(std::abs(fig2(L4, L2).real()) < 1e-15);

    const Matrix5 ana = steady_state_analytic(drive(1.0, 0.0, 0.0), r);
    CHECK(ana(L2, L2).real() == doctest::Approx(4e-4 / 3.0018).epsilon(1e-12));
    CHECK(std::abs(ana(L2, L4) - (-I * ana(L4, L4))) < 1e-18);

    Matrix5 eq = Matrix5::Zero();
    for (int b : {L1, L1p, L2, L3})
        eq(b, b) = 0.25;
    CHECK(max_abs(steady_state_numeric(drive(0.0, 0.3, 0.1), r) - eq) < 1e-12);
    CHECK(max_abs(steady_state_analytic(drive(0.0, 0.0, 0.0), r) - eq) == 0.0);

    // no pump and no relaxation of the ground manifold
    RelaxationParams frozen;
    frozen.gamma_ex = 0.0;
    std::string warning;
    CHECK(max_abs(steady_state_analytic(drive(0.0, 0.0, 0.0), frozen, &warning) - eq) == 0.0);
    CHECK(!warning.empty());

    for (real oc : {0.0, 0.5, 3.0}) {
        const Matrix5 a = steady_state_analytic(drive(oc, 0.0, 0.0), r);
        CHECK(std::abs(a.trace() - 1.0) < 1e-15);
    }
}

TEST_CASE("steady state positivity")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<real> u(0.0, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        DriveConfig c = drive(u(rng), u(rng), u(rng) - 2.5);
        c.omega_r_prime = {u(rng), u(rng)};
        const Matrix5 rho = steady_state_numeric(c, {});
        Eigen::SelfAdjointEigenSolver<Matrix5> es(rho);
        CHECK(es.eigenvalues().minCoeff() >= -1e-12);
        CHECK(max_abs(rho - rho.adjoint()) < 1e-15);
    }
}

TEST_CASE("constrained solve reports the extra conserved quantity")
{
    const Superoperator l = liouvillian(build_h0(drive(1.0, 0.0, 0.0)), {});
    ConstrainedSolveInfo info;
    solve_constrained(l, Vector25::Zero(), 1.0, &info);
    CHECK(info.used_balance_constraint);
    CHECK(info.generator_rank == 23);

    const Superoperator lr = liouvillian(build_h0(drive(1.0, 0.5, 0.0)), {});
    solve_constrained(lr, Vector25::Zero(), 1.0, &info);
    CHECK(!info.used_balance_constraint);
    CHECK(info.residual < 1e-12);
}

TEST_CASE("linear response")
{
    const RelaxationParams r;
    DriveConfig c = drive(1.0, 0.3, 0.2);
    const Matrix5 rho = steady_state_numeric(c, r);

    CHECK(max_abs(linear_response(c, r, rho).sigma) == 0.0);

    c.omega_p = {0.01, 0.002};
    c.omega_p_prime = {-0.004, 0.003};
    const LinearResponse one = linear_response(c, r, rho);
    CHECK(std::abs(one.sigma.trace()) < 1e-10);
    CHECK(one.residual < 1e-9);

    // the source term is traceless for any V and rho
    const Matrix5 v = build_probe_potential(c);
    CHECK(std::abs((v * rho - rho * v).trace()) < 1e-14);

    // L sigma = i[V, rho]
    const Superoperator l = liouvillian(build_h0(c), r);
    CHECK(max_abs(l.apply(one.sigma) - I * (v * rho - rho * v)) < 1e-12);

    DriveConfig twice = c;
    twice.omega_p *= 2.0;
    twice.omega_p_prime *= 2.0;
    CHECK(max_abs(linear_response(twice, r, rho).sigma - 2.0 * one.sigma) < 1e-14);
}

TEST_CASE("time evolution")
{
    RelaxationParams r;
    const DriveConfig c = drive(4.0, 1.0, 0.0);
    const Matrix5 fixed = steady_state_numeric(c, r);
    CHECK(max_abs(time_evolve(c, r, fixed, 100.0, 0.05) - fixed) < 1e-10);

    // nothing moves with every rate and field off
    DriveConfig off;
    RelaxationParams none;
    none.gamma_ex = 0.0;
    none.gamma_sp = 1e-300;
    Matrix5 rho0 = Matrix5::Zero();
    rho0(L1, L1) = 0.5;
    rho0(L2, L2) = 0.5;
    rho0(L1, L2) = rho0(L2, L1) = 0.3;
    CHECK(max_abs(time_evolve(off, none, rho0, 10.0, 0.1) - rho0) < 1e-15);

    CHECK_THROWS_AS(time_evolve(c, r, rho0, 1.0, 0.0), ConfigError);
    Matrix5 bad = rho0;
    bad(L1, L1) = 2.0;
    CHECK_THROWS_AS(time_evolve(c, r, bad, 1.0, 0.1), ConfigError);
}

TEST_CASE("time evolution converges from several initial states")
{
    // faster relaxation keeps the run short; the full-rate case is an acceptance check
    RelaxationParams r;
    r.gamma_ex = 0.01;
    const DriveConfig c = drive(4.0, 1.0, 0.3);
    const Matrix5 target = steady_state_numeric(c, r);

    Matrix5 a = Matrix5::Zero(), b = Matrix5::Zero(), d = Matrix5::Zero();
    a(L1, L1) = 1.0;
    b(L3, L3) = 1.0;
    d(L2, L2) = d(L4, L4) = 0.5;
    d(L2, L4) = d(L4, L2) = 0.5;
    const real t = 50.0 / r.gamma_ex;
    const Matrix5 ea = time_evolve(c, r, a, t, 0.05);
    const Matrix5 eb = time_evolve(c, r, b, t, 0.05);
    const Matrix5 ed = time_evolve(c, r, d, t, 0.05);
    CHECK(max_abs(ea - eb) < 1e-6);
    CHECK(max_abs(ea - ed) < 1e-6);
    CHECK(max_abs(ea - target) < 1e-6);
}

TEST_CASE("unstable step detected")
{
    const DriveConfig c = drive(4.0, 1.0, 0.0);
    Matrix5 rho0 = Matrix5::Zero();
    rho0(L1, L1) = 1.0;
    CHECK_THROWS_AS(time_evolve(c, {}, rho0, 2000.0, 2.0), SolverError);
    CHECK(recommended_time_step(c) == doctest::Approx(0.0125));
}
