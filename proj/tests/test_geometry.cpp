#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "eit4/geometry.hpp"

using namespace eit4;

namespace {

constexpr complex I{0.0, 1.0};
constexpr real kPi = std::numbers::pi;
const real kSqrt2 = std::sqrt(2.0);

bool close(complex a, complex b, real tol = 1e-15) { return std::abs(a - b) <= tol; }

} // namespace

TEST_CASE("probe rabi")
{
    auto [p, pp] = probe_rabi(PolarizationConfig::from_angle(kSqrt2, 0.0, 1.0));
    CHECK(close(p, 1.0));
    CHECK(close(pp, 1.0));

    std::tie(p, pp) = probe_rabi(PolarizationConfig::from_angle(kSqrt2, kPi / 2, 1.0));
    CHECK(close(p, I));
    CHECK(close(pp, -I));

    std::tie(p, pp) = probe_rabi(PolarizationConfig::from_angle(0.0, 1.3, 1.0));
    CHECK(p == complex{});
    CHECK(pp == complex{});
}

TEST_CASE("rf rabi")
{
    auto [r, rp] = rf_rabi(PolarizationConfig::from_components(0.0, 0.0, kSqrt2, 0.0));
    CHECK(close(r, 1.0));
    CHECK(close(rp, 1.0));

    std::tie(r, rp) = rf_rabi(PolarizationConfig::from_components(0.0, 0.0, 0.0, kSqrt2));
    CHECK(close(r, I));
    CHECK(close(rp, -I));

    std::tie(r, rp) = rf_rabi(PolarizationConfig::from_components(1.0, 0.0, 0.0, 0.0));
    CHECK(r == complex{});
    CHECK(rp == complex{});
}

TEST_CASE("angle form matches the exponential form")
{
    for (real psi : {0.0, 0.4, 1.1, 2.9, -0.7}) {
        const real e = 0.37;
        const auto [p, pp] = probe_rabi(PolarizationConfig::from_angle(e, psi, 2.0));
        CHECK(close(p, e / kSqrt2 * std::exp(I * psi), 1e-15));
        CHECK(close(pp, e / kSqrt2 * std::exp(-I * psi), 1e-15));
    }
}

TEST_CASE("dressed rabi from field vectors")
{
    const real e = 0.8;
    auto [o0, o] = dressed_rabi_geometric(PolarizationConfig::from_angle(e, 0.0, 1.0));
    CHECK(close(o0, 0.0));
    CHECK(close(o, e));

    std::tie(o0, o) = dressed_rabi_geometric(PolarizationConfig::from_angle(e, kPi / 2, 1.0));
    CHECK(close(o, 0.0, 1e-15));
    CHECK(close(o0, I * e));

    for (real psi = -kPi; psi <= kPi; psi += 0.05) {
        std::tie(o0, o) = dressed_rabi_geometric(PolarizationConfig::from_angle(1.0, psi, 3.0));
        CHECK(std::abs(o0) == doctest::Approx(std::abs(std::sin(psi))).epsilon(1e-14));
        CHECK(std::abs(o) == doctest::Approx(std::abs(std::cos(psi))).epsilon(1e-14));
    }

    CHECK_THROWS_WITH_AS(dressed_rabi_geometric(PolarizationConfig::from_angle(1.0, 0.2, 0.0)),
                         "rf field required", ConfigError);
}

TEST_CASE("non-Raman geometry zeros")
{
    for (int k = -4; k <= 4; ++k) {
        const real psi = k * kPi / 4;
        const auto [o0, o] = dressed_rabi_geometric(PolarizationConfig::from_angle(1.0, psi, 1.0));
        const bool sin_zero = k % 4 == 0;
        const bool cos_zero = (k + 2) % 4 == 0;
        CHECK((std::abs(o0) < 1e-15) == sin_zero);
        CHECK((std::abs(o) < 1e-15) == cos_zero);
    }
}

TEST_CASE("geometric and dressed-basis couplings agree")
{
    std::mt19937_64 rng(11);
    std::normal_distribution<real> g;
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = PolarizationConfig::from_components({g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)},
                                                           {g(rng), g(rng)});
        const auto [o0, o] = dressed_rabi_geometric(p);
        const DressedBasis b = dressed_basis(drive_from_polarization(p, 0.0, 1.0));
        const real scale = std::max(std::abs(o0), std::abs(o));
        CHECK(std::abs(o0 - b.omega0) <= 1e-12 * scale);
        CHECK(std::abs(o - b.omega) <= 1e-12 * scale);

        // unit H: the probe intensity splits between the two channels
        const real e2 = std::norm(p.ex()) + std::norm(p.ey());
        CHECK(std::abs(std::norm(o0) + std::norm(o) - e2) <= 1e-12 * e2);
    }
}

TEST_CASE("scenario frame: rf wave polarized along x")
{
    const auto p = PolarizationConfig::rf_polarized_along_x(0.1, 0.3, 2.0);
    CHECK(p.hx() == complex{});
    CHECK(p.h_norm() == doctest::Approx(0.1 * kSqrt2));
    const auto [r, rp] = rf_rabi(p);
    CHECK(std::abs(r) == doctest::Approx(0.1));
    CHECK(std::abs(rp) == doctest::Approx(0.1));
    CHECK(std::sqrt(std::norm(p.ex()) + std::norm(p.ey())) == doctest::Approx(2.0 * kSqrt2));

    const auto q = p.with_probe(1.0, 0.0);
    CHECK(q.hy() == p.hy());
    CHECK(q.ex() == complex(1.0));
}

TEST_CASE("drive from polarization")
{
    const auto p = PolarizationConfig::from_angle(kSqrt2, 0.0, kSqrt2);
    const DriveConfig c = drive_from_polarization(p, 0.25, 3.0);
    CHECK(c.delta == 0.25);
    CHECK(c.omega_c == 3.0);
    CHECK(close(c.omega_p, 1.0));
    CHECK(close(c.omega_r_prime, 1.0));
}

TEST_CASE("non-finite components rejected")
{
    CHECK_THROWS_AS(PolarizationConfig::from_angle(NAN, 0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(PolarizationConfig::from_components(0.0, 0.0, INFINITY, 0.0), ConfigError);
    CHECK_THROWS_AS(PolarizationConfig::from_angle(-1.0, 0.0, 1.0), ConfigError);
}

TEST_CASE("hydrogen labels")
{
    CHECK(kHydrogenLabels[L4] == "|P,F=0,m=0>");
    CHECK(kHydrogenLabels[L3] == "|S,F=0,m=0>");
}
