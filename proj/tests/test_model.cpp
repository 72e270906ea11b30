#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "wsdirac/model.hpp"

using wsdirac::PhysParams;
using wsdirac::PotentialSign;

namespace {
const PhysParams kTable{2.0, 10.0, 2.0, 1.0};  // deep-well benchmark set
const PhysParams kFig{1.2, 5.0, 10.0, 0.4};    // wide-barrier set
} // namespace

TEST_CASE("potential profile values", "[model]") {
    // half height at the walls, near-plateau at the center, zero far away
    CHECK(wsdirac::potential(-kTable.L, kTable) ==
          Catch::Approx(kTable.W / 2.0).epsilon(1e-14));
    CHECK(wsdirac::potential(kTable.L, kTable) ==
          Catch::Approx(kTable.W / 2.0).epsilon(1e-14));
    const double center = kTable.W / (std::exp(-kTable.a * kTable.L) + 1.0);
    CHECK(wsdirac::potential(0.0, kTable) ==
          Catch::Approx(center).epsilon(1e-14));
    CHECK(std::abs(wsdirac::potential(-40.0, kTable)) < 1e-12);
    CHECK(std::abs(wsdirac::potential(40.0, kTable)) < 1e-12);
    // well is the exact mirror
    for (double x : {-3.0, -0.5, 0.0, 1.7, 2.5})
        CHECK(wsdirac::potential(x, kTable, PotentialSign::well) ==
              -wsdirac::potential(x, kTable, PotentialSign::barrier));
}

TEST_CASE("potential and mass are continuous at the origin", "[model]") {
    const double d = 1e-8;
    for (const PhysParams& p : {kTable, kFig}) {
        const double vjump = std::abs(wsdirac::potential(d, p) -
                                      wsdirac::potential(-d, p));
        CHECK(vjump < 1e-7 * p.W);
        const double mjump =
            std::abs(wsdirac::mass(d, p) - wsdirac::mass(-d, p));
        CHECK(mjump < 1e-7 * p.m0);
    }
}

TEST_CASE("mass profile values and symmetry", "[model]") {
    const double u = std::exp(-kTable.a * kTable.L);
    CHECK(wsdirac::mass(0.0, kTable) ==
          Catch::Approx(kTable.m0 * u / (1.0 + u)).epsilon(1e-13));
    CHECK(wsdirac::mass(-kTable.L, kTable) ==
          Catch::Approx(kTable.m0 / 2.0).epsilon(1e-14));
    CHECK(wsdirac::mass(30.0, kTable) ==
          Catch::Approx(kTable.m0).epsilon(1e-12));
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> xs(-6.0, 6.0);
    for (int i = 0; i < 200; ++i) {
        const double x = xs(rng);
        const double m = wsdirac::mass(x, kTable);
        CHECK(m > 0.0);
        CHECK(m < kTable.m0 + 1e-15);
        CHECK(m == wsdirac::mass(-x, kTable));
        // the defining link to the barrier: m = m0 (1 - V/W)
        const double v = wsdirac::potential(x, kTable);
        CHECK(std::abs(m - kTable.m0 * (1.0 - v / kTable.W)) <
              1e-12 * kTable.m0);
    }
}

TEST_CASE("left-region mass constraint", "[model]") {
    for (double y : {-1.0, -10.0, -std::exp(-kTable.a * kTable.L)})
        CHECK(std::abs(wsdirac::mass_constraint_residual(y, kTable)) < 1e-12);
    for (double y : {-0.03, -5.0, -200.0})
        CHECK(std::abs(wsdirac::mass_constraint_residual(y, kFig)) < 1e-12);
    CHECK_THROWS_AS(wsdirac::mass_constraint_residual(0.2, kTable),
                    wsdirac::DomainError);
}

TEST_CASE("parameter validation and shape warning", "[model]") {
    CHECK_THROWS_AS(wsdirac::validate(PhysParams{1.0, -1.0, 2.0, 1.0}),
                    wsdirac::DomainError);
    CHECK_THROWS_AS(wsdirac::validate(PhysParams{1.0, 1.0, 0.0, 1.0}),
                    wsdirac::DomainError);
    CHECK_THROWS_AS(wsdirac::validate(PhysParams{1.0, 1.0, 2.0, -0.3}),
                    wsdirac::DomainError);
    CHECK_NOTHROW(wsdirac::validate(kTable));
    CHECK_FALSE(wsdirac::shape_warning(kTable)); // aL = 20
    CHECK(wsdirac::shape_warning(PhysParams{1.0, 2.0, 2.0, 1.0})); // aL = 4
}

TEST_CASE("scattering exponents", "[model]") {
    // E = 2 m0 on the barrier set: k = sqrt(3) m0, all exponents imaginary
    {
        const double E = 0.8;
        const auto ex = wsdirac::scattering_exponents(E, kFig);
        CHECK(ex.mu.real() == 0.0);
        CHECK(ex.mu.imag() == Catch::Approx(-(E - kFig.W) / kFig.a));
        const double k = std::sqrt(E * E - kFig.m0 * kFig.m0);
        CHECK(ex.k.real() == Catch::Approx(k).epsilon(1e-14));
        CHECK(ex.nu.imag() == Catch::Approx(k / kFig.a).epsilon(1e-14));
        CHECK(ex.lambda.imag() ==
              Catch::Approx(std::sqrt(kFig.W * kFig.W - kFig.m0 * kFig.m0) /
                            kFig.a)
                  .epsilon(1e-14));
    }
    // consistency: mu^2 relates to (E-W)^2, nu^2 to k^2
    {
        const double E = 1.9;
        const auto ex = wsdirac::scattering_exponents(E, kTable);
        CHECK(std::abs(ex.mu * ex.mu +
                       std::pow((E - kTable.W) / kTable.a, 2)) < 1e-14);
        // nu = i k / a, so nu^2 a^2 + k^2 = 0
        CHECK(std::abs(ex.nu * ex.nu * kTable.a * kTable.a + ex.k * ex.k) <
              1e-13);
    }
    // degeneracies
    CHECK_THROWS_AS(wsdirac::scattering_exponents(kTable.W, kTable),
                    wsdirac::SingularEnergy);
    CHECK_THROWS_AS(wsdirac::scattering_exponents(kTable.m0, kTable),
                    wsdirac::SingularEnergy);
    CHECK_THROWS_AS(wsdirac::scattering_exponents(-kTable.m0, kTable),
                    wsdirac::SingularEnergy);
    // W = m0 collapses lambda to zero, a valid configuration
    const auto ex0 =
        wsdirac::scattering_exponents(2.0, PhysParams{1.0, 10.0, 2.0, 1.0});
    CHECK(std::abs(ex0.lambda) < 1e-15);
    // sub-gap continuation: nu real negative
    const auto exg = wsdirac::scattering_exponents(0.5, kTable);
    CHECK(exg.nu.imag() == 0.0);
    CHECK(exg.nu.real() < 0.0);
}

TEST_CASE("bound exponents", "[model]") {
    // E = 0: nu = m0/a
    const auto ex0 = wsdirac::bound_exponents(0.0, kTable);
    CHECK(ex0.nu.real() == Catch::Approx(kTable.m0 / kTable.a));
    CHECK(ex0.nu.imag() == 0.0);
    CHECK(ex0.kappa == Catch::Approx(kTable.m0));
    // benchmark ground state
    const auto exg = wsdirac::bound_exponents(-0.633251, kTable);
    CHECK(exg.nu.real() == Catch::Approx(0.0773947).margin(2e-7));
    CHECK(exg.epsilon.imag() ==
          Catch::Approx(-(-0.633251 + kTable.W) / kTable.a));
    // domain and degeneracies
    CHECK_THROWS_AS(wsdirac::bound_exponents(kTable.m0, kTable),
                    wsdirac::SingularEnergy);
    CHECK_THROWS_AS(wsdirac::bound_exponents(1.5, kTable),
                    wsdirac::DomainError);
    CHECK_THROWS_AS(wsdirac::bound_exponents(-2.5, kTable),
                    wsdirac::DomainError);
    // continuation below -m0 (possible since W > m0): nu imaginary
    const auto exc = wsdirac::bound_exponents(-1.5, kTable);
    CHECK(exc.nu.real() == 0.0);
    CHECK(exc.nu.imag() > 0.0);
    CHECK(exc.kappa == 0.0);
}

TEST_CASE("klein range", "[model]") {
    const auto kr = wsdirac::klein_range(kFig); // W = 1.2 > 2 m0 = 0.8
    CHECK(kr.valid);
    CHECK(kr.lo == Catch::Approx(0.4));
    CHECK(kr.hi == Catch::Approx(0.8));
    CHECK_FALSE(wsdirac::klein_range(PhysParams{0.5, 5.0, 10.0, 0.4}).valid);
}
