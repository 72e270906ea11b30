#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>

#include "wsdirac/scattering.hpp"

using namespace wsdirac;
using Catch::Approx;

namespace {

const PhysParams kFigLow{1.2, 5.0, 10.0, 0.4};  // W just under 2m0 + gap top
const PhysParams kFigHigh{4.2, 5.0, 10.0, 0.4}; // tall barrier, wide Klein window

double rel_diff(Complex a, Complex b) {
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

} // namespace

TEST_CASE("coefficient pairs swap under sign reversal of nu") {
    const double E = 0.8;
    ExponentSet ex = scattering_exponents(E, kFigLow);
    ExponentSet flipped = ex;
    flipped.nu = -ex.nu;

    auto c = asymptotic_coefficients(ex, E);
    auto f = asymptotic_coefficients(flipped, E);

    CHECK(rel_diff(f.A, c.B) < 1e-13);
    CHECK(rel_diff(f.B, c.A) < 1e-13);
    CHECK(rel_diff(f.C, c.D) < 1e-13);
    CHECK(rel_diff(f.D, c.C) < 1e-13);
}

TEST_CASE("coefficients collapse to squared denominators when lambda vanishes") {
    // W = m0 makes lambda = 0, so each four-Gamma ratio degenerates to a
    // ratio with a repeated denominator factor.
    PhysParams p{0.4, 5.0, 10.0, 0.4};
    const double E = 0.9;
    ExponentSet ex = scattering_exponents(E, p);
    REQUIRE(std::abs(ex.lambda) < 1e-15);

    auto c = asymptotic_coefficients(ex, E);
    Complex mu = ex.mu, nu = ex.nu;
    Complex a_ref = gamma_ratio({2.0 * mu, 2.0 * nu}, {mu + nu, mu + nu});
    Complex d_ref = gamma_ratio({2.0 - 2.0 * mu, -2.0 * nu},
                                {1.0 - mu - nu, 1.0 - mu - nu});
    CHECK(rel_diff(c.A, a_ref) < 1e-13);
    CHECK(rel_diff(c.D, d_ref) < 1e-13);
}

TEST_CASE("transmission is positive and bounded across the Klein window") {
    KleinRange kr = klein_range(kFigHigh);
    REQUIRE(kr.valid);
    REQUIRE(kr.lo == Approx(0.4));
    REQUIRE(kr.hi == Approx(3.8));

    const int n = 101;
    for (int i = 0; i < n; ++i) {
        const double E = kr.lo + 0.05 + (kr.hi - kr.lo - 0.1) * i / (n - 1);
        auto r = scattering_result(E, kFigHigh);
        INFO("E = " << E);
        CHECK(std::isfinite(r.T));
        CHECK(r.T > 0.0);
        CHECK(r.T <= 1.0 + 1e-12);
        CHECK(r.R >= -1e-12);
        CHECK(std::abs(r.constants.H) >= 1.0 - 1e-12);
    }
}

TEST_CASE("unitarity holds on both barrier profiles") {
    for (const PhysParams& p : {kFigLow, kFigHigh}) {
        KleinRange kr = klein_range(p);
        REQUIRE(kr.valid);
        SweepConfig cfg;
        cfg.kind = SweepKind::energy;
        cfg.from = kr.lo + 1e-3;
        cfg.to = kr.hi - 1e-3;
        cfg.n = 60;
        auto sweep = transmission_sweep(cfg, p);
        REQUIRE(sweep.rows.size() == 60);
        REQUIRE(sweep.skipped.empty());
        double worst = 0.0;
        for (const auto& row : sweep.rows)
            worst = std::max(worst, std::abs(row.unitarity_residual));
        INFO("W = " << p.W);
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("unitarity extends above the barrier and to negative energies") {
    for (double E : {4.5, 6.0, 9.5, -0.6, -2.0, -5.0}) {
        auto r = scattering_result(E, kFigHigh);
        INFO("E = " << E);
        CHECK(std::abs(r.R + r.T - 1.0) < 1e-8);
        CHECK(r.T > 0.0);
    }
}

TEST_CASE("the mass depression scatters even when the barrier vanishes") {
    // The mass profile is tied to the step shape, not to W, so W -> 0 leaves
    // a pure mass well that still reflects at low energy.
    PhysParams p{1e-8, 5.0, 10.0, 0.4};
    double t_half = transmission(0.5, p);
    double t_one = transmission(1.0, p);
    double t_three = transmission(3.0, p);
    CHECK(t_half < 0.7);
    CHECK(t_half < t_one);
    CHECK(t_one < t_three);
    CHECK(std::abs(t_three - 1.0) < 1e-3);
}

TEST_CASE("high energies pass unimpeded") {
    auto r = scattering_result(20.0, kFigLow);
    CHECK(std::abs(r.T - 1.0) < 1e-9);
    CHECK(r.R < 1e-12);
}

TEST_CASE("transmission approaches one at the Klein edge for the tall barrier") {
    // With the depleted central mass the window edge E = W - m0 is not a
    // threshold: T stays near unity just below it.
    PhysParams p{8.0, 5.0, 10.0, 0.5};
    const double E = p.W - p.m0 - 1e-3 * p.W;
    auto r = scattering_result(E, p);
    CHECK(r.T > 0.99);
}

TEST_CASE("transmission resonances reach near-unit values") {
    PhysParams p{1.2, 5.0, 10.0, 0.25};
    double max_t = 0.0;
    const int n = 500;
    for (int i = 1; i < n; ++i) {
        const double E = 0.26 + (0.94 - 0.26) * i / n;
        try {
            max_t = std::max(max_t, transmission(E, p));
        } catch (const Error&) {
        }
    }
    CHECK(max_t > 0.999);
}

TEST_CASE("energies inside the gap or on singular lines are rejected") {
    CHECK_THROWS_AS(scattering_result(0.3, kFigLow), DomainError);
    CHECK_THROWS_AS(scattering_result(-0.39, kFigLow), DomainError);
    CHECK_THROWS_AS(scattering_result(kFigLow.W, kFigLow), SingularEnergy);
    CHECK_THROWS_AS(scattering_result(kFigLow.m0, kFigLow), DomainError);
    try {
        scattering_result(kFigLow.W, kFigLow);
        FAIL("expected SingularEnergy");
    } catch (const SingularEnergy& s) {
        CHECK(s.E == Approx(kFigLow.W));
    }
}

TEST_CASE("sweeps skip refused points instead of aborting") {
    // Range straddles the gap: sub-gap nodes are skipped, the rest computed.
    SweepConfig cfg;
    cfg.from = 0.1;
    cfg.to = 0.7;
    cfg.n = 13;
    auto sweep = transmission_sweep(cfg, kFigLow);
    CHECK(sweep.rows.size() + sweep.skipped.size() == 13);
    CHECK(!sweep.rows.empty());
    CHECK(!sweep.skipped.empty());
    for (double s : sweep.skipped) CHECK(s <= kFigLow.m0 + 1e-12);
    for (const auto& row : sweep.rows) CHECK(row.abscissa > kFigLow.m0);
}

TEST_CASE("degenerate and empty sweep requests") {
    SweepConfig cfg;
    cfg.n = 0;
    CHECK(transmission_sweep(cfg, kFigLow).rows.empty());

    cfg.n = 5;
    cfg.from = cfg.to = 0.8;
    auto one = transmission_sweep(cfg, kFigLow);
    REQUIRE(one.rows.size() == 1);
    CHECK(one.rows[0].T == Approx(transmission(0.8, kFigLow)));

    // single point sitting exactly on the barrier line is skipped, not fatal
    cfg.from = cfg.to = kFigLow.W;
    auto skipped = transmission_sweep(cfg, kFigLow);
    CHECK(skipped.rows.empty());
    REQUIRE(skipped.skipped.size() == 1);
    CHECK(skipped.skipped[0] == Approx(kFigLow.W));
}

TEST_CASE("barrier sweeps vary W at fixed energy") {
    SweepConfig cfg;
    cfg.kind = SweepKind::barrier;
    cfg.from = 0.45;
    cfg.to = 1.15;
    cfg.n = 30;
    cfg.fixed_energy = 0.8;
    auto sweep = transmission_sweep(cfg, kFigLow);
    REQUIRE(sweep.rows.size() == 30);
    CHECK(sweep.skipped.empty());
    for (const auto& row : sweep.rows) {
        INFO("W = " << row.abscissa);
        CHECK(std::abs(row.unitarity_residual) < 1e-8);
        CHECK(row.T > 0.0);
        PhysParams q = kFigLow;
        q.W = row.abscissa;
        CHECK(row.T == Approx(transmission(0.8, q)).epsilon(1e-12));
    }
}
