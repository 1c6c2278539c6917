#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dnls/fourier.hpp"
#include "dnls/jost.hpp"
#include "dnls/soliton.hpp"

using namespace dnls;

TEST_CASE("profile point values") {
    CHECK(soliton_profile(SolitonParams(1.0, 0.0), 0.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(soliton_profile(SolitonParams(0.0, 1.0), 0.0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("profile solves the standing-wave equation") {
    // -phi'' + E phi + (c/2) phi^3 - (3/16) phi^5 = 0, derivative taken spectrally
    Grid g(30.0, 2048);
    for (SolitonParams p : {SolitonParams(1.0, 0.0), SolitonParams(1.0, 1.0)}) {
        std::vector<cplx> phi(g.N);
        for (int j = 0; j < g.N; ++j) phi[j] = soliton_profile(p, g.x(j));
        auto d1 = derivative(g, phi);
        auto d2 = derivative(g, d1);
        double worst = 0.0;
        for (int j = 0; j < g.N; ++j) {
            const double v = phi[j].real();
            worst = std::max(worst, std::abs(-d2[j].real() + p.E * v + 0.5 * p.c * v * v * v -
                                             (3.0 / 16.0) * v * v * v * v * v));
        }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("profile is even") {
    for (SolitonParams p : {SolitonParams(1.0, 0.0), SolitonParams(1.0, 1.0), SolitonParams(0.0, 2.0)})
        for (double x : {0.3, 1.7, 4.0})
            CHECK(std::abs(soliton_profile(p, x) - soliton_profile(p, -x)) < 1e-12);
}

TEST_CASE("soliton masses") {
    Grid g(40.0, 4096);
    CHECK(std::abs(soliton_field(SolitonParams(1.0, 0.0), 0.0, g).l2sq() - 2.0 * M_PI) < 1e-8);
    const double m11 = 8.0 * std::atan(std::sqrt((std::sqrt(5.0) + 1.0) / (std::sqrt(5.0) - 1.0)));
    CHECK(std::abs(soliton_field(SolitonParams(1.0, 1.0), 0.0, g).l2sq() - m11) < 1e-8);
    CHECK(SolitonParams(1.0, 0.0).mass() == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
    // mass <= 4 pi, approaching it as E -> 0
    CHECK(SolitonParams(1e-8, 1.0).mass() < 4.0 * M_PI);
    CHECK(SolitonParams(1e-8, 1.0).mass() > 4.0 * M_PI - 1e-3);
}

TEST_CASE("static soliton has a t-independent modulus") {
    Grid g(40.0, 2048);
    Field f0 = soliton_field(SolitonParams(1.0, 0.0), 0.0, g);
    Field f1 = soliton_field(SolitonParams(1.0, 0.0), 0.7, g);
    double worst = 0.0;
    for (int j = 0; j < g.N; ++j)
        worst = std::max(worst, std::abs(std::abs(f0.samples()[j]) - std::abs(f1.samples()[j])));
    CHECK(worst < 1e-13);
}

TEST_CASE("exact one-soliton a") {
    const SolitonParams p(1.0, 0.0);
    // zeta = i: a = e^{-i pi} (i - i/2)/(i + i/2) = -1/3
    cplx a = soliton_exact_a(p, SpectralPoint::from_zeta(cplx(0.0, 1.0)));
    CHECK(std::abs(a - cplx(-1.0 / 3.0, 0.0)) < 1e-14);
    // large |zeta| limit e^{-iM/2} = -1
    a = soliton_exact_a(p, SpectralPoint::from_zeta(cplx(0.0, 1e6)));
    CHECK(std::abs(a - cplx(-1.0, 0.0)) < 2e-6);
    // zeta -> 0 limit is 1
    a = soliton_exact_a(p, SpectralPoint::from_zeta(cplx(0.0, 1e-8)));
    CHECK(std::abs(a - cplx(1.0, 0.0)) < 1e-7);
    // pure phase on the real zeta axis
    for (double xi : {-2.0, -0.5, 0.4, 3.0}) {
        const SpectralPoint lp = xi > 0 ? SpectralPoint::from_lambda(std::sqrt(xi))
                                        : SpectralPoint::from_lambda(cplx(0.0, std::sqrt(-xi)));
        CHECK(std::abs(std::abs(soliton_exact_a(p, lp)) - 1.0) < 1e-14);
    }
    // single zero at zeta_{E,c}
    CHECK(std::abs(soliton_exact_a(p, SpectralPoint::from_zeta(p.zeta1()))) < 1e-15);
    // algebraic family: a == 1 identically
    CHECK(std::abs(soliton_exact_a(SolitonParams(0.0, 1.0), SpectralPoint::from_zeta(cplx(0.3, 0.8))) -
                   cplx(1.0)) < 1e-14);
}

TEST_CASE("closed-form phase integral agrees with cumulative quadrature") {
    Grid g(40.0, 4096);
    const SolitonParams p(1.0, 0.5);
    std::vector<cplx> phi2(g.N);
    for (int j = 0; j < g.N; ++j) {
        const double v = soliton_profile(p, g.x(j));
        phi2[j] = v * v;
    }
    auto cum = cumulative_integral(g, phi2);
    double worst = 0.0;
    for (int j = 0; j < g.N; ++j)
        worst = std::max(worst,
                         std::abs(cum[j].real() + soliton_phase_integral(p, -g.L) -
                                  soliton_phase_integral(p, g.x(j))));
    CHECK(worst < 1e-9);
}

TEST_CASE("reflectionless: |b| vanishes at real lambda") {
    Grid g(40.0, 4096);
    Field f = soliton_field(SolitonParams(1.0, 0.0), 0.0, g);
    JostSolver solver(f);
    for (double lam : {0.5, 1.0})
        CHECK(std::abs(solver.scattering(SpectralPoint::from_lambda(lam)).b) < 1e-7);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(SolitonParams(-1.0, 0.0), config_error);
    CHECK_THROWS_AS(SolitonParams(0.0, 0.0), config_error);
    Grid g(40.0, 1024);
    CHECK_THROWS_AS(soliton_field(SolitonParams(1.0, 10.0), 10.0, g), config_error);
}
