#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dnls/backlund.hpp"
#include "dnls/jost.hpp"
#include "dnls/soliton.hpp"
#include "dnls/spectrum.hpp"

using namespace dnls;

TEST_CASE("eigenfunction at the soliton eigenvalue") {
    Grid g(40.0, 4096);
    Field f = soliton_field(SolitonParams(1.0, 0.0), 0.0, g);
    const BacklundData bd = eigenfunction(f, cplx(0.0, 0.5));
    CHECK(bd.match_mismatch < 1e-6);
    CHECK(bd.boundary_decay < 1e-4);
    // |G| = 1 and |S| <= 4 Im lambda pointwise
    double gdev = 0.0, smax = 0.0;
    for (int j = 0; j < g.N; ++j) {
        gdev = std::max(gdev, std::abs(std::abs(bd.G[j]) - 1.0));
        smax = std::max(smax, std::abs(bd.S[j]));
    }
    CHECK(gdev < 1e-10);
    CHECK(smax <= 4.0 * bd.lambda1.lambda.imag() + 1e-10);
    // single-humped |eta|: interior maximum, decaying tails
    double amax = 0.0;
    int jmax = 0;
    for (int j = 0; j < g.N; ++j) {
        const double m = std::hypot(std::abs(bd.eta1[j]), std::abs(bd.eta2[j]));
        if (m > amax) {
            amax = m;
            jmax = j;
        }
    }
    CHECK(std::abs(g.x(jmax)) < 5.0);
}

TEST_CASE("a point that is not an eigenvalue is rejected") {
    Grid g(40.0, 4096);
    Field f = soliton_field(SolitonParams(1.0, 0.0), 0.0, g);
    CHECK_THROWS_AS(eigenfunction(f, cplx(0.0, 1.0)), numerical_error);
    CHECK_THROWS_AS(eigenfunction(f, cplx(0.5, 0.0)), config_error);  // Im zeta = 0
    Field f0 = make_field(g, [](double) { return cplx(0.0); });
    CHECK_THROWS_AS(eigenfunction(f0, cplx(0.0,  0.5)), numerical_error);
}

TEST_CASE("removal drives the one-soliton to the vacuum") {
    Grid g(40.0, 4096);
    Field f = soliton_field(SolitonParams(1.0, 0.0), 0.0, g);
    const BacklundData bd = eigenfunction(f, cplx(0.0, 0.5));
    const Field fr = backlund_remove(f, bd);
    const double drop = f.l2sq() - fr.l2sq();
    CHECK(std::abs(drop - 8.0 * std::arg(bd.lambda1.lambda)) < 1e-6);
    CHECK(fr.l2sq() < 1e-3);
}

TEST_CASE("scattering-coefficient update under removal") {
    Grid g(40.0, 4096);
    Field f = soliton_field(SolitonParams(1.0, 0.0), 0.0, g);
    const BacklundData bd = eigenfunction(f, cplx(0.0, 0.5));
    const Field fr = backlund_remove(f, bd);
    std::vector<SpectralPoint> probes;
    for (cplx z : {cplx(0.21, 0.21), cplx(0.0, 0.7), cplx(-0.57, 0.57)})
        probes.push_back(SpectralPoint::from_zeta(z));
    CHECK(verify_a_update(f, fr, cplx(0.0, 0.5), probes) < 1e-4);
    // after removing the only zero, a has unit modulus at the probes
    JostSolver sa(fr, JostSolver::Options{2, 1e-8, false, 0.5});
    for (const auto& lp : probes) CHECK(std::abs(std::abs(sa.a(lp)) - 1.0) < 1e-4);
}

TEST_CASE("derivative identity and bound for G") {
    Grid g(40.0, 4096);
    Field f = soliton_field(SolitonParams(1.0, 0.0), 0.0, g);
    const BacklundData bd = eigenfunction(f, cplx(0.0, 0.5));
    const DerivCheckReport rep = derivative_identity_check(bd, f);
    CHECK(rep.identity_residual < 1e-6);
    CHECK(rep.bound_margin <= 1e-8);
}

TEST_CASE("composition with the locator: removed eigenvalue is gone") {
    Grid g(40.0, 4096);
    Field f = soliton_field(SolitonParams(1.0, 0.0), 0.0, g);
    const auto zeros = locate(f, Box{-1.5, 1.5, 0.05, 2.0});
    REQUIRE(zeros.size() == 1);
    const BacklundData bd = eigenfunction(f, zeros[0].zeta);
    const Field fr = backlund_remove(f, bd);
    CHECK(locate(fr, Box{-1.5, 1.5, 0.05, 2.0}).empty());
}
