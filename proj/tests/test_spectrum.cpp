#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dnls/soliton.hpp"
#include "dnls/spectrum.hpp"

using namespace dnls;

namespace {

// Independent oracle: the ray-integral part from the closed-form one-soliton
// atilde, by phase tracking on a fine log grid.
double ray_integral_oracle(const SolitonParams& p, double theta) {
    const int n = 20001;
    const double hi = 1e6, lo = 1e-8;
    double phase = 0.0;
    cplx prev;
    for (int i = 0; i < n; ++i) {
        const double rho = hi * std::pow(lo / hi, i / double(n - 1));
        const cplx zeta = rho * std::exp(cplx(0.0, theta));
        const cplx at = std::exp(cplx(0.0, 0.5 * p.mass())) *
                        soliton_exact_a(p, SpectralPoint::from_zeta(zeta));
        if (i == 0)
            phase = std::arg(at);
        else
            phase += std::arg(at / prev);
        prev = at;
    }
    return -phase / (2.0 * M_PI);
}

}  // namespace

TEST_CASE("zero potential: nothing to count, nothing to find") {
    Grid g(30.0, 1024);
    Field f = make_field(g, [](double) { return cplx(0.0); });
    const RayCountResult rc = ray_count(f, M_PI / 3);
    CHECK(rc.count == 0);
    CHECK(std::abs(rc.raw) < 1e-10);
    CHECK(angle_bound_check(f, M_PI / 3, rc.count));
    CHECK(locate(f, Box{-1.0, 1.0, 0.05, 1.5}).empty());
    const MassTraceResult mt = mass_trace_identity(f, MassTraceOptions{20.0, 100, {-1, 1, 0.05, 1.5}, {}});
    CHECK(mt.residual < 1e-12);
}

TEST_CASE("one-soliton ray counts against the closed-form oracle") {
    Grid g(40.0, 4096);
    for (SolitonParams p : {SolitonParams(1.0, 0.0), SolitonParams(1.0, 1.0)}) {
        Field f = soliton_field(p, 0.0, g);
        for (double th : {M_PI / 4, 3 * M_PI / 4}) {
            RayCountOptions opt;
            opt.use_det = false;  // the pure-ODE track; the det default is covered by A6
            const RayCountResult rc = ray_count(f, th, opt);
            const int expected = std::arg(p.zeta1()) > th ? 1 : 0;
            CHECK(rc.count == expected);
            CHECK(std::abs(rc.ray_integral - ray_integral_oracle(p, th)) < 1e-3);
        }
    }
}

TEST_CASE("u_{1,0} ray-integral parts are +-1/2") {
    Grid g(40.0, 4096);
    Field f = soliton_field(SolitonParams(1.0, 0.0), 0.0, g);
    RayCountOptions opt;
    opt.use_det = false;
    CHECK(std::abs(ray_count(f, M_PI / 4, opt).ray_integral - 0.5) < 1e-3);
    CHECK(std::abs(ray_count(f, 3 * M_PI / 4, opt).ray_integral + 0.5) < 1e-3);
}

TEST_CASE("a zero sitting on the ray is detected, not silently counted") {
    Grid g(40.0, 4096);
    Field f = soliton_field(SolitonParams(1.0, 0.0), 0.0, g);  // zero at arg(zeta) = pi/2
    RayCountOptions opt;
    opt.use_det = false;
    CHECK_THROWS_AS(ray_count(f, M_PI / 2, opt), numerical_error);
}

TEST_CASE("locate pins the soliton eigenvalues") {
    Grid g(40.0, 4096);
    const Box box{-1.5, 1.5, 0.05, 2.0};
    struct Case {
        SolitonParams p;
        cplx expect;
    };
    for (const Case& cs : {Case{SolitonParams(1.0, 0.0), cplx(0.0, 0.5)},
                           Case{SolitonParams(1.0, 1.0), cplx(-0.25, 0.5)},
                           Case{SolitonParams(1.0, -1.0), cplx(0.25, 0.5)}}) {
        Field f = soliton_field(cs.p, 0.0, g);
        const auto zeros = locate(f, box);
        REQUIRE(zeros.size() == 1);
        CHECK(std::abs(zeros[0].zeta - cs.expect) < 1e-5);
        CHECK(zeros[0].residual < 1e-6);
        const auto rep = zero_location_bound(f, zeros);
        CHECK(rep.min_re_zeta == doctest::Approx(cs.expect.real()).epsilon(1e-4));
    }
}

TEST_CASE("weak gaussian has no eigenvalue") {
    Grid g(30.0, 2048);
    Field f = make_field(g, [](double x) { return cplx(0.2 * std::exp(-x * x), 0.0); });
    CHECK(locate(f, Box{-1.5, 1.5, 0.02, 1.5}).empty());
    RayCountOptions opt;
    opt.use_det = false;
    CHECK(ray_count(f, M_PI / 2, opt).count == 0);
}

TEST_CASE("mass/trace identity for the reflectionless soliton") {
    Grid g(40.0, 4096);
    Field f = soliton_field(SolitonParams(1.0, 0.0), 0.0, g);
    MassTraceOptions opt;
    opt.nodes_per_side = 400;
    const MassTraceResult mt = mass_trace_identity(f, opt);
    CHECK(mt.n_zeros == 1);
    // |atilde| = 1 on R: the integral term vanishes; M = 4 arg(i/2) = 2 pi
    CHECK(std::abs(mt.integral_term) < 1e-4);
    CHECK(mt.residual < 1e-4);
}

TEST_CASE("angle bound") {
    Grid g(40.0, 4096);
    Field f = soliton_field(SolitonParams(1.0, 0.0), 0.0, g);
    CHECK(angle_bound_check(f, M_PI / 4, 1));   // 1 <= 2 pi/pi = 2
    CHECK(!angle_bound_check(f, M_PI / 4, 3));  // the contract flags a violation
}

TEST_CASE("box validation") {
    Grid g(30.0, 1024);
    Field f = make_field(g, [](double) { return cplx(0.0); });
    CHECK_THROWS_AS(locate(f, Box{-1.0, 1.0, -0.1, 1.0}), config_error);
    CHECK_THROWS_AS(locate(f, Box{1.0, -1.0, 0.1, 1.0}), config_error);
    CHECK_THROWS_AS(ray_count(f, 0.0), config_error);
}
