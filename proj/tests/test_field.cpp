#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "dnls/field.hpp"
#include "dnls/soliton.hpp"

using namespace dnls;

namespace {
Field smooth_complex_field(const Grid& g) {
    return make_field(g, [](double x) {
        return (0.3 * std::exp(-x * x) + 0.1 * std::exp(-(x - 1.0) * (x - 1.0))) *
               std::exp(cplx(0.0, 0.5 * x));
    });
}
}  // namespace

TEST_CASE("zero field") {
    Grid g(30.0, 1024);
    Field f = make_field(g, [](double) { return cplx(0.0); });
    for (const cplx& v : f.samples()) CHECK(v == cplx(0.0));
    for (const cplx& v : f.spec()) CHECK(std::abs(v) == 0.0);
    ConservedSet c = conserved(f);
    CHECK(c.mass == 0.0);
    CHECK(c.momentum == 0.0);
    CHECK(c.energy == 0.0);
}

TEST_CASE("soliton profile mass: |phi_{1,0}|_2^2 = 2 pi") {
    Grid g(40.0, 4096);
    Field f = make_field(g, [](double x) { return cplx(soliton_profile(SolitonParams(1.0, 0.0), x)); });
    CHECK(std::abs(f.l2sq() - 2.0 * M_PI) < 1e-8);
}

TEST_CASE("gaussian mass against the closed form") {
    Grid g(30.0, 2048);
    Field f = make_field(g, [](double x) { return cplx(0.5 * std::exp(-x * x)); });
    // int 0.25 e^{-2x^2} = 0.25 sqrt(pi/2)
    CHECK(std::abs(f.l2sq() - 0.25 * std::sqrt(M_PI / 2.0)) < 1e-12);
}

TEST_CASE("algebraic soliton mass carries the exact 8/(cL) window deficit") {
    Grid g(400.0, 4096);
    Field f = soliton_field(SolitonParams(0.0, 1.0), 0.0, g);
    CHECK(std::abs(f.l2sq() - (4.0 * M_PI - 8.0 / (1.0 * g.L))) < 1e-4);
}

TEST_CASE("Parseval under the 1/sqrt(2 pi) convention") {
    Grid g(30.0, 1024);
    Field f = smooth_complex_field(g);
    double s = 0.0, sh = 0.0;
    for (const cplx& v : f.samples()) s += std::norm(v);
    for (const cplx& v : f.spec()) sh += std::norm(v);
    CHECK(std::abs(s * g.h() - sh * g.mode_spacing()) < 1e-12 * s * g.h());
}

TEST_CASE("spectrum round trip") {
    Grid g(30.0, 1024);
    Field f = smooth_complex_field(g);
    auto back = from_spectrum(g, f.spec());
    double worst = 0.0, scale = 0.0;
    for (int j = 0; j < g.N; ++j) {
        worst = std::max(worst, std::abs(back[j] - f.samples()[j]));
        scale = std::max(scale, std::abs(f.samples()[j]));
    }
    CHECK(worst < 1e-12 * scale);
}

TEST_CASE("conserved quantities under the critical scaling") {
    Grid g(30.0, 2048);
    Field f = smooth_complex_field(g);
    ConservedSet c0 = conserved(f);
    for (double mu : {0.5, 2.0}) {
        Field fm = rescale(f, mu);
        ConservedSet cm = conserved(fm);
        CHECK(std::abs(cm.mass - c0.mass) < 1e-6 * std::abs(c0.mass));
        CHECK(std::abs(cm.momentum - mu * c0.momentum) < 1e-6 * std::abs(c0.momentum));
        CHECK(std::abs(cm.energy - mu * mu * c0.energy) < 1e-6 * std::abs(c0.energy));
    }
}

TEST_CASE("rescale: mu = 1 is the identity, mass invariant at mu = 2") {
    Grid g(30.0, 1024);
    Field f = smooth_complex_field(g);
    Field f1 = rescale(f, 1.0);
    CHECK(f1.grid().L == f.grid().L);
    for (int j = 0; j < g.N; ++j) CHECK(f1.samples()[j] == f.samples()[j]);
    CHECK(std::abs(rescale(f, 2.0).l2sq() - f.l2sq()) < 1e-8);
    CHECK_THROWS_AS(rescale(f, -1.0), config_error);
}

TEST_CASE("quintic Gagliardo-Nirenberg ratio stays below the sharp constant") {
    Grid g(30.0, 2048);
    const double sharp = 4.0 / (M_PI * M_PI);
    Field fg = make_field(g, [](double x) { return cplx(std::exp(-x * x)); });
    CHECK(gn_ratio(fg, GnKind::quintic) < sharp);
    Field fs = smooth_complex_field(g);
    CHECK(gn_ratio(fs, GnKind::quintic) <= sharp + 1e-6);
    Field f0 = make_field(g, [](double) { return cplx(0.0); });
    CHECK_THROWS_AS(gn_ratio(f0, GnKind::quintic), config_error);
}

TEST_CASE("non-finite generator is rejected with a diagnostic") {
    Grid g(30.0, 1024);
    CHECK_THROWS_AS(make_field(g, [](double x) { return cplx(x == 0.0 ? 1.0 / 0.0 : 0.0); }),
                    numerical_error);
}

TEST_CASE("snapshot round trip is bit-stable") {
    Grid g(30.0, 1024);
    Field f = smooth_complex_field(g);
    const std::string path = "test_snapshot.tmp";
    save_snapshot(f, path, 0.25);
    double t = 0.0;
    Field f2 = load_snapshot(path, &t);
    CHECK(t == 0.25);
    CHECK(f2.grid().L == f.grid().L);
    for (int j = 0; j < g.N; ++j) CHECK(f2.samples()[j] == f.samples()[j]);
    std::remove(path.c_str());
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(Grid(-1.0, 1024), config_error);
    CHECK_THROWS_AS(Grid(10.0, 1000), config_error);
    CHECK_THROWS_AS(Grid(10.0, 4), config_error);
}
