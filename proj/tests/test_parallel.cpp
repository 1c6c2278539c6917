#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "dnls/fredholm.hpp"
#include "dnls/jost.hpp"
#include "dnls/parallel.hpp"
#include "dnls/soliton.hpp"

using namespace dnls;

// The OpenMP map and the serial reference path must produce bit-identical
// results: every task writes only its own slot and no reductions reorder.

namespace {
std::vector<cplx> scan_a(const Field& f, bool parallel) {
    par::set_enabled(parallel);
    JostSolver solver(f);
    std::vector<SpectralPoint> pts;
    for (int i = 0; i < 16; ++i)
        pts.push_back(SpectralPoint::from_zeta(cplx(-1.0 + 0.13 * i, 0.3 + 0.1 * i)));
    std::vector<cplx> out(pts.size());
    par::for_index(ptrdiff_t(pts.size()), [&](std::ptrdiff_t i) { out[i] = solver.a(pts[i]); });
    par::set_enabled(true);
    return out;
}
}  // namespace

TEST_CASE("scatter scan: serial reference equals the OpenMP map bitwise") {
    Grid g(30.0, 2048);
    Field f = soliton_field(SolitonParams(1.0, 0.0), 0.0, g);
    const auto serial = scan_a(f, false);
    const auto parallel = scan_a(f, true);
    REQUIRE(serial.size() == parallel.size());
    for (size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == parallel[i]);
}

TEST_CASE("kernel assembly: serial reference equals the OpenMP map bitwise") {
    Grid g(30.0, 2048);
    Field f = make_field(g, [](double x) { return cplx(0.4 * std::exp(-x * x), 0.0); });
    const SpectralPoint lp = SpectralPoint::from_zeta(cplx(0.2, 1.1));
    par::set_enabled(false);
    const auto k_serial = build_kernel(f, lp, 512);
    par::set_enabled(true);
    const auto k_par = build_kernel(f, lp, 512);
    for (size_t i = 0; i < k_serial.B.size(); ++i) {
        CHECK(k_serial.B[i] == k_par.B[i]);
        CHECK(k_serial.C[i] == k_par.C[i]);
    }
}

TEST_CASE("toggle state") {
    par::set_enabled(false);
    CHECK_FALSE(par::enabled());
    par::set_enabled(true);
    CHECK(par::enabled());
}
