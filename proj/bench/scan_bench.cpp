// Timing comparison of the OpenMP maps against the serial reference path on
// the two production scan kernels: ODE scattering over a lambda grid and the
// real-axis quadrature nodes of the mass/trace identity.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "dnls/jost.hpp"
#include "dnls/parallel.hpp"
#include "dnls/soliton.hpp"
#include "dnls/spectral_point.hpp"

using namespace dnls;
namespace chrono = std::chrono;

namespace {

double best_of(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = chrono::steady_clock::now();
        fn();
        const auto t1 = chrono::steady_clock::now();
        best = std::min(best, chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::string(argv[1]) == "--quick";
    const Grid g(40.0, quick ? 1024 : 4096);
    const Field f = soliton_field(SolitonParams(1.0, 0.0), 0.0, g);
    JostSolver solver(f);

    const int n_pts = quick ? 16 : 64;
    std::vector<SpectralPoint> pts;
    for (int i = 0; i < n_pts; ++i)
        pts.push_back(SpectralPoint::from_zeta(cplx(-1.5 + 3.0 * i / n_pts, 0.3 + 2.0 * i / n_pts)));
    std::vector<cplx> out(pts.size());
    auto scan = [&] {
        par::for_index(ptrdiff_t(pts.size()), [&](std::ptrdiff_t i) { out[i] = solver.a(pts[i]); });
    };

    const int n_xi = quick ? 32 : 256;
    std::vector<double> vals(2 * n_xi);
    auto quadrature = [&] {
        par::for_index(2 * n_xi, [&](std::ptrdiff_t i) {
            const bool pos = i < n_xi;
            const double xi = (double(pos ? i : i - n_xi) + 0.5) * (30.0 / n_xi);
            const SpectralPoint lp = pos ? SpectralPoint::from_lambda(std::sqrt(xi))
                                         : SpectralPoint::from_lambda(cplx(0.0, std::sqrt(xi)));
            vals[i] = std::abs(solver.a(lp));
        });
    };

    std::printf("%-28s %12s %12s %8s\n", "kernel", "serial [ms]", "openmp [ms]", "speedup");
    struct Case {
        const char* name;
        std::function<void()> fn;
    };
    const int reps = quick ? 2 : 3;
    for (const Case& c : {Case{"ode lambda-scan", scan}, Case{"real-axis quadrature", quadrature}}) {
        c.fn();  // warm the caches and FFT plans
        par::set_enabled(false);
        const double ts = best_of(reps, c.fn);
        par::set_enabled(true);
        const double tp = best_of(reps, c.fn);
        std::printf("%-28s %12.1f %12.1f %8.2f\n", c.name, ts, tp, ts / tp);
    }
    return 0;
}
