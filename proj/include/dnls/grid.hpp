#ifndef DNLS_GRID_HPP
#define DNLS_GRID_HPP

#include <cmath>
#include <cstddef>

#include "dnls/errors.hpp"

namespace dnls {

// Uniform truncation of the line to [-L, L), N a power of two.
//   nodes        x_j = -L + j h,   h = 2L/N,   j = 0..N-1
//   wavenumbers  p_k = pi k / L,   k = -N/2..N/2-1 (stored in FFT wrap-around
//                order: k = 0,1,..,N/2-1,-N/2,..,-1)
struct Grid {
    double L = 40.0;
    int N = 4096;

    Grid() = default;
    Grid(double half_width, int num_points) : L(half_width), N(num_points) {
        if (L <= 0.0) throw config_error("grid: half-width must be positive");
        if (N < 8 || (N & (N - 1)) != 0) throw config_error("grid: N must be a power of two, N >= 8");
    }

    double h() const { return 2.0 * L / N; }
    double x(int j) const { return -L + h() * j; }
    // wavenumber of FFT bin k (wrap-around order)
    double p(int k) const {
        int kk = (k < N / 2) ? k : k - N;
        return M_PI * kk / L;
    }
    double mode_spacing() const { return M_PI / L; }
    double p_max() const { return M_PI * (N / 2) / L; }

    bool operator==(const Grid& o) const { return L == o.L && N == o.N; }
};

}  // namespace dnls

#endif
