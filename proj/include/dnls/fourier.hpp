#ifndef DNLS_FOURIER_HPP
#define DNLS_FOURIER_HPP

#include <complex>
#include <vector>

#include "dnls/grid.hpp"

namespace dnls {

using cplx = std::complex<double>;

// Raw complex DFTs (FFTW behind a plan cache; thread-safe execution).
//   forward:  out_k = sum_j in_j e^{-2 pi i jk/N}
//   inverse:  out_j = (1/N) sum_k in_k e^{+2 pi i jk/N}
void dft_forward(int n, const cplx* in, cplx* out);
void dft_inverse(int n, const cplx* in, cplx* out);

// Continuum-normalized transform under the 1/sqrt(2 pi) convention:
//   uhat(p_k) = (h/sqrt(2 pi)) sum_j e^{-i p_k x_j} u_j
// Result in wrap-around order.  With x_j = -L + jh the node phase collapses
// to e^{i p_k L} = (-1)^k.
std::vector<cplx> spectrum(const Grid& g, const std::vector<cplx>& u);
std::vector<cplx> from_spectrum(const Grid& g, const std::vector<cplx>& uh);

// d/dx by the multiplier i p_k.
std::vector<cplx> derivative(const Grid& g, const std::vector<cplx>& u);

// F(x_j) = int_{-L}^{x_j} f, as mean * (x+L) plus the periodic primitive.
// Spectrally accurate for smooth f decaying at both ends.
std::vector<cplx> cumulative_integral(const Grid& g, const std::vector<cplx>& f);

// h * sum of samples (trapezoid on the periodic grid).
cplx integral(const Grid& g, const std::vector<cplx>& f);
double integral_real(const Grid& g, const std::vector<double>& f);

// Band-limited resampling onto the lattice -L + (j + frac) * (h/factor),
// j = 0..N*factor-1.  frac in [0,1) selects a shifted sub-lattice (used for
// the RK4 midpoints and the Gauss nodes of the Magnus steps).
std::vector<cplx> resample(const Grid& g, const std::vector<cplx>& u, int factor, double frac = 0.0);

}  // namespace dnls

#endif
