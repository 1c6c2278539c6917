#ifndef DNLS_SPECTRAL_POINT_HPP
#define DNLS_SPECTRAL_POINT_HPP

#include <complex>

#include "dnls/errors.hpp"

namespace dnls {

// Spectral parameter of the Kaup-Newell pencil.  lambda lives in the closed
// first quadrant, zeta = lambda^2 in the closed upper half-plane; the branch
// lambda = sqrt(zeta) is the principal root, mapping C_+ into C_++.
struct SpectralPoint {
    std::complex<double> lambda;
    std::complex<double> zeta;

    static SpectralPoint from_zeta(std::complex<double> z) {
        if (z.imag() < 0.0) throw config_error("spectral point: Im(zeta) must be >= 0");
        return SpectralPoint{std::sqrt(z), z};
    }
    static SpectralPoint from_lambda(std::complex<double> l) {
        std::complex<double> z = l * l;
        if (z.imag() < 0.0) throw config_error("spectral point: Im(lambda^2) must be >= 0");
        return SpectralPoint{l, z};
    }
};

}  // namespace dnls

#endif
