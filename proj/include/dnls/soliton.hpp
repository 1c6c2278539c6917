#ifndef DNLS_SOLITON_HPP
#define DNLS_SOLITON_HPP

#include "dnls/field.hpp"
#include "dnls/spectral_point.hpp"

namespace dnls {

// Closed-form one-soliton data u_{E,c}: bright solitons (E > 0) and the
// algebraic soliton family (E = 0, c > 0).
struct SolitonParams {
    double E = 1.0;
    double c = 0.0;

    SolitonParams() = default;
    SolitonParams(double energy_param, double speed) : E(energy_param), c(speed) {
        if (E < 0.0) throw config_error("soliton: E must be >= 0");
        if (E == 0.0 && c <= 0.0) throw config_error("soliton: E = 0 requires c > 0");
    }

    double omega() const { return E - 0.25 * c * c; }
    cplx zeta1() const { return cplx(-0.25 * c, 0.5 * std::sqrt(E)); }
    // M(u_{E,c}) = 8 arctan sqrt((sqrt(c^2+4E)+c)/(sqrt(c^2+4E)-c)), -> 4 pi at E = 0
    double mass() const;
};

// phi_{E,c}(y): the positive even decaying profile.
double soliton_profile(const SolitonParams& p, double y);

// int_{-inf}^{y} phi_{E,c}^2 ds in closed form (no truncation error).
double soliton_phase_integral(const SolitonParams& p, double y);

// u_{E,c}(t, x) sampled on g; errors out if the soliton core sits too close
// to the boundary of the window.
Field soliton_field(const SolitonParams& p, double t, const Grid& g);

// One-soliton transmission data a_{u_{E,c}}(lambda); reduces to the constant
// exp(-iM/2) = 1 for the algebraic family (atilde == 1).
cplx soliton_exact_a(const SolitonParams& p, const SpectralPoint& lp);

}  // namespace dnls

#endif
