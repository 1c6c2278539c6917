#include "dnls/soliton.hpp"

#include <cmath>

namespace dnls {

double SolitonParams::mass() const {
    if (E == 0.0) return 4.0 * M_PI;
    const double r = std::sqrt(c * c + 4.0 * E);
    return 8.0 * std::atan(std::sqrt((r + c) / (r - c)));
}

double soliton_profile(const SolitonParams& p, double y) {
    if (p.E == 0.0) return 2.0 * std::sqrt(p.c) / std::sqrt(1.0 + p.c * p.c * y * y);
    const double r = std::sqrt(p.c * p.c + 4.0 * p.E);
    const double k = p.c / r;
    return 2.0 * std::sqrt(2.0 * p.E) / std::pow(p.c * p.c + 4.0 * p.E, 0.25) /
           std::sqrt(std::cosh(2.0 * std::sqrt(p.E) * y) - k);
}

double soliton_phase_integral(const SolitonParams& p, double y) {
    if (p.E == 0.0) return 4.0 * (std::atan(p.c * y) + M_PI / 2.0);
    const double r = std::sqrt(p.c * p.c + 4.0 * p.E);
    const double K = std::sqrt((r + p.c) / (r - p.c));
    return 4.0 * (std::atan(K * std::tanh(std::sqrt(p.E) * y)) + std::atan(K));
}

Field soliton_field(const SolitonParams& p, double t, const Grid& g) {
    // keep the core well inside the window (bright case; the algebraic
    // profile only decays like 1/x and is accepted as-is)
    if (p.E > 0.0 && std::abs(p.c * t) > 0.5 * g.L)
        throw config_error("soliton_field: center c*t outside the safe window");
    std::vector<cplx> s(g.N);
    const double w = p.omega();
    for (int j = 0; j < g.N; ++j) {
        const double x = g.x(j);
        const double y = x - p.c * t;
        const double phase = w * t + 0.5 * p.c * x - 0.75 * soliton_phase_integral(p, y);
        s[j] = soliton_profile(p, y) * std::exp(cplx(0.0, phase));
    }
    return Field(g, std::move(s));
}

cplx soliton_exact_a(const SolitonParams& p, const SpectralPoint& lp) {
    const cplx pref = std::exp(cplx(0.0, -0.5 * p.mass()));
    if (p.E == 0.0) return pref;
    const cplx z1 = p.zeta1();
    const cplx den = lp.zeta - std::conj(z1);
    if (std::abs(den) == 0.0) throw config_error("soliton_exact_a: pole at conj(zeta_1)");
    return pref * (lp.zeta - z1) / den;
}

}  // namespace dnls
