#include "dnls/evolve.hpp"

#include <cmath>

#include "dnls/errors.hpp"

namespace dnls {

namespace {

// stepping state in spectrum space (raw DFT coefficients)
struct Stepper {
    const Grid g;
    bool dealias;
    std::vector<double> p;        // wavenumbers
    std::vector<cplx> e_half;     // e^{-i p^2 dt/2}
    std::vector<cplx> e_full;
    std::vector<char> keep;       // 2/3-rule mask
    std::vector<cplx> uh, k1, k2, k3, k4, tmp, phys;

    Stepper(const Grid& grid, double dt, bool deal) : g(grid), dealias(deal) {
        const int N = g.N;
        p.resize(N);
        e_half.resize(N);
        e_full.resize(N);
        keep.resize(N);
        const double pcut = (2.0 / 3.0) * g.p_max();
        for (int k = 0; k < N; ++k) {
            p[k] = g.p(k);
            e_half[k] = std::exp(cplx(0.0, -p[k] * p[k] * dt / 2.0));
            e_full[k] = e_half[k] * e_half[k];
            keep[k] = std::abs(p[k]) <= pcut ? 1 : 0;
        }
        k1.resize(N); k2.resize(N); k3.resize(N); k4.resize(N);
        tmp.resize(N); phys.resize(N);
    }

    // N(uh) = -i p * fft(|u|^2 u), masked
    void nonlinear(const std::vector<cplx>& vh, std::vector<cplx>& out) {
        const int N = g.N;
        for (int k = 0; k < N; ++k) tmp[k] = (dealias && !keep[k]) ? cplx(0.0) : vh[k];
        dft_inverse(N, tmp.data(), phys.data());
        for (int j = 0; j < N; ++j) phys[j] *= std::norm(phys[j]);
        dft_forward(N, phys.data(), out.data());
        for (int k = 0; k < N; ++k) {
            out[k] *= cplx(0.0, -p[k]);
            if (dealias && !keep[k]) out[k] = cplx(0.0);
        }
    }

    void step(std::vector<cplx>& v, double dt) {
        const int N = g.N;
        nonlinear(v, k1);
        for (int k = 0; k < N; ++k) tmp[k] = e_half[k] * (v[k] + 0.5 * dt * k1[k]);
        nonlinear(tmp, k2);
        for (int k = 0; k < N; ++k) tmp[k] = e_half[k] * v[k] + 0.5 * dt * k2[k];
        nonlinear(tmp, k3);
        for (int k = 0; k < N; ++k) tmp[k] = e_full[k] * v[k] + dt * e_half[k] * k3[k];
        nonlinear(tmp, k4);
        for (int k = 0; k < N; ++k)
            v[k] = e_full[k] * v[k] +
                   dt / 6.0 * (e_full[k] * k1[k] + 2.0 * e_half[k] * (k2[k] + k3[k]) + k4[k]);
    }
};

bool finite_state(const std::vector<cplx>& v) {
    for (const cplx& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

Field materialize(const Grid& g, const std::vector<cplx>& uh) {
    std::vector<cplx> u(g.N);
    dft_inverse(g.N, uh.data(), u.data());
    return Field(g, std::move(u));
}

}  // namespace

Field evolve_step(const Field& f, double dt, bool dealias) {
    if (!(dt > 0.0)) throw config_error("evolve: dt must be positive");
    Stepper st(f.grid(), dt, dealias);
    std::vector<cplx> uh(f.grid().N);
    dft_forward(f.grid().N, f.samples().data(), uh.data());
    st.step(uh, dt);
    return materialize(f.grid(), uh);
}

Field evolve(const Field& f0, const EvolveConfig& cfg, const Observer& obs) {
    if (!(cfg.dt > 0.0)) throw config_error("evolve: dt must be positive");
    if (cfg.t_end < 0.0) throw config_error("evolve: t_end must be >= 0");
    const Grid& g = f0.grid();
    const long nsteps = std::lround(cfg.t_end / cfg.dt);
    const double dt = nsteps > 0 ? cfg.t_end / double(nsteps) : cfg.dt;
    Stepper st(g, dt, cfg.dealias);
    std::vector<cplx> uh(g.N);
    dft_forward(g.N, f0.samples().data(), uh.data());
    if (obs && cfg.observe_stride > 0) obs(0.0, f0);
    for (long s = 0; s < nsteps; ++s) {
        st.step(uh, dt);
        if ((s & 63) == 0 && !finite_state(uh))
            throw numerical_error("evolve: non-finite state (instability or blow-up) at t = " +
                                  std::to_string((s + 1) * dt));
        if (obs && cfg.observe_stride > 0 && ((s + 1) % cfg.observe_stride == 0) && s + 1 < nsteps)
            obs((s + 1) * dt, materialize(g, uh));
    }
    if (!finite_state(uh)) throw numerical_error("evolve: non-finite final state");
    Field out = materialize(g, uh);
    if (obs && cfg.observe_stride > 0) obs(cfg.t_end, out);
    return out;
}

}  // namespace dnls
