#include "dnls/backlund.hpp"

#include <cmath>
#include <sstream>

#include "dnls/jost.hpp"

namespace dnls {

BacklundData eigenfunction(const Field& f, cplx zeta1, EigenfunctionOptions opt) {
    if (!(zeta1.imag() > 0.0))
        throw config_error("eigenfunction: zeta_1 must lie strictly in C_+");
    const SpectralPoint lp = SpectralPoint::from_zeta(zeta1);
    JostSolver solver(f, JostSolver::Options{opt.refine, 1e-8, false, 0.5});
    const double resid = std::abs(solver.a_tilde(zeta1));
    if (resid > opt.residual_gate) {
        std::ostringstream os;
        os << "eigenfunction: |atilde| = " << resid << " at zeta_1; not a located zero";
        throw numerical_error(os.str());
    }
    const JostPair jp = solver.jost(lp);
    const Grid& g = f.grid();
    const int M = int(jp.m.size()) - 1;
    const int jm = M / 2;

    // psi values at the matching point
    const double xm = -g.L + jp.step * jm;
    const cplx em = std::exp(cplx(0.0, -1.0) * zeta1 * xm);
    const cplx ep = std::exp(cplx(0.0, 1.0) * zeta1 * xm);
    const cplx pm0 = em * jp.m[jm][0], pm1 = em * jp.m[jm][1];
    const cplx pn0 = ep * jp.n[jm][0], pn1 = ep * jp.n[jm][1];
    const cplx kappa = (std::abs(pn0) > std::abs(pn1)) ? pm0 / pn0 : pm1 / pn1;
    const double pmax = std::max(std::abs(pm0), std::abs(pm1));
    const double mism =
        std::max(std::abs(pm0 - kappa * pn0), std::abs(pm1 - kappa * pn1)) / std::max(pmax, 1e-300);
    if (mism > opt.mismatch_gate) {
        std::ostringstream os;
        os << "eigenfunction: Jost halves not proportional at the matching point (defect " << mism
           << "); zeta_1 is not an eigenvalue at this resolution";
        throw numerical_error(os.str());
    }

    BacklundData bd;
    bd.lambda1 = lp;
    bd.match_mismatch = mism;
    bd.eta1.resize(g.N);
    bd.eta2.resize(g.N);
    const int r = jp.refine;
    for (int j = 0; j < g.N; ++j) {
        const int idx = j * r;
        const double x = g.x(j);
        if (idx <= jm) {
            const cplx ph = std::exp(cplx(0.0, -1.0) * zeta1 * x);
            bd.eta1[j] = ph * jp.m[idx][0];
            bd.eta2[j] = ph * jp.m[idx][1];
        } else {
            const cplx ph = kappa * std::exp(cplx(0.0, 1.0) * zeta1 * x);
            bd.eta1[j] = ph * jp.n[idx][0];
            bd.eta2[j] = ph * jp.n[idx][1];
        }
    }
    double amax = 0.0;
    for (int j = 0; j < g.N; ++j)
        amax = std::max({amax, std::abs(bd.eta1[j]), std::abs(bd.eta2[j])});
    for (int j = 0; j < g.N; ++j) {
        bd.eta1[j] /= amax;
        bd.eta2[j] /= amax;
    }
    bd.boundary_decay = std::max({std::abs(bd.eta1.front()), std::abs(bd.eta2.front()),
                                  std::abs(bd.eta1.back()), std::abs(bd.eta2.back())});
    if (bd.boundary_decay > opt.decay_gate) {
        std::ostringstream os;
        os << "eigenfunction: |eta| = " << bd.boundary_decay
           << " at the window edge; decay gate failed";
        throw numerical_error(os.str());
    }

    const cplx lam = lp.lambda, lamc = std::conj(lp.lambda);
    bd.G.resize(g.N);
    bd.S.resize(g.N);
    for (int j = 0; j < g.N; ++j) {
        const double a1 = std::norm(bd.eta1[j]), a2 = std::norm(bd.eta2[j]);
        const cplx dl = lam * a1 + lamc * a2;
        if (std::abs(dl) < 1e-300)
            throw numerical_error("eigenfunction: d_lambda vanishes on the grid");
        bd.G[j] = (lamc * a1 + lam * a2) / dl;
        bd.S[j] = 2.0 * cplx(0.0, 1.0) * (lam * lam - lamc * lamc) * bd.eta1[j] *
                  std::conj(bd.eta2[j]) / dl;
    }
    return bd;
}

Field backlund_remove(const Field& f, const BacklundData& bd) {
    const Grid& g = f.grid();
    if (int(bd.G.size()) != g.N) throw config_error("backlund_remove: grid mismatch");
    std::vector<cplx> out(g.N);
    for (int j = 0; j < g.N; ++j)
        out[j] = bd.G[j] * (bd.G[j] * f.samples()[j] - bd.S[j]);
    return Field(g, std::move(out));
}

double verify_a_update(const Field& before, const Field& after, cplx zeta1,
                       const std::vector<SpectralPoint>& probes) {
    JostSolver sb(before, JostSolver::Options{2, 1e-8, false, 0.5});
    JostSolver sa(after, JostSolver::Options{2, 1e-8, false, 0.5});
    const cplx lam1sq = zeta1;
    const cplx pref = lam1sq / std::conj(lam1sq);
    double dev = 0.0;
    for (const SpectralPoint& lp : probes) {
        const cplx factor = pref * (lp.zeta - std::conj(lam1sq)) / (lp.zeta - lam1sq);
        dev = std::max(dev, std::abs(sa.a(lp) - sb.a(lp) * factor));
    }
    return dev;
}

DerivCheckReport derivative_identity_check(const BacklundData& bd, const Field& f) {
    const Grid& g = f.grid();
    const int N = g.N;
    // gamma = unwrapped phase of G; dG/dx = i gamma' G since |G| = 1
    std::vector<double> gamma(N);
    gamma[0] = std::arg(bd.G[0]);
    for (int j = 1; j < N; ++j) gamma[j] = gamma[j - 1] + std::arg(bd.G[j] / bd.G[j - 1]);
    // 8th-order central stencil; the 4-point bands at the window ends are
    // skipped (G is constant there and the track does not wrap)
    static const double w[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    const double lamim = bd.lambda1.lambda.imag();
    DerivCheckReport rep;
    rep.bound_margin = -1e300;
    for (int j = 4; j < N - 4; ++j) {
        double d = 0.0;
        for (int s = 1; s <= 4; ++s) d += w[s - 1] * (gamma[j + s] - gamma[j - s]);
        d /= g.h();
        const cplx dG = cplx(0.0, d) * bd.G[j];
        const cplx u = f.samples()[j];
        const cplx rhs = cplx(0.0, -0.5) * bd.G[j] *
                         (std::norm(bd.S[j]) - u * bd.G[j] * std::conj(bd.S[j]) -
                          std::conj(u * bd.G[j]) * bd.S[j]);
        rep.identity_residual = std::max(rep.identity_residual, std::abs(dG - rhs));
        const double bound = 8.0 * lamim * lamim + 4.0 * lamim * std::abs(u);
        rep.bound_margin = std::max(rep.bound_margin, std::abs(d) - bound);
    }
    return rep;
}

}  // namespace dnls
