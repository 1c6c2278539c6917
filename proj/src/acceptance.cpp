#include "dnls/acceptance.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "dnls/backlund.hpp"
#include "dnls/evolve.hpp"
#include "dnls/field.hpp"
#include "dnls/fredholm.hpp"
#include "dnls/jost.hpp"
#include "dnls/soliton.hpp"
#include "dnls/spectrum.hpp"

namespace dnls {

namespace {

// accumulates named sub-checks |measured| <= tol
struct Check {
    bool pass = true;
    double worst_ratio = 0.0;
    std::ostringstream detail;

    void add(const std::string& name, double measured, double tol) {
        const double r = std::abs(measured) / tol;
        if (r > worst_ratio) worst_ratio = r;
        if (!(std::abs(measured) <= tol)) pass = false;
        if (detail.tellp() > 0) detail << "; ";
        detail << name << "=" << measured << " (tol " << tol << ")";
    }
    void add_flag(const std::string& name, bool ok) {
        if (!ok) pass = false;
        if (detail.tellp() > 0) detail << "; ";
        detail << name << "=" << (ok ? "ok" : "FAIL");
    }
};

Grid desk_grid() { return Grid(40.0, 4096); }

Field gaussian_field(const Grid& g, double amp, double width = 1.0) {
    return make_field(g, [amp, width](double x) { return cplx(amp * std::exp(-(x / width) * (x / width)), 0.0); });
}

std::vector<SpectralPoint> probe_set_8() {
    std::vector<SpectralPoint> ps;
    for (double th : {M_PI / 4, 3 * M_PI / 4})
        for (double r : {0.3, 1.0, 3.0})
            ps.push_back(SpectralPoint::from_zeta(r * std::exp(cplx(0.0, th))));
    for (double r : {0.3, 3.0}) ps.push_back(SpectralPoint::from_zeta(cplx(0.0, r)));
    return ps;
}

Criterion a1() {
    Check c;
    const Grid g = desk_grid();
    const auto probes = probe_set_8();
    for (SolitonParams p : {SolitonParams(1.0, 0.0), SolitonParams(1.0, 1.0)}) {
        const Field u = soliton_field(p, 0.0, g);
        JostSolver solver(u);
        double worst = 0.0;
        for (const auto& lp : probes)
            worst = std::max(worst, std::abs(solver.a(lp) - soliton_exact_a(p, lp)));
        std::ostringstream name;
        name << "max|a_ode-a_exact| (E=" << p.E << ",c=" << p.c << ")";
        c.add(name.str(), worst, 1e-6);
    }
    return {"A1", "one-soliton scattering oracle", c.pass, c.worst_ratio, c.detail.str()};
}

Criterion a2() {
    Check c;
    const Grid g = desk_grid();
    const Field u = gaussian_field(g, 0.5);
    JostSolver solver(u);
    double worst = 0.0, worst_link = 0.0;
    for (double th : {M_PI / 4 + 0.1, M_PI / 2, 3 * M_PI / 4 - 0.1}) {
        for (double im : {0.25, 0.8, 2.0, 4.0}) {
            const cplx zeta = im / std::sin(th) * std::exp(cplx(0.0, th));
            const SpectralPoint lp = SpectralPoint::from_zeta(zeta);
            const DetResult dr = det_result(build_kernel(u, lp, 2048));
            worst = std::max(worst, std::abs(dr.a2 - solver.a(lp)));
            worst_link = std::max(worst_link,
                                  std::abs(dr.a4 - dr.a2 * std::exp(0.5 * dr.tr2)) / std::abs(dr.a4));
        }
    }
    c.add("max|a_det2-a_ode|", worst, 1e-4);
    c.add("det4 link residual", worst_link, 1e-10);
    return {"A2", "determinant/ODE agreement", c.pass, c.worst_ratio, c.detail.str()};
}

Criterion a3() {
    Check c;
    const Grid g = desk_grid();
    const Field u = gaussian_field(g, 0.5);
    JostSolver solver(u);
    double worst_re = 0.0, worst_im = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double lam = 0.1 + (2.0 - 0.1) * i / 9.0;
        const auto s = solver.scattering(SpectralPoint::from_lambda(lam));
        worst_re = std::max(worst_re, std::abs(std::norm(s.a) + std::norm(s.b) - 1.0));
    }
    for (int i = 0; i < 5; ++i) {
        const double lam = 0.3 + (1.5 - 0.3) * i / 4.0;
        const auto s = solver.scattering(SpectralPoint::from_lambda(cplx(0.0, lam)));
        worst_im = std::max(worst_im, std::abs(std::norm(s.a) - std::norm(s.b) - 1.0));
    }
    c.add("real axis: | |a|^2+|b|^2-1 |", worst_re, 1e-8);
    c.add("imag axis: | |a|^2-|b|^2-1 |", worst_im, 1e-8);
    return {"A3", "transfer-matrix unitarity", c.pass, c.worst_ratio, c.detail.str()};
}

Criterion a4() {
    Check c;
    const Grid g = desk_grid();
    const Field u0 = gaussian_field(g, 0.5);
    const double t = 0.5;
    EvolveConfig cfg;
    cfg.dt = 1e-4;
    cfg.t_end = t;
    const Field ut = evolve(u0, cfg);
    JostSolver s0(u0), st(ut);
    const SpectralPoint lstar = SpectralPoint::from_zeta(cplx(0.0, 1.0));  // lambda* = e^{i pi/4}
    c.add("|a(t)-a(0)| at lambda*", std::abs(st.a(lstar) - s0.a(lstar)), 1e-5);
    // b(t) = e^{+4 i lambda^4 t} b(0): the sign follows from the Lax pair
    // asymptotics Upsilon -> -2 i lambda^4 sigma_3 for this sign convention
    for (double lam : {0.5, 1.0}) {
        const auto sb = s0.scattering(SpectralPoint::from_lambda(lam));
        const auto sa = st.scattering(SpectralPoint::from_lambda(lam));
        const cplx law = std::exp(cplx(0.0, 4.0 * std::pow(lam, 4) * t));
        std::ostringstream name;
        name << "|b(t)-e^{4 i lam^4 t} b(0)| at lam=" << lam;
        c.add(name.str(), std::abs(sa.b - law * sb.b), 1e-4);
    }
    const ConservedSet c0 = conserved(u0), ct = conserved(ut);
    c.add("mass drift", ct.mass - c0.mass, 1e-8);
    c.add("energy drift (rel)", (ct.energy - c0.energy) / c0.energy, 1e-6);
    return {"A4", "conservation under the flow", c.pass, c.worst_ratio, c.detail.str()};
}

Criterion a5() {
    Check c;
    const Grid g = desk_grid();
    const SolitonParams p(1.0, 0.0);
    const Field u0 = soliton_field(p, 0.0, g);
    EvolveConfig cfg;
    cfg.dt = 1e-4;
    cfg.t_end = 0.5;
    const Field ut = evolve(u0, cfg);
    const Field uex = soliton_field(p, 0.5, g);
    double err = 0.0;
    for (int j = 0; j < g.N; ++j) err = std::max(err, std::abs(ut.samples()[j] - uex.samples()[j]));
    c.add("max-norm soliton error", err, 1e-6);
    // dt -> dt/2 error ratio over a shorter horizon
    double errs[2];
    int k = 0;
    for (double dt : {2e-3, 1e-3}) {
        EvolveConfig c2;
        c2.dt = dt;
        c2.t_end = 0.2;
        const Field v = evolve(u0, c2);
        const Field vex = soliton_field(p, 0.2, g);
        double e = 0.0;
        for (int j = 0; j < g.N; ++j) e = std::max(e, std::abs(v.samples()[j] - vex.samples()[j]));
        errs[k++] = e;
    }
    const double ratio = errs[0] / errs[1];
    c.add_flag("dt-convergence ratio in [12,20] (ratio=" + std::to_string(ratio) + ")",
               ratio >= 12.0 && ratio <= 20.0);
    return {"A5", "soliton evolution oracle", c.pass, c.worst_ratio, c.detail.str()};
}

Criterion a6() {
    Check c;
    const Grid g = desk_grid();
    const Box box{-1.5, 1.5, 0.05, 2.0};
    struct Case {
        SolitonParams p;
        cplx zeta_true;
    };
    for (const Case& cs : {Case{SolitonParams(1.0, 0.0), cplx(0.0, 0.5)},
                           Case{SolitonParams(1.0, 1.0), cplx(-0.25, 0.5)}}) {
        const Field u = soliton_field(cs.p, 0.0, g);
        const auto zeros = locate(u, box);
        c.add_flag("one zero found (c=" + std::to_string(cs.p.c) + ")", zeros.size() == 1);
        if (zeros.size() == 1)
            c.add("|zeta-zeta_true| (c=" + std::to_string(cs.p.c) + ")",
                  std::abs(zeros[0].zeta - cs.zeta_true), 1e-5);
        for (double th : {M_PI / 4, 3 * M_PI / 4}) {
            const RayCountResult rc = ray_count(u, th);
            const int expected =
                (std::arg(cs.zeta_true) > th) ? 1 : 0;  // zeros in the angle (theta, pi)
            c.add_flag("ray count matches (c=" + std::to_string(cs.p.c) +
                           ", theta=" + std::to_string(th) + ")",
                       rc.count == expected);
            c.add("raw-integer distance", rc.dist_to_int, 1e-3);
            c.add_flag("angle bound", angle_bound_check(u, th, rc.count));
        }
    }
    // ray-integral parts for u_{1,0}: +-1/2 since M = 2 pi
    const Field u10 = soliton_field(SolitonParams(1.0, 0.0), 0.0, g);
    c.add("rayint(pi/4) - 1/2", ray_count(u10, M_PI / 4).ray_integral - 0.5, 1e-3);
    c.add("rayint(3pi/4) + 1/2", ray_count(u10, 3 * M_PI / 4).ray_integral + 0.5, 1e-3);
    return {"A6", "eigenvalue location and counting", c.pass, c.worst_ratio, c.detail.str()};
}

Criterion a7() {
    Check c;
    const Grid g = desk_grid();
    const Field u10 = soliton_field(SolitonParams(1.0, 0.0), 0.0, g);
    const MassTraceResult r1 = mass_trace_identity(u10);
    c.add_flag("soliton: one zero", r1.n_zeros == 1);
    c.add("soliton residual", r1.residual, 1e-3);
    const Field ug = gaussian_field(g, 0.8);
    const MassTraceResult r2 = mass_trace_identity(ug);
    c.add_flag("gaussian 0.8: no zeros", r2.n_zeros == 0);
    c.add("gaussian residual", r2.residual, 1e-3);
    return {"A7", "mass/trace identity", c.pass, c.worst_ratio, c.detail.str()};
}

Criterion a8() {
    Check c;
    const Grid g = desk_grid();
    const Field u = gaussian_field(g, 0.5);
    const ConservedSet cons = conserved(u);
    const ExpansionFit fit = expansion_coeffs(u, 1024);
    const cplx e1_t = cplx(0.0, 0.25) * cons.momentum;
    const cplx e2_t = cplx(0.0, -0.125) * cons.energy;
    c.add("|E1 - iP/4| / |iP/4|", std::abs(fit.E1 - e1_t) / std::abs(e1_t), 0.02);
    c.add("|E2 + iE/8| / |iE/8|", std::abs(fit.E2 - e2_t) / std::abs(e2_t), 0.05);
    return {"A8", "asymptotic expansion of ln atilde", c.pass, c.worst_ratio, c.detail.str()};
}

Criterion a9() {
    Check c;
    const Grid g = desk_grid();
    const Box box{-1.5, 1.5, 0.05, 2.0};

    // pure soliton: removal to near-vacuum
    const Field u = soliton_field(SolitonParams(1.0, 0.0), 0.0, g);
    const auto zeros = locate(u, box);
    if (zeros.size() != 1) {
        c.add_flag("soliton zero found", false);
        return {"A9", "Backlund transformation suite", c.pass, c.worst_ratio, c.detail.str()};
    }
    const BacklundData bd = eigenfunction(u, zeros[0].zeta);
    const Field ur = backlund_remove(u, bd);
    const double drop = u.l2sq() - ur.l2sq();
    c.add("mass drop - 8 arg lam1", drop - 8.0 * std::arg(bd.lambda1.lambda), 1e-6);
    c.add("post-removal mass", ur.l2sq(), 1e-3);
    std::vector<SpectralPoint> probes;
    for (cplx z : {cplx(0.21, 0.21), cplx(1.06, 1.06), cplx(0.0, 0.7), cplx(0.0, 2.0),
                   cplx(-0.57, 0.57), cplx(-0.77, 2.38)})
        probes.push_back(SpectralPoint::from_zeta(z));
    c.add("a-update deviation", verify_a_update(u, ur, zeros[0].zeta, probes), 1e-4);
    const DerivCheckReport dc = derivative_identity_check(bd, u);
    c.add("dG/dx identity residual", dc.identity_residual, 1e-6);
    c.add_flag("|dG/dx| bound", dc.bound_margin <= 1e-8);

    // two-hump fixture: b-invariance at real probes
    std::vector<cplx> s2 = u.samples();
    for (int j = 0; j < g.N; ++j) s2[j] += 0.1 * std::exp(-g.x(j) * g.x(j));
    const Field u2(g, std::move(s2));
    const auto zeros2 = locate(u2, box);
    c.add_flag("two-hump: one zero", zeros2.size() == 1);
    if (zeros2.size() == 1) {
        const BacklundData bd2 = eigenfunction(u2, zeros2[0].zeta);
        const Field ur2 = backlund_remove(u2, bd2);
        c.add("two-hump mass drop - 8 arg lam1",
              u2.l2sq() - ur2.l2sq() - 8.0 * std::arg(bd2.lambda1.lambda), 1e-6);
        JostSolver sb(u2), sa(ur2, JostSolver::Options{2, 1e-8, false, 0.5});
        double worst_b = 0.0;
        for (double lam : {0.5, 1.0, 1.5}) {
            const auto b0 = sb.scattering(SpectralPoint::from_lambda(lam));
            const auto b1 = sa.scattering(SpectralPoint::from_lambda(lam));
            worst_b = std::max(worst_b, std::abs(b1.b - b0.b));
        }
        c.add("b-invariance", worst_b, 1e-4);
        // the removed eigenvalue must be gone
        const auto post = locate(ur2, box);
        bool near = false;
        for (const auto& z : post)
            if (std::abs(z.zeta - zeros2[0].zeta) < 1e-3) near = true;
        c.add_flag("no zero near removed zeta_1", !near);
    }
    return {"A9", "Backlund transformation suite", c.pass, c.worst_ratio, c.detail.str()};
}

Criterion a10() {
    Check c;
    const Grid g = desk_grid();
    const Field u = gaussian_field(g, 0.2);
    RayTrace::Options ro;
    ro.n_modes = 1024;
    RayTrace trace(u, ro);
    for (double rho : {0.5, 1.0, 2.0, 5.0}) {
        const double ph = trace.log_at(rho).imag();
        std::ostringstream name;
        name << "phi(" << rho << ") >= -1e-4: value";
        c.add_flag(name.str() + "=" + std::to_string(ph), ph >= -1e-4);
    }
    // algebraic soliton: atilde == 1 up to truncation
    const Grid galg(400.0, 4096);
    const Field ua = soliton_field(SolitonParams(0.0, 1.0), 0.0, galg);
    RayTrace::Options ra;
    ra.n_modes = 2048;
    RayTrace tra(ua, ra);
    for (double rho : {1.0, 2.0, 5.0}) {
        std::ostringstream name;
        name << "|log atilde(" << rho << "i)| (algebraic)";
        c.add(name.str(), std::abs(tra.log_at(rho)), 0.05);
    }
    return {"A10", "zero-free rigidity and the class A", c.pass, c.worst_ratio, c.detail.str()};
}

Criterion a11() {
    Check c;
    const Grid g = desk_grid();
    const Field f10 =
        make_field(g, [](double x) { return cplx(soliton_profile(SolitonParams(1.0, 0.0), x), 0.0); });
    const double q = gn_ratio(f10, GnKind::quintic);
    c.add("quintic ratio - 4/pi^2 (rel)", (q - 4.0 / (M_PI * M_PI)) / (4.0 / (M_PI * M_PI)), 1e-6);
    const Grid galg(400.0, 4096);
    const Field f01 = make_field(
        galg, [](double x) { return cplx(soliton_profile(SolitonParams(0.0, 1.0), x), 0.0); });
    const double cgn = std::pow(3.0, 1.0 / 6.0) * std::pow(2.0 * M_PI, -1.0 / 9.0);
    c.add("quartic ratio - C_GN (rel)", (gn_ratio(f01, GnKind::quartic) - cgn) / cgn, 1e-3);
    return {"A11", "Gagliardo-Nirenberg extremals", c.pass, c.worst_ratio, c.detail.str()};
}

Criterion a12() {
    Check c;
    const Grid g = desk_grid();
    const Field u = gaussian_field(g, 0.5);
    JostSolver solver(u);
    const ZSPotential zs = zs_gauge(u);
    double worst = 0.0;
    for (cplx zeta : {cplx(0.0, 1.0), cplx(0.0, 2.0), cplx(-1.0, 1.0)})
        worst = std::max(worst, std::abs(scattering_zs(zs, zeta) - solver.a_tilde(zeta)));
    c.add("max|a_zs - a_direct|", worst, 1e-6);
    return {"A12", "Zakharov-Shabat gauge cross-check", c.pass, c.worst_ratio, c.detail.str()};
}

}  // namespace

std::vector<Criterion> run_acceptance(const std::string& filter) {
    using Fn = std::function<Criterion()>;
    const std::pair<const char*, Fn> table[] = {
        {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4},  {"A5", a5},  {"A6", a6},
        {"A7", a7}, {"A8", a8}, {"A9", a9}, {"A10", a10}, {"A11", a11}, {"A12", a12},
    };
    std::vector<Criterion> out;
    for (const auto& [id, fn] : table) {
        if (!filter.empty() && filter != id) continue;
        try {
            out.push_back(fn());
        } catch (const std::exception& e) {
            out.push_back({id, "criterion aborted", false, 1e300, e.what()});
        }
    }
    return out;
}

}  // namespace dnls
