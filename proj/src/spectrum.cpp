#include "dnls/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dnls/fredholm.hpp"
#include "dnls/parallel.hpp"

namespace dnls {

namespace {

// phase increment of atilde between two ray nodes, refined in log scale until
// each step stays below pi/2; a persistent near-pi jump marks a zero pinched
// between the nodes.
double ray_phase_step(const JostSolver& solver, double theta, double r0, cplx v0, double r1,
                      cplx v1, double& min_abs, double zero_tol, int depth) {
    const double d = std::arg(v1 / v0);
    if (std::abs(d) <= M_PI / 2) return d;
    if (depth >= 48 || min_abs < zero_tol)
        throw numerical_error("ray_count: phase step will not settle (zero on or near the ray)");
    const double rm = std::sqrt(r0 * r1);
    const cplx vm = solver.a_tilde(rm * std::exp(cplx(0.0, theta)));
    min_abs = std::min(min_abs, std::abs(vm));
    return ray_phase_step(solver, theta, r0, v0, rm, vm, min_abs, zero_tol, depth + 1) +
           ray_phase_step(solver, theta, rm, vm, r1, v1, min_abs, zero_tol, depth + 1);
}

// unwrapped track over a fixed descending node set, adaptive between nodes
double ode_track(const JostSolver& solver, double theta, double rho_hi, double rho_lo, int n,
                 double phase0, const cplx& val0, double& min_abs, double zero_tol) {
    std::vector<double> rhos(n);
    std::vector<cplx> vals(n);
    for (int i = 0; i < n; ++i) rhos[i] = rho_hi * std::pow(rho_lo / rho_hi, i / double(n - 1));
    par::for_index(n, [&](std::ptrdiff_t i) {
        vals[i] = solver.a_tilde(rhos[i] * std::exp(cplx(0.0, theta)));
    });
    for (const cplx& v : vals) min_abs = std::min(min_abs, std::abs(v));
    double phase = phase0 + std::arg(vals[0] / val0);
    for (int i = 0; i + 1 < n; ++i)
        phase += ray_phase_step(solver, theta, rhos[i], vals[i], rhos[i + 1], vals[i + 1], min_abs,
                                zero_tol, 0);
    return phase;
}

}  // namespace

RayCountResult ray_count(const Field& f, double theta, RayCountOptions opt) {
    if (!(theta > 0.0 && theta < M_PI)) throw config_error("ray_count: theta must be in (0, pi)");
    const double mass = f.l2sq();
    const double scale = std::max(1.0, f.l4_4());
    // the lower endpoint must not scale up with the fixture norm: the snap to
    // the atilde(0) limit needs the tracked phase already converged there
    const double rho_min = opt.rho_min_factor * std::min(1.0, f.l4_4() > 0.0 ? f.l4_4() : 1.0);
    const double seam = std::max(rho_min, 2.5 * f.grid().mode_spacing());
    JostSolver solver(f);
    RayCountResult res;
    res.min_abs = 1e300;

    double phase_seam;
    cplx val_seam;
    if (opt.use_det && seam > rho_min) {
        RayTrace::Options ro;
        ro.theta = theta;
        // phase tracking needs far less bandwidth than pointwise det values
        ro.n_modes = opt.n_modes > 0 ? opt.n_modes : std::min(f.grid().N / 2, 1024);
        RayTrace trace(f, ro);
        const cplx lg = trace.log_at(seam);
        phase_seam = lg.imag();
        val_seam = std::exp(lg);
        res.min_abs = std::min(res.min_abs, trace.min_abs_on_nodes());
    } else {
        // pure ODE track from a large anchor
        double anchor = 100.0 * scale;
        cplx a0 = solver.a_tilde(anchor * std::exp(cplx(0.0, theta)));
        if (std::abs(std::log(a0)) > 0.6) {
            anchor *= 10.0;
            a0 = solver.a_tilde(anchor * std::exp(cplx(0.0, theta)));
        }
        res.min_abs = std::min(res.min_abs, std::abs(a0));
        phase_seam = ode_track(solver, theta, anchor, seam, 97, std::arg(a0), a0, res.min_abs,
                               opt.zero_tol);
        val_seam = solver.a_tilde(seam * std::exp(cplx(0.0, theta)));
    }

    // ODE nodes through the seam down to rho_min
    if (seam > rho_min)
        phase_seam = ode_track(solver, theta, seam, rho_min, 33, phase_seam, val_seam, res.min_abs,
                               opt.zero_tol);

    if (res.min_abs < opt.zero_tol)
        throw numerical_error("ray_count: |atilde| dips to " + std::to_string(res.min_abs) +
                              " on the ray (zero on or near the ray)");

    res.raw = mass / (4.0 * M_PI) - phase_seam / (2.0 * M_PI);
    res.count = int(std::lround(res.raw));
    res.dist_to_int = std::abs(res.raw - res.count);
    res.ray_integral = -phase_seam / (2.0 * M_PI);
    if (res.dist_to_int > opt.int_tol) {
        std::ostringstream os;
        os << "ray_count: raw value " << res.raw << " is " << res.dist_to_int
           << " away from an integer (quadrature failure or near-ray zero)";
        throw numerical_error(os.str());
    }
    return res;
}

bool angle_bound_check(const Field& f, double theta, int count) {
    return count <= f.l2sq() / (4.0 * theta) + 1e-12;
}

namespace {

struct BoundaryWalk {
    double winding_raw = 0.0;
    double min_abs = 1e300;
};

double phase_step(const JostSolver& solver, cplx z0, cplx v0, cplx z1, cplx v1, double& min_abs,
                  int depth) {
    const double d = std::arg(v1 / v0);
    if (std::abs(d) <= M_PI / 2 || depth >= 60) return d;
    const cplx zm = 0.5 * (z0 + z1);
    const cplx vm = solver.a_tilde(zm);
    min_abs = std::min(min_abs, std::abs(vm));
    return phase_step(solver, z0, v0, zm, vm, min_abs, depth + 1) +
           phase_step(solver, zm, vm, z1, v1, min_abs, depth + 1);
}

// atilde around the rectangle, counter-clockwise, with adaptive refinement of
// the phase track.
BoundaryWalk walk_boundary(const JostSolver& solver, const Box& b, int nodes_per_edge) {
    std::vector<cplx> pts;
    auto edge = [&](cplx z0, cplx z1) {
        for (int i = 0; i < nodes_per_edge; ++i)
            pts.push_back(z0 + (z1 - z0) * (i / double(nodes_per_edge)));
    };
    const cplx c00(b.re_lo, b.im_lo), c10(b.re_hi, b.im_lo), c11(b.re_hi, b.im_hi),
        c01(b.re_lo, b.im_hi);
    edge(c00, c10);
    edge(c10, c11);
    edge(c11, c01);
    edge(c01, c00);
    pts.push_back(c00);  // close the loop

    std::vector<cplx> vals(pts.size());
    par::for_index(ptrdiff_t(pts.size()),
                   [&](std::ptrdiff_t i) { vals[i] = solver.a_tilde(pts[i]); });
    BoundaryWalk w;
    double total = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        w.min_abs = std::min({w.min_abs, std::abs(vals[i]), std::abs(vals[i + 1])});
        total += phase_step(solver, pts[i], vals[i], pts[i + 1], vals[i + 1], w.min_abs, 0);
    }
    w.winding_raw = total / (2.0 * M_PI);
    return w;
}

struct LocateCtx {
    const JostSolver& solver;
    const LocateOptions& opt;
    std::vector<ZeroRecord>& out;
};

cplx atilde_derivative(const JostSolver& solver, cplx z) {
    const double dz = 1e-6 * (1.0 + std::abs(z));
    return (solver.a_tilde(z + dz) - solver.a_tilde(z - dz)) / (2.0 * dz);
}

bool newton_refine(const JostSolver& solver, const Box& b, const LocateOptions& opt,
                   ZeroRecord& rec) {
    cplx z(0.5 * (b.re_lo + b.re_hi), 0.5 * (b.im_lo + b.im_hi));
    const double margin_re = 0.5 * (b.re_hi - b.re_lo), margin_im = 0.5 * (b.im_hi - b.im_lo);
    for (int it = 1; it <= 40; ++it) {
        const cplx fz = solver.a_tilde(z);
        const cplx dz = atilde_derivative(solver, z);
        if (std::abs(dz) < 1e-300) return false;
        const cplx znew = z - fz / dz;
        if (znew.imag() <= 0.0) return false;
        if (std::abs(znew.real() - 0.5 * (b.re_lo + b.re_hi)) > 1.6 * margin_re ||
            std::abs(znew.imag() - 0.5 * (b.im_lo + b.im_hi)) > 1.6 * margin_im)
            return false;
        const double step = std::abs(znew - z);
        z = znew;
        if (step < opt.newton_tol * (1.0 + std::abs(z))) {
            rec.zeta = z;
            rec.residual = std::abs(solver.a_tilde(z));
            rec.newton_iters = it;
            return rec.residual < opt.residual_gate;
        }
    }
    return false;
}

void locate_recurse(LocateCtx& ctx, Box b, int depth) {
    if (int(ctx.out.size()) >= ctx.opt.max_zeros)
        throw numerical_error("locate: too many zeros in the search box");
    BoundaryWalk w;
    int attempts = 0;
    for (;;) {
        w = walk_boundary(ctx.solver, b, ctx.opt.nodes_per_edge);
        if (w.min_abs >= ctx.opt.boundary_zero_tol) break;
        if (++attempts > 3)
            throw numerical_error("locate: atilde vanishes on a subdivision boundary");
        // nudge the box outward, staying inside C_+
        const double dre = 0.013 * (b.re_hi - b.re_lo), dim = 0.013 * (b.im_hi - b.im_lo);
        b.re_lo -= dre;
        b.re_hi += dre;
        b.im_hi += dim;
        b.im_lo = std::max(0.25 * b.im_lo, b.im_lo - dim);
    }
    const int wind = int(std::lround(w.winding_raw));
    if (std::abs(w.winding_raw - wind) > 0.2)
        throw numerical_error("locate: boundary winding not close to an integer");
    if (wind <= 0) return;

    const double wid = std::max(b.re_hi - b.re_lo, b.im_hi - b.im_lo);
    if (wind == 1) {
        ZeroRecord rec;
        if (newton_refine(ctx.solver, b, ctx.opt, rec)) {
            rec.winding = 1;
            ctx.out.push_back(rec);
            return;
        }
    }
    if (wid < ctx.opt.min_box) {
        // give up refining: surface whatever sits here as a cluster record
        ZeroRecord rec;
        rec.zeta = cplx(0.5 * (b.re_lo + b.re_hi), 0.5 * (b.im_lo + b.im_hi));
        rec.residual = std::abs(ctx.solver.a_tilde(rec.zeta));
        rec.cluster = true;
        rec.winding = wind;
        ctx.out.push_back(rec);
        return;
    }
    Box lo = b, hi = b;
    if (b.re_hi - b.re_lo >= b.im_hi - b.im_lo) {
        const double mid = 0.5 * (b.re_lo + b.re_hi);
        lo.re_hi = mid;
        hi.re_lo = mid;
    } else {
        const double mid = 0.5 * (b.im_lo + b.im_hi);
        lo.im_hi = mid;
        hi.im_lo = mid;
    }
    locate_recurse(ctx, lo, depth + 1);
    locate_recurse(ctx, hi, depth + 1);
}

}  // namespace

std::vector<ZeroRecord> locate(const Field& f, const Box& box, LocateOptions opt) {
    if (!(box.im_lo > 0.0)) throw config_error("locate: box must lie strictly inside C_+");
    if (!(box.re_lo < box.re_hi && box.im_lo < box.im_hi)) throw config_error("locate: empty box");
    JostSolver solver(f, JostSolver::Options{opt.refine, 1e-8, false, 0.5});
    std::vector<ZeroRecord> out;
    LocateCtx ctx{solver, opt, out};
    locate_recurse(ctx, box, 0);
    std::sort(out.begin(), out.end(),
              [](const ZeroRecord& a, const ZeroRecord& b) { return a.zeta.real() < b.zeta.real(); });
    // Newton basins of sibling boxes can land on the same zero
    std::vector<ZeroRecord> uniq;
    for (const ZeroRecord& z : out) {
        bool dup = false;
        for (const ZeroRecord& u : uniq)
            if (std::abs(u.zeta - z.zeta) < 1e-7 * (1.0 + std::abs(z.zeta))) dup = true;
        if (!dup) uniq.push_back(z);
    }
    return uniq;
}

MassTraceResult mass_trace_identity(const Field& f, MassTraceOptions opt) {
    MassTraceResult r;
    r.mass = f.l2sq();
    std::vector<ZeroRecord> zeros = locate(f, opt.search, opt.locate_opt);
    r.n_zeros = int(zeros.size());
    for (const ZeroRecord& z : zeros) {
        double a = std::arg(z.zeta);  // in (0, pi) for Im > 0, matching arg in [0, 2 pi)
        r.zero_term += 4.0 * a;
    }
    // int dxi/xi ln|atilde|^2 over [-Xi, Xi], midpoint rule (integrand smooth
    // through 0 since atilde(0+-) -> e^{iM/2})
    JostSolver solver(f);
    const int n = opt.nodes_per_side;
    const double dxi = opt.xi_window / n;
    std::vector<double> vals(2 * n);
    par::for_index(2 * n, [&](std::ptrdiff_t i) {
        const bool pos = i < n;
        const double xi = (double(pos ? i : i - n) + 0.5) * dxi;
        const SpectralPoint lp =
            pos ? SpectralPoint::from_lambda(std::sqrt(xi)) : SpectralPoint::from_lambda(cplx(0.0, std::sqrt(xi)));
        const double ln2 = 2.0 * std::log(std::abs(solver.a(lp)));
        vals[i] = pos ? ln2 / xi : ln2 / (-xi);
    });
    double integral = 0.0;
    for (double v : vals) integral += v;
    integral *= dxi;
    r.integral_term = -integral / M_PI;
    r.residual = std::abs(r.mass - r.zero_term - r.integral_term);
    return r;
}

ZeroLocationReport zero_location_bound(const Field& f, const std::vector<ZeroRecord>& zeros) {
    ZeroLocationReport rep;
    rep.hhalf_sq = f.hhalf_sq();
    rep.n_zeros = int(zeros.size());
    rep.min_re_zeta = zeros.empty() ? 0.0 : 1e300;
    for (const ZeroRecord& z : zeros) rep.min_re_zeta = std::min(rep.min_re_zeta, z.zeta.real());
    return rep;
}

}  // namespace dnls
