#include "dnls/jost.hpp"

#include <cmath>
#include <sstream>

namespace dnls {

namespace {

constexpr double kGauss1 = 0.5 - 0.28867513459481288225;  // 1/2 -+ sqrt(3)/6
constexpr double kGauss2 = 0.5 + 0.28867513459481288225;
constexpr double kStiffRk4 = 0.5;    // switch to Magnus above |2 zeta| h
constexpr double kStiffMagnus = 2.5; // refine until |2 zeta| h below this
constexpr double kOverflow = 1e300;

using vec2 = std::array<cplx, 2>;

// Coefficients of the factored first-order systems.  Both the Kaup-Newell and
// the Zakharov-Shabat problems take the form
//   left  (m):  v' = [[0,    b(x)],[c(x), 2 i zeta]] v
//   right (n):  v' = [[-2 i zeta, b(x)],[c(x), 0]] v
struct KNCoef {
    const cplx* s;
    cplx lam;
    cplx b(int i) const { return lam * s[i]; }
    cplx c(int i) const { return -lam * std::conj(s[i]); }
};
struct ZSCoef {
    const cplx* q;
    const cplx* r;
    cplx b(int i) const { return cplx(0.0, -1.0) * q[i]; }
    cplx c(int i) const { return cplx(0.0, 1.0) * r[i]; }
};

// exp of a 2x2 complex matrix [[a,b],[c,d]], closed form
inline void expm2(cplx a, cplx b, cplx c, cplx d, cplx E[4]) {
    const cplx mu = 0.5 * (a + d);
    const cplx q = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
    cplx ch, sd;
    if (std::abs(q) < 1e-8) {
        ch = 1.0 + 0.5 * q * q;
        sd = 1.0 + q * q / 6.0;
    } else {
        ch = std::cosh(q);
        sd = std::sinh(q) / q;
    }
    const cplx em = std::exp(mu);
    E[0] = em * (ch + sd * 0.5 * (a - d));
    E[1] = em * sd * b;
    E[2] = em * sd * c;
    E[3] = em * (ch - sd * 0.5 * (a - d));
}

inline bool too_big(const vec2& v) {
    return std::abs(v[0].real()) > kOverflow || std::abs(v[0].imag()) > kOverflow ||
           std::abs(v[1].real()) > kOverflow || std::abs(v[1].imag()) > kOverflow;
}

void overflow_throw(cplx zeta) {
    std::ostringstream os;
    os << "jost: trajectory overflow at zeta = (" << zeta.real() << "," << zeta.imag()
       << "); spectral parameter too deep for this truncation";
    throw numerical_error(os.str());
}

// RK4 over node steps [j0, j1) of the left system; half[] holds samples on the
// h/2 sub-lattice (node j at index 2j).  traj, when given, records v at each node.
template <class Coef>
vec2 rk4_left(const Coef& co_half, cplx zeta, double hh, int j0, int j1, int M, vec2 v,
              std::vector<vec2>* traj) {
    const cplx dz = 2.0 * cplx(0.0, 1.0) * zeta;
    auto rhs = [&](int i, const vec2& w) -> vec2 {
        const cplx b = co_half.b(i), c = co_half.c(i);
        return {b * w[1], c * w[0] + dz * w[1]};
    };
    for (int j = j0; j < j1; ++j) {
        const int i0 = 2 * j, im = 2 * j + 1, i1 = (2 * j + 2) % (2 * M);
        const vec2 k1 = rhs(i0, v);
        const vec2 k2 = rhs(im, {v[0] + 0.5 * hh * k1[0], v[1] + 0.5 * hh * k1[1]});
        const vec2 k3 = rhs(im, {v[0] + 0.5 * hh * k2[0], v[1] + 0.5 * hh * k2[1]});
        const vec2 k4 = rhs(i1, {v[0] + hh * k3[0], v[1] + hh * k3[1]});
        v[0] += hh / 6.0 * (k1[0] + 2.0 * (k2[0] + k3[0]) + k4[0]);
        v[1] += hh / 6.0 * (k1[1] + 2.0 * (k2[1] + k3[1]) + k4[1]);
        if (traj) (*traj)[j + 1] = v;
        if ((j & 255) == 0 && too_big(v)) overflow_throw(zeta);
    }
    return v;
}

// RK4 of the right system, integrated right-to-left over node steps (j1, j0].
template <class Coef>
vec2 rk4_right(const Coef& co_half, cplx zeta, double hh, int j1, int j0, int M, vec2 v,
               std::vector<vec2>* traj) {
    const cplx dz = -2.0 * cplx(0.0, 1.0) * zeta;
    auto rhs = [&](int i, const vec2& w) -> vec2 {
        const cplx b = co_half.b(i), c = co_half.c(i);
        return {dz * w[0] + b * w[1], c * w[0]};
    };
    for (int j = j1; j > j0; --j) {
        const int i1 = (2 * j) % (2 * M), im = 2 * j - 1, i0 = 2 * j - 2;
        const vec2 k1 = rhs(i1, v);
        const vec2 k2 = rhs(im, {v[0] - 0.5 * hh * k1[0], v[1] - 0.5 * hh * k1[1]});
        const vec2 k3 = rhs(im, {v[0] - 0.5 * hh * k2[0], v[1] - 0.5 * hh * k2[1]});
        const vec2 k4 = rhs(i0, {v[0] - hh * k3[0], v[1] - hh * k3[1]});
        v[0] -= hh / 6.0 * (k1[0] + 2.0 * (k2[0] + k3[0]) + k4[0]);
        v[1] -= hh / 6.0 * (k1[1] + 2.0 * (k2[1] + k3[1]) + k4[1]);
        if (traj) (*traj)[j - 1] = v;
        if ((j & 255) == 0 && too_big(v)) overflow_throw(zeta);
    }
    return v;
}

// 4th-order Magnus step (two-point Gauss) for the left system; stable for
// stiff zeta since the exponential treats the diagonal exactly.
template <class Coef>
vec2 magnus_left(const Coef& g1, const Coef& g2, cplx zeta, double hh, int j0, int j1, vec2 v,
                 std::vector<vec2>* traj) {
    const cplx dz = 2.0 * cplx(0.0, 1.0) * zeta;
    const double s32 = std::sqrt(3.0) * hh * hh / 12.0;
    cplx E[4];
    for (int j = j0; j < j1; ++j) {
        const cplx b1 = g1.b(j), c1 = g1.c(j), b2 = g2.b(j), c2 = g2.c(j);
        // [A2,A1] for A_i = [[0,b_i],[c_i,dz]]
        const cplx ca = b2 * c1 - b1 * c2;
        expm2(s32 * ca, 0.5 * hh * (b1 + b2) + s32 * dz * (b2 - b1),
              0.5 * hh * (c1 + c2) + s32 * dz * (c1 - c2), hh * dz - s32 * ca, E);
        v = {E[0] * v[0] + E[1] * v[1], E[2] * v[0] + E[3] * v[1]};
        if (traj) (*traj)[j + 1] = v;
        if ((j & 255) == 0 && too_big(v)) overflow_throw(zeta);
    }
    return v;
}

// Right system backwards: the inverse of the forward interval propagator.
template <class Coef>
vec2 magnus_right(const Coef& g1, const Coef& g2, cplx zeta, double hh, int j1, int j0, vec2 v,
                  std::vector<vec2>* traj) {
    const cplx dz = -2.0 * cplx(0.0, 1.0) * zeta;
    const double s32 = std::sqrt(3.0) * hh * hh / 12.0;
    cplx E[4];
    for (int j = j1 - 1; j >= j0; --j) {
        const cplx b1 = g1.b(j), c1 = g1.c(j), b2 = g2.b(j), c2 = g2.c(j);
        // [A2,A1] for A_i = [[dz,b_i],[c_i,0]]
        const cplx ca = b2 * c1 - b1 * c2;
        const cplx Oa = hh * dz + s32 * ca;
        const cplx Ob = 0.5 * hh * (b1 + b2) + s32 * dz * (b1 - b2);
        const cplx Oc = 0.5 * hh * (c1 + c2) + s32 * dz * (c2 - c1);
        const cplx Od = -s32 * ca;
        expm2(-Oa, -Ob, -Oc, -Od, E);
        v = {E[0] * v[0] + E[1] * v[1], E[2] * v[0] + E[3] * v[1]};
        if (traj) (*traj)[j] = v;
        if ((j & 255) == 0 && too_big(v)) overflow_throw(zeta);
    }
    return v;
}

}  // namespace

struct JostSolver::Lattice {
    int refine;
    double step;
    std::vector<cplx> half;    // h/(2 refine) sub-lattice, 2M samples
    std::vector<cplx> gauss1;  // Gauss nodes of each step, M samples each
    std::vector<cplx> gauss2;
};

JostSolver::JostSolver(const Field& f) : JostSolver(f, Options()) {}

JostSolver::JostSolver(const Field& f, Options opt)
    : grid_(f.grid()), u_(f.samples()), mass_(f.l2sq()), opt_(opt) {
    if (opt_.refine < 1) throw config_error("jost: refine must be >= 1");
    if (opt_.enforce_boundary && f.boundary_abs() > opt_.boundary_tol) {
        std::ostringstream os;
        os << "jost: |u| = " << f.boundary_abs() << " at the window edge exceeds the boundary "
           << "tolerance " << opt_.boundary_tol << " (enlarge L or relax the tolerance)";
        throw config_error(os.str());
    }
}

std::shared_ptr<const JostSolver::Lattice> JostSolver::lattice(int refine) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(refine);
    if (it != cache_.end()) return it->second;
    auto lat = std::make_shared<Lattice>();
    lat->refine = refine;
    lat->step = grid_.h() / refine;
    lat->half = resample(grid_, u_, 2 * refine);
    lat->gauss1 = resample(grid_, u_, refine, kGauss1);
    lat->gauss2 = resample(grid_, u_, refine, kGauss2);
    cache_.emplace(refine, lat);
    return lat;
}

int JostSolver::refine_for(cplx zeta) const {
    // grow the lattice until the stiff scale |2 zeta| h is resolvable
    int r = opt_.refine;
    while (std::abs(2.0 * zeta) * grid_.h() / r > kStiffMagnus) {
        r *= 2;
        if (r > 4096) throw numerical_error("jost: spectral parameter too stiff for this grid");
    }
    return r;
}

cplx JostSolver::a(const SpectralPoint& lp) const {
    // the factored Wronskian never materializes e^{Im(zeta) x} factors, so
    // deep zeta is fine here; the step kernels watch for runaway magnitudes
    const cplx zeta = lp.zeta;
    if (zeta.imag() < 0.0) throw config_error("jost: Im(zeta) must be >= 0");
    const int r = refine_for(zeta);
    auto lat = lattice(r);
    const int M = grid_.N * r;
    const int jm = int(M * opt_.match_fraction);
    const bool stiff = std::abs(2.0 * zeta) * lat->step > kStiffRk4;
    vec2 m{cplx(1.0), cplx(0.0)}, n{cplx(0.0), cplx(1.0)};
    if (!stiff) {
        KNCoef co{lat->half.data(), lp.lambda};
        m = rk4_left(co, zeta, lat->step, 0, jm, M, m, nullptr);
        n = rk4_right(co, zeta, lat->step, M, jm, M, n, nullptr);
    } else {
        KNCoef g1{lat->gauss1.data(), lp.lambda}, g2{lat->gauss2.data(), lp.lambda};
        m = magnus_left(g1, g2, zeta, lat->step, 0, jm, m, nullptr);
        n = magnus_right(g1, g2, zeta, lat->step, M, jm, n, nullptr);
    }
    return m[0] * n[1] - m[1] * n[0];
}

cplx JostSolver::a_tilde(cplx zeta) const {
    return std::exp(cplx(0.0, 0.5 * mass_)) * a(SpectralPoint::from_zeta(zeta));
}

ScatteringSample JostSolver::scattering(const SpectralPoint& lp) const {
    ScatteringSample out;
    out.lp = lp;
    out.method = ScatterMethod::ode;
    if (lp.zeta.imag() == 0.0) {
        // real zeta: both Jost bases exist, b from the full crossing
        const int r = refine_for(lp.zeta);
        auto lat = lattice(r);
        const int M = grid_.N * r;
        vec2 m{cplx(1.0), cplx(0.0)};
        if (std::abs(2.0 * lp.zeta) * lat->step > kStiffRk4) {
            KNCoef g1{lat->gauss1.data(), lp.lambda}, g2{lat->gauss2.data(), lp.lambda};
            m = magnus_left(g1, g2, lp.zeta, lat->step, 0, M, m, nullptr);
        } else {
            KNCoef co{lat->half.data(), lp.lambda};
            m = rk4_left(co, lp.zeta, lat->step, 0, M, M, m, nullptr);
        }
        out.a = m[0];
        out.b = std::exp(cplx(0.0, -2.0 * lp.zeta.real() * grid_.L)) * m[1];
        out.has_b = true;
    } else {
        out.a = a(lp);
        out.has_b = false;
    }
    return out;
}

JostPair JostSolver::jost(const SpectralPoint& lp) const {
    const cplx zeta = lp.zeta;
    if (zeta.imag() < 0.0) throw config_error("jost: Im(zeta) must be >= 0");
    if (std::abs(zeta.imag()) * 2.0 * grid_.L > 600.0)
        throw numerical_error("jost: Im(zeta) too deep for this truncation");
    const int r = refine_for(zeta);
    auto lat = lattice(r);
    const int M = grid_.N * r;
    JostPair jp;
    jp.lp = lp;
    jp.refine = r;
    jp.step = lat->step;
    jp.m.assign(M + 1, vec2{cplx(0.0), cplx(0.0)});
    jp.n.assign(M + 1, vec2{cplx(0.0), cplx(0.0)});
    jp.m[0] = {cplx(1.0), cplx(0.0)};
    jp.n[M] = {cplx(0.0), cplx(1.0)};
    const bool stiff = std::abs(2.0 * zeta) * lat->step > kStiffRk4;
    if (!stiff) {
        KNCoef co{lat->half.data(), lp.lambda};
        rk4_left(co, zeta, lat->step, 0, M, M, jp.m[0], &jp.m);
        rk4_right(co, zeta, lat->step, M, 0, M, jp.n[M], &jp.n);
    } else {
        KNCoef g1{lat->gauss1.data(), lp.lambda}, g2{lat->gauss2.data(), lp.lambda};
        magnus_left(g1, g2, zeta, lat->step, 0, M, jp.m[0], &jp.m);
        magnus_right(g1, g2, zeta, lat->step, M, 0, jp.n[M], &jp.n);
    }
    return jp;
}

ZSPotential zs_gauge(const Field& f) {
    const Grid& g = f.grid();
    std::vector<cplx> absu2(g.N);
    for (int j = 0; j < g.N; ++j) absu2[j] = std::norm(f.samples()[j]);
    const double total = f.l2sq();
    std::vector<cplx> cum = cumulative_integral(g, absu2);
    std::vector<cplx> ux = derivative(g, f.samples());
    ZSPotential zs;
    zs.grid = g;
    zs.q.resize(g.N);
    zs.r.resize(g.N);
    for (int j = 0; j < g.N; ++j) {
        const double Ix = total - cum[j].real();  // int_x^inf |u|^2
        const cplx u = f.samples()[j];
        zs.q[j] = 0.5 * u * std::exp(cplx(0.0, -Ix));
        zs.r[j] = (cplx(0.0, 1.0) * std::conj(ux[j]) + 0.5 * std::conj(u) * std::norm(u)) *
                  std::exp(cplx(0.0, Ix));
    }
    return zs;
}

cplx scattering_zs(const ZSPotential& zs, cplx zeta, int refine) {
    if (zeta.imag() < 0.0) throw config_error("scattering_zs: Im(zeta) must be >= 0");
    const Grid& g = zs.grid;
    int r = refine;
    while (std::abs(2.0 * zeta) * g.h() / r > kStiffRk4) {
        r *= 2;
        if (r > 4096) throw numerical_error("scattering_zs: zeta too stiff for this grid");
    }
    const int M = g.N * r;
    const double hh = g.h() / r;
    std::vector<cplx> qh = resample(g, zs.q, 2 * r);
    std::vector<cplx> rh = resample(g, zs.r, 2 * r);
    ZSCoef co{qh.data(), rh.data()};
    const int jm = M / 2;
    vec2 m = rk4_left(co, zeta, hh, 0, jm, M, {cplx(1.0), cplx(0.0)}, nullptr);
    vec2 n = rk4_right(co, zeta, hh, M, jm, M, {cplx(0.0), cplx(1.0)}, nullptr);
    return m[0] * n[1] - m[1] * n[0];
}

ALimitsReport a_limits(const Field& f, double delta) {
    if (!(delta > 0.0 && delta < M_PI / 2.0)) throw config_error("a_limits: need 0 < delta < pi/2");
    JostSolver solver(f);
    const double scale = std::max(1.0, f.l4_4());
    const cplx alim = std::exp(cplx(0.0, -0.5 * f.l2sq()));
    ALimitsReport rep;
    for (double r : {1e-3, 3.16e-3, 1e-2}) {
        const double rho = r * scale;
        rep.rho_small.push_back(rho);
        rep.dev_small.push_back(std::abs(solver.a(SpectralPoint::from_zeta(cplx(0.0, rho))) - 1.0));
    }
    for (double r : {1e2, 3.16e2, 1e3}) {
        const double rho = r * scale;
        rep.rho_large.push_back(rho);
        rep.dev_large.push_back(std::abs(solver.a(SpectralPoint::from_zeta(cplx(0.0, rho))) - alim));
    }
    return rep;
}

}  // namespace dnls
