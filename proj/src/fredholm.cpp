#include "dnls/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <cblas.h>
#include <lapacke.h>

#include "dnls/errors.hpp"
#include "dnls/parallel.hpp"

namespace dnls {

namespace {

int auto_modes(const Grid& g, int n_modes) {
    if (n_modes > 0) return n_modes;
    return std::min(g.N / 2, 2048);
}

// uhat at wavenumber index d (p = pi d / L); zero beyond the represented band
inline cplx uhat_at(const std::vector<cplx>& uh, int N, int d) {
    if (d <= -N / 2 || d >= N / 2) return cplx(0.0);
    return uh[(d + N) % N];
}

// det(I - A) by LU with partial pivoting; A (column major) is consumed.
cplx det_i_minus(std::vector<cplx>& A, int n) {
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) A[j * n + i] = (i == j ? cplx(1.0) : cplx(0.0)) - A[j * n + i];
    std::vector<lapack_int> ipiv(n);
    lapack_int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, A.data(), n, ipiv.data());
    if (info < 0) throw numerical_error("det: zgetrf failed");
    // info > 0 means an exactly singular factor: determinant 0 is meaningful
    cplx det(1.0);
    int swaps = 0;
    double ex = 0.0;  // power-of-two exponent carried separately
    for (int i = 0; i < n; ++i) {
        det *= A[i * n + i];
        if (ipiv[i] != i + 1) ++swaps;
        double m = std::abs(det);
        if (m > 1e100 || (m > 0.0 && m < 1e-100)) {
            int e = 0;
            std::frexp(m, &e);
            det = cplx(std::ldexp(det.real(), -e), std::ldexp(det.imag(), -e));
            ex += e;
        }
    }
    if (swaps & 1) det = -det;
    return cplx(std::ldexp(det.real(), int(ex)), std::ldexp(det.imag(), int(ex)));
}

void zgemm_nn(int n, const std::vector<cplx>& A, const std::vector<cplx>& B, std::vector<cplx>& C) {
    const cplx one(1.0), zero(0.0);
    C.assign(size_t(n) * n, cplx(0.0));
    cblas_zgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, n, n, n, &one, A.data(), n, B.data(), n,
                &zero, C.data(), n);
}

}  // namespace

DiscretizedKernel build_kernel(const Field& f, const SpectralPoint& lp, int n_modes) {
    const Grid& g = f.grid();
    const cplx zeta = lp.zeta;
    if (!(zeta.imag() > 0.0)) throw config_error("build_kernel: Im(zeta) must be > 0");
    const int n = auto_modes(g, n_modes);
    if (n < 2 || n % 2 != 0) throw config_error("build_kernel: n_modes must be even and >= 2");
    if (n > g.N) throw config_error("build_kernel: n_modes exceeds the grid");
    DiscretizedKernel k;
    k.lp = lp;
    k.n_modes = n;
    k.mode_spacing = g.mode_spacing();
    k.B.resize(size_t(n) * n);
    k.C.resize(size_t(n) * n);
    const std::vector<cplx>& uh = f.spec();
    const cplx meas = k.mode_spacing / std::sqrt(2.0 * M_PI);
    const cplx fB = -cplx(0.0, 1.0) * lp.lambda * meas;
    const cplx fC = cplx(0.0, 1.0) * lp.lambda * meas;
    const int N = g.N;
    // block the columns: per-entry work is too small for a per-column schedule
    const int chunk = std::max(16, n / 64);
    const int n_chunks = (n + chunk - 1) / chunk;
    par::for_index(n_chunks, [&](std::ptrdiff_t c) {
        const int j1 = std::min(n, int(c + 1) * chunk);
        for (int j = int(c) * chunk; j < j1; ++j) {
            for (int i = 0; i < n; ++i) {
                const double p_row = k.mode_spacing * (i - n / 2);
                const int d = i - j;
                k.B[size_t(j) * n + i] = fB * uhat_at(uh, N, d) / (p_row + zeta);
                k.C[size_t(j) * n + i] = fC * std::conj(uhat_at(uh, N, -d)) / (p_row - zeta);
            }
        }
    });
    k.tr2_quad = trace2(f, lp);
    k.tr4_quad = trace4(f, lp);
    return k;
}

double hs_norm_sq(const DiscretizedKernel& k) {
    double s = 0.0;
    for (const cplx& v : k.B) s += std::norm(v);
    for (const cplx& v : k.C) s += std::norm(v);
    return s;
}

cplx trace2(const Field& f, const SpectralPoint& lp) {
    const Grid& g = f.grid();
    const cplx z2 = 2.0 * lp.zeta;
    cplx s(0.0);
    for (int k = 0; k < g.N; ++k) s += std::norm(f.spec()[k]) / (g.p(k) + z2);
    return 2.0 * cplx(0.0, 1.0) * lp.zeta * s * g.mode_spacing();
}

cplx trace4(const Field& f, const SpectralPoint& lp) {
    const Grid& g = f.grid();
    const cplx z2 = 2.0 * lp.zeta;
    const int N = g.N;
    std::vector<cplx> uh(N), vh(N), rp(N), rm(N), ubar(N);
    dft_forward(N, f.samples().data(), uh.data());
    for (int j = 0; j < N; ++j) ubar[j] = std::conj(f.samples()[j]);
    dft_forward(N, ubar.data(), vh.data());
    for (int k = 0; k < N; ++k) {
        uh[k] /= (g.p(k) + z2);
        vh[k] /= (g.p(k) - z2);
    }
    dft_inverse(N, uh.data(), rp.data());  // (D+2zeta)^{-1} u
    dft_inverse(N, vh.data(), rm.data());  // (D-2zeta)^{-1} conj(u)
    cplx s(0.0);
    for (int j = 0; j < N; ++j) s += std::conj(f.samples()[j]) * rp[j] * rp[j] * rm[j];
    return 4.0 * cplx(0.0, 1.0) * lp.zeta * lp.zeta * s * g.h();
}

DetResult det_result(const DiscretizedKernel& k) {
    const int n = k.n();
    DetResult r;
    r.tr2 = k.tr2_quad;
    r.tr4 = k.tr4_quad;
    // G = B C carries everything: tr M^2 = 2 tr G, tr M^4 = 2 tr G^2,
    // det(I - M) = det(I_n - G) by the Schur complement of the block form.
    std::vector<cplx> G;
    zgemm_nn(n, k.B, k.C, G);
    cplx trG(0.0), trG2(0.0);
    for (int i = 0; i < n; ++i) trG += G[size_t(i) * n + i];
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) trG2 += G[size_t(j) * n + i] * G[size_t(i) * n + j];
    r.tr2_mat = 2.0 * trG;
    r.tr4_mat = 2.0 * trG2;
    r.det_raw = det_i_minus(G, n);
    r.a2 = r.det_raw * std::exp(0.5 * (r.tr2_mat - r.tr2) + 0.25 * (r.tr4_mat - r.tr4));
    r.a4 = r.a2 * std::exp(0.5 * r.tr2);
    return r;
}

cplx det2(const DiscretizedKernel& k) { return det_result(k).a2; }
cplx det4(const DiscretizedKernel& k) { return det_result(k).a4; }

cplx det_regularized(std::vector<cplx> A, int dim, int order) {
    if (order != 1 && order != 2 && order != 4)
        throw config_error("det_regularized: order must be 1, 2 or 4");
    cplx corr(0.0);
    if (order >= 2) {
        std::vector<cplx> P = A, Q;
        cplx tr1(0.0);
        for (int i = 0; i < dim; ++i) tr1 += A[size_t(i) * dim + i];
        corr += tr1;
        for (int kpow = 2; kpow < order; ++kpow) {
            zgemm_nn(dim, P, A, Q);
            P.swap(Q);
            cplx tr(0.0);
            for (int i = 0; i < dim; ++i) tr += P[size_t(i) * dim + i];
            corr += tr / double(kpow);
        }
    }
    return det_i_minus(A, dim) * std::exp(corr);
}

// ---------------------------------------------------------------------------
// ray tracing of ln atilde

RayTrace::RayTrace(const Field& f) : RayTrace(f, Options()) {}

RayTrace::RayTrace(const Field& f, Options opt) : f_(f), opt_(opt), mass_(f.l2sq()) {
    if (!(opt_.theta > 0.0 && opt_.theta < M_PI))
        throw config_error("ray_trace: theta must be in (0, pi)");
    opt_.n_modes = auto_modes(f_.grid(), opt_.n_modes);
    double rho = opt_.rho_anchor > 0.0 ? opt_.rho_anchor : 100.0 * std::max(1.0, f.l4_4());
    for (int tries = 0;; ++tries) {
        cplx at = eval_atilde(rho);
        cplx lg = std::log(at);
        if (std::abs(lg) < 0.6) {
            chain_.emplace(rho, Node{rho, at, lg.imag()});
            break;
        }
        if (tries >= 3) throw numerical_error("ray_trace: no valid anchor at large |zeta|");
        rho *= 10.0;
    }
}

cplx RayTrace::eval_atilde(double rho) const {
    const cplx zeta = rho * std::exp(cplx(0.0, opt_.theta));
    DiscretizedKernel k = build_kernel(f_, SpectralPoint::from_zeta(zeta), opt_.n_modes);
    cplx at = std::exp(cplx(0.0, 0.5 * mass_)) * det_result(k).a2;
    if (!(std::abs(at) > 1e-300))
        throw numerical_error("ray_trace: atilde vanishes on the ray (zero on ray?)");
    return at;
}

const RayTrace::Node& RayTrace::connect(const Node& above, double rho, int depth) {
    cplx at = eval_atilde(rho);
    double dphi = std::arg(at / above.atilde);
    if (std::abs(dphi) > opt_.dphi_max) {
        if (depth > 40 || int(chain_.size()) > opt_.max_nodes)
            throw numerical_error("ray_trace: phase continuation failed (zero near the ray?)");
        const double mid = std::sqrt(above.rho * rho);
        const Node& nm = connect(above, mid, depth + 1);
        return connect(nm, rho, depth + 1);
    }
    auto it = chain_.emplace(rho, Node{rho, at, above.phase + dphi}).first;
    return it->second;
}

cplx RayTrace::log_at(double rho) {
    if (!(rho > 0.0)) throw config_error("ray_trace: rho must be positive");
    auto it = chain_.find(rho);
    if (it == chain_.end()) {
        // nearest chain node above rho (chain is sorted descending)
        auto above = chain_.lower_bound(rho);  // first with key <= rho under greater<>
        if (above == chain_.begin())
            throw config_error("ray_trace: query above the anchor");
        --above;
        const Node* cur = &above->second;
        // march down geometrically, then land on rho
        while (cur->rho / rho > opt_.step_factor)
            cur = &connect(*cur, cur->rho / opt_.step_factor, 0);
        cur = &connect(*cur, rho, 0);
        return std::log(std::abs(cur->atilde)) + cplx(0.0, cur->phase);
    }
    return std::log(std::abs(it->second.atilde)) + cplx(0.0, it->second.phase);
}

double RayTrace::min_abs_on_nodes() const {
    double m = 1e300;
    for (const auto& [rho, node] : chain_) m = std::min(m, std::abs(node.atilde));
    return m;
}

cplx log_a_tilde(const Field& f, cplx zeta, int n_modes) {
    if (!(zeta.imag() > 0.0)) throw config_error("log_a_tilde: Im(zeta) must be > 0");
    RayTrace::Options opt;
    opt.theta = std::arg(zeta);
    opt.n_modes = n_modes;
    RayTrace tr(f, opt);
    return tr.log_at(std::abs(zeta));
}

double phi_u(const Field& f, double rho, int n_modes) {
    return log_a_tilde(f, cplx(0.0, rho), n_modes).imag();
}

ExpansionFit expansion_coeffs(const Field& f, int n_modes, int n_nodes) {
    ExpansionFit fit;
    fit.n_modes = auto_modes(f.grid(), n_modes);
    const double scale = std::max(1.0, f.l4_4());
    const double lo = 1e2 * scale, hi = 1e4 * scale;
    const cplx eim = std::exp(cplx(0.0, 0.5 * f.l2sq()));
    // normal equations for ln atilde ~ E1/zeta + E2/zeta^2 on zeta = i rho
    cplx s11(0.0), s12(0.0), s22(0.0), b1(0.0), b2(0.0);
    for (int m = 0; m < n_nodes; ++m) {
        const double rho = lo * std::pow(hi / lo, m / double(n_nodes - 1));
        const cplx zeta(0.0, rho);
        DiscretizedKernel k = build_kernel(f, SpectralPoint::from_zeta(zeta), fit.n_modes);
        const cplx at = eim * det_result(k).a2;
        const cplx ln = std::log(at);  // principal branch: |ln| << 1 out here
        if (std::abs(ln) > 0.5)
            throw numerical_error("expansion_coeffs: ln atilde not small on the fit ray");
        fit.rho.push_back(rho);
        fit.log_atilde.push_back(ln);
        const cplx w1 = 1.0 / zeta, w2 = 1.0 / (zeta * zeta);
        s11 += std::conj(w1) * w1;
        s12 += std::conj(w1) * w2;
        s22 += std::conj(w2) * w2;
        b1 += std::conj(w1) * ln;
        b2 += std::conj(w2) * ln;
    }
    const cplx det = s11 * s22 - s12 * std::conj(s12);
    fit.E1 = (s22 * b1 - s12 * b2) / det;
    fit.E2 = (s11 * b2 - std::conj(s12) * b1) / det;
    double res = 0.0, nrm = 0.0;
    for (size_t m = 0; m < fit.rho.size(); ++m) {
        const cplx zeta(0.0, fit.rho[m]);
        res += std::norm(fit.log_atilde[m] - fit.E1 / zeta - fit.E2 / (zeta * zeta));
        nrm += std::norm(fit.log_atilde[m]);
    }
    fit.residual = std::sqrt(res / std::max(nrm, 1e-300));
    fit.residual_warning = fit.residual > 1e-2;
    return fit;
}

}  // namespace dnls
