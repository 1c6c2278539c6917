#include "dnls/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace dnls {

namespace {

// One pair of plans per transform size.  Plan creation is serialized; plans
// are executed with the new-array interface, which is thread-safe.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;
};

std::mutex plan_mutex;

PlanPair& plans_for(int n) {
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    PlanPair p;
    std::vector<cplx> a(n), b(n);
    auto* fa = reinterpret_cast<fftw_complex*>(a.data());
    auto* fb = reinterpret_cast<fftw_complex*>(b.data());
    // FFTW_ESTIMATE keeps the algorithm choice deterministic across runs.
    p.fwd = fftw_plan_dft_1d(n, fa, fb, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.inv = fftw_plan_dft_1d(n, fa, fb, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    return cache.emplace(n, p).first->second;
}

}  // namespace

void dft_forward(int n, const cplx* in, cplx* out) {
    PlanPair& p = plans_for(n);
    fftw_execute_dft(p.fwd, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

void dft_inverse(int n, const cplx* in, cplx* out) {
    PlanPair& p = plans_for(n);
    fftw_execute_dft(p.inv, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
    double s = 1.0 / n;
    for (int j = 0; j < n; ++j) out[j] *= s;
}

std::vector<cplx> spectrum(const Grid& g, const std::vector<cplx>& u) {
    std::vector<cplx> uh(g.N);
    dft_forward(g.N, u.data(), uh.data());
    const double s = g.h() / std::sqrt(2.0 * M_PI);
    for (int k = 0; k < g.N; ++k) uh[k] *= (k & 1) ? -s : s;
    return uh;
}

std::vector<cplx> from_spectrum(const Grid& g, const std::vector<cplx>& uh) {
    std::vector<cplx> tmp(g.N);
    const double s = std::sqrt(2.0 * M_PI) / g.h();
    for (int k = 0; k < g.N; ++k) tmp[k] = uh[k] * ((k & 1) ? -s : s);
    std::vector<cplx> u(g.N);
    dft_inverse(g.N, tmp.data(), u.data());
    return u;
}

std::vector<cplx> derivative(const Grid& g, const std::vector<cplx>& u) {
    std::vector<cplx> uh(g.N);
    dft_forward(g.N, u.data(), uh.data());
    for (int k = 0; k < g.N; ++k) uh[k] *= cplx(0.0, g.p(k));
    std::vector<cplx> out(g.N);
    dft_inverse(g.N, uh.data(), out.data());
    return out;
}

std::vector<cplx> cumulative_integral(const Grid& g, const std::vector<cplx>& f) {
    std::vector<cplx> fh(g.N);
    dft_forward(g.N, f.data(), fh.data());
    const cplx mean = fh[0] / double(g.N);
    std::vector<cplx> gh(g.N, cplx(0.0));
    for (int k = 1; k < g.N; ++k) gh[k] = fh[k] / cplx(0.0, g.p(k));
    std::vector<cplx> Fp(g.N);
    dft_inverse(g.N, gh.data(), Fp.data());
    std::vector<cplx> F(g.N);
    const cplx F0 = Fp[0];
    for (int j = 0; j < g.N; ++j) F[j] = mean * (g.x(j) + g.L) + (Fp[j] - F0);
    return F;
}

cplx integral(const Grid& g, const std::vector<cplx>& f) {
    cplx s(0.0);
    for (const cplx& v : f) s += v;
    return s * g.h();
}

double integral_real(const Grid& g, const std::vector<double>& f) {
    double s = 0.0;
    for (double v : f) s += v;
    return s * g.h();
}

std::vector<cplx> resample(const Grid& g, const std::vector<cplx>& u, int factor, double frac) {
    const int N = g.N;
    const int M = N * factor;
    std::vector<cplx> uh(N);
    dft_forward(N, u.data(), uh.data());
    std::vector<cplx> vh(M, cplx(0.0));
    const double fine = g.h() / factor;
    // zero-padded spectrum, with the optional sub-step phase shift e^{i p frac fine}
    for (int k = 0; k < N; ++k) {
        int kk = (k < N / 2) ? k : k - N;
        double p = M_PI * kk / g.L;
        int dst = (kk >= 0) ? kk : kk + M;
        vh[dst] = uh[k] * std::exp(cplx(0.0, p * frac * fine));
    }
    std::vector<cplx> v(M);
    dft_inverse(M, vh.data(), v.data());
    for (cplx& z : v) z *= factor;
    return v;
}

}  // namespace dnls
