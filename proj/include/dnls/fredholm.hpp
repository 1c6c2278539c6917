#ifndef DNLS_FREDHOLM_HPP
#define DNLS_FREDHOLM_HPP

#include <map>
#include <vector>

#include "dnls/field.hpp"
#include "dnls/spectral_point.hpp"

namespace dnls {

// Fourier-basis discretization of T_u(lambda) = i lambda (L0 - lambda^2)^{-1} U.
// T is anti-diagonal in the 2-component structure:
//   T = [[0, B],[C, 0]],   B = -i lam (D + zeta)^{-1} u.,  C = +i lam (D - zeta)^{-1} conj(u).
// Retained modes k in [-n_modes/2, n_modes/2); blocks stored column-major and
// include the mode measure pi/L, so matrix traces approximate operator traces.
struct DiscretizedKernel {
    SpectralPoint lp;
    int n_modes = 0;
    double mode_spacing = 0.0;
    std::vector<cplx> B, C;
    cplx tr2_quad{}, tr4_quad{};  // spectrally convergent trace formulas

    int n() const { return n_modes; }
};

DiscretizedKernel build_kernel(const Field& f, const SpectralPoint& lp, int n_modes);

// discrete Hilbert-Schmidt norm^2 = |B|_F^2 + |C|_F^2 ~ (|lam|^2/Im zeta) |u|_2^2
double hs_norm_sq(const DiscretizedKernel& k);

// tr T^2 = 2 i zeta int dp |uhat(p)|^2 / (p + 2 zeta)          (mode sum)
cplx trace2(const Field& f, const SpectralPoint& lp);
// tr T^4 = 4 i zeta^2 int dx conj(u) ((D+2zeta)^{-1}u)^2 (D-2zeta)^{-1}conj(u)
cplx trace4(const Field& f, const SpectralPoint& lp);

// Everything the determinant engine produces for one (field, lambda, n_modes).
// The sharp Fourier window biases the matrix traces of T^2 and T^4 at O(1/P),
// P = retained bandwidth, which would pollute det2 of the raw matrix.  The
// det_n chain with tr T = tr T^3 = 0 gives
//   a_u = det6(I - M) exp(-trT^2/2 - trT^4/4),
// where det6(I-M) = det(I-M) exp(trM^2/2 + trM^4/4) uses the matrix traces
// and the exact traces come from the quadrature formulas; the window bias
// cancels through tr T^6 order.  a2 below is that corrected realization.
struct DetResult {
    cplx a2{};       // a_u(lambda) realization (corrected det2)
    cplx a4{};       // det4 realization = a2 exp(tr2/2)
    cplx tr2{}, tr4{};          // quadrature traces
    cplx det_raw{};             // det(I - M) of the truncated matrix
    cplx tr2_mat{}, tr4_mat{};  // windowed matrix traces
};

DetResult det_result(const DiscretizedKernel& k);
cplx det2(const DiscretizedKernel& k);
cplx det4(const DiscretizedKernel& k);

// Regularized determinant det_n(I - A) of a dense complex matrix (column
// major), n in {1, 2, 4}; used by unit tests and the product-identity check.
cplx det_regularized(std::vector<cplx> A, int dim, int order);

// Continuous branch of ln atilde_u along the ray arg(zeta) = theta, anchored
// at large |zeta| where ln atilde -> 0.  Nodes are corrected-det evaluations;
// phase continuation refines until consecutive jumps stay below dphi_max.
class RayTrace {
public:
    struct Options {
        double theta = M_PI / 2.0;
        int n_modes = 0;          // 0: min(N/2, 2048)
        double rho_anchor = 0.0;  // 0: 100 * max(1, |u|_{L4}^4)
        double step_factor = 4.0;
        double dphi_max = 1.5;
        int max_nodes = 2000;
    };
    struct Node {
        double rho;
        cplx atilde;
        double phase;  // unwrapped Im ln atilde
    };

    explicit RayTrace(const Field& f);
    RayTrace(const Field& f, Options opt);

    // ln atilde(rho e^{i theta}); extends the node chain downward on demand
    cplx log_at(double rho);
    double min_abs_on_nodes() const;
    const std::map<double, Node, std::greater<double>>& chain() const { return chain_; }
    const Options& options() const { return opt_; }

private:
    cplx eval_atilde(double rho) const;
    const Node& connect(const Node& above, double rho, int depth);

    Field f_;
    Options opt_;
    double mass_;
    std::map<double, Node, std::greater<double>> chain_;
};

// ln atilde_u(zeta), branch continued from |zeta| = inf along the ray through
// zeta (Im zeta > 0 required).
cplx log_a_tilde(const Field& f, cplx zeta, int n_modes = 0);

// phi_u(rho) = Im ln atilde_u(i rho)
double phi_u(const Field& f, double rho, int n_modes = 0);

// Least-squares fit of ln atilde(i rho_m) against (1/zeta, 1/zeta^2) on
// log-spaced nodes; E1 = i P/4 and E2 = -i E/8 for exact data.
struct ExpansionFit {
    cplx E1{}, E2{};
    double residual = 0.0;
    bool residual_warning = false;
    std::vector<double> rho;
    std::vector<cplx> log_atilde;
    int n_modes = 0;
};
ExpansionFit expansion_coeffs(const Field& f, int n_modes = 0, int n_nodes = 16);

}  // namespace dnls

#endif
