#ifndef DNLS_SPECTRUM_HPP
#define DNLS_SPECTRUM_HPP

#include <vector>

#include "dnls/field.hpp"
#include "dnls/jost.hpp"

namespace dnls {

// Argument-principle counting along the ray arg(zeta) = theta:
//   (1/2 pi i) int_0^{inf e^{i theta}} atilde'/atilde + |u|_2^2/(4 pi)
// equals the number of zeros of atilde in the angle (theta, pi).  The phase
// of ln atilde is tracked from the large-|zeta| anchor (where ln atilde -> 0)
// down to rho_min; determinant nodes above the seam 2.5 pi/L, ODE nodes below
// (the Fourier-discretized determinant loses validity once |2 zeta| drops
// under the mode spacing), and the zeta -> 0 limit atilde(0) = e^{iM/2}
// closes the last stretch.
struct RayCountResult {
    double raw = 0.0;          // M/(4 pi) - phase(rho_min)/(2 pi)
    int count = 0;             // nearest integer
    double dist_to_int = 0.0;  // quadrature/placement quality
    double ray_integral = 0.0; // the (1/2 pi i) integral alone
    double min_abs = 0.0;      // min |atilde| seen on the nodes
};

struct RayCountOptions {
    double rho_min_factor = 1e-3;  // times max(1, |u|_{L4}^4)
    bool use_det = true;           // determinant nodes above the seam
    int n_modes = 0;
    double zero_tol = 1e-4;        // |atilde| below this on a node -> error
    double int_tol = 0.05;         // raw farther than this from Z -> error
};

RayCountResult ray_count(const Field& f, double theta, RayCountOptions opt = {});

// count <= |u|_2^2 / (4 theta)
bool angle_bound_check(const Field& f, double theta, int count);

struct Box {
    double re_lo, re_hi, im_lo, im_hi;
};

struct ZeroRecord {
    cplx zeta{};
    double residual = 0.0;  // |atilde| after refinement
    int newton_iters = 0;
    bool cluster = false;   // winding > 1 at the minimal box size
    int winding = 1;
};

struct LocateOptions {
    int refine = 2;
    double newton_tol = 1e-11;
    double residual_gate = 1e-6;
    double min_box = 1e-3;
    double boundary_zero_tol = 1e-7;
    int nodes_per_edge = 12;
    int max_zeros = 64;
};

// All zeros of atilde inside the box (strictly inside C_+): recursive
// subdivision by boundary winding, then Newton with a central-difference
// derivative.
std::vector<ZeroRecord> locate(const Field& f, const Box& box, LocateOptions opt = {});

// Residual of the trace formula
//   M(u) = 4 sum_j arg(zeta_j) - (1/pi) int dxi/xi ln|atilde(xi)|^2.
struct MassTraceOptions {
    double xi_window = 50.0;
    int nodes_per_side = 1000;
    Box search{-4.0, 4.0, 0.01, 4.0};
    LocateOptions locate_opt{};
};
struct MassTraceResult {
    double residual = 0.0;
    double mass = 0.0;
    double zero_term = 0.0;      // 4 sum arg zeta_j
    double integral_term = 0.0;  // -(1/pi) int dxi/xi ln|atilde|^2
    int n_zeros = 0;
};
MassTraceResult mass_trace_identity(const Field& f, MassTraceOptions opt = {});

// Empirical report on the location of the zeros (no zeros deep in the left
// half-plane for H^{1/2}-bounded potentials).
struct ZeroLocationReport {
    double min_re_zeta = 0.0;
    double hhalf_sq = 0.0;
    int n_zeros = 0;
};
ZeroLocationReport zero_location_bound(const Field& f, const std::vector<ZeroRecord>& zeros);

}  // namespace dnls

#endif
