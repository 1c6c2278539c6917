#ifndef DNLS_BACKLUND_HPP
#define DNLS_BACKLUND_HPP

#include <vector>

#include "dnls/field.hpp"
#include "dnls/spectral_point.hpp"

namespace dnls {

// Eigenfunction eta of L_u(lambda_1) eta = 0 at a located zero zeta_1 of
// atilde, together with the derived transformation fields
//   d_lam = lam |eta_1|^2 + conj(lam) |eta_2|^2,
//   G = d_{conj lam} / d_lam    (|G| = 1),
//   S = 2i (lam^2 - conj(lam)^2) eta_1 conj(eta_2) / d_lam   (|S| <= 4 Im lam).
struct BacklundData {
    SpectralPoint lambda1;
    std::vector<cplx> eta1, eta2;  // on the grid nodes, max modulus 1
    std::vector<cplx> G, S;
    double match_mismatch = 0.0;   // proportionality defect of the two Jost halves
    double boundary_decay = 0.0;   // max |eta(+-L)| / max |eta|
};

struct EigenfunctionOptions {
    int refine = 2;
    double residual_gate = 1e-6;  // |atilde(zeta_1)| must sit below this
    double mismatch_gate = 1e-6;
    double decay_gate = 1e-4;
};

// eta is assembled from both one-sided Jost trajectories: psi_1^- left of the
// matching point and kappa psi_2^+ right of it (at a zero the two are
// proportional; a one-sided sweep cannot hold the decaying component to
// relative accuracy e^{-2 Im(zeta) L} in double precision).
BacklundData eigenfunction(const Field& f, cplx zeta1, EigenfunctionOptions opt = {});

// B_lam(eta) u = G (G u - S): removes the eigenvalue at zeta_1, preserves b,
// and drops the mass by exactly 8 arg(lambda_1).
Field backlund_remove(const Field& f, const BacklundData& bd);

// max over probes of |a_after - a_before (lam1/conj lam1)^2 (zeta - conj zeta1)/(zeta - zeta1)|
double verify_a_update(const Field& before, const Field& after, cplx zeta1,
                       const std::vector<SpectralPoint>& probes);

// dG/dx = -(i/2) G (|S|^2 - u G conj(S) - conj(u G) S), with the derivative
// taken by high-order finite differences on the unwrapped phase of G
// (G has different limits at the two window ends, so a periodic spectral
// derivative would see a seam jump).
struct DerivCheckReport {
    double identity_residual = 0.0;                  // max interior defect
    double bound_margin = 0.0;                       // max(|G'| - 8 Im(lam)^2 - 4 Im(lam)|u|)
};
DerivCheckReport derivative_identity_check(const BacklundData& bd, const Field& f);

}  // namespace dnls

#endif
