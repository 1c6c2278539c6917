#ifndef DNLS_JOST_HPP
#define DNLS_JOST_HPP

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "dnls/field.hpp"
#include "dnls/spectral_point.hpp"

namespace dnls {

// Jost trajectories with the oscillation factored out:
//   psi_1^-(x) = e^{-i zeta x} m(x),  m(-L) = (1,0),  m' = [[0, lam u],[-lam conj u, 2i zeta]] m
//   psi_2^+(x) = e^{+i zeta x} n(x),  n(+L) = (0,1),  n' = [[-2i zeta, lam u],[-lam conj u, 0]] n
// Both trajectories are sampled on the integration lattice -L + j*(h/refine),
// j = 0..M (so index M sits at +L).
struct JostPair {
    SpectralPoint lp;
    int refine = 2;
    double step = 0.0;
    std::vector<std::array<cplx, 2>> m;
    std::vector<std::array<cplx, 2>> n;
};

enum class ScatterMethod { ode, determinant, zs_gauge };

struct ScatteringSample {
    SpectralPoint lp;
    cplx a{};
    cplx b{};
    bool has_b = false;  // b exists only for real zeta (lambda in R or iR)
    ScatterMethod method = ScatterMethod::ode;
};

// ODE-based scattering for one immutable field.  Safe for concurrent use; the
// resampled-potential cache is built lazily under a lock.
class JostSolver {
public:
    struct Options {
        int refine = 2;             // integration step = h / refine
        double boundary_tol = 1e-8;  // gate on |u(+-L)|
        bool enforce_boundary = true;
        double match_fraction = 0.5;  // Wronskian matching point
    };

    explicit JostSolver(const Field& f);
    JostSolver(const Field& f, Options opt);

    const Grid& grid() const { return grid_; }
    double mass() const { return mass_; }

    // a_u(lambda) = det(psi_1^-, psi_2^+) via two half-range integrations.
    cplx a(const SpectralPoint& lp) const;
    // atilde_u(zeta) = e^{i mass/2} a_u(sqrt(zeta))
    cplx a_tilde(cplx zeta) const;
    // a always; b from the full left-to-right crossing when zeta is real.
    ScatteringSample scattering(const SpectralPoint& lp) const;
    // full trajectories (for eigenfunctions and diagnostics)
    JostPair jost(const SpectralPoint& lp) const;

private:
    struct Lattice;  // resampled potential at nodes/midpoints/Gauss points

    std::shared_ptr<const Lattice> lattice(int refine) const;
    int refine_for(cplx zeta) const;

    Grid grid_;
    std::vector<cplx> u_;
    double mass_;
    Options opt_;
    mutable std::mutex cache_mutex_;
    mutable std::map<int, std::shared_ptr<const Lattice>> cache_;
};

// Gauge transform to the Zakharov-Shabat problem: q = u/2 e^{-i I},
// r = (i conj(u_x) + 1/2 conj(u)|u|^2) e^{+i I} with I(x) = int_x^inf |u|^2.
struct ZSPotential {
    Grid grid;
    std::vector<cplx> q, r;
};
ZSPotential zs_gauge(const Field& f);

// Wronskian of the ZS Jost pair; equals atilde_u(zeta) directly.
cplx scattering_zs(const ZSPotential& zs, cplx zeta, int refine = 2);

// Probes of a_u along arg(zeta) = pi/2: deviation from 1 at small |zeta| and
// from e^{-i mass/2} at large |zeta|.  Probe magnitudes are scaled by
// max(1, |u|_{L4}^4).
struct ALimitsReport {
    std::vector<double> rho_small, dev_small;  // |a - 1|
    std::vector<double> rho_large, dev_large;  // |a - e^{-iM/2}|
};
ALimitsReport a_limits(const Field& f, double delta);

}  // namespace dnls

#endif
