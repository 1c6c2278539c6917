#ifndef DNLS_EVOLVE_HPP
#define DNLS_EVOLVE_HPP

#include <functional>

#include "dnls/field.hpp"

namespace dnls {

// Pseudo-spectral integrating-factor RK4 for
//   u_t = i u_xx - d_x(|u|^2 u)
// The linear phase e^{-i p^2 t} is applied exactly in Fourier space; the
// cubic term is evaluated pointwise with 2/3-rule dealiasing.
struct EvolveConfig {
    double dt = 1e-4;
    double t_end = 0.0;
    bool dealias = true;
    int observe_stride = 0;  // call the observer every k steps (0: never)
};

using Observer = std::function<void(double t, const Field&)>;

// One step of size dt (exposed for convergence tests).
Field evolve_step(const Field& f, double dt, bool dealias = true);

// March to t_end; the observer also fires at t = 0 and at the final time.
Field evolve(const Field& f0, const EvolveConfig& cfg, const Observer& obs = {});

}  // namespace dnls

#endif
