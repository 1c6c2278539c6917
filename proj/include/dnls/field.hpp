#ifndef DNLS_FIELD_HPP
#define DNLS_FIELD_HPP

#include <functional>
#include <string>
#include <vector>

#include "dnls/fourier.hpp"
#include "dnls/grid.hpp"

namespace dnls {

struct ConservedSet {
    double mass = 0.0;      // M = int |u|^2
    double momentum = 0.0;  // P = Im int conj(u) u_x + 1/2 int |u|^4
    double energy = 0.0;    // E = int (|u_x|^2 - 3/2 Im(|u|^2 u conj(u_x)) + 1/2 |u|^6)
};

// A sampled potential on [-L, L) with its cached spectrum (wrap-around order,
// 1/sqrt(2 pi) convention).  Immutable after construction.
class Field {
public:
    Field(const Grid& g, std::vector<cplx> samples);

    const Grid& grid() const { return grid_; }
    const std::vector<cplx>& samples() const { return samples_; }
    const std::vector<cplx>& spec() const { return spectrum_; }

    double l2sq() const;   // int |u|^2
    double l4_4() const;   // int |u|^4
    double l6_6() const;   // int |u|^6
    double hhalf_sq() const;  // diagnostic: sum |p| |uhat|^2 * (pi/L)
    double boundary_abs() const;  // max(|u(-L)|, |u(L-h)|)

private:
    Grid grid_;
    std::vector<cplx> samples_;
    std::vector<cplx> spectrum_;
};

Field make_field(const Grid& g, const std::function<cplx(double)>& generator);

ConservedSet conserved(const Field& f);

enum class GnKind { quintic, quartic };
// quintic: |f|_6^6 / (|f|_2^4 |f_x|_2^2);  quartic: |f|_6 / (|f|_4^{8/9} |f_x|_2^{1/9})
double gn_ratio(const Field& f, GnKind which);

// u_mu(x) = sqrt(mu) u(mu x) on the grid with half-width L/mu (same N).
// The sample values transfer exactly: u_mu[j] = sqrt(mu) u[j].
Field rescale(const Field& f, double mu);

// Snapshot file: one JSON header line {version, L, N, time_tag} followed by
// N lines "re im" printed with 17 significant digits (bit-stable round trip).
void save_snapshot(const Field& f, const std::string& path, double time_tag = 0.0);
Field load_snapshot(const std::string& path, double* time_tag = nullptr);

}  // namespace dnls

#endif
