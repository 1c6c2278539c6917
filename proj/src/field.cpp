#include "dnls/field.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dnls/errors.hpp"

namespace dnls {

Field::Field(const Grid& g, std::vector<cplx> samples) : grid_(g), samples_(std::move(samples)) {
    if (int(samples_.size()) != g.N) throw config_error("field: sample count does not match grid");
    for (int j = 0; j < g.N; ++j) {
        if (!std::isfinite(samples_[j].real()) || !std::isfinite(samples_[j].imag())) {
            std::ostringstream os;
            os << "field: non-finite sample at x = " << g.x(j);
            throw numerical_error(os.str());
        }
    }
    spectrum_ = spectrum(g, samples_);
}

double Field::l2sq() const {
    double s = 0.0;
    for (const cplx& v : samples_) s += std::norm(v);
    return s * grid_.h();
}

double Field::l4_4() const {
    double s = 0.0;
    for (const cplx& v : samples_) s += std::norm(v) * std::norm(v);
    return s * grid_.h();
}

double Field::l6_6() const {
    double s = 0.0;
    for (const cplx& v : samples_) {
        double a2 = std::norm(v);
        s += a2 * a2 * a2;
    }
    return s * grid_.h();
}

double Field::hhalf_sq() const {
    double s = 0.0;
    for (int k = 0; k < grid_.N; ++k) s += std::abs(grid_.p(k)) * std::norm(spectrum_[k]);
    return s * grid_.mode_spacing();
}

double Field::boundary_abs() const {
    return std::max(std::abs(samples_.front()), std::abs(samples_.back()));
}

Field make_field(const Grid& g, const std::function<cplx(double)>& generator) {
    std::vector<cplx> s(g.N);
    for (int j = 0; j < g.N; ++j) s[j] = generator(g.x(j));
    return Field(g, std::move(s));
}

ConservedSet conserved(const Field& f) {
    const Grid& g = f.grid();
    std::vector<cplx> ux = derivative(g, f.samples());
    double M = 0.0, Pd = 0.0, P4 = 0.0, E = 0.0;
    for (int j = 0; j < g.N; ++j) {
        const cplx u = f.samples()[j];
        const cplx du = ux[j];
        const double a2 = std::norm(u);
        M += a2;
        Pd += std::imag(std::conj(u) * du);
        P4 += a2 * a2;
        E += std::norm(du) - 1.5 * std::imag(a2 * u * std::conj(du)) + 0.5 * a2 * a2 * a2;
    }
    const double h = g.h();
    return ConservedSet{M * h, Pd * h + 0.5 * P4 * h, E * h};
}

double gn_ratio(const Field& f, GnKind which) {
    double l2sq = f.l2sq();
    if (l2sq == 0.0) throw config_error("gn_ratio: zero field");
    std::vector<cplx> ux = derivative(f.grid(), f.samples());
    double dx2 = 0.0;
    for (const cplx& v : ux) dx2 += std::norm(v);
    dx2 *= f.grid().h();
    if (which == GnKind::quintic) return f.l6_6() / (l2sq * l2sq * dx2);
    double l6 = std::pow(f.l6_6(), 1.0 / 6.0);
    double l4 = std::pow(f.l4_4(), 0.25);
    return l6 / (std::pow(l4, 8.0 / 9.0) * std::pow(std::sqrt(dx2), 1.0 / 9.0));
}

Field rescale(const Field& f, double mu) {
    if (!(mu > 0.0)) throw config_error("rescale: mu must be positive");
    Grid g2(f.grid().L / mu, f.grid().N);
    std::vector<cplx> s(f.grid().N);
    const double r = std::sqrt(mu);
    for (int j = 0; j < f.grid().N; ++j) s[j] = r * f.samples()[j];
    return Field(g2, std::move(s));
}

void save_snapshot(const Field& f, const std::string& path, double time_tag) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) throw config_error("save_snapshot: cannot open " + path);
    nlohmann::json hdr = {{"version", 1}, {"L", f.grid().L}, {"N", f.grid().N}, {"time_tag", time_tag}};
    std::fprintf(fp, "%s\n", hdr.dump().c_str());
    for (const cplx& v : f.samples()) std::fprintf(fp, "%.17g %.17g\n", v.real(), v.imag());
    std::fclose(fp);
}

Field load_snapshot(const std::string& path, double* time_tag) {
    std::ifstream in(path);
    if (!in) throw config_error("load_snapshot: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw config_error("load_snapshot: missing header");
    nlohmann::json hdr = nlohmann::json::parse(line);
    Grid g(hdr.at("L").get<double>(), hdr.at("N").get<int>());
    if (time_tag) *time_tag = hdr.value("time_tag", 0.0);
    std::vector<cplx> s(g.N);
    for (int j = 0; j < g.N; ++j) {
        double re, im;
        if (!(in >> re >> im)) throw config_error("load_snapshot: truncated sample data");
        s[j] = cplx(re, im);
    }
    return Field(g, std::move(s));
}

}  // namespace dnls
