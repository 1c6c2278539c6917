// Command-line driver: fixtures, scans, spectra, Backlund reports, evolution
// runs and the shipped verification suite.  Exit codes: 0 success,
// 1 invariant violation, 2 config error, 3 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dnls/acceptance.hpp"
#include "dnls/backlund.hpp"
#include "dnls/evolve.hpp"
#include "dnls/field.hpp"
#include "dnls/fredholm.hpp"
#include "dnls/io.hpp"
#include "dnls/jost.hpp"
#include "dnls/parallel.hpp"
#include "dnls/soliton.hpp"
#include "dnls/spectrum.hpp"

using json = nlohmann::ordered_json;
using namespace dnls;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string fixture = "gaussian";  // soliton | gaussian | file
    double E = 1.0, c = 0.0, t = 0.0;
    double amp = 0.5, width = 1.0;
    std::string field_path;
    double L = 40.0;
    int N = 4096;
    std::string out_dir = ".";
    bool serial = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON config; flags override its fields");
    cmd->add_option("--fixture", o.fixture, "soliton | gaussian | file")
        ->check(CLI::IsMember({"soliton", "gaussian", "file"}));
    cmd->add_option("--E", o.E, "soliton E parameter");
    cmd->add_option("--c", o.c, "soliton speed");
    cmd->add_option("--t", o.t, "soliton time");
    cmd->add_option("--amp", o.amp, "gaussian amplitude");
    cmd->add_option("--width", o.width, "gaussian width");
    cmd->add_option("--field", o.field_path, "snapshot path for --fixture file");
    cmd->add_option("--L", o.L, "half-width of the window");
    cmd->add_option("--N", o.N, "number of grid points (power of two)");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_flag("--serial", o.serial, "disable the OpenMP map (serial reference path)");
}

json load_config(const CommonOpts& o) {
    if (o.config_path.empty()) return json::object();
    std::ifstream in(o.config_path);
    if (!in) throw config_error("cannot open config " + o.config_path);
    try {
        return json::parse(in);
    } catch (const std::exception& e) {
        throw config_error(std::string("config parse: ") + e.what());
    }
}

// flags override config; config overrides defaults
void merge_common(const json& cfg, CLI::App* cmd, CommonOpts& o) {
    auto keep = [&](const char* flag) { return cmd->count(flag) == 0; };
    if (cfg.contains("grid")) {
        if (keep("--L") && cfg["grid"].contains("L")) o.L = cfg["grid"]["L"].get<double>();
        if (keep("--N") && cfg["grid"].contains("N")) o.N = cfg["grid"]["N"].get<int>();
    }
    if (cfg.contains("fixture")) {
        const json& f = cfg["fixture"];
        if (keep("--fixture") && f.contains("type")) o.fixture = f["type"].get<std::string>();
        if (keep("--E") && f.contains("E")) o.E = f["E"].get<double>();
        if (keep("--c") && f.contains("c")) o.c = f["c"].get<double>();
        if (keep("--t") && f.contains("t")) o.t = f["t"].get<double>();
        if (keep("--amp") && f.contains("amplitude")) o.amp = f["amplitude"].get<double>();
        if (keep("--width") && f.contains("width")) o.width = f["width"].get<double>();
        if (keep("--field") && f.contains("path")) o.field_path = f["path"].get<std::string>();
    }
    if (keep("--out") && cfg.contains("output_dir")) o.out_dir = cfg["output_dir"].get<std::string>();
    if (const char* env = std::getenv("DNLS_OUTDIR")) o.out_dir = env;
}

Field build_fixture(const CommonOpts& o) {
    const Grid g(o.L, o.N);
    if (o.fixture == "soliton") return soliton_field(SolitonParams(o.E, o.c), o.t, g);
    if (o.fixture == "gaussian") {
        const double a = o.amp, w = o.width;
        return make_field(g, [a, w](double x) { return cplx(a * std::exp(-(x / w) * (x / w)), 0.0); });
    }
    if (o.field_path.empty()) throw config_error("--fixture file requires --field <path>");
    return load_snapshot(o.field_path);
}

std::string opath(const CommonOpts& o, const std::string& name) { return o.out_dir + "/" + name; }

json zeta_json(cplx z) { return json::array({z.real(), z.imag()}); }

int cmd_scatter(const CommonOpts& o, const json& cfg) {
    const Field f = build_fixture(o);
    JostSolver solver(f, JostSolver::Options{2, 1e-8, false, 0.5});
    std::vector<SpectralPoint> points;
    const json sc = cfg.value("scatter", json::object());
    for (const auto& pz : sc.value("points", json::array()))
        points.push_back(SpectralPoint::from_zeta(cplx(pz[0].get<double>(), pz[1].get<double>())));
    auto add_scan = [&](const char* key, bool imag_axis) {
        if (!sc.contains(key)) return;
        const json& s = sc[key];
        const double from = s.at("from").get<double>(), to = s.at("to").get<double>();
        const int n = s.at("n").get<int>();
        for (int i = 0; i < n; ++i) {
            const double lam = from + (to - from) * (n > 1 ? i / double(n - 1) : 0.0);
            points.push_back(SpectralPoint::from_lambda(imag_axis ? cplx(0.0, lam) : cplx(lam, 0.0)));
        }
    };
    add_scan("real_lambda", false);
    add_scan("imag_lambda", true);
    if (points.empty())
        for (int i = 0; i < 10; ++i) points.push_back(SpectralPoint::from_lambda(0.2 + 0.2 * i));

    std::vector<ScatteringSample> rows(points.size());
    par::for_index(ptrdiff_t(points.size()),
                   [&](std::ptrdiff_t i) { rows[i] = solver.scattering(points[i]); });
    CsvWriter csv(opath(o, "scatter.csv"),
                  {"re_zeta", "im_zeta", "re_a", "im_a", "re_b", "im_b", "method", "residual"});
    for (const auto& s : rows) {
        // unitarity defect on the axes, nan elsewhere
        double resid = std::nan("");
        if (s.has_b) {
            const double sgn = s.lp.lambda.imag() == 0.0 ? 1.0 : -1.0;
            resid = std::norm(s.a) + sgn * std::norm(s.b) - 1.0;
        }
        CsvWriter* w = &csv;
        w->row({s.lp.zeta.real(), s.lp.zeta.imag(), s.a.real(), s.a.imag(), s.b.real(), s.b.imag(),
                double(int(s.method)), resid});
    }
    std::cout << "wrote " << opath(o, "scatter.csv") << " (" << rows.size() << " points)\n";
    return 0;
}

int cmd_detscan(const CommonOpts& o, const json& cfg) {
    const Field f = build_fixture(o);
    const json dc = cfg.value("detscan", json::object());
    const double theta = dc.value("theta", M_PI / 2);
    const double rho_from = dc.value("rho_from", 0.25);
    const double rho_to = dc.value("rho_to", 50.0);
    const int n = dc.value("n", 25);
    const int n_modes = dc.value("n_modes", 0);
    RayTrace::Options ro;
    ro.theta = theta;
    ro.n_modes = n_modes;
    RayTrace trace(f, ro);
    CsvWriter csv(opath(o, "detscan.csv"),
                  {"rho", "re_log_atilde", "im_log_atilde", "abs_det2", "det4_link_residual"});
    const cplx eim = std::exp(cplx(0.0, 0.5 * f.l2sq()));
    for (int i = n - 1; i >= 0; --i) {  // descending rho, matching the branch continuation
        const double rho = rho_from * std::pow(rho_to / rho_from, i / double(std::max(1, n - 1)));
        const cplx lg = trace.log_at(rho);
        const DiscretizedKernel k = build_kernel(
            f, SpectralPoint::from_zeta(rho * std::exp(cplx(0.0, theta))), n_modes);
        const DetResult dr = det_result(k);
        const double link = std::abs(dr.a4 - dr.a2 * std::exp(0.5 * dr.tr2)) / std::abs(dr.a4);
        csv.row({rho, lg.real(), lg.imag(), std::abs(dr.a2), link});
    }
    if (dc.value("fit", false)) {
        const ExpansionFit fit = expansion_coeffs(f, n_modes);
        json out = {{"E1", zeta_json(fit.E1)},
                    {"E2", zeta_json(fit.E2)},
                    {"relative_residual", fit.residual},
                    {"residual_warning", fit.residual_warning},
                    {"n_modes", fit.n_modes},
                    {"nodes", json::array()}};
        for (size_t m = 0; m < fit.rho.size(); ++m)
            out["nodes"].push_back({{"rho", fit.rho[m]}, {"log_atilde", zeta_json(fit.log_atilde[m])}});
        std::ofstream(opath(o, "fit.json")) << out.dump(2) << "\n";
        std::cout << "wrote " << opath(o, "fit.json") << "\n";
    }
    std::cout << "wrote " << opath(o, "detscan.csv") << "\n";
    return 0;
}

int cmd_spectrum(const CommonOpts& o, const json& cfg) {
    const Field f = build_fixture(o);
    const json sp = cfg.value("spectrum", json::object());
    Box box{-1.5, 1.5, 0.05, 2.0};
    if (sp.contains("box")) {
        const auto& b = sp["box"];
        box = Box{b[0].get<double>(), b[1].get<double>(), b[2].get<double>(), b[3].get<double>()};
    }
    const auto zeros = locate(f, box);
    json out = {{"zeros", json::array()}, {"counts", json::array()}};
    for (const auto& z : zeros)
        out["zeros"].push_back({{"zeta", zeta_json(z.zeta)},
                                {"residual", z.residual},
                                {"newton_iters", z.newton_iters},
                                {"cluster", z.cluster}});
    // default rays avoid the imaginary axis, where c = 0 soliton zeros sit
    std::vector<double> rays{M_PI / 4, 3 * M_PI / 4};
    if (sp.contains("rays")) rays = sp["rays"].get<std::vector<double>>();
    for (double th : rays) {
        const RayCountResult rc = ray_count(f, th);
        out["counts"].push_back({{"theta", th},
                                 {"raw", rc.raw},
                                 {"count", rc.count},
                                 {"ray_integral", rc.ray_integral},
                                 {"angle_bound_ok", angle_bound_check(f, th, rc.count)}});
    }
    const ZeroLocationReport rep = zero_location_bound(f, zeros);
    out["zero_location"] = {{"min_re_zeta", rep.min_re_zeta},
                            {"hhalf_sq", rep.hhalf_sq},
                            {"n_zeros", rep.n_zeros}};
    std::ofstream(opath(o, "spectrum.json")) << out.dump(2) << "\n";
    std::cout << "wrote " << opath(o, "spectrum.json") << " (" << zeros.size() << " zeros)\n";
    return 0;
}

int cmd_backlund(const CommonOpts& o, const json& cfg) {
    const Field f = build_fixture(o);
    const json bc = cfg.value("backlund", json::object());
    Box box{-1.5, 1.5, 0.05, 2.0};
    if (bc.contains("box")) {
        const auto& b = bc["box"];
        box = Box{b[0].get<double>(), b[1].get<double>(), b[2].get<double>(), b[3].get<double>()};
    }
    const auto zeros = locate(f, box);
    if (zeros.empty()) throw numerical_error("backlund: no eigenvalue in the search box");
    const cplx zeta1 = zeros[0].zeta;
    const BacklundData bd = eigenfunction(f, zeta1);
    const Field fr = backlund_remove(f, bd);
    std::vector<SpectralPoint> probes;
    for (cplx z : {cplx(0.21, 0.21), cplx(1.06, 1.06), cplx(0.0, 0.7), cplx(0.0, 2.0),
                   cplx(-0.57, 0.57), cplx(-0.77, 2.38)})
        probes.push_back(SpectralPoint::from_zeta(z));
    JostSolver sb(f, JostSolver::Options{2, 1e-8, false, 0.5});
    JostSolver sa(fr, JostSolver::Options{2, 1e-8, false, 0.5});
    double worst_b = 0.0;
    for (double lam : {0.5, 1.0, 1.5}) {
        const auto b0 = sb.scattering(SpectralPoint::from_lambda(lam));
        const auto b1 = sa.scattering(SpectralPoint::from_lambda(lam));
        worst_b = std::max(worst_b, std::abs(b1.b - b0.b));
    }
    const auto post = locate(fr, box);
    json out = {{"zeta1", zeta_json(zeta1)},
                {"mass_before", f.l2sq()},
                {"mass_after", fr.l2sq()},
                {"mass_drop_minus_8arg", f.l2sq() - fr.l2sq() - 8.0 * std::arg(bd.lambda1.lambda)},
                {"match_mismatch", bd.match_mismatch},
                {"boundary_decay", bd.boundary_decay},
                {"a_update_deviation", verify_a_update(f, fr, zeta1, probes)},
                {"b_invariance_deviation", worst_b},
                {"zeros_before", json::array()},
                {"zeros_after", json::array()}};
    for (const auto& z : zeros) out["zeros_before"].push_back(zeta_json(z.zeta));
    for (const auto& z : post) out["zeros_after"].push_back(zeta_json(z.zeta));
    if (bc.value("save_field", false)) save_snapshot(fr, opath(o, "backlund_after.snap"));
    std::ofstream(opath(o, "backlund.json")) << out.dump(2) << "\n";
    std::cout << "wrote " << opath(o, "backlund.json") << "\n";
    return 0;
}

int cmd_evolve(const CommonOpts& o, const json& cfg) {
    const Field f0 = build_fixture(o);
    const json ec = cfg.value("evolve", json::object());
    EvolveConfig ev;
    ev.dt = ec.value("dt", 1e-4);
    ev.t_end = ec.value("t_end", 0.5);
    ev.dealias = ec.value("dealias", true);
    ev.observe_stride = ec.value("stride", 500);
    std::vector<SpectralPoint> probes;
    for (const auto& pz : ec.value("probe_zetas", json::array()))
        probes.push_back(SpectralPoint::from_zeta(cplx(pz[0].get<double>(), pz[1].get<double>())));
    const bool snaps = ec.value("snapshots", false);

    std::vector<std::string> cols{"t", "M", "P", "E"};
    for (size_t i = 0; i < probes.size(); ++i) {
        cols.push_back("re_a" + std::to_string(i));
        cols.push_back("im_a" + std::to_string(i));
    }
    CsvWriter csv(opath(o, "evolve.csv"), cols);
    int snap_id = 0;
    auto observer = [&](double t, const Field& f) {
        const ConservedSet cs = conserved(f);
        std::vector<double> row{t, cs.mass, cs.momentum, cs.energy};
        if (!probes.empty()) {
            JostSolver solver(f, JostSolver::Options{2, 1e-8, false, 0.5});
            for (const auto& lp : probes) {
                const cplx a = solver.a(lp);
                row.push_back(a.real());
                row.push_back(a.imag());
            }
        }
        csv.row(row);
        if (snaps) save_snapshot(f, opath(o, "snap_" + std::to_string(snap_id++) + ".snap"), t);
    };
    evolve(f0, ev, observer);
    std::cout << "wrote " << opath(o, "evolve.csv") << "\n";
    return 0;
}

int cmd_verify(const CommonOpts& o, const std::string& only) {
    const auto results = run_acceptance(only);
    json out = json::array();
    bool all_pass = true;
    for (const auto& r : results) {
        std::cout << "[" << r.id << "] " << (r.pass ? "PASS" : "FAIL") << "  " << r.what << "\n"
                  << "      " << r.detail << "\n";
        out.push_back({{"id", r.id},
                       {"what", r.what},
                       {"pass", r.pass},
                       {"worst_ratio", r.measured},
                       {"detail", r.detail}});
        all_pass = all_pass && r.pass;
    }
    std::ofstream(opath(o, "verify.json")) << out.dump(2) << "\n";
    std::cout << (all_pass ? "all criteria passed" : "CRITERIA FAILED") << "\n";
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dnls - forward scattering toolkit for the derivative NLS equation"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string verify_only;
    CLI::App* sub[6] = {
        app.add_subcommand("scatter", "a,b samples over spectral points -> CSV"),
        app.add_subcommand("detscan", "ln atilde along a ray via regularized determinants -> CSV"),
        app.add_subcommand("spectrum", "zero location and ray counting -> JSON"),
        app.add_subcommand("backlund", "eigenvalue removal report -> JSON"),
        app.add_subcommand("evolve", "DNLS time integration -> time-series CSV"),
        app.add_subcommand("verify", "run the shipped verification suite"),
    };
    for (CLI::App* s : sub) add_common(s, o);
    sub[5]->add_option("--only", verify_only, "run one criterion (A1..A12)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        par::set_enabled(!o.serial);
        const json cfg = load_config(o);
        CLI::App* cmd = app.get_subcommands().front();
        merge_common(cfg, cmd, o);
        const std::string name = cmd->get_name();
        if (name == "scatter") return cmd_scatter(o, cfg);
        if (name == "detscan") return cmd_detscan(o, cfg);
        if (name == "spectrum") return cmd_spectrum(o, cfg);
        if (name == "backlund") return cmd_backlund(o, cfg);
        if (name == "evolve") return cmd_evolve(o, cfg);
        if (name == "verify") return cmd_verify(o, verify_only);
        return 2;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
