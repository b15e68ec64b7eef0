// stefankpp: solvers and verifiers for the one-phase Stefan problem with
// logistic (Fisher-KPP) growth. Subcommands:
//   cstar     spreading speed c* and its semi-wave profile
//   semiwave  semi-wave profile at a given speed k
//   run       fb1d | radial-in | radial-out | cone2d | cauchy (config file)
//   verify    super | sub1d | compare
//   plotdata  measured-vs-predicted overlays from a finished run directory
// Exit codes: 0 ok, 1 bad flags/config, 2 solver or verification failure,
// 3 box margin violated (partial output written).

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "stefankpp/enthalpy.hpp"
#include "stefankpp/errors.hpp"
#include "stefankpp/fb1d.hpp"
#include "stefankpp/fbradial.hpp"
#include "stefankpp/geometry.hpp"
#include "stefankpp/io.hpp"
#include "stefankpp/semiwave.hpp"
#include "stefankpp/verify.hpp"

namespace fs = std::filesystem;
using namespace stefankpp;

namespace {

constexpr const char* kDefaultsVersion = "1";

struct Manifest {
    std::string subcommand;
    std::string config;
    std::string outdir;
    std::vector<std::pair<std::string, std::string>> extra;
    std::vector<std::string> outputs;
    std::string status = "ok";
    bool partial = false;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    void write() const {
        std::vector<std::pair<std::string, std::string>> kv;
        kv.emplace_back("subcommand", subcommand);
        if (!config.empty()) kv.emplace_back("config", config);
        kv.emplace_back("outdir", outdir);
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        kv.emplace_back("wall_ms", std::to_string(ms));
        kv.emplace_back("defaults_version", kDefaultsVersion);
        kv.emplace_back("status", status);
        kv.emplace_back("partial_output", partial ? "1" : "0");
        for (const auto& e : extra) kv.push_back(e);
        for (std::size_t i = 0; i < outputs.size(); ++i)
            kv.emplace_back("output_" + std::to_string(i), outputs[i]);
        io::write_keyvalues(fs::path(outdir) / "manifest.txt", kv);
    }
};

fs::path ensure_outdir(const std::string& out) {
    fs::path dir(out);
    fs::create_directories(dir);
    return dir;
}

ModelParams params_from(const io::KeyValues& kv) {
    ModelParams p;
    p.a = io::get_double_or(kv, "a", 1.0);
    p.b = io::get_double_or(kv, "b", 1.0);
    p.d = io::get_double_or(kv, "d", 1.0);
    p.mu = io::get_double_or(kv, "mu", 1.0);
    return validate(p);
}

void put_params(Manifest& man, const ModelParams& p) {
    man.extra.emplace_back("config_a", io::fmt(p.a));
    man.extra.emplace_back("config_b", io::fmt(p.b));
    man.extra.emplace_back("config_d", io::fmt(p.d));
    man.extra.emplace_back("config_mu", io::fmt(p.mu));
}

std::string snap_name(const char* stem, std::size_t i, const char* ext) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%03zu.%s", stem, i, ext);
    return buf;
}

std::vector<double> parse_time_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ';')) out.push_back(std::stod(tok));
    return out;
}

// ---------------------------------------------------------------- run: fb1d
int run_fb1d(const io::KeyValues& kv, Manifest& man) {
    io::require_keys_subset(kv,
                            {"a", "b", "d", "mu", "T", "L", "h", "orientation", "rho0", "sigma0",
                             "sample_dt", "snapshots"},
                            "fb1d config");
    Front1DConfig cfg;
    cfg.params = params_from(kv);
    cfg.T = io::get_double(kv, "T");
    cfg.L = io::get_double_or(kv, "L", 0.0);
    cfg.h = io::get_double_or(kv, "h", 0.0);
    cfg.orientation = static_cast<int>(io::get_long_or(kv, "orientation", -1));
    if (kv.count("rho0")) cfg.rho0 = io::get_double(kv, "rho0");
    cfg.sample_dt = io::get_double_or(kv, "sample_dt", 0.0);
    const double sigma0 = io::get_double_or(kv, "sigma0", 0.5 * cfg.params.carrying_capacity());
    cfg.w0 = [sigma0](double xi) { return sigma0 * (1.0 - std::exp(-xi)); };
    if (kv.count("snapshots")) cfg.snapshot_times = parse_time_list(kv.at("snapshots"));
    put_params(man, cfg.params);
    man.extra.emplace_back("config_orientation", std::to_string(cfg.orientation));

    FrontTrajectory traj = run_front1d(cfg);
    io::write_trajectory_csv(fs::path(man.outdir) / "trajectory.csv", "rho", traj.times,
                             traj.rho_values);
    man.outputs.push_back("trajectory.csv");
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        const std::string name = snap_name("snapshot", i, "csv");
        io::write_front1d_snapshot_csv(fs::path(man.outdir) / name, traj.snapshots[i]);
        man.outputs.push_back(name);
    }
    return 0;
}

// -------------------------------------------------------------- run: radial
void write_radial_snapshot(const fs::path& file, const RadialSnapshot& snap, double h_xi) {
    std::ofstream out(file);
    out << "# t=" << io::fmt(snap.t) << " front=" << io::fmt(snap.front) << "\n";
    out << "xi,v\n";
    for (std::size_t j = 0; j < snap.v.size(); ++j)
        out << io::fmt(static_cast<double>(j) * h_xi) << "," << io::fmt(snap.v[j]) << "\n";
}

int run_radial(const io::KeyValues& kv, Manifest& man, bool interior) {
    io::require_keys_subset(kv,
                            {"a", "b", "d", "mu", "T", "N", "r0", "cells", "R0", "L", "h", "C1",
                             "C2", "v0_amp", "sample_dt", "snapshots"},
                            "radial config");
    RadialConfig cfg;
    cfg.params = params_from(kv);
    cfg.T = io::get_double(kv, "T");
    cfg.dimension = static_cast<int>(io::get_long_or(kv, "N", 2));
    cfg.sample_dt = io::get_double_or(kv, "sample_dt", 0.0);
    if (kv.count("snapshots")) cfg.snapshot_times = parse_time_list(kv.at("snapshots"));
    put_params(man, cfg.params);

    if (interior) {
        cfg.r0 = io::get_double(kv, "r0");
        cfg.cells = static_cast<int>(io::get_long_or(kv, "cells", 0));
        const double amp = io::get_double_or(kv, "v0_amp", 0.5 * cfg.params.carrying_capacity());
        const double r0 = cfg.r0;
        cfg.v0 = [amp, r0](double r) {
            const double x = r / r0;
            return amp * std::max(0.0, 1.0 - x * x);
        };
        RadialTrajectory traj = run_interior(cfg);
        io::write_trajectory_csv(fs::path(man.outdir) / "trajectory.csv", "front", traj.times,
                                 traj.front);
        man.outputs.push_back("trajectory.csv");
        for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
            const std::string name = snap_name("snapshot", i, "csv");
            const double h_xi = 1.0 / (static_cast<double>(traj.snapshots[i].v.size()) - 1.0);
            write_radial_snapshot(fs::path(man.outdir) / name, traj.snapshots[i], h_xi);
            man.outputs.push_back(name);
        }
        return 0;
    }

    cfg.R0 = io::get_double(kv, "R0");
    cfg.L = io::get_double_or(kv, "L", 0.0);
    cfg.h = io::get_double_or(kv, "h", 0.0);
    cfg.sup_bound = io::get_double_or(kv, "C1", 1.0);
    cfg.grad_bound = io::get_double_or(kv, "C2", 1.0);
    const double c1 = cfg.sup_bound, rate = cfg.grad_bound / cfg.sup_bound;
    cfg.v0 = [c1, rate](double xi) { return c1 * (1.0 - std::exp(-rate * xi)); };

    auto [traj, cert] = run_exterior(cfg);
    io::write_trajectory_csv(fs::path(man.outdir) / "trajectory.csv", "front", traj.times,
                             traj.front);
    man.outputs.push_back("trajectory.csv");
    io::write_keyvalues(fs::path(man.outdir) / "certificate.txt",
                        {{"R0", io::fmt(cert.R0)},
                         {"T", io::fmt(cert.T)},
                         {"hT", io::fmt(cert.h_T)},
                         {"bound_ok", cert.bound_ok ? "1" : "0"},
                         {"max_abs_hprime", io::fmt(cert.max_abs_hprime)},
                         {"C4", io::fmt(cert.C4)},
                         {"M", io::fmt(cert.M)},
                         {"C3", io::fmt(cert.C3)},
                         {"hprime_ok", cert.hprime_ok ? "1" : "0"},
                         {"r0_threshold", io::fmt(cert.r0_threshold)}});
    man.outputs.push_back("certificate.txt");
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        const std::string name = snap_name("snapshot", i, "csv");
        write_radial_snapshot(fs::path(man.outdir) / name, traj.snapshots[i],
                              cfg.h > 0 ? cfg.h : 0.02 * cfg.params.diffusion_length());
        man.outputs.push_back(name);
    }
    return cert.bound_ok && cert.hprime_ok ? 0 : 2;
}

// ---------------------------------------------------- run: cone2d / cauchy
Scenario scenario_from(const io::KeyValues& kv, int dim) {
    io::require_keys_subset(kv,
                            {"phi", "xi1", "xi2", "shape", "a", "b", "d", "mu", "T", "hx", "box",
                             "m", "snap_every", "ball_cx", "ball_cy", "ball_r", "hs_nx", "hs_ny",
                             "hs_offset", "kappa", "margin_cells", "probe_x", "probe_y"},
                            "scenario config");
    Scenario sc;
    sc.dim = dim;
    sc.params = params_from(kv);
    sc.T = io::get_double(kv, "T");
    sc.hx = io::get_double(kv, "hx");
    sc.m = static_cast<int>(io::get_long_or(kv, "m", 0));
    sc.snap_every = io::get_double_or(kv, "snap_every", 0.0);
    sc.plateau_kappa = io::get_double_or(kv, "kappa", 0.0);
    sc.margin_cells = static_cast<int>(io::get_long_or(kv, "margin_cells", 10));
    sc.xi2 = io::get_double_or(kv, "xi2", io::get_double_or(kv, "xi1", 0.0));

    const std::string shape = io::get_string_or(kv, "shape", "cone");
    if (shape == "cone") {
        sc.range.shape = RangeShape::Cone;
        sc.range.cone = make_cone(io::get_double(kv, "phi"), io::get_double_or(kv, "xi1", 0.0));
    } else if (shape == "ball") {
        sc.range.shape = RangeShape::Ball;
        sc.range.cx = io::get_double_or(kv, "ball_cx", 0.0);
        sc.range.cy = io::get_double_or(kv, "ball_cy", 0.0);
        sc.range.radius = io::get_double(kv, "ball_r");
    } else if (shape == "halfspace") {
        sc.range.shape = RangeShape::HalfSpace;
        sc.range.nx = io::get_double_or(kv, "hs_nx", 0.0);
        sc.range.ny = io::get_double_or(kv, "hs_ny", dim == 2 ? 1.0 : 0.0);
        sc.range.offset = io::get_double_or(kv, "hs_offset", 0.0);
        if (dim == 1 && sc.range.nx == 0.0) sc.range.nx = 1.0;
    } else {
        throw ConfigError("scenario: unknown shape: " + shape);
    }

    std::istringstream bs(io::get_string_or(kv, "box", ""));
    std::vector<double> box;
    std::string tok;
    while (std::getline(bs, tok, ',')) box.push_back(std::stod(tok));
    if (dim == 2 && box.size() == 4) sc.box = {box[0], box[1], box[2], box[3]};
    else if (dim == 1 && box.size() == 2) sc.box = {box[0], box[1], 0, 0};
    else throw ConfigError("scenario: box must list x_lo,x_hi[,y_lo,y_hi]");

    if (kv.count("probe_x"))
        sc.probes.push_back({io::get_double(kv, "probe_x"), io::get_double_or(kv, "probe_y", 0.0)});
    return sc;
}

int run_grid(const io::KeyValues& kv, Manifest& man, bool cauchy) {
    Scenario sc = scenario_from(kv, 2);
    put_params(man, sc.params);
    for (const char* key : {"phi", "xi1", "xi2", "T", "hx", "box", "m", "shape"})
        if (kv.count(key)) man.extra.emplace_back(std::string("config_") + key, kv.at(key));

    RunResult res = cauchy ? run_cauchy(sc) : run_scenario(sc);
    for (std::size_t i = 0; i < res.snapshots.size(); ++i) {
        const std::string name = snap_name("snapshot", i, "txt");
        io::write_snapshot(fs::path(man.outdir) / name, res.snapshots[i]);
        man.outputs.push_back(name);
    }
    for (std::size_t i = 0; i < res.fronts.size(); ++i) {
        const std::string name = snap_name("front", i, "csv");
        io::write_front_csv(fs::path(man.outdir) / name, res.fronts[i], sc.dim);
        man.outputs.push_back(name);
    }
    if (!res.probe_values.empty()) {
        io::write_trajectory_csv(fs::path(man.outdir) / "probe.csv", "u", res.snapshot_times,
                                 res.probe_values[0]);
        man.outputs.push_back("probe.csv");
    }
    if (res.margin_violated) {
        man.status = "margin_violated";
        man.partial = true;
        return 3;
    }
    return 0;
}

// ------------------------------------------------------------------ verify
void write_report(const fs::path& file, const ResidualReport& rep) {
    io::write_keyvalues(file, {{"n_samples", std::to_string(rep.n_samples)},
                               {"min_interior_residual", io::fmt(rep.min_interior_residual)},
                               {"min_boundary_slack", io::fmt(rep.min_boundary_slack)},
                               {"tolerance", io::fmt(rep.tolerance)},
                               {"max_fd_error", io::fmt(rep.max_fd_error)},
                               {"pass", rep.pass ? "1" : "0"},
                               {"near_degenerate", rep.near_degenerate ? "1" : "0"}});
}

// ---------------------------------------------------------------- plotdata
int plotdata(const std::string& rundir, Manifest& man) {
    const fs::path run(rundir);
    if (!fs::exists(run / "manifest.txt"))
        throw ConfigError("plotdata: no manifest.txt in " + rundir);
    io::KeyValues rman = io::parse_keyvalues(run / "manifest.txt");
    ModelParams p;
    p.a = io::get_double_or(rman, "config_a", 1.0);
    p.b = io::get_double_or(rman, "config_b", 1.0);
    p.d = io::get_double_or(rman, "config_d", 1.0);
    p.mu = io::get_double_or(rman, "config_mu", 1.0);
    const double cstar = compute_cstar(p).c_star;
    man.extra.emplace_back("c_star", io::fmt(cstar));

    bool wrote = false;
    if (fs::exists(run / "trajectory.csv")) {
        // measured front against the c*-speed line, intercept fitted over the
        // trailing half of the run
        std::ifstream in(run / "trajectory.csv");
        std::string line;
        std::getline(in, line); // header
        std::vector<double> t, v;
        while (std::getline(in, line)) {
            const auto c = line.find(',');
            if (c == std::string::npos) continue;
            t.push_back(std::stod(line.substr(0, c)));
            v.push_back(std::stod(line.substr(c + 1)));
        }
        if (t.size() >= 10) {
            const int orient = static_cast<int>(io::get_long_or(rman, "config_orientation", -1));
            const double speed = orient < 0 ? -cstar : cstar;
            double intercept = 0.0;
            std::size_t n = 0;
            for (std::size_t i = 0; i < t.size(); ++i)
                if (t[i] >= 0.5 * t.back()) {
                    intercept += v[i] - speed * t[i];
                    ++n;
                }
            intercept /= static_cast<double>(n);
            std::ofstream out(fs::path(man.outdir) / "rho_pred.csv");
            out << "t,rho,pred\n";
            for (std::size_t i = 0; i < t.size(); ++i)
                out << io::fmt(t[i]) << "," << io::fmt(v[i]) << ","
                    << io::fmt(speed * t[i] + intercept) << "\n";
            man.outputs.push_back("rho_pred.csv");
            wrote = true;
        }
    }

    // front overlays against the predicted inner/outer neighborhoods
    if (rman.count("config_phi")) {
        const double phi = io::get_double(rman, "config_phi");
        const ConeSpec cone = make_cone(phi, io::get_double_or(rman, "config_xi1", 0.0));
        const double eps = 0.15 * cstar;
        for (std::size_t i = 0;; ++i) {
            const fs::path ffile = run / snap_name("front", i, "csv");
            if (!fs::exists(ffile)) break;
            FrontSet front = io::read_front_csv(ffile);
            if (front.points.empty()) continue;
            const double R_in = std::max(0.0, (cstar - eps) * front.t);
            const double R_out = (cstar + eps) * front.t;
            double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
            for (const auto& pt : front.points) {
                xlo = std::min(xlo, pt[0] - 2);
                xhi = std::max(xhi, pt[0] + 2);
                ylo = std::min(ylo, pt[1] - 2);
                yhi = std::max(yhi, pt[1] + 2);
            }
            std::ofstream out(fs::path(man.outdir) / snap_name("front_overlay", i, "csv"));
            out << "kind,x,y\n";
            for (const auto& pt : front.points)
                out << "front," << io::fmt(pt[0]) << "," << io::fmt(pt[1]) << "\n";
            for (const auto& pt : sample_neighborhood_boundary({cone, R_in}, xlo, xhi, ylo, yhi))
                out << "inner," << io::fmt(pt[0]) << "," << io::fmt(pt[1]) << "\n";
            for (const auto& pt : sample_neighborhood_boundary({cone, R_out}, xlo, xhi, ylo, yhi))
                out << "outer," << io::fmt(pt[0]) << "," << io::fmt(pt[1]) << "\n";
            man.outputs.push_back(snap_name("front_overlay", i, "csv"));
            wrote = true;
        }
    }
    if (!wrote) throw ConfigError("plotdata: nothing to derive in " + rundir);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stefan free-boundary solvers with logistic growth"};
    app.require_subcommand(1);

    auto* cmd_cstar = app.add_subcommand("cstar", "spreading speed c*");
    ModelParams cp;
    std::string cstar_out = ".";
    double tol_speed = 1e-8;
    cmd_cstar->add_option("--a", cp.a, "growth rate a")->required();
    cmd_cstar->add_option("--b", cp.b, "saturation b")->required();
    cmd_cstar->add_option("--d", cp.d, "diffusion d")->required();
    cmd_cstar->add_option("--mu", cp.mu, "front coefficient mu")->required();
    cmd_cstar->add_option("--tol", tol_speed, "speed tolerance");
    cmd_cstar->add_option("--out", cstar_out, "output directory");

    auto* cmd_semiwave = app.add_subcommand("semiwave", "semi-wave profile at speed k");
    ModelParams sp;
    double sw_k = 0.0;
    std::string sw_out = ".";
    cmd_semiwave->add_option("--a", sp.a)->required();
    cmd_semiwave->add_option("--b", sp.b)->required();
    cmd_semiwave->add_option("--d", sp.d)->required();
    cmd_semiwave->add_option("--mu", sp.mu)->required();
    cmd_semiwave->add_option("--k", sw_k, "wave speed")->required();
    cmd_semiwave->add_option("--out", sw_out, "output directory");

    auto* cmd_run = app.add_subcommand("run", "run a solver from a config file");
    std::string run_what, run_config, run_out = "out";
    cmd_run->add_option("solver", run_what, "fb1d|radial-in|radial-out|cone2d|cauchy")->required();
    cmd_run->add_option("config", run_config, "key=value config file")->required();
    cmd_run->add_option("--out", run_out, "output directory");

    auto* cmd_verify = app.add_subcommand("verify", "residual / ordering certifications");
    std::string ver_what, ver_out = ".";
    double ver_delta = 0.1, ver_phi = 3.0 * M_PI / 4.0, ver_rfactor = 2.0, ver_R = 0.0;
    ModelParams vp;
    cmd_verify->add_option("check", ver_what, "super|sub1d|compare")->required();
    cmd_verify->add_option("--a", vp.a);
    cmd_verify->add_option("--b", vp.b);
    cmd_verify->add_option("--d", vp.d);
    cmd_verify->add_option("--mu", vp.mu);
    cmd_verify->add_option("--delta", ver_delta, "perturbation");
    cmd_verify->add_option("--phi", ver_phi, "cone half-angle (super)");
    cmd_verify->add_option("--R-factor", ver_rfactor, "R as a multiple of d(N-1)/(delta c^delta)");
    cmd_verify->add_option("--R", ver_R, "explicit regularization radius");
    cmd_verify->add_option("--out", ver_out, "output directory");

    auto* cmd_plot = app.add_subcommand("plotdata", "derive plot files from a run directory");
    std::string plot_run, plot_out = ".";
    cmd_plot->add_option("--run", plot_run, "finished run directory")->required();
    cmd_plot->add_option("--out", plot_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    Manifest man;
    try {
        if (cmd_cstar->parsed()) {
            man.subcommand = "cstar";
            man.outdir = ensure_outdir(cstar_out).string();
            validate(cp);
            ShootingOptions opts;
            opts.tol_speed = tol_speed;
            SpeedResult res = compute_cstar(cp, opts);
            std::printf("c_star=%s\nresidual=%s\niterations=%d\n", io::fmt(res.c_star).c_str(),
                        io::fmt(res.residual).c_str(), res.iterations);
            SemiWaveProfile prof = solve_profile(cp, res.c_star, opts);
            io::write_profile_csv(fs::path(man.outdir) / "profile.csv", prof);
            man.outputs.push_back("profile.csv");
            put_params(man, cp);
            man.extra.emplace_back("c_star", io::fmt(res.c_star));
            man.extra.emplace_back("residual", io::fmt(res.residual));
            man.write();
            return 0;
        }
        if (cmd_semiwave->parsed()) {
            man.subcommand = "semiwave";
            man.outdir = ensure_outdir(sw_out).string();
            validate(sp);
            SemiWaveProfile prof = solve_profile(sp, sw_k);
            std::printf("slope0=%s\n", io::fmt(prof.slope0).c_str());
            io::write_profile_csv(fs::path(man.outdir) / "profile.csv", prof);
            man.outputs.push_back("profile.csv");
            put_params(man, sp);
            man.write();
            return 0;
        }
        if (cmd_run->parsed()) {
            man.subcommand = "run " + run_what;
            man.config = run_config;
            man.outdir = ensure_outdir(run_out).string();
            io::KeyValues kv = io::parse_keyvalues(run_config);
            int rc;
            if (run_what == "fb1d") rc = run_fb1d(kv, man);
            else if (run_what == "radial-in") rc = run_radial(kv, man, true);
            else if (run_what == "radial-out") rc = run_radial(kv, man, false);
            else if (run_what == "cone2d") rc = run_grid(kv, man, false);
            else if (run_what == "cauchy") rc = run_grid(kv, man, true);
            else throw ConfigError("run: unknown solver: " + run_what);
            man.write();
            return rc;
        }
        if (cmd_verify->parsed()) {
            man.subcommand = "verify " + ver_what;
            man.outdir = ensure_outdir(ver_out).string();
            validate(vp);
            if (ver_what == "super") {
                ModelParams pert = vp;
                pert.a += ver_delta;
                pert.b -= ver_delta;
                const double cd = compute_cstar(pert).c_star;
                const double R = ver_R > 0.0 ? ver_R : ver_rfactor * vp.d / (ver_delta * cd);
                SupersolutionSpec spec = make_supersolution_spec(vp, ver_delta, ver_phi, R, 2);
                ResidualReport rep = check_supersolution(spec);
                write_report(fs::path(man.outdir) / "report.txt", rep);
                man.outputs.push_back("report.txt");
                std::printf("pass=%d min_interior_residual=%s min_boundary_slack=%s\n", rep.pass,
                            io::fmt(rep.min_interior_residual).c_str(),
                            io::fmt(rep.min_boundary_slack).c_str());
                man.status = rep.pass ? "ok" : "check_failed";
                man.write();
                return rep.pass ? 0 : 2;
            }
            if (ver_what == "sub1d") {
                ResidualReport rep = check_subsolution_1d(vp, ver_delta);
                write_report(fs::path(man.outdir) / "report.txt", rep);
                man.outputs.push_back("report.txt");
                std::printf("pass=%d min_interior_residual=%s\n", rep.pass,
                            io::fmt(rep.min_interior_residual).c_str());
                man.status = rep.pass ? "ok" : "check_failed";
                man.write();
                return rep.pass ? 0 : 2;
            }
            if (ver_what == "compare") {
                bool all_ok = true;
                std::vector<std::pair<std::string, std::string>> lines;
                for (const ComparisonCase& c : default_battery()) {
                    OrderingReport rep = comparison_battery(c);
                    const bool ok = rep.max_violation <= 1e-8;
                    all_ok = all_ok && ok;
                    std::printf("case=%s violation=%s %s\n", rep.name.c_str(),
                                io::fmt(rep.max_violation).c_str(), ok ? "ok" : "FAIL");
                    lines.emplace_back("violation_" + rep.name, io::fmt(rep.max_violation));
                }
                io::write_keyvalues(fs::path(man.outdir) / "report.txt", lines);
                man.outputs.push_back("report.txt");
                man.status = all_ok ? "ok" : "check_failed";
                man.write();
                return all_ok ? 0 : 2;
            }
            throw ConfigError("verify: unknown check: " + ver_what);
        }
        if (cmd_plot->parsed()) {
            man.subcommand = "plotdata";
            man.outdir = ensure_outdir(plot_out).string();
            const int rc = plotdata(plot_run, man);
            man.write();
            return rc;
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        if (!man.outdir.empty()) {
            man.status = std::string("config_error: ") + e.what();
            man.write();
        }
        return 1;
    } catch (const NonPositiveParameter& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        if (!man.outdir.empty()) {
            man.status = std::string("config_error: ") + e.what();
            man.write();
        }
        return 1;
    } catch (const HypothesisViolated& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        if (!man.outdir.empty()) {
            man.status = std::string("hypothesis_violated: ") + e.what();
            man.write();
        }
        return 2;
    } catch (const SolverError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        if (!man.outdir.empty()) {
            man.status = std::string("solver_error: ") + e.what();
            man.partial = true;
            man.write();
        }
        return 2;
    }
    return 1;
}
