// Acceptance suite: one self-contained check per criterion, each printing a
// single [PASS]/[FAIL] line plus its measurements. Run all with no arguments
// or a single one with --criterion N.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "stefankpp/enthalpy.hpp"
#include "stefankpp/fb1d.hpp"
#include "stefankpp/fbradial.hpp"
#include "stefankpp/fit.hpp"
#include "stefankpp/geometry.hpp"
#include "stefankpp/semiwave.hpp"
#include "stefankpp/verify.hpp"

using namespace stefankpp;

namespace {

const ModelParams kUnit{1, 1, 1, 1};

// fine-shooting oracle (RK4 h=1e-5, slope bisection to 1e-12, outer residual
// ~1e-11), computed once offline and frozen
constexpr double kCstarMu1 = 0.364370723318968;

double cstar_unit() {
    static const double c = compute_cstar(kUnit).c_star;
    return c;
}

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const char* fmt, ...) {
        va_list ap;
        va_start(ap, fmt);
        char buf[512];
        std::vsnprintf(buf, sizeof buf, fmt, ap);
        va_end(ap);
        detail += std::string("    ") + (cond ? "ok   " : "FAIL ") + buf + "\n";
        ok = ok && cond;
    }
    void note(const char* fmt, ...) {
        va_list ap;
        va_start(ap, fmt);
        char buf[512];
        std::vsnprintf(buf, sizeof buf, fmt, ap);
        va_end(ap);
        detail += std::string("    note ") + buf + "\n";
    }
};

// ---------------------------------------------------------------------- 1
Check criterion1() {
    Check c;
    const double slope = shooting_slope(kUnit, 0.0);
    const double exact = 1.0 / std::sqrt(3.0);
    c.require(std::fabs(slope - exact) <= 1e-6, "|Z'_0(0) - 3^(-1/2)| = %.3e <= 1e-6",
              std::fabs(slope - exact));
    return c;
}

// ---------------------------------------------------------------------- 2
Check criterion2() {
    Check c;
    ModelParams big = kUnit;
    big.mu = 1e3;
    const double c_big = compute_cstar(big).c_star;
    c.require(std::fabs(c_big - 2.0) <= 0.02 * 2.0, "c*(mu=1e3) = %.6f within 2%% of 2.0", c_big);
    if (std::fabs(c_big - 2.0) > 0.04) {
        c.note("the convergence c* -> 2 sqrt(ad) is logarithmic: 2 - c*(mu) ~ 13.2/ln(mu)^2,");
        c.note("so a 2%% gap needs mu ~ 1e8; at mu = 1e3 the true speed is %.4f (gap %.1f%%)",
               c_big, 100.0 * (2.0 - c_big) / 2.0);
    }
    // informative trend toward the limit
    ModelParams huge = kUnit;
    huge.mu = 1e5;
    const double c_huge = compute_cstar(huge).c_star;
    c.note("trend: c*(1e3) = %.4f < c*(1e5) = %.4f < 2 (gap ratio %.2f, ln^2 ratio %.2f)", c_big,
           c_huge, (2.0 - c_big) / (2.0 - c_huge),
           std::pow(std::log(1e5) / std::log(1e3), 2.0));

    ModelParams small = kUnit;
    small.mu = 1e-3;
    const double c_small = compute_cstar(small).c_star;
    const double exact = 1.0 / std::sqrt(3.0);
    c.require(std::fabs(c_small / small.mu - exact) <= 0.02 * exact,
              "c*(mu=1e-3)/mu = %.6f within 2%% of 3^(-1/2)", c_small / small.mu);

    double prev = 0.0;
    bool inc = true, bounded = true;
    for (double mu : {0.1, 0.3, 1.0, 3.0, 10.0}) {
        ModelParams p = kUnit;
        p.mu = mu;
        const double cs = compute_cstar(p).c_star;
        inc = inc && cs > prev;
        bounded = bounded && cs < 2.0;
        prev = cs;
    }
    c.require(inc, "c* strictly increasing over mu in {0.1,0.3,1,3,10}");
    c.require(bounded && c_big < 2.0 && c_huge < 2.0, "c* < 2 sqrt(ad) at every sampled mu");
    return c;
}

// ---------------------------------------------------------------------- 3
Check criterion3() {
    Check c;
    const double base = cstar_unit();
    for (double lam : {0.5, 2.0, 10.0}) {
        ModelParams p{1.0, 1.0, lam, lam}; // d, a, b, mu
        const double scaled = compute_cstar(p).c_star;
        c.require(std::fabs(base - scaled) <= 1e-8,
                  "|c*(1,1,1,1) - c*(mu=%.1f, b=%.1f)| = %.2e <= 1e-8", lam, lam,
                  std::fabs(base - scaled));
    }
    return c;
}

// ---------------------------------------------------------------------- 4
Check criterion4() {
    Check c;
    const double cstar = cstar_unit();
    Front1DConfig cfg;
    cfg.params = kUnit;
    cfg.orientation = -1;
    cfg.h = 0.02;
    cfg.T = 100.0;
    cfg.sample_dt = 0.05;
    cfg.snapshot_times = {100.0};
    cfg.w0 = [](double xi) { return 0.5 * (1.0 - std::exp(-xi)); };
    FrontTrajectory traj = run_front1d(cfg);

    LineFit fit = estimate_speed(traj, 50.0, 100.0);
    c.require(std::fabs(fit.slope + cstar) <= 0.02 * cstar,
              "late speed %.6f within 2%% of -c* = %.6f", fit.slope, -cstar);

    SemiWaveProfile prof = solve_profile(kUnit, cstar);
    const Front1DSnapshot& snap = traj.snapshots.back();
    double sup = 0.0;
    for (std::size_t j = 0; j < snap.w.size(); ++j)
        sup = std::max(sup, std::fabs(snap.w[j] - prof.value(j * snap.h)));
    c.require(sup <= 0.02, "sup |w(T) - Z_c*| = %.4f <= 0.02 (a/b)", sup);
    return c;
}

// ---------------------------------------------------------------------- 5
Check criterion5() {
    Check c;
    const double h = 0.02, T = 40.0;
    Scenario sc;
    sc.dim = 1;
    sc.params = kUnit;
    sc.u0_kind = U0Kind::Custom;
    sc.u0_custom = [](double x, double) { return x <= 0.0 ? 0.0 : 0.5 * (1.0 - std::exp(-x)); };
    sc.box = {-20.0, 50.0, 0, 0};
    sc.hx = h;
    sc.T = T;
    sc.snap_every = 1.0;
    RunResult res = run_scenario(sc);

    Front1DConfig cfg;
    cfg.params = kUnit;
    cfg.orientation = -1;
    cfg.h = h;
    cfg.L = 60.0;
    cfg.T = T;
    cfg.w0 = [](double xi) { return 0.5 * (1.0 - std::exp(-xi)); };
    cfg.snapshot_times = res.snapshot_times;
    FrontTrajectory traj = run_front1d(cfg);

    double worst = 0.0;
    for (std::size_t s = 0; s < res.snapshots.size(); ++s) {
        const double x_e = extract_front(res.snapshots[s]).points.front()[0];
        worst = std::max(worst, std::fabs(x_e - traj.snapshots[s].rho));
    }
    c.require(worst <= 2.0 * h, "max front mismatch %.4f <= 2h = %.4f over %zu output times",
              worst, 2.0 * h, res.snapshots.size());
    return c;
}

// ---------------------------------------------------------------------- 6
Check criterion6() {
    Check c;
    const double cstar = cstar_unit();
    RadialConfig cfg;
    cfg.params = kUnit;
    cfg.dimension = 2;
    cfg.r0 = 2.0 * critical_radius(kUnit, 2);
    cfg.T = 240.0;
    cfg.cells = 2000;
    cfg.sample_dt = cfg.T / 2048.0;
    cfg.v0 = [&](double r) {
        const double x = r / cfg.r0;
        return 0.5 * (1.0 - x * x);
    };
    RadialTrajectory traj = run_interior(cfg);
    LineFit fit = fit_line(traj.times, traj.front, 0.5 * cfg.T, cfg.T, 10);
    c.require(std::fabs(fit.slope - cstar) <= 0.03 * cstar,
              "late k(t) slope %.6f within 3%% of c* = %.6f (rel err %.2f%%)", fit.slope, cstar,
              100.0 * std::fabs(fit.slope - cstar) / cstar);
    c.note("cross-solver: radial slope within %.2f%% of the 1D front-fixing speed scale",
           100.0 * std::fabs(fit.slope - cstar) / cstar);
    return c;
}

// ---------------------------------------------------------------------- 7
Check criterion7() {
    Check c;
    RadialConfig cfg;
    cfg.params = kUnit;
    cfg.dimension = 2;
    cfg.R0 = 50.0;
    cfg.T = 1.0;
    cfg.sup_bound = 1.0;
    cfg.grad_bound = 1.0;
    cfg.v0 = [](double xi) { return 1.0 - std::exp(-xi); };
    auto [traj, cert] = run_exterior(cfg);
    (void)traj;
    const double M_expect = std::max(1.0 + std::sqrt(0.5 + 1.0), 2.0 / std::exp(1.0));
    c.require(std::fabs(cert.M - M_expect) < 1e-12, "M = %.6f matches (N-1)+sqrt(K/2d+(N-1)^2)",
              cert.M);
    c.require(cert.h_T >= 25.0, "h(T) = %.4f >= R0/2 = 25", cert.h_T);
    c.require(cert.max_abs_hprime <= cert.C4 * 1.05, "max|h'| = %.4f <= 1.05 C4 = %.4f",
              cert.max_abs_hprime, cert.C4 * 1.05);
    return c;
}

// ------------------------------------------------------------------- 8 + 10
struct ConeRun {
    RunResult res;
    Scenario sc;
    double T = 0;
};

ConeRun cone_run_phi34() {
    ConeRun run;
    const double cstar = cstar_unit();
    run.T = std::round(15.0 / cstar); // c* T ~ 15 diffusion lengths
    Scenario& sc = run.sc;
    sc.dim = 2;
    sc.params = kUnit;
    sc.range.shape = RangeShape::Cone;
    sc.range.cone = make_cone(3.0 * M_PI / 4.0, 0.0);
    // wide enough that every front point kept for measurement (|x| <= 8) is
    // driven by cone-boundary sources inside the box, not by the wall corners
    // where the truncated range spreads at c* instead of c*/sin(phi)
    sc.box = {-17.0, 17.0, -28.0, 5.0};
    sc.hx = 0.1;
    sc.T = run.T;
    sc.snap_every = 1.0;
    sc.probes.push_back({0.0, 2.0});
    run.res = run_scenario(sc);
    return run;
}

Check criterion8() {
    Check c;
    const double cstar = cstar_unit();
    ConeRun run = cone_run_phi34();
    c.require(!run.res.margin_violated, "run completed without hitting the box margin");
    if (run.res.margin_violated) return c;

    // vertex recession speed along the axis
    std::vector<double> t, y;
    for (std::size_t s = 0; s < run.res.snapshots.size(); ++s) {
        const double fy = axis_front_y(run.res.snapshots[s], 0.0);
        if (std::isnan(fy)) continue;
        t.push_back(run.res.snapshot_times[s]);
        y.push_back(fy);
    }
    LineFit fit = fit_line(t, y, 0.5 * run.T, run.T, 10);
    const double pred = cstar / std::sin(3.0 * M_PI / 4.0);
    c.require(std::fabs(-fit.slope - pred) <= 0.10 * pred,
              "vertex recession speed %.4f within 10%% of c*/sin(phi) = %.4f", -fit.slope, pred);

    // sandwich at the final time, keeping clear of the wall-corner zones
    const double eps = 0.15 * cstar;
    ConeNeighborhood inner{run.sc.range.cone, std::max(0.0, (cstar - eps) * run.T)};
    ConeNeighborhood outer{run.sc.range.cone, (cstar + eps) * run.T};
    std::vector<std::array<double, 2>> pts;
    for (const auto& p : run.res.fronts.back().points)
        if (std::fabs(p[0]) <= 8.0) pts.push_back(p);
    SandwichReport rep = sandwich_check(pts, inner, outer);
    c.require(rep.pass(),
              "sandwich at T: %zu points, %zu inner / %zu outer violations (worst %.3f)",
              rep.n_points, rep.violations_in, rep.violations_out, rep.max_violation_dist);
    return c;
}

Check criterion10() {
    Check c;
    ConeRun run = cone_run_phi34();
    const double u_end = run.res.probe_values[0].back();
    c.require(std::fabs(u_end - 1.0) <= 0.01, "probe u = %.5f within 1%% of a/b at T", u_end);
    return c;
}

// ---------------------------------------------------------------------- 9
Check criterion9() {
    Check c;
    const double cstar = cstar_unit();
    const double T = std::round(15.0 / cstar);
    Scenario sc;
    sc.dim = 2;
    sc.params = kUnit;
    sc.range.shape = RangeShape::Cone;
    sc.range.cone = make_cone(M_PI / 4.0, 0.0);
    sc.box = {-26.0, 26.0, -19.0, 26.0};
    sc.hx = 0.1;
    sc.T = T;
    sc.snap_every = 1.0;
    RunResult res = run_scenario(sc);
    c.require(!res.margin_violated, "run completed without hitting the box margin");
    if (res.margin_violated) return c;

    const double fy = axis_front_y(res.snapshots.back(), 0.0);
    c.require(std::fabs(-fy - cstar * T) <= 0.10 * cstar * T,
              "axis displacement %.3f within 10%% of c* T = %.3f", -fy, cstar * T);

    const double eps = 0.15 * cstar;
    ConeNeighborhood inner{sc.range.cone, std::max(0.0, (cstar - eps) * T)};
    ConeNeighborhood outer{sc.range.cone, (cstar + eps) * T};
    // keep clear of the side walls, where the zero-flux closure distorts the
    // outermost arm segments
    std::vector<std::array<double, 2>> pts;
    for (const auto& p : res.fronts.back().points)
        if (std::fabs(p[0]) <= 16.0) pts.push_back(p);
    SandwichReport rep = sandwich_check(pts, inner, outer);
    c.require(rep.pass(),
              "sandwich at T: %zu points, %zu inner / %zu outer violations (worst %.3f)",
              rep.n_points, rep.violations_in, rep.violations_out, rep.max_violation_dist);
    return c;
}

// --------------------------------------------------------------------- 11
Check criterion11() {
    Check c;
    auto gap_for_mu = [&](double mu) {
        Scenario sc;
        sc.dim = 1;
        sc.params = kUnit;
        sc.params.mu = mu;
        sc.range.shape = RangeShape::Ball;
        sc.range.radius = 3.0;
        sc.box = {-16.0, 16.0, 0, 0};
        sc.hx = 0.02;
        sc.T = 5.0;
        sc.snap_every = 0.5;
        sc.margin_cells = 0; // field comparison on a shared box, no front guard
        RunResult stefan = run_scenario(sc);
        RunResult cauchy = run_cauchy(sc);
        double gap = 0.0;
        for (std::size_t s = 0; s < stefan.snapshots.size(); ++s) {
            if (stefan.snapshot_times[s] < 1.0) continue;
            for (std::size_t i = 0; i < stefan.snapshots[s].e.size(); ++i)
                gap = std::max(gap,
                               std::fabs(cauchy.snapshots[s].u(i) - stefan.snapshots[s].u(i)));
        }
        return gap;
    };
    double prev = 1e18;
    bool monotone = true;
    double gap4 = 0.0;
    for (double mu : {10.0, 1e2, 1e3, 1e4}) {
        const double g = gap_for_mu(mu);
        c.note("sup |U - u_mu| on t in [1,5] at mu = %g: %.5f", mu, g);
        monotone = monotone && g < prev;
        prev = g;
        gap4 = g;
    }
    c.require(gap4 <= 0.05, "sup gap at mu = 1e4 is %.5f <= 0.05 (a/b)", gap4);
    c.require(monotone, "gap decreases monotonically over mu in {10,1e2,1e3,1e4}");
    return c;
}

// --------------------------------------------------------------------- 12
Check criterion12() {
    Check c;
    for (const ComparisonCase& cs : default_battery()) {
        OrderingReport rep = comparison_battery(cs);
        c.require(rep.max_violation <= 1e-8, "case %-16s violation %.3e <= 1e-8 (%zu checks)",
                  rep.name.c_str(), rep.max_violation, rep.n_checked);
    }
    return c;
}

// --------------------------------------------------------------------- 13
Check criterion13() {
    Check c;
    const double delta = 0.1;
    ModelParams pert = kUnit;
    pert.a += delta;
    pert.b -= delta;
    const double cd = compute_cstar(pert).c_star;
    SupersolutionSpec spec =
        make_supersolution_spec(kUnit, delta, 3.0 * M_PI / 4.0, 2.0 / (delta * cd), 2);

    ResidualReport sup = check_supersolution(spec);
    c.require(sup.pass, "supersolution: min interior %.3e, min boundary slack %.3e (tol %.1e)",
              sup.min_interior_residual, sup.min_boundary_slack, sup.tolerance);

    ResidualReport sub = check_subsolution_1d(kUnit, delta);
    c.require(sub.pass, "subsolution:   min interior %.3e, boundary law defect %.3e",
              sub.min_interior_residual, -sub.min_boundary_slack);

    // truncation floor scaling, halving onto the default h_fd
    SamplePlan coarse;
    coarse.per_stratum = 4000;
    coarse.h_fd = 2e-3;
    SamplePlan fine = coarse;
    fine.h_fd = 1e-3;
    const double r_sup =
        check_supersolution(spec, coarse).max_fd_error / check_supersolution(spec, fine).max_fd_error;
    SamplePlan c1, f1;
    c1.h_fd = 1e-3;
    f1.h_fd = 5e-4;
    const double r_sub = check_subsolution_1d(kUnit, delta, c1).max_fd_error
                         / check_subsolution_1d(kUnit, delta, f1).max_fd_error;
    c.require(r_sup > 2.5 && r_sup < 6.5, "supersolution FD floor ratio %.2f ~ 4 under halving",
              r_sup);
    c.require(r_sub > 2.5 && r_sub < 6.5, "subsolution FD floor ratio %.2f ~ 4 under halving",
              r_sub);
    return c;
}

// --------------------------------------------------------------------- 14
Check criterion14() {
    Check c;
    auto run_m = [&](int m) {
        Scenario sc;
        sc.dim = 1;
        sc.params = kUnit;
        sc.range.shape = RangeShape::HalfSpace;
        sc.range.nx = 1.0;
        sc.range.offset = 0.0;
        sc.box = {-6.0, 6.0, 0, 0};
        sc.hx = 0.02;
        sc.T = 2.0;
        sc.snap_every = 0.25;
        sc.m = m;
        return run_scenario(sc);
    };
    RunResult sharp = run_m(0);
    double prev = 1e18;
    bool monotone = true;
    for (int m : {8, 16, 32}) {
        RunResult rm = run_m(m);
        double gap = 0.0;
        for (std::size_t s = 0; s < sharp.snapshots.size(); ++s)
            for (std::size_t i = 0; i < sharp.snapshots[s].e.size(); ++i)
                gap = std::max(gap, std::fabs(sharp.snapshots[s].u(i) - rm.snapshots[s].u(i)));
        c.note("sup |u_m - u| at m = %2d: %.5f", m, gap);
        monotone = monotone && gap < prev;
        prev = gap;
    }
    c.require(monotone, "m-smoothed runs approach the sharp run monotonically in sup norm");
    return c;
}

struct Entry {
    int id;
    const char* what;
    Check (*fn)();
};

const Entry kCriteria[] = {
    {1, "semi-wave slope closed form Z'_0(0) = 3^(-1/2)", criterion1},
    {2, "c* limits and monotonicity in mu", criterion2},
    {3, "scaling identity c*(mu,a,b,d) = c*(lam mu, a, lam b, d)", criterion3},
    {4, "1D front speed and terminal semi-wave profile", criterion4},
    {5, "cross-solver front match: enthalpy vs front-fixing", criterion5},
    {6, "radial interior spreading speed", criterion6},
    {7, "exterior hole certificate h(T) >= R0/2, |h'| <= C4", criterion7},
    {8, "cone phi = 3pi/4: vertex speed and sandwich", criterion8},
    {9, "cone phi = pi/4: displacement and neighborhood sandwich", criterion9},
    {10, "carrying-capacity convergence at the interior probe", criterion10},
    {11, "mu -> infinity limit toward the Cauchy solution", criterion11},
    {12, "comparison batteries stay ordered", criterion12},
    {13, "super/subsolution residual certification", criterion13},
    {14, "m-smoothing consistency", criterion14},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    }
    int failures = 0;
    for (const Entry& e : kCriteria) {
        if (only && e.id != only) continue;
        Check c;
        try {
            c = e.fn();
        } catch (const std::exception& ex) {
            c.ok = false;
            c.detail += std::string("    threw: ") + ex.what() + "\n";
        }
        std::printf("[%s] criterion %2d: %s\n", c.ok ? "PASS" : "FAIL", e.id, e.what);
        std::fputs(c.detail.c_str(), stdout);
        std::fflush(stdout);
        if (!c.ok) ++failures;
    }
    return failures;
}
