#include "stefankpp/fbradial.hpp"

#include <algorithm>
#include <cmath>

#include "stefankpp/errors.hpp"

namespace stefankpp {

double unit_ball_principal_eigenvalue(int dimension) {
    if (dimension == 2) {
        const double j01 = 2.404825557695773; // first zero of Bessel J0
        return j01 * j01;
    }
    if (dimension == 3) return M_PI * M_PI;
    throw ConfigError("fbradial: principal eigenvalue only provided for N = 2, 3");
}

double critical_radius(const ModelParams& params, int dimension) {
    validate(params);
    return std::sqrt(params.d * unit_ball_principal_eigenvalue(dimension) / params.a);
}

namespace {

struct Recorder {
    RadialTrajectory traj;
    long stride = 1;
    std::vector<long> snap_steps;

    void setup(const RadialConfig& cfg, double dt, long n_steps) {
        stride = cfg.sample_dt > 0.0 ? std::max(1L, std::lround(cfg.sample_dt / dt)) : 128;
        snap_steps.clear();
        for (double ts : cfg.snapshot_times)
            snap_steps.push_back(std::clamp(std::lround(ts / dt), 0L, n_steps));
    }
    void record(double t, double front) {
        traj.times.push_back(t);
        traj.front.push_back(front);
    }
    void maybe_snapshot(long step, double t, double front, const std::vector<double>& v) {
        for (long s : snap_steps)
            if (s == step) traj.snapshots.push_back({t, front, v});
    }
};

} // namespace

RadialTrajectory run_interior(const RadialConfig& cfg) {
    const ModelParams p = validate(cfg.params);
    if (cfg.dimension < 2) throw ConfigError("fbradial: interior solver needs N >= 2");
    if (!(cfg.r0 > 0.0)) throw ConfigError("fbradial: r0 must be positive");
    if (!(cfg.T > 0.0)) throw ConfigError("fbradial: T must be positive");
    if (!cfg.v0) throw ConfigError("fbradial: missing v0");

    const double len = p.diffusion_length();
    const int M = cfg.cells > 0 ? cfg.cells
                                : std::max(256L, std::lround(4.0 * cfg.r0 / (0.02 * len)));
    const double hx = 1.0 / static_cast<double>(M);
    const int N = cfg.dimension;
    const Reaction g = logistic_reaction(p);

    std::vector<double> v(static_cast<std::size_t>(M) + 1);
    for (int j = 0; j <= M; ++j) {
        const double val = cfg.v0(cfg.r0 * j * hx);
        if (!std::isfinite(val) || val < 0.0)
            throw BadInitialData("fbradial: v0 must be finite and nonnegative");
        v[static_cast<std::size_t>(j)] = val;
    }
    if (v[static_cast<std::size_t>(M)] != 0.0)
        throw BadInitialData("fbradial: v0(r0) must vanish on the front");
    std::vector<double> vn(v.size());

    double k = cfg.r0;
    double t = 0.0;
    const double cfl = cfg.cfl > 0.0 ? cfg.cfl : 0.25;
    if (cfl > 0.25) throw ConfigError("fbradial: cfl factor must not exceed 0.25");

    // dt grows with k^2, so the trajectory is sampled on a fixed time lattice
    RadialTrajectory traj;
    const double sample_dt = cfg.sample_dt > 0.0 ? cfg.sample_dt : cfg.T / 512.0;
    double next_rec = 0.0;
    auto record = [&]() {
        traj.times.push_back(t);
        traj.front.push_back(k);
        while (next_rec <= t + 1e-15) next_rec += sample_dt;
    };
    record();
    for (double ts : cfg.snapshot_times)
        if (ts <= 0.0) traj.snapshots.push_back({t, k, v});

    while (t < cfg.T) {
        // front gradient v_r(t, k) = V_xi(1)/k, one-sided second order
        const double grad = (-4.0 * v[static_cast<std::size_t>(M - 1)]
                             + v[static_cast<std::size_t>(M - 2)]) / (2.0 * hx) / k;
        const double kdot = -p.mu * grad;

        double dt = cfl * hx * hx * k * k / p.d;
        if (kdot != 0.0) dt = std::min(dt, 0.5 * hx / (std::fabs(kdot) / k));
        dt = std::min(dt, cfg.T - t);

        const double lam = p.d * dt / (hx * hx * k * k);
        const double adv = kdot / k; // advection coefficient is adv * xi
        vn[0] = v[0] + dt * (p.d * static_cast<double>(N) * 2.0 * (v[1] - v[0]) / (hx * hx * k * k)
                             + g.evaluate(v[0]));
        for (int j = 1; j < M; ++j) {
            const std::size_t js = static_cast<std::size_t>(j);
            const double xi = j * hx;
            const double curv = p.d * (N - 1) / (xi * k * k); // (N-1)/r v_r term
            const double cc = (curv + adv * xi) * dt / (2.0 * hx);
            vn[js] = v[js] + lam * (v[js + 1] - 2.0 * v[js] + v[js - 1])
                     + cc * (v[js + 1] - v[js - 1]) + dt * g.evaluate(v[js]);
        }
        vn[static_cast<std::size_t>(M)] = 0.0;

        v.swap(vn);
        k += dt * kdot;
        t += dt;
        if (k <= 1e-6 * cfg.r0) throw FrontCollapse("fbradial: interior front collapsed");

        if (t >= next_rec - 1e-15 || t >= cfg.T) record();
        for (double ts : cfg.snapshot_times)
            if (ts > t - dt && ts <= t) traj.snapshots.push_back({t, k, v});
    }
    return traj;
}

std::pair<RadialTrajectory, ExteriorCertificate> run_exterior(const RadialConfig& cfg) {
    const ModelParams p = validate(cfg.params);
    if (cfg.dimension < 2) throw ConfigError("fbradial: exterior solver needs N >= 2");
    if (!(cfg.R0 > 1.0)) throw ConfigError("fbradial: R0 must exceed 1");
    if (!(cfg.T > 0.0)) throw ConfigError("fbradial: T must be positive");
    if (!cfg.v0) throw ConfigError("fbradial: missing v0");

    const double len = p.diffusion_length();
    const double hx = cfg.h > 0.0 ? cfg.h : 0.02 * len;
    const double L = cfg.L > 0.0 ? cfg.L : 60.0 * len;
    const long M = std::lround(L / hx);
    if (M < 8) throw ConfigError("fbradial: exterior grid too small");
    const int N = cfg.dimension;
    const Reaction g = logistic_reaction(p);

    std::vector<double> v(static_cast<std::size_t>(M) + 1);
    for (long j = 0; j <= M; ++j) {
        const double val = cfg.v0(j * hx);
        if (!std::isfinite(val) || val < 0.0)
            throw BadInitialData("fbradial: v0 must be finite and nonnegative");
        if (j > 0 && (val <= 0.0 || val > cfg.sup_bound * (1.0 + 1e-12)))
            throw BadInitialData("fbradial: v0 must satisfy 0 < v0 <= C1 away from the front");
        v[static_cast<std::size_t>(j)] = val;
    }
    if (v[0] != 0.0) throw BadInitialData("fbradial: v0(0) must vanish on the front");
    for (long j = 0; j < M; ++j) {
        const double slope = (v[static_cast<std::size_t>(j + 1)] - v[static_cast<std::size_t>(j)]) / hx;
        if (std::fabs(slope) > cfg.grad_bound * (1.0 + 1e-6))
            throw BadInitialData("fbradial: v0 gradient exceeds the declared C1 bound");
    }
    std::vector<double> vn(v.size());

    const double K = g.lipschitz_bound;
    ExteriorCertificate cert;
    cert.R0 = cfg.R0;
    cert.T = cfg.T;
    cert.C3 = cfg.sup_bound * std::exp(K * cfg.T);
    cert.M = std::max((N - 1) + std::sqrt(K / (2.0 * p.d) + (N - 1.0) * (N - 1.0)),
                      2.0 * cfg.grad_bound / cert.C3);
    cert.C4 = 2.0 * cert.M * cert.C3 * p.mu;
    cert.r0_threshold = 2.0 * cert.C4 * cfg.T;

    double hfront = cfg.R0;
    double t = 0.0;
    const double cfl = cfg.cfl > 0.0 ? cfg.cfl : 0.25;
    if (cfl > 0.25) throw ConfigError("fbradial: cfl factor must not exceed 0.25");
    double dt = cfl * hx * hx / p.d;
    const long n_steps = std::max(1L, static_cast<long>(std::ceil(cfg.T / dt - 1e-12)));
    dt = cfg.T / static_cast<double>(n_steps);

    Recorder rec;
    rec.setup(cfg, dt, n_steps);
    rec.record(t, hfront);
    rec.maybe_snapshot(0, t, hfront, v);

    for (long i = 1; i <= n_steps; ++i) {
        const double grad = (4.0 * v[1] - v[2]) / (2.0 * hx);
        const double hdot = std::min(0.0, -p.mu * grad); // sign-correct Stefan law
        cert.max_abs_hprime = std::max(cert.max_abs_hprime, std::fabs(hdot));
        if (dt * std::fabs(hdot) / hx > 0.5)
            throw CFLViolation("fbradial: exterior advection CFL violated");

        const double lam = p.d * dt / (hx * hx);
        vn[0] = 0.0;
        for (long j = 1; j < M; ++j) {
            const std::size_t js = static_cast<std::size_t>(j);
            const double r = hfront + j * hx;
            const double cc = (p.d * (N - 1) / r + hdot) * dt / (2.0 * hx);
            vn[js] = v[js] + lam * (v[js + 1] - 2.0 * v[js] + v[js - 1])
                     + cc * (v[js + 1] - v[js - 1]) + dt * g.evaluate(v[js]);
        }
        vn[static_cast<std::size_t>(M)] =
            v[static_cast<std::size_t>(M)] + lam * 2.0 * (v[static_cast<std::size_t>(M - 1)]
                                                          - v[static_cast<std::size_t>(M)])
            + dt * g.evaluate(v[static_cast<std::size_t>(M)]);

        v.swap(vn);
        hfront += dt * hdot;
        t = i * dt;
        if (hfront <= 0.0) throw HoleClosed("fbradial: exterior hole closed");

        if (i % rec.stride == 0 || i == n_steps) rec.record(t, hfront);
        rec.maybe_snapshot(i, t, hfront, v);
    }

    cert.h_T = hfront;
    cert.bound_ok = hfront >= cfg.R0 / 2.0;
    cert.hprime_ok = cert.max_abs_hprime <= cert.C4 * 1.05;
    return {std::move(rec.traj), cert};
}

} // namespace stefankpp
