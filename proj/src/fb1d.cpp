#include "stefankpp/fb1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stefankpp/errors.hpp"

namespace stefankpp {

double Front1DState::boundary_gradient() const {
    // (-3 w0 + 4 w1 - w2) / (2h) with w0 = 0
    return (4.0 * w[1] - w[2]) / (2.0 * h);
}

double Front1DState::front_speed() const {
    return orientation * params.mu * boundary_gradient();
}

Front1DState init_front1d(const ModelParams& params, const std::function<double(double)>& w0,
                          int orientation, double L, double h, double rho0) {
    validate(params);
    if (orientation != -1 && orientation != 1) throw ConfigError("fb1d: orientation must be +-1");
    const double len = params.diffusion_length();
    if (!(h > 0.0)) throw ConfigError("fb1d: h must be positive");
    if (!(L >= 40.0 * len)) throw ConfigError("fb1d: L must be at least 40 sqrt(d/a)");
    const long m = std::lround(L / h);
    if (m < 8 || std::fabs(m * h - L) > 1e-9 * L) throw ConfigError("fb1d: h must divide L");

    Front1DState st;
    st.orientation = orientation;
    st.h = h;
    st.params = params;
    st.reaction = logistic_reaction(params);
    st.rho = std::isnan(rho0) ? (orientation < 0 ? 0.0 : 1.0) : rho0;
    st.w.resize(static_cast<std::size_t>(m) + 1);
    for (std::size_t j = 0; j < st.w.size(); ++j) {
        const double v = w0(static_cast<double>(j) * h);
        if (!std::isfinite(v) || v < 0.0) throw BadInitialData("fb1d: w0 must be finite and nonnegative");
        st.w[j] = v;
    }
    if (st.w[0] != 0.0) throw BadInitialData("fb1d: w0(0) must vanish on the front");
    st.scratch.resize(st.w.size());
    return st;
}

void step_front1d(Front1DState& state, double dt) {
    const ModelParams& p = state.params;
    const double h = state.h;
    if (!(dt > 0.0)) throw CFLViolation("fb1d: dt must be positive");
    if (dt * p.d / (h * h) > 0.25 * (1.0 + 1e-9))
        throw CFLViolation("fb1d: dt exceeds 0.25 h^2 / d");

    const double sdot = state.front_speed();          // rho'(t)
    const double adv = -state.orientation * sdot;     // frame advection coefficient (= -mu W_xi(0))
    if (dt * std::fabs(sdot) / h > 0.5) throw CFLViolation("fb1d: advection CFL dt |rho'|/h > 0.5");

    const std::size_t m = state.w.size() - 1;
    const double lam = p.d * dt / (h * h);
    const double adt = adv * dt / (2.0 * h);
    const std::vector<double>& w = state.w;
    std::vector<double>& wn = state.scratch;
    const Reaction& g = state.reaction;

    wn[0] = 0.0;
    if (g.is_logistic()) {
        const double a = g.a, b = g.b;
        for (std::size_t j = 1; j < m; ++j) {
            wn[j] = w[j] + lam * (w[j + 1] - 2.0 * w[j] + w[j - 1]) + adt * (w[j + 1] - w[j - 1])
                    + dt * w[j] * (a - b * w[j]);
        }
    } else {
        for (std::size_t j = 1; j < m; ++j) {
            wn[j] = w[j] + lam * (w[j + 1] - 2.0 * w[j] + w[j - 1]) + adt * (w[j + 1] - w[j - 1])
                    + dt * g.evaluate(w[j]);
        }
    }
    // Neumann far field: ghost mirror, advection difference vanishes there.
    wn[m] = w[m] + lam * 2.0 * (w[m - 1] - w[m]) + dt * g.evaluate(w[m]);

    state.w.swap(state.scratch);
    state.rho += dt * sdot;
    state.t += dt;
}

FrontTrajectory run_front1d(const Front1DConfig& config) {
    if (!config.w0) throw ConfigError("fb1d: missing initial profile");
    if (!(config.T > 0.0)) throw ConfigError("fb1d: T must be positive");
    const double len = config.params.diffusion_length();
    const double h = config.h > 0.0 ? config.h : 0.02 * len;
    const double L = config.L > 0.0 ? config.L : 60.0 * len;

    Front1DState st = init_front1d(config.params, config.w0, config.orientation, L, h, config.rho0);

    const double cfl = config.cfl > 0.0 ? config.cfl : 0.25;
    if (cfl > 0.25) throw ConfigError("fb1d: cfl factor must not exceed 0.25");
    double dt = cfl * h * h / config.params.d;
    const long n_steps = std::max(1L, static_cast<long>(std::ceil(config.T / dt - 1e-12)));
    dt = config.T / static_cast<double>(n_steps);

    long stride = 128;
    if (config.sample_dt > 0.0) stride = std::max(1L, std::lround(config.sample_dt / dt));

    // map snapshot times to step indices
    std::vector<long> snap_steps;
    snap_steps.reserve(config.snapshot_times.size());
    for (double ts : config.snapshot_times)
        snap_steps.push_back(std::clamp(std::lround(ts / dt), 0L, n_steps));

    FrontTrajectory traj;
    auto record = [&]() {
        traj.times.push_back(st.t);
        traj.rho_values.push_back(st.rho);
    };
    auto snapshot = [&]() {
        traj.snapshots.push_back({st.t, st.rho, st.orientation, st.h, st.w});
    };

    record();
    for (std::size_t s = 0; s < snap_steps.size(); ++s)
        if (snap_steps[s] == 0) snapshot();

    for (long i = 1; i <= n_steps; ++i) {
        step_front1d(st, dt);
        if (i % stride == 0 || i == n_steps) record();
        for (std::size_t s = 0; s < snap_steps.size(); ++s)
            if (snap_steps[s] == i) snapshot();
    }
    return traj;
}

LineFit estimate_speed(const FrontTrajectory& traj, double t1, double t2) {
    return fit_line(traj.times, traj.rho_values, t1, t2, 10);
}

double snapshot_value_at(const Front1DSnapshot& snap, double y) {
    const double xi = snap.orientation * (snap.rho - y);
    if (xi < 0.0) return 0.0;
    const double L = (static_cast<double>(snap.w.size()) - 1.0) * snap.h;
    if (xi >= L) return snap.w.back();
    const std::size_t j = static_cast<std::size_t>(xi / snap.h);
    const double f = xi / snap.h - static_cast<double>(j);
    return (1.0 - f) * snap.w[j] + f * snap.w[j + 1];
}

} // namespace stefankpp
