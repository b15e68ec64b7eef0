#include "stefankpp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace stefankpp {

namespace {

// Calibrated on (a/b) exp(-(a/d)|x|^2): centered-difference Laplacian plus
// the traveling time difference measured 1.99 h^2 at h = 1e-3 and 5e-4;
// committed with 2x headroom.
constexpr double kFdCalibration = 4.0;

} // namespace

double fd_tolerance(const ModelParams& p, double h_fd) {
    return kFdCalibration * (p.a / p.b) * (p.a * p.a / p.d) * h_fd * h_fd;
}

double SupersolutionSpec::min_R() const {
    if (delta <= 0.0) return std::numeric_limits<double>::infinity();
    return params.d * (dimension - 1) / (delta * c_delta);
}

double SupersolutionSpec::xi_R(double t) const {
    return xi2 - (R + r2) / std::sin(phi) - shift_speed() * t;
}

double SupersolutionSpec::shift_speed() const {
    const double om = 1.0 - delta;
    return c_delta / (om * om * std::sin(phi));
}

SupersolutionSpec make_supersolution_spec(const ModelParams& params, double delta, double phi,
                                          double R, int dimension, const ShootingOptions& opts) {
    validate(params);
    if (!(phi > M_PI / 2.0) || !(phi < M_PI))
        throw ConfigError("verify: supersolution needs phi in (pi/2, pi)");
    if (dimension < 2) throw ConfigError("verify: dimension must be >= 2");
    if (!(delta >= 0.0) || delta >= std::min(params.a, params.b))
        throw DeltaTooLarge("verify: need 0 <= delta < min(a, b)");
    if (!(R > 0.0)) throw ConfigError("verify: R must be positive");

    SupersolutionSpec spec;
    spec.params = params;
    spec.delta = delta;
    spec.dimension = dimension;
    spec.phi = phi;
    spec.R = R;

    ModelParams pert = params;
    pert.a = params.a + delta;
    pert.b = params.b - delta;
    spec.c_delta = compute_cstar(pert, opts).c_star;
    spec.profile = solve_profile(pert, spec.c_delta, opts);

    if (delta > 0.0 && R < spec.min_R())
        throw SpecInvariantViolated("verify: R below d(N-1)/(delta c^delta)");
    return spec;
}

namespace {

// distance from a frame point (vertex of Lambda_R at the origin) to the
// regularized boundary, positive inside Lambda_R
double frame_depth(const SupersolutionSpec& s, double rho, double z) {
    const double theta = M_PI - s.phi;
    const double seam = s.phi - M_PI / 2.0; // half-angle of the spherical stratum
    const double n = std::hypot(rho, z);
    if (n == 0.0) return -s.R;
    const double ang = std::atan2(rho, z); // angle from +e_N
    if (ang < seam) return n - s.R;
    return rho * std::cos(theta) + z * std::sin(theta) - s.R;
}

} // namespace

double eval_supersolution_frame(const SupersolutionSpec& spec, double rho, double z) {
    const double depth = frame_depth(spec, rho, z);
    if (depth <= 0.0) return 0.0;
    const double om = 1.0 - spec.delta;
    return spec.profile.value(depth) / (om * om);
}

double eval_supersolution(const SupersolutionSpec& spec, double t, std::span<const double> x) {
    if (static_cast<int>(x.size()) != spec.dimension)
        throw ConfigError("verify: point dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) s += x[i] * x[i];
    return eval_supersolution_frame(spec, std::sqrt(s), x.back() - spec.xi_R(t));
}

ResidualReport check_supersolution(const SupersolutionSpec& spec, const SamplePlan& plan) {
    const ModelParams& p = spec.params;
    const int N = spec.dimension;
    const double len = p.diffusion_length();
    const double h = plan.h_fd > 0.0 ? plan.h_fd : 1e-3 * len;
    const double span = plan.span > 0.0 ? plan.span : 20.0 * len;
    const double tau = h * h;
    const double om2 = (1.0 - spec.delta) * (1.0 - spec.delta);
    const double theta = M_PI - spec.phi;
    const double seam = spec.phi - M_PI / 2.0;
    const double B = spec.shift_speed();

    ResidualReport rep;
    rep.tolerance = fd_tolerance(p, h);

    auto U = [&](double rho, double z) { return eval_supersolution_frame(spec, rho, z); };

    auto fd_residual = [&](double rho, double z, double* analytic) {
        const double u0 = U(rho, z);
        // time derivative along the traveling frame
        const double ut = (U(rho, z + B * tau) - U(rho, z - B * tau)) / (2.0 * tau);
        // Laplacian: radial + (N-2) transverse + axial
        double lap = (U(std::fabs(rho - h), z) - 2.0 * u0 + U(rho + h, z)) / (h * h);
        if (N > 2) lap += (N - 2) * 2.0 * (U(std::hypot(rho, h), z) - u0) / (h * h);
        lap += (U(rho, z + h) - 2.0 * u0 + U(rho, z - h)) / (h * h);
        const double fd = ut - p.d * lap - (p.a * u0 - p.b * u0 * u0);

        // analytic counterpart from the profile ODE
        const double depth = frame_depth(spec, rho, z);
        const double Z = spec.profile.value(depth);
        const double dZ = spec.profile.derivative(depth);
        const double ap = p.a + spec.delta, bp = p.b - spec.delta;
        const double d2Z = (spec.c_delta * dZ - ap * Z + bp * Z * Z) / p.d;
        const double ang = std::atan2(rho, z);
        double dz_dist, lap_dist;
        if (ang < seam) {
            const double n = std::hypot(rho, z);
            dz_dist = z / n;
            lap_dist = (N - 1) / n;
        } else {
            dz_dist = std::sin(theta);
            lap_dist = rho > 0.0 ? (N - 2) * std::cos(theta) / rho : 0.0;
        }
        const double ubar = Z / om2;
        const double ut_an = B * dZ * dz_dist / om2;
        const double lap_an = (d2Z + dZ * lap_dist) / om2;
        *analytic = ut_an - p.d * lap_an - (p.a * ubar - p.b * ubar * ubar);
        return fd;
    };

    std::mt19937 rng(plan.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    rep.min_interior_residual = std::numeric_limits<double>::max();
    const double excl = 5.0 * h;

    // stratum 1: spherical cap |z| in (R, R + span), angle within the seam cone
    std::size_t got = 0, attempts = 0;
    while (got < plan.per_stratum && attempts < 100 * plan.per_stratum) {
        ++attempts;
        const double ang = unit(rng) * seam;
        const double depth = excl + unit(rng) * (span - excl);
        const double n = spec.R + depth;
        if (n * (seam - ang) < excl) continue; // too close to the stratum seam
        const double rho = n * std::sin(ang);
        const double z = n * std::cos(ang);
        double an;
        const double fd = fd_residual(rho, z, &an);
        rep.min_interior_residual = std::min(rep.min_interior_residual, fd);
        rep.max_fd_error = std::max(rep.max_fd_error, std::fabs(fd - an));
        ++got;
    }
    // stratum 2: offset cone surface, depth w, arclength s along the ray
    const double er_r = std::sin(theta), er_z = -std::cos(theta);
    const double n_r = std::cos(theta), n_z = std::sin(theta);
    std::size_t got2 = 0;
    attempts = 0;
    while (got2 < plan.per_stratum && attempts < 100 * plan.per_stratum) {
        ++attempts;
        const double depth = excl + unit(rng) * (span - excl);
        const double s = unit(rng) * 4.0 * span;
        const double rho = s * er_r + (spec.R + depth) * n_r;
        const double z = s * er_z + (spec.R + depth) * n_z;
        if (rho < 0.0) continue;
        const double ang = std::atan2(rho, z);
        const double n = std::hypot(rho, z);
        if (ang < seam + excl / std::max(n, spec.R)) continue; // seam exclusion
        if (frame_depth(spec, rho, z) < excl) continue;
        double an;
        const double fd = fd_residual(rho, z, &an);
        rep.min_interior_residual = std::min(rep.min_interior_residual, fd);
        rep.max_fd_error = std::max(rep.max_fd_error, std::fabs(fd - an));
        ++got2;
    }
    rep.n_samples = got + got2;

    // boundary slack: analytic on both strata; minimum sits at the seam angle
    const double slope = spec.profile.slope0;
    double min_slack = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i <= plan.boundary_samples; ++i) {
        const double ang = seam * static_cast<double>(i) / plan.boundary_samples;
        const double q = std::cos(ang); // z_N/|z| on the spherical boundary
        min_slack = std::min(min_slack, (q * spec.c_delta / std::sin(theta) - p.mu * slope) / om2);
    }
    min_slack = std::min(min_slack, (spec.c_delta - p.mu * slope) / om2); // cone stratum
    rep.min_boundary_slack = min_slack;

    rep.near_degenerate = rep.min_interior_residual < 10.0 * rep.tolerance;
    rep.pass = rep.min_interior_residual >= -rep.tolerance && rep.min_boundary_slack >= -1e-6;
    return rep;
}

ResidualReport check_subsolution_1d(const ModelParams& params, double delta,
                                    const SamplePlan& plan) {
    const ModelParams p = validate(params);
    if (!(delta > 0.0) || delta >= std::min(p.a, p.b))
        throw DeltaTooLarge("verify: need 0 < delta < min(a, b)");

    ModelParams pert = p;
    pert.a = p.a - delta;
    pert.b = p.b + delta;
    const double c_delta = compute_cstar(pert).c_star;
    const SemiWaveProfile prof = solve_profile(pert, c_delta);

    const double len = p.diffusion_length();
    const double h = plan.h_fd > 0.0 ? plan.h_fd : 1e-3 * len;
    const double span = plan.span > 0.0 ? plan.span : 20.0 * len;
    const double tau = h * h;
    const double om2 = (1.0 - delta) * (1.0 - delta);
    const double eta_dot = -om2 * c_delta;

    ResidualReport rep;
    rep.tolerance = fd_tolerance(p, h);

    auto W = [&](double xi) { return xi <= 0.0 ? 0.0 : om2 * prof.value(xi); };

    std::mt19937 rng(plan.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    rep.min_interior_residual = std::numeric_limits<double>::max();
    const double excl = 5.0 * h;
    for (std::size_t i = 0; i < plan.per_stratum; ++i) {
        const double xi = excl + unit(rng) * (span - excl);
        const double w0 = W(xi);
        // w(t +- tau, y) = W(xi -+ eta' tau) along the traveling frame
        const double wt = (W(xi - eta_dot * tau) - W(xi + eta_dot * tau)) / (2.0 * tau);
        const double wyy = (W(xi - h) - 2.0 * w0 + W(xi + h)) / (h * h);
        const double fd = (pert.a * w0 - pert.b * w0 * w0) - (wt - p.d * wyy);

        const double Z = prof.value(xi), dZ = prof.derivative(xi);
        const double d2Z = (c_delta * dZ - pert.a * Z + pert.b * Z * Z) / p.d;
        const double an = (pert.a * om2 * Z - pert.b * om2 * om2 * Z * Z)
                          - (om2 * om2 * c_delta * dZ - p.d * om2 * d2Z);
        rep.min_interior_residual = std::min(rep.min_interior_residual, fd);
        rep.max_fd_error = std::max(rep.max_fd_error, std::fabs(fd - an));
    }
    rep.n_samples = plan.per_stratum;

    // boundary laws: w(t, eta) = 0 exactly; eta' + mu w_y(t, eta) = 0 up to
    // the c* fixed-point residual
    const double law = eta_dot + p.mu * om2 * prof.slope0;
    rep.min_boundary_slack = -std::fabs(law);
    if (prof.value(0.0) != 0.0) rep.min_boundary_slack = -1.0;

    rep.near_degenerate = rep.min_interior_residual < 10.0 * rep.tolerance;
    rep.pass = rep.min_interior_residual >= -rep.tolerance && rep.min_boundary_slack >= -1e-6;
    return rep;
}

namespace {

void require_ordered(const ComparisonCase& c, const EnthalpyField& f0, const EnthalpyField& f1) {
    if (f0.nx != f1.nx || f0.ny != f1.ny || f0.dim != f1.dim || f0.hx != f1.hx
        || f0.x_lo != f1.x_lo || f0.y_lo != f1.y_lo || f0.m != f1.m)
        throw ConfigError("comparison: the pair must share grid and smoothing");
    if (c.base.params.d != c.hat.params.d)
        throw HypothesisViolated("comparison: d must match");
    if (c.base.params.mu > c.hat.params.mu)
        throw HypothesisViolated("comparison: mu must not exceed mu_hat");
    for (std::size_t i = 0; i < f0.e.size(); ++i)
        if (f0.e[i] > f1.e[i] + 1e-14)
            throw HypothesisViolated("comparison: initial enthalpy not ordered");
    const Reaction g = logistic_reaction(c.base.params);
    const Reaction gh = logistic_reaction(c.hat.params);
    const double umax = std::max({c.base.params.carrying_capacity(),
                                  c.hat.params.carrying_capacity(), 1.0});
    for (int i = 0; i <= 256; ++i) {
        const double u = umax * i / 256.0;
        if (g.evaluate(u) > gh.evaluate(u) + 1e-14)
            throw HypothesisViolated("comparison: reactions not ordered");
    }
}

} // namespace

OrderingReport comparison_battery(const ComparisonCase& c) {
    if (c.base.T != c.hat.T) throw ConfigError("comparison: T must match");
    EnthalpyField f = make_field(c.base);
    EnthalpyField fh = make_field(c.hat);
    require_ordered(c, f, fh);

    const Reaction g = logistic_reaction(c.base.params);
    const Reaction gh = logistic_reaction(c.hat.params);

    double dt = std::min(f.max_dt(c.base.cfl > 0 ? c.base.cfl : 0.25),
                         fh.max_dt(c.hat.cfl > 0 ? c.hat.cfl : 0.25));
    const long n_steps = std::max(1L, static_cast<long>(std::ceil(c.base.T / dt - 1e-12)));
    dt = c.base.T / static_cast<double>(n_steps);
    const double snap = c.base.snap_every > 0.0 ? c.base.snap_every : c.base.T / 8.0;
    const long stride = std::clamp(std::lround(snap / dt), 1L, n_steps);

    OrderingReport rep;
    rep.name = c.name;
    auto compare = [&]() {
        for (std::size_t i = 0; i < f.e.size(); ++i) {
            const double v = f.u(i) - fh.u(i);
            rep.max_violation = std::max(rep.max_violation, v);
            ++rep.n_checked;
        }
    };
    compare();
    for (long i = 1; i <= n_steps; ++i) {
        step_enthalpy(f, g, dt);
        step_enthalpy(fh, gh, dt);
        if (i % stride == 0 || i == n_steps) compare();
    }
    return rep;
}

std::vector<ComparisonCase> default_battery() {
    ModelParams base_p{1.0, 1.0, 1.0, 1.0};

    Scenario base;
    base.dim = 1;
    base.params = base_p;
    base.range = {RangeShape::Ball, {}, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0};
    base.u0_kind = U0Kind::PlateauDistance;
    base.box = {-6.0, 6.0, 0.0, 0.0};
    base.hx = 0.05;
    base.T = 1.5;
    base.snap_every = 0.25;

    std::vector<ComparisonCase> cases;

    cases.push_back({"identical", base, base});

    {
        ComparisonCase c{"larger-data", base, base};
        c.hat.u0_kind = U0Kind::Custom;
        const InitialRange range = base.range;
        c.hat.u0_custom = [range](double x, double y) {
            const double depth = range.inside_depth(x, y, 1);
            return depth > 0.0 ? std::min(1.0, depth) + 0.1 : 0.0;
        };
        cases.push_back(std::move(c));
    }
    {
        ComparisonCase c{"larger-mu", base, base};
        c.hat.params.mu = 2.0;
        cases.push_back(std::move(c));
    }
    {
        ComparisonCase c{"larger-range", base, base};
        c.hat.range.radius = 2.5;
        cases.push_back(std::move(c));
    }
    {
        ComparisonCase c{"larger-reaction", base, base};
        c.hat.params.a = 1.2;
        cases.push_back(std::move(c));
    }
    {
        Scenario b2 = base;
        b2.dim = 2;
        b2.box = {-4.0, 4.0, -4.0, 4.0};
        b2.hx = 0.1;
        b2.T = 0.6;
        b2.snap_every = 0.15;
        b2.range.radius = 1.5;
        ComparisonCase c{"combined-2d", b2, b2};
        c.hat.range.radius = 1.8;
        c.hat.params.mu = 2.0;
        cases.push_back(std::move(c));
    }
    return cases;
}

OrderingReport fb1d_comparison(const Front1DConfig& base, const Front1DConfig& hat) {
    if (base.orientation != hat.orientation || base.h != hat.h || base.L != hat.L
        || base.T != hat.T)
        throw ConfigError("fb1d comparison: the pair must share grid, orientation and T");
    if (base.params.d != hat.params.d || base.params.mu != hat.params.mu
        || base.params.a != hat.params.a || base.params.b != hat.params.b)
        throw HypothesisViolated("fb1d comparison: params must match (data-only ordering)");
    const double L = base.L > 0 ? base.L : 60.0 * base.params.diffusion_length();
    const double h = base.h > 0 ? base.h : 0.02 * base.params.diffusion_length();
    for (double xi = 0.0; xi <= L; xi += h)
        if (base.w0(xi) > hat.w0(xi) + 1e-14)
            throw HypothesisViolated("fb1d comparison: initial data not ordered");

    FrontTrajectory t0 = run_front1d(base);
    FrontTrajectory t1 = run_front1d(hat);

    OrderingReport rep;
    rep.name = "fb1d";
    // larger data pushes the front faster: orientation * rho_hat <= orientation * rho... for
    // the left-moving problem rho decreases, so rho_hat <= rho.
    const double sgn = base.orientation < 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < t0.times.size() && i < t1.times.size(); ++i) {
        rep.max_violation = std::max(rep.max_violation, sgn * (t1.rho_values[i] - t0.rho_values[i]));
        ++rep.n_checked;
    }
    for (std::size_t s = 0; s < t0.snapshots.size() && s < t1.snapshots.size(); ++s) {
        const Front1DSnapshot& a = t0.snapshots[s];
        const Front1DSnapshot& b = t1.snapshots[s];
        for (std::size_t j = 0; j < a.w.size(); ++j) {
            const double y = a.rho - a.orientation * (static_cast<double>(j) * a.h);
            rep.max_violation = std::max(rep.max_violation, a.w[j] - snapshot_value_at(b, y));
            ++rep.n_checked;
        }
    }
    return rep;
}

} // namespace stefankpp
