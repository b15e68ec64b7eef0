#include "stefankpp/enthalpy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stefankpp/threads.hpp"

namespace stefankpp {

double alpha(double w, int m, const ModelParams& params) {
    const double jump = params.latent_heat();
    if (m <= 0) return w > 0.0 ? w : w - jump;
    double chi;
    if (w <= 0.0) chi = 1.0;
    else if (w >= 1.0 / m) chi = 0.0;
    else chi = 1.0 - m * w;
    return w - jump * chi;
}

double beta(double e, const ModelParams& params) {
    (void)params;
    return e > 0.0 ? e : 0.0;
}

double beta_smoothed(double e, int m, const ModelParams& params) {
    if (m <= 0) return beta(e, params);
    const double jump = params.latent_heat();
    if (e >= 1.0 / m) return e;
    if (e <= -jump) return 0.0; // clamped at the ramp foot
    return (e + jump) / (1.0 + m * jump);
}

bool InitialRange::contains(double x, double y, int dim) const {
    return inside_depth(x, y, dim) > 0.0;
}

double InitialRange::inside_depth(double x, double y, int dim) const {
    switch (shape) {
    case RangeShape::Ball: {
        const double r = dim == 1 ? std::fabs(x - cx) : std::hypot(x - cx, y - cy);
        return radius - r;
    }
    case RangeShape::HalfSpace: {
        const double nn = dim == 1 ? std::fabs(nx) : std::hypot(nx, ny);
        const double dot = dim == 1 ? nx * x : nx * x + ny * y;
        return (offset - dot) / nn;
    }
    case RangeShape::Cone: {
        if (dim != 2) throw ConfigError("enthalpy: cone ranges need dim = 2");
        const double pt[2] = {x, y};
        const double bd = boundary_distance(cone, pt);
        return cone_contains(cone, pt) ? bd : -bd;
    }
    }
    throw ConfigError("enthalpy: unknown range shape");
}

double EnthalpyField::u(std::size_t i) const {
    return m > 0 ? beta_smoothed(e[i], m, params) : beta(e[i], params);
}

double EnthalpyField::max_dt(double cfl_factor) const {
    return cfl_factor * hx * hx / (params.d * dim * 2.0);
}

namespace {

double initial_u0(const Scenario& sc, double x, double y) {
    const ModelParams& p = sc.params;
    switch (sc.u0_kind) {
    case U0Kind::PlateauDistance: {
        const double depth = sc.range.inside_depth(x, y, sc.dim);
        if (depth <= 0.0) return 0.0;
        const double kappa = sc.plateau_kappa > 0.0 ? sc.plateau_kappa : std::sqrt(p.a / p.d);
        return std::min(p.carrying_capacity(), kappa * depth);
    }
    case U0Kind::Constant:
        return sc.range.contains(x, y, sc.dim) ? (sc.u0_value > 0.0 ? sc.u0_value
                                                                    : p.carrying_capacity())
                                               : 0.0;
    case U0Kind::Custom: {
        const double v = sc.u0_custom(x, y);
        if (!std::isfinite(v) || v < 0.0) throw BadInitialData("enthalpy: u0 must be >= 0");
        return v;
    }
    }
    throw ConfigError("enthalpy: unknown u0 kind");
}

enum class Kernel { Sharp, Smoothed, Cauchy };

void step_kernel(EnthalpyField& f, const Reaction& g, double dt, Kernel kind) {
    if (!(dt > 0.0) || dt > f.max_dt(0.25) * (1.0 + 1e-9))
        throw CFLViolation("enthalpy: dt exceeds 0.25 h^2/(2 d dim)");
    const double d = f.params.d;
    const double ax = d / (f.hx * f.hx);
    const double ay = f.dim == 2 ? d / (f.hy * f.hy) : 0.0;
    const long nx = f.nx, ny = f.ny;
    const std::vector<double>& e = f.e;
    std::vector<double>& en = f.scratch;
    const int m = f.m;
    const ModelParams params = f.params;
    const double jump = params.latent_heat();
    const double ramp = m > 0 ? 1.0 / (1.0 + m * jump) : 0.0;

    auto uval = [&](std::size_t i) -> double {
        const double ev = e[i];
        switch (kind) {
        case Kernel::Sharp: return ev > 0.0 ? ev : 0.0;
        case Kernel::Cauchy: return ev;
        case Kernel::Smoothed:
            if (ev >= 1.0 / m) return ev;
            if (ev <= -jump) return 0.0;
            return (ev + jump) * ramp;
        }
        return 0.0;
    };

    const bool logistic = g.is_logistic();
    const double ga = g.a, gb = g.b;

    parallel_for(ny, [&](long y0, long y1) {
        for (long iy = y0; iy < y1; ++iy) {
            const long ym = iy > 0 ? iy - 1 : iy;      // zero-flux faces
            const long yp = iy < ny - 1 ? iy + 1 : iy;
            for (long ix = 0; ix < nx; ++ix) {
                const long xm = ix > 0 ? ix - 1 : ix;
                const long xp = ix < nx - 1 ? ix + 1 : ix;
                const std::size_t i = f.index(ix, iy);
                const double u = uval(i);
                double lap = ax * (uval(f.index(xm, iy)) - 2.0 * u + uval(f.index(xp, iy)));
                if (ay > 0.0)
                    lap += ay * (uval(f.index(ix, ym)) - 2.0 * u + uval(f.index(ix, yp)));
                const double react = logistic ? u * (ga - gb * u) : g.evaluate(u);
                en[i] = e[i] + dt * (lap + react);
            }
        }
    });

    f.e.swap(f.scratch);
    f.t += dt;
}

} // namespace

EnthalpyField make_field(const Scenario& sc) {
    validate(sc.params);
    if (sc.dim != 1 && sc.dim != 2) throw ConfigError("enthalpy: dim must be 1 or 2");
    if (!(sc.hx > 0.0)) throw ConfigError("enthalpy: hx must be positive");
    if (!(sc.box.x_hi > sc.box.x_lo)) throw ConfigError("enthalpy: empty box");
    if (sc.dim == 2 && !(sc.box.y_hi > sc.box.y_lo)) throw ConfigError("enthalpy: empty box");

    EnthalpyField f;
    f.dim = sc.dim;
    f.params = sc.params;
    f.m = sc.m;
    f.hx = sc.hx;
    f.hy = sc.hx;
    f.x_lo = sc.box.x_lo;
    f.y_lo = sc.dim == 2 ? sc.box.y_lo : 0.0;
    f.nx = std::lround((sc.box.x_hi - sc.box.x_lo) / sc.hx);
    f.ny = sc.dim == 2 ? std::lround((sc.box.y_hi - sc.box.y_lo) / sc.hx) : 1;
    if (f.nx < 4 || (sc.dim == 2 && f.ny < 4)) throw ConfigError("enthalpy: grid too small");

    f.e.resize(static_cast<std::size_t>(f.nx) * f.ny);
    f.scratch.resize(f.e.size());
    for (long iy = 0; iy < f.ny; ++iy)
        for (long ix = 0; ix < f.nx; ++ix) {
            const double u0 = initial_u0(sc, f.cell_x(ix), f.cell_y(iy));
            f.e[f.index(ix, iy)] = alpha(u0, sc.m, sc.params);
        }
    return f;
}

void step_enthalpy(EnthalpyField& field, const Reaction& reaction, double dt) {
    step_kernel(field, reaction, dt, field.m > 0 ? Kernel::Smoothed : Kernel::Sharp);
}

void step_cauchy(EnthalpyField& field, const Reaction& reaction, double dt) {
    step_kernel(field, reaction, dt, Kernel::Cauchy);
}

FrontSet extract_front(const EnthalpyField& f) {
    FrontSet fs;
    fs.t = f.t;
    bool any_pos = false, any_zero = false;

    auto emit = [&](double ua, double ub, double xa, double ya, double xb, double yb) {
        // one endpoint positive, the other zero; crossing by linear interpolation
        const double frac = ua / (ua - ub);
        fs.points.push_back({xa + frac * (xb - xa), ya + frac * (yb - ya)});
    };

    for (long iy = 0; iy < f.ny; ++iy) {
        for (long ix = 0; ix < f.nx; ++ix) {
            const double u0 = f.u(f.index(ix, iy));
            (u0 > 0.0 ? any_pos : any_zero) = true;
            if (ix + 1 < f.nx) {
                const double u1 = f.u(f.index(ix + 1, iy));
                if ((u0 > 0.0) != (u1 > 0.0))
                    emit(u0, u1, f.cell_x(ix), f.cell_y(iy), f.cell_x(ix + 1), f.cell_y(iy));
            }
            if (iy + 1 < f.ny) {
                const double u1 = f.u(f.index(ix, iy + 1));
                if ((u0 > 0.0) != (u1 > 0.0))
                    emit(u0, u1, f.cell_x(ix), f.cell_y(iy), f.cell_x(ix), f.cell_y(iy + 1));
            }
        }
    }
    if (!any_pos || !any_zero || fs.points.empty())
        throw NoInterface("enthalpy: field has no zero-level interface");
    return fs;
}

double axis_front_y(const EnthalpyField& f, double x) {
    if (f.dim != 2) throw ConfigError("enthalpy: axis_front_y needs dim = 2");
    long ix = std::lround((x - f.x_lo) / f.hx - 0.5);
    ix = std::clamp(ix, 0L, f.nx - 1);
    for (long iy = 1; iy < f.ny; ++iy) {
        const double ua = f.u(f.index(ix, iy - 1));
        const double ub = f.u(f.index(ix, iy));
        if (ua <= 0.0 && ub > 0.0) {
            const double frac = ua / (ua - ub); // = 0 at the zero cell
            return f.cell_y(iy - 1) + frac * f.hy;
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

namespace {

// Margin guard. Faces the front passes through are exempt, and so are points
// inside the margin band of a crossed face (the front segment entering a
// crossed face sweeps its corners); on the rest the front must keep
// margin_cells cells of clearance.
bool margin_ok(const EnthalpyField& f, const FrontSet& fs, int margin_cells) {
    if (f.dim != 2) {
        const double lo = f.x_lo, hi = f.x_lo + f.nx * f.hx;
        for (const auto& p : fs.points) {
            const double dl = p[0] - lo, dr = hi - p[0];
            if (dl < margin_cells * f.hx || dr < margin_cells * f.hx) return false;
        }
        return true;
    }
    const double lox = f.x_lo, hix = f.x_lo + f.nx * f.hx;
    const double loy = f.y_lo, hiy = f.y_lo + f.ny * f.hy;
    const double near = 1.5 * f.hx;
    bool crossed[4] = {false, false, false, false}; // W, E, S, N
    for (const auto& p : fs.points) {
        if (p[0] - lox < near) crossed[0] = true;
        if (hix - p[0] < near) crossed[1] = true;
        if (p[1] - loy < near) crossed[2] = true;
        if (hiy - p[1] < near) crossed[3] = true;
    }
    const double margin = margin_cells * f.hx;
    for (const auto& p : fs.points) {
        const double dist[4] = {p[0] - lox, hix - p[0], p[1] - loy, hiy - p[1]};
        bool exempt = false;
        for (int fc = 0; fc < 4; ++fc) exempt = exempt || (crossed[fc] && dist[fc] < margin);
        if (exempt) continue;
        for (int fc = 0; fc < 4; ++fc)
            if (!crossed[fc] && dist[fc] < margin) return false;
    }
    return true;
}

RunResult run_loop(const Scenario& sc, bool cauchy) {
    if (!(sc.T > 0.0)) throw ConfigError("enthalpy: T must be positive");
    const double cfl = sc.cfl > 0.0 ? sc.cfl : 0.25;
    if (cfl > 0.25) throw ConfigError("enthalpy: cfl factor must not exceed 0.25");

    EnthalpyField f = make_field(sc);
    if (cauchy) {
        // no latent heat: the state is u itself
        for (auto& ev : f.e) ev = std::max(ev, 0.0);
        f.m = 0;
    }
    const Reaction g = logistic_reaction(sc.params);

    double dt = f.max_dt(cfl);
    const long n_steps = std::max(1L, static_cast<long>(std::ceil(sc.T / dt - 1e-12)));
    dt = sc.T / static_cast<double>(n_steps);

    long snap_stride = n_steps;
    if (sc.snap_every > 0.0)
        snap_stride = std::clamp(std::lround(sc.snap_every / dt), 1L, n_steps);

    const bool track_front = !cauchy && sc.m == 0;

    RunResult res;
    res.probe_values.resize(sc.probes.size());

    auto probe_u = [&](const std::array<double, 2>& pt) {
        long ix = std::clamp(std::lround((pt[0] - f.x_lo) / f.hx - 0.5), 0L, f.nx - 1);
        long iy = f.dim == 2 ? std::clamp(std::lround((pt[1] - f.y_lo) / f.hy - 0.5), 0L, f.ny - 1)
                             : 0L;
        return f.u(f.index(ix, iy));
    };

    auto capture = [&]() -> bool {
        res.snapshot_times.push_back(f.t);
        res.snapshots.push_back(f);
        res.snapshots.back().scratch = std::vector<double>();
        for (std::size_t pi = 0; pi < sc.probes.size(); ++pi)
            res.probe_values[pi].push_back(probe_u(sc.probes[pi]));
        if (track_front) {
            // a field that has filled (or emptied) the box has no interface;
            // record an empty front set and keep going
            try {
                res.fronts.push_back(extract_front(f));
            } catch (const NoInterface&) {
                res.fronts.push_back({f.t, {}});
            }
            if (sc.margin_cells > 0 && !res.fronts.back().points.empty()
                && !margin_ok(f, res.fronts.back(), sc.margin_cells)) {
                res.margin_violated = true;
                return false;
            }
        }
        return true;
    };

    if (!capture()) {
        res.t_end = f.t;
        return res;
    }
    for (long i = 1; i <= n_steps; ++i) {
        if (cauchy) step_cauchy(f, g, dt);
        else step_enthalpy(f, g, dt);
        if (i % snap_stride == 0 || i == n_steps) {
            if (!capture()) {
                res.t_end = f.t;
                return res;
            }
        }
    }
    res.t_end = f.t;
    return res;
}

} // namespace

RunResult run_scenario(const Scenario& scenario) { return run_loop(scenario, false); }

RunResult run_cauchy(const Scenario& scenario) { return run_loop(scenario, true); }

} // namespace stefankpp
