#include "stefankpp/semiwave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stefankpp/errors.hpp"

namespace stefankpp {

namespace {

struct OdeState {
    double z; // Z
    double v; // Z'
};

// One RK4 step of Z' = V, V' = (k V - a Z + b Z^2)/d.
inline OdeState rk4_step(const OdeState& s, double h, double k, double a, double b, double inv_d) {
    auto fv = [&](double z, double v) { return (k * v - a * z + b * z * z) * inv_d; };
    const double k1z = s.v;
    const double k1v = fv(s.z, s.v);
    const double k2z = s.v + 0.5 * h * k1v;
    const double k2v = fv(s.z + 0.5 * h * k1z, s.v + 0.5 * h * k1v);
    const double k3z = s.v + 0.5 * h * k2v;
    const double k3v = fv(s.z + 0.5 * h * k2z, s.v + 0.5 * h * k2v);
    const double k4z = s.v + h * k3v;
    const double k4v = fv(s.z + h * k3z, s.v + h * k3v);
    return {s.z + h / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z),
            s.v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)};
}

// Same dynamics in the plateau-gap coordinates (zeta, v), zeta = a/b - Z.
// The logistic identity a Z - b Z^2 = a zeta - b zeta^2 keeps the form; these
// coordinates avoid the catastrophic cancellation of representing Z ~ a/b
// when zeta is many orders below the plateau.
inline OdeState rk4z_step(const OdeState& s, double h, double k, double a, double b, double inv_d) {
    auto fv = [&](double zeta, double v) { return (k * v - a * zeta + b * zeta * zeta) * inv_d; };
    const double k1z = -s.v;
    const double k1v = fv(s.z, s.v);
    const double k2z = -(s.v + 0.5 * h * k1v);
    const double k2v = fv(s.z + 0.5 * h * k1z, s.v + 0.5 * h * k1v);
    const double k3z = -(s.v + 0.5 * h * k2v);
    const double k3v = fv(s.z + 0.5 * h * k2z, s.v + 0.5 * h * k2v);
    const double k4z = -(s.v + h * k3v);
    const double k4v = fv(s.z + h * k3z, s.v + h * k3v);
    return {s.z + h / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z),
            s.v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)};
}

enum class Shot { TooSmall = -1, NoEvent = 0, TooBig = 1 };

// Integrate from (0, s) until an event classifies the slope.
//   Z > a/b (1 + 1e-12)            -> slope too big
//   Z' <= 0 while Z < a/b          -> slope too small
// A trajectory that reaches r_max without either event is within shooting
// noise of the separatrix; it is classified as too small, which biases the
// bracket by less than one representable slope step.
Shot classify(const ModelParams& p, double k, double s, double h, long n_steps) {
    const double top = (p.a / p.b) * (1.0 + 1e-12);
    const double plateau = p.a / p.b;
    const double inv_d = 1.0 / p.d;
    OdeState st{0.0, s};
    for (long i = 0; i < n_steps; ++i) {
        st = rk4_step(st, h, k, p.a, p.b, inv_d);
        if (st.z > top) return Shot::TooBig;
        if (st.v <= 0.0 && st.z < plateau) return Shot::TooSmall;
    }
    return Shot::NoEvent;
}

struct Grid {
    double h;
    double r_max;
    long n; // steps, samples are 0..n
};

Grid make_grid(const ModelParams& p, const ShootingOptions& opts) {
    const double len = p.diffusion_length();
    Grid g;
    g.h = opts.h_ode > 0.0 ? opts.h_ode : 1e-3 * len;
    g.r_max = opts.r_max > 0.0 ? opts.r_max : 40.0 * len;
    g.n = std::lround(g.r_max / g.h);
    if (g.n < 10) throw ConfigError("semiwave: r_max/h_ode too small");
    g.r_max = g.n * g.h;
    return g;
}

// Bisect the shooting slope within [lo, hi]; endpoints are re-classified and
// widened to defaults if the hints do not bracket.
double bisect_slope(const ModelParams& p, double k, const Grid& g, double tol, int max_iter,
                    double lo, double hi, int* iters_out) {
    const double hi_default = 2.0 * (p.a / p.b) * std::sqrt(p.a / p.d);
    if (!(lo >= 0.0)) lo = 0.0;
    if (!(hi > lo)) hi = hi_default;

    if (lo > 0.0 && classify(p, k, lo, g.h, g.n) == Shot::TooBig) lo = 0.0;
    int widen = 0;
    while (classify(p, k, hi, g.h, g.n) != Shot::TooBig) {
        hi *= 2.0;
        if (++widen > 60) throw NoConvergence("semiwave: cannot bracket shooting slope from above");
    }

    int it = 0;
    while (hi - lo > tol) {
        if (++it > max_iter) throw NoConvergence("semiwave: slope bisection exceeded max iterations");
        const double mid = 0.5 * (lo + hi);
        if (classify(p, k, mid, g.h, g.n) == Shot::TooBig) hi = mid; else lo = mid;
    }
    if (iters_out) *iters_out = it;
    return 0.5 * (lo + hi);
}

void require_speed_in_range(const ModelParams& p, double k) {
    if (!(k >= 0.0) || k >= p.c_max())
        throw SpeedOutOfRange("semiwave: need 0 <= k < 2 sqrt(ad)");
}

} // namespace

double shooting_slope(const ModelParams& params, double k, const ShootingOptions& opts) {
    const ModelParams p = validate(params);
    require_speed_in_range(p, k);
    const Grid g = make_grid(p, opts);
    return bisect_slope(p, k, g, opts.tol_slope, opts.max_iterations, 0.0, -1.0, nullptr);
}

SemiWaveProfile solve_profile(const ModelParams& params, double k, const ShootingOptions& opts) {
    const ModelParams p = validate(params);
    require_speed_in_range(p, k);
    const Grid g = make_grid(p, opts);

    SemiWaveProfile prof;
    prof.k = k;
    prof.params = p;
    prof.h = g.h;
    prof.r_max = g.r_max;
    prof.slope0 = bisect_slope(p, k, g, opts.tol_slope, opts.max_iterations, 0.0, -1.0, nullptr);

    const double plateau = p.a / p.b;
    const double inv_d = 1.0 / p.d;
    const double lambda = (k - std::sqrt(k * k + 4.0 * p.a * p.d)) / (2.0 * p.d);
    const double q = -p.b / (3.0 * p.d * lambda - k);

    // Tabulate by tracing the stable manifold of the saddle (a/b, 0) backward
    // from an anchor just below the plateau. Transverse deviations contract in
    // backward time, so the whole separatrix comes out uniformly accurate,
    // with no forward shooting blow-up near the saddle. Everything runs in
    // the gap coordinates (zeta, v), and the grid is aligned so the Z = 0
    // crossing (zeta = a/b) lands exactly on node 0.
    prof.tail_zeta = 1e-7 * plateau;
    prof.tail_lambda = lambda;
    prof.tail_q = q;
    const OdeState anchor{prof.tail_zeta,
                          -(lambda * prof.tail_zeta + q * prof.tail_zeta * prof.tail_zeta)};

    // The trace runs in gap coordinates while zeta < a/(2b) (resolving the
    // saddle end) and in plain Z coordinates below (resolving toe values that
    // can sit many orders below the plateau ulp), with a single conversion.
    // pass 1: find the crossing distance below the anchor and the switch step.
    OdeState st = anchor;
    long steps_down = 0;
    long switch_step = -1; // first step index at which zeta >= a/(2b)
    const long cap = 10 * g.n;
    while (true) {
        if (++steps_down > cap)
            throw NoConvergence("semiwave: backward trace failed to reach Z = 0");
        if (switch_step < 0) {
            OdeState next = rk4z_step(st, -g.h, k, p.a, p.b, inv_d);
            if (next.z >= 0.5 * plateau) {
                switch_step = steps_down - 1;
                st = {plateau - st.z, st.v}; // convert to Z coordinates
                --steps_down;
                continue;
            }
            st = next;
        } else {
            OdeState next = rk4_step(st, -g.h, k, p.a, p.b, inv_d);
            if (next.z <= 0.0) break;
            st = next;
        }
    }
    // refine the partial step tau in (0, h] with Z(-tau) = 0
    double tlo = 0.0, thi = g.h;
    for (int it = 0; it < 64; ++it) {
        const double tm = 0.5 * (tlo + thi);
        (rk4_step(st, -tm, k, p.a, p.b, inv_d).z <= 0.0 ? thi : tlo) = tm;
    }
    const double tau = 0.5 * (tlo + thi);
    const long i_anchor = steps_down - 1; // anchor sits tau above node i_anchor
    prof.tail_r = i_anchor * g.h + tau;   // anchor height above the crossing
    const long mid = i_anchor - switch_step; // node index of the conversion
    prof.mid_index = static_cast<std::size_t>(std::max(0L, std::min(mid, g.n)));

    // pass 2: one exact backward chain from the tau-shifted anchor, so table
    // nodes are connected by single -h steps bit for bit; interval evaluation
    // reuses the same steps (see local_eval).
    prof.z.assign(static_cast<std::size_t>(g.n) + 1, 0.0);
    prof.dz.assign(static_cast<std::size_t>(g.n) + 1, 0.0);
    st = rk4z_step(anchor, -tau, k, p.a, p.b, inv_d);
    bool gap_coords = true;
    for (long j = i_anchor; j >= 0; --j) {
        if (gap_coords && j == mid) {
            st = {plateau - st.z, st.v};
            gap_coords = false;
        }
        if (j <= g.n) {
            prof.z[static_cast<std::size_t>(j)] = gap_coords ? plateau - st.z : st.z;
            prof.dz[static_cast<std::size_t>(j)] = st.v;
        }
        if (j > 0)
            st = gap_coords ? rk4z_step(st, -g.h, k, p.a, p.b, inv_d)
                            : rk4_step(st, -g.h, k, p.a, p.b, inv_d);
    }
    if (std::fabs(prof.z[0]) > 1e-9 * plateau)
        throw NoConvergence("semiwave: backward trace misaligned at the front");
    prof.z[0] = 0.0;
    if (std::fabs(prof.dz[0] - prof.slope0) > 4.0 * opts.tol_slope + 1e-12 * prof.slope0)
        throw NoConvergence("semiwave: shooting slope and manifold trace disagree");

    // nodes above the anchor: closed-form manifold tail
    // zeta(r) = lambda w / (1 - q w), w = zeta0 e^{lambda (r - r_anchor)} / (lambda + q zeta0)
    prof.tail_index = static_cast<std::size_t>(std::min(i_anchor + 1, g.n + 1));
    const double zeta_floor = 4.0 * std::numeric_limits<double>::epsilon() * plateau;
    const double w0 = prof.tail_zeta / (lambda + q * prof.tail_zeta);
    for (long j = i_anchor + 1; j <= g.n; ++j) {
        const double w = w0 * std::exp(lambda * (j * g.h - prof.tail_r));
        const double zeta = std::max(lambda * w / (1.0 - q * w), zeta_floor);
        prof.z[static_cast<std::size_t>(j)] = plateau - zeta;
        prof.dz[static_cast<std::size_t>(j)] = -(lambda * zeta + q * zeta * zeta);
    }

    // Contract checks: increasing and confined to (0, a/b), strictly so until
    // the per-step increment zeta |lambda| h falls below the plateau ulp;
    // plateau reached by r_max.
    const double sat = 8.0 * std::numeric_limits<double>::epsilon() * plateau
                       / (std::fabs(lambda) * g.h);
    for (std::size_t j = 1; j < prof.z.size(); ++j) {
        if (!(prof.z[j] >= prof.z[j - 1]) || !(prof.z[j] < plateau) || !(prof.z[j] > 0.0)
            || (plateau - prof.z[j] > sat && !(prof.z[j] > prof.z[j - 1])))
            throw NoConvergence("semiwave: tabulated profile violates monotonicity bounds");
    }
    if (plateau - prof.z.back() > opts.tol_plateau * plateau)
        throw NoConvergence("semiwave: profile failed to reach the plateau by r_max");

    return prof;
}

namespace {

inline double manifold_zeta(const SemiWaveProfile& p, double r) {
    const double w0 = p.tail_zeta / (p.tail_lambda + p.tail_q * p.tail_zeta);
    const double w = w0 * std::exp(p.tail_lambda * (r - p.tail_r));
    return p.tail_lambda * w / (1.0 - p.tail_q * w);
}

// Evaluate between nodes by one backward step from the node above, in the
// same coordinates the chain used there: at s = h this is bitwise the step
// that produced the node below, so the evaluation is globally continuous
// across node boundaries.
inline OdeState local_eval(const SemiWaveProfile& p, double r) {
    const std::size_t j =
        std::min(static_cast<std::size_t>(std::ceil(r / p.h - 1e-12)), p.z.size() - 1);
    const double s = static_cast<double>(j) * p.h - r;
    if (j > p.mid_index) { // gap coordinates
        const double plateau = p.params.a / p.params.b;
        OdeState st{plateau - p.z[j], p.dz[j]};
        if (s > 0.0) st = rk4z_step(st, -s, p.k, p.params.a, p.params.b, 1.0 / p.params.d);
        return {plateau - st.z, st.v};
    }
    OdeState st{p.z[j], p.dz[j]};
    if (s > 0.0) st = rk4_step(st, -s, p.k, p.params.a, p.params.b, 1.0 / p.params.d);
    return st;
}

} // namespace

double SemiWaveProfile::value(double r) const {
    if (r < 0.0) throw SolverError("semiwave: profile evaluated at negative r");
    if (r >= tail_r || r > r_max) return plateau() - manifold_zeta(*this, r);
    return local_eval(*this, r).z;
}

double SemiWaveProfile::derivative(double r) const {
    if (r < 0.0) throw SolverError("semiwave: profile evaluated at negative r");
    if (r >= tail_r || r > r_max) {
        const double zeta = manifold_zeta(*this, r);
        return -(tail_lambda * zeta + tail_q * zeta * zeta);
    }
    return local_eval(*this, r).v;
}

SpeedResult compute_cstar(const ModelParams& params, const ShootingOptions& opts) {
    const ModelParams p = validate(params);
    const Grid g = make_grid(p, opts);
    const double cmax = p.c_max();

    // The slope enters F(k) = mu Z'_k(0) - k multiplied by mu; solve it tightly
    // enough that slope noise stays an order below the speed tolerance.
    const double tol_slope = std::min(opts.tol_slope, opts.tol_speed / (10.0 * std::max(p.mu, 1.0)));

    double klo = 1e-6 * cmax;
    double khi = (1.0 - 1e-6) * cmax;

    // slope0(k) is strictly decreasing: slopes already computed at bracketing
    // speeds seed ever-tighter slope brackets for the midpoints.
    const double pad = 4.0 * tol_slope;
    double slope_hi = -1.0; // upper bound valid for k >= klo (from last slope at klo side)
    double slope_lo = 0.0;  // lower bound valid for k <= khi

    auto F = [&](double k) {
        const double s = bisect_slope(p, k, g, tol_slope, opts.max_iterations,
                                      std::max(0.0, slope_lo - pad),
                                      slope_hi > 0.0 ? slope_hi + pad : -1.0, nullptr);
        return std::pair<double, double>(p.mu * s - k, s);
    };

    auto [Flo, slo] = F(klo);
    if (Flo <= 0.0) throw NoConvergence("cstar: F(k_lo) <= 0, root not bracketed");
    slope_hi = slo;
    auto [Fhi, shi] = F(khi);
    if (Fhi >= 0.0) throw NoConvergence("cstar: F(k_hi) >= 0, root not bracketed");
    slope_lo = shi;

    SpeedResult res;
    for (int it = 1; it <= opts.max_iterations; ++it) {
        const double k = 0.5 * (klo + khi);
        auto [Fk, sk] = F(k);
        res.iterations = it;
        if (std::fabs(Fk) <= opts.tol_speed) {
            res.c_star = k;
            res.residual = std::fabs(Fk);
            return res;
        }
        if (Fk > 0.0) {
            klo = k;
            slope_hi = sk;
        } else {
            khi = k;
            slope_lo = sk;
        }
    }
    throw NoConvergence("cstar: bisection exceeded max iterations without meeting tol_speed");
}

PerturbedSpeeds perturbed_speeds(const ModelParams& params, double delta, const ShootingOptions& opts) {
    const ModelParams p = validate(params);
    if (!(delta >= 0.0)) throw DeltaTooLarge("perturbed_speeds: delta must be nonnegative");
    if (p.a - delta <= 0.0 || p.b - delta <= 0.0)
        throw DeltaTooLarge("perturbed_speeds: delta must satisfy delta < min(a, b)");

    ModelParams minus = p;
    minus.a = p.a - delta;
    minus.b = p.b + delta;
    ModelParams plus = p;
    plus.a = p.a + delta;
    plus.b = p.b - delta;

    PerturbedSpeeds out;
    out.c_delta_minus = compute_cstar(minus, opts).c_star;
    out.c_delta_plus = compute_cstar(plus, opts).c_star;
    return out;
}

} // namespace stefankpp
