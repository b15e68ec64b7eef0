#pragma once

#include <cstddef>
#include <vector>

#include "stefankpp/model.hpp"

namespace stefankpp {

/// Tolerances and discretization knobs for the semi-wave shooting solver.
/// Zero-valued lengths are replaced by scale-aware defaults at solve time.
struct ShootingOptions {
    double h_ode = 0.0;       ///< RK4 step; default 1e-3 * sqrt(d/a)
    double r_max = 0.0;       ///< truncation radius; default 40 * sqrt(d/a)
    double tol_slope = 1e-10; ///< absolute bisection tolerance on Z'(0)
    double tol_speed = 1e-8;  ///< absolute tolerance on |mu Z'_c(0) - c|
    double tol_plateau = 1e-3;
    int max_iterations = 200;
};

/**
 * Tabulated semi-wave Z_k solving
 *
 *     -d Z'' + k Z' = a Z - b Z^2,   Z(0) = 0,  Z(+inf) = a/b,  Z' > 0,
 *
 * on the uniform grid r_j = j*h for r in [0, r_max].
 *
 * slope0 comes from bisection on the initial slope with the phase-plane
 * event classifier. The table itself is traced backward from the stable
 * manifold of the saddle (a/b, 0), which is transversally contracting in
 * backward time, so the whole separatrix is uniformly accurate with no
 * forward shooting blow-up; the two routes are cross-checked against each
 * other. Beyond the manifold anchor (and past r_max) the profile continues
 * with the closed-form second-order manifold tail
 *
 *     zeta' = lambda zeta + q zeta^2,   zeta = a/b - Z.
 */
struct SemiWaveProfile {
    double k = 0.0;      ///< wave speed
    double slope0 = 0.0; ///< Z'_k(0)
    double h = 0.0;      ///< grid spacing
    double r_max = 0.0;
    ModelParams params;
    std::vector<double> z;  ///< Z samples at r_j = j*h
    std::vector<double> dz; ///< Z' samples

    // manifold anchor; table entries with j >= tail_index are analytic
    std::size_t tail_index = 0;
    double tail_r = 0.0;      ///< anchor height above the front
    double tail_zeta = 0.0;   ///< a/b - Z at the anchor
    double tail_lambda = 0.0; ///< decaying saddle eigenvalue (< 0)
    double tail_q = 0.0;      ///< second-order manifold coefficient
    /// nodes above this index were traced in gap coordinates a/b - Z
    std::size_t mid_index = 0;

    double plateau() const { return params.a / params.b; }

    /// Z_k(r); local RK4 re-integration between grid nodes, analytic tail
    /// beyond tail_r (valid for any r >= tail_r, also past r_max).
    double value(double r) const;
    /// Z_k'(r).
    double derivative(double r) const;
};

struct SpeedResult {
    double c_star = 0.0;
    double residual = 0.0; ///< |mu * Z'_{c*}(0) - c*|
    int iterations = 0;    ///< outer bisection iterations
};

struct PerturbedSpeeds {
    double c_delta_minus = 0.0; ///< c*(mu, a-delta, b+delta, d)
    double c_delta_plus = 0.0;  ///< c*(mu, a+delta, b-delta, d)
};

/// Shooting slope Z'_k(0), bisected to opts.tol_slope.
/// Throws SpeedOutOfRange unless 0 <= k < 2 sqrt(ad).
double shooting_slope(const ModelParams& params, double k, const ShootingOptions& opts = {});

/// Full tabulated profile at speed k (see SemiWaveProfile).
SemiWaveProfile solve_profile(const ModelParams& params, double k, const ShootingOptions& opts = {});

/// Spreading speed: the unique root of F(k) = mu Z'_k(0) - k in (0, 2 sqrt(ad)).
/// F is strictly decreasing; the root is bracketed and refined until
/// |F| <= tol_speed. Throws NoConvergence if the bracket or budget fails.
SpeedResult compute_cstar(const ModelParams& params, const ShootingOptions& opts = {});

/// Speeds of the (a -+ delta, b +- delta) perturbed problems.
/// delta = 0 reproduces c* twice. Throws DeltaTooLarge if a - delta <= 0
/// or b - delta <= 0.
PerturbedSpeeds perturbed_speeds(const ModelParams& params, double delta,
                                 const ShootingOptions& opts = {});

} // namespace stefankpp
