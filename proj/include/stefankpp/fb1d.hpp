#pragma once

#include <functional>
#include <vector>

#include "stefankpp/fit.hpp"
#include "stefankpp/model.hpp"

namespace stefankpp {

/**
 * Front-fixed state of the one-dimensional free boundary problem
 *
 *     w_t - d w_yy = g(w),   w(t, rho(t)) = 0,   rho'(t) = -mu w_y(t, rho(t)),
 *
 * posed on the side of the front selected by `orientation`:
 *   orientation = -1 : front moves left, domain y in [rho, +inf)
 *   orientation = +1 : front moves right, domain y in (-inf, rho]
 *
 * The computational coordinate xi = orientation * (rho(t) - y) measures
 * distance from the front into the domain, so w[0] sits on the front and the
 * grid [0, L] is orientation-independent. In this frame
 *
 *     W_t = d W_xixi + rho' * orientation * ... (see step_front1d)
 *
 * reduces to W_t = d W_xixi - mu W_xi(0) W_xi + g(W) for both orientations,
 * whose steady profile is exactly the semi-wave at the front speed.
 */
struct Front1DState {
    double t = 0.0;
    double rho = 0.0;
    int orientation = -1; ///< -1 left-moving front, +1 right-moving
    double h = 0.0;
    std::vector<double> w; ///< w[j] at xi_j = j*h, w[0] = 0
    ModelParams params;
    Reaction reaction;

    /// One-sided second-order boundary gradient W_xi(0).
    double boundary_gradient() const;
    /// Stefan front speed rho'(t) = orientation * mu * W_xi(0).
    double front_speed() const;
    /// Physical position of grid node j.
    double physical_y(std::size_t j) const {
        return rho - orientation * (static_cast<double>(j) * h);
    }

    std::vector<double> scratch; ///< step buffer, not part of the logical value
};

struct Front1DSnapshot {
    double t = 0.0;
    double rho = 0.0;
    int orientation = -1;
    double h = 0.0;
    std::vector<double> w;
};

struct FrontTrajectory {
    std::vector<double> times;
    std::vector<double> rho_values;
    std::vector<Front1DSnapshot> snapshots;
};

struct Front1DConfig {
    ModelParams params;
    int orientation = -1;
    double L = 0.0; ///< 0 => 60 sqrt(d/a)
    double h = 0.0; ///< 0 => 0.02 sqrt(d/a)
    double T = 0.0;
    double cfl = 0.25;
    double rho0 = std::numeric_limits<double>::quiet_NaN(); ///< default: 0 (left-moving), 1 (right-moving)
    double sample_dt = 0.0; ///< trajectory recording interval; 0 => 128 steps
    std::vector<double> snapshot_times;
    std::function<double(double)> w0; ///< initial profile on xi in [0, L]
};

/// Validates and samples the initial data. Throws BadInitialData when
/// w0(0) != 0 or w0 < 0, ConfigError for grid problems.
Front1DState init_front1d(const ModelParams& params, const std::function<double(double)>& w0,
                          int orientation, double L, double h,
                          double rho0 = std::numeric_limits<double>::quiet_NaN());

/// One explicit Euler step of the front-fixed equation; advances t and rho.
/// Throws CFLViolation when dt exceeds the diffusive bound 0.25 h^2/d or the
/// advection bound dt |rho'| / h <= 0.5.
void step_front1d(Front1DState& state, double dt);

/// Time loop over step_front1d with trajectory recording and snapshots.
FrontTrajectory run_front1d(const Front1DConfig& config);

/// Least-squares fit of rho(t) over [t1, t2]; at least 10 samples required.
LineFit estimate_speed(const FrontTrajectory& traj, double t1, double t2);

/// Linear interpolation of a snapshot at a physical point y (0 outside the
/// domain, far-field value beyond the grid).
double snapshot_value_at(const Front1DSnapshot& snap, double y);

} // namespace stefankpp
