#pragma once

#include <array>
#include <functional>
#include <vector>

#include "stefankpp/geometry.hpp"
#include "stefankpp/model.hpp"

namespace stefankpp {

/**
 * Enthalpy transform. The sharp transform (m = 0)
 *
 *     alpha(w) = w            for w > 0
 *     alpha(w) = w - d/mu     for w <= 0
 *
 * carries the latent-heat jump d/mu that encodes the Stefan condition; the
 * smoothed variant replaces the jump with a linear ramp of width 1/m,
 *
 *     alpha_m(w) = w - (d/mu) chi_m(w),
 *     chi_m(w)   = 1 for w <= 0,  1 - m w for 0 < w < 1/m,  0 for w >= 1/m,
 *
 * so alpha_m(0) = -d/mu, w - d/mu <= alpha_m(w) <= w and alpha_m' >= 1.
 */
double alpha(double w, int m, const ModelParams& params);

/// Inverse of the sharp transform: u = e for e > 0, u = 0 on the mushy
/// interval [-d/mu, 0] (and below it, clamped).
double beta(double e, const ModelParams& params);

/// Inverse of alpha_m (m >= 1); exact piecewise-linear inversion.
double beta_smoothed(double e, int m, const ModelParams& params);

struct Box {
    double x_lo = 0, x_hi = 0;
    double y_lo = 0, y_hi = 0;
};

enum class RangeShape { Cone, Ball, HalfSpace };

/// Initial range descriptor. In 2D the cone axis e_N is the +y direction.
struct InitialRange {
    RangeShape shape = RangeShape::Ball;
    ConeSpec cone;                        ///< Cone
    double cx = 0, cy = 0, radius = 0;    ///< Ball
    double nx = 0, ny = 0, offset = 0;    ///< HalfSpace: inside iff n.x < offset

    bool contains(double x, double y, int dim) const;
    /// Distance to the boundary of the range, positive inside, negative outside.
    double inside_depth(double x, double y, int dim) const;
};

enum class U0Kind {
    PlateauDistance, ///< u0 = min(a/b, kappa * dist(x, boundary)) inside
    Constant,        ///< u0 = value inside (value 0 => a/b)
    Custom
};

struct Scenario {
    int dim = 2;
    ModelParams params;
    InitialRange range;
    U0Kind u0_kind = U0Kind::PlateauDistance;
    double plateau_kappa = 0.0; ///< 0 => sqrt(a/d)
    double u0_value = 0.0;      ///< Constant amplitude; 0 => a/b
    std::function<double(double, double)> u0_custom;
    Box box;
    double hx = 0.0; ///< grid spacing, both axes
    double T = 0.0;
    double snap_every = 0.0; ///< 0 => snapshots only at t = 0 and T
    int m = 0;               ///< enthalpy smoothing index; 0 = sharp
    double cfl = 0.25;
    int margin_cells = 10; ///< box-margin guard; <= 0 disables (field studies)
    std::vector<std::array<double, 2>> probes;
    double xi2 = 0.0; ///< outer-cone shift, recorded for reporting only
};

/// Cell-centered grid of enthalpy values; u is derived per cell via beta.
/// Zero-flux (Neumann) closure on every face.
struct EnthalpyField {
    int dim = 2;
    long nx = 0, ny = 1;
    double hx = 0, hy = 0;
    double x_lo = 0, y_lo = 0;
    double t = 0;
    int m = 0;
    ModelParams params;
    std::vector<double> e;

    std::size_t index(long ix, long iy) const { return static_cast<std::size_t>(iy) * nx + ix; }
    double cell_x(long ix) const { return x_lo + (ix + 0.5) * hx; }
    double cell_y(long iy) const { return y_lo + (iy + 0.5) * hy; }
    double u(std::size_t i) const;
    /// Stability bound 0.25 h^2 / (d dim 2) scaled by factor/0.25.
    double max_dt(double cfl_factor) const;

    std::vector<double> scratch; ///< step buffer, not part of the logical value
};

/// Builds the initial field of a scenario: e = alpha_m(u0) cell by cell.
EnthalpyField make_field(const Scenario& scenario);

/// One explicit Euler step e += dt (d Lap_h u + g(u)), u = beta_m(e).
/// Throws CFLViolation past the diffusive bound.
void step_enthalpy(EnthalpyField& field, const Reaction& reaction, double dt);

/// Cauchy (mu = infinity) step: e is u itself, no latent heat.
void step_cauchy(EnthalpyField& field, const Reaction& reaction, double dt);

struct FrontSet {
    double t = 0;
    std::vector<std::array<double, 2>> points;
};

/// Zero-level points of u between positive and zero cells: linear
/// interpolation on cell-center edges, scan-ordered (2D marching-squares
/// edge crossings; 1D interpolated crossings). Throws NoInterface when u > 0
/// everywhere or u == 0 everywhere.
FrontSet extract_front(const EnthalpyField& field);

/// First front crossing scanning the column nearest x upward from the bottom
/// of the box; NaN when the column has no crossing.
double axis_front_y(const EnthalpyField& field, double x);

struct RunResult {
    std::vector<double> snapshot_times;
    std::vector<EnthalpyField> snapshots;
    std::vector<FrontSet> fronts; ///< parallel to snapshots; empty for m > 0 and Cauchy runs
    std::vector<std::vector<double>> probe_values; ///< [probe][snapshot]
    bool margin_violated = false;
    double t_end = 0;
};

/// Scheduled time loop with front extraction and the box-margin guard: on any
/// non-crossed face the front must stay margin_cells cells away, otherwise
/// the run aborts with partial output (margin_violated set).
RunResult run_scenario(const Scenario& scenario);

/// Same loop without front machinery or latent heat.
RunResult run_cauchy(const Scenario& scenario);

} // namespace stefankpp
