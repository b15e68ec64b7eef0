#pragma once

#include <string>
#include <vector>

#include "stefankpp/enthalpy.hpp"
#include "stefankpp/fb1d.hpp"
#include "stefankpp/semiwave.hpp"

namespace stefankpp {

/**
 * Traveling cone supersolution built from the regularized cone
 * Lambda_R = { x in Lambda^phi : d(x, boundary) > R } (phi in (pi/2, pi)):
 *
 *     ubar(t, x) = (1-delta)^{-2} Z(dist(x - xi_R(t) e_N, boundary of Lambda_R))
 *
 * where Z is the semi-wave at the perturbed speed c^delta of the
 * (a+delta, b-delta) problem and
 *
 *     xi_R(t) = xi2 - (R + r2)/sin(phi) - (1-delta)^{-2} (c^delta/sin(phi)) t.
 *
 * The boundary of Lambda_R splits into a spherical part (|z| = R inside the
 * cone of half-angle phi - pi/2) and an offset cone surface; the distance is
 * |z| - R on the first stratum and |z'| cos(theta) + z_N sin(theta) - R on
 * the second (theta = pi - phi).
 */
struct SupersolutionSpec {
    ModelParams params;
    double delta = 0.0;
    int dimension = 2;
    double phi = 0.0;
    double R = 0.0;
    double xi2 = 0.0;
    double r2 = 1.0;
    double c_delta = 0.0;    ///< c*(mu, a+delta, b-delta, d)
    SemiWaveProfile profile; ///< Z at speed c_delta for the perturbed reaction

    /// Admissibility threshold d (N-1) / (delta c^delta); infinite at delta = 0.
    double min_R() const;
    double xi_R(double t) const;
    double shift_speed() const; ///< (1-delta)^{-2} c^delta / sin(phi)
};

/// Solves c^delta, tabulates the profile, and validates R >= min_R
/// (delta = 0 is accepted as the degenerate limit and skips the R check).
/// Throws SpecInvariantViolated when delta > 0 and R < min_R.
SupersolutionSpec make_supersolution_spec(const ModelParams& params, double delta, double phi,
                                          double R, int dimension = 2,
                                          const ShootingOptions& opts = {});

/// ubar in frame coordinates (vertex of Lambda_R at the origin).
double eval_supersolution_frame(const SupersolutionSpec& spec, double rho, double z);
/// ubar(t, x) for an N-dimensional lab point.
double eval_supersolution(const SupersolutionSpec& spec, double t, std::span<const double> x);

struct SamplePlan {
    std::size_t per_stratum = 10000;
    std::size_t boundary_samples = 512;
    double h_fd = 0.0; ///< 0 => 1e-3 sqrt(d/a)
    double span = 0.0; ///< sampled depth beyond the front; 0 => 20 sqrt(d/a)
    unsigned seed = 20240901;
};

/**
 * Sampled-residual certification report.
 *
 * pass requires min_interior_residual >= -tolerance (tolerance = C h_fd^2,
 * C committed from a smooth-function calibration) and
 * min_boundary_slack >= -1e-6 (the free-boundary law tolerance).
 * max_fd_error records the largest gap between the finite-difference and
 * analytic residual at the same samples: the truncation floor, which must
 * shrink ~4x when h_fd is halved.
 */
struct ResidualReport {
    std::size_t n_samples = 0;
    double min_interior_residual = 0.0;
    double min_boundary_slack = 0.0;
    double tolerance = 0.0;
    double max_fd_error = 0.0;
    bool pass = false;
    bool near_degenerate = false; ///< interior margin within 10x tolerance of zero
};

/// Interior inequality ubar_t - d Lap ubar >= a ubar - b ubar^2 and boundary
/// law Phi_t <= mu grad(ubar).grad(Phi), checked on stratified samples.
ResidualReport check_supersolution(const SupersolutionSpec& spec, const SamplePlan& plan = {});

/// Traveling subsolution (1-delta)^2 Z_delta(y - eta(t)) of the 1D problem:
/// interior inequality reversed, plus the exact boundary laws
/// w(t, eta(t)) = 0 and eta'(t) = -mu w_y(t, eta(t)).
ResidualReport check_subsolution_1d(const ModelParams& params, double delta,
                                    const SamplePlan& plan = {});

/// Committed finite-difference tolerance C * (a/b) * (a^2/d) * h_fd^2.
double fd_tolerance(const ModelParams& params, double h_fd);

struct ComparisonCase {
    std::string name;
    Scenario base;
    Scenario hat; ///< the larger instance: Omega0 and u0 contained/below, mu <= mu_hat, g <= g_hat
};

struct OrderingReport {
    std::string name;
    double max_violation = 0.0; ///< max over cells and output times of (u - u_hat)+
    std::size_t n_checked = 0;
};

/// Runs both instances of a case in lockstep on the shared grid and reports
/// the worst ordering violation. Throws HypothesisViolated when the inputs
/// are not ordered as the comparison principle requires.
OrderingReport comparison_battery(const ComparisonCase& cse);

/// The stock six-case ordered suite (identical pair, larger data, larger mu,
/// larger range, larger reaction, combined 2D case).
std::vector<ComparisonCase> default_battery();

/// Ordering check for the 1D front-fixing solver: rho >= rho_hat at all
/// recorded times and w <= w_hat at the base grid's physical points
/// (hat values linearly interpolated).
OrderingReport fb1d_comparison(const Front1DConfig& base, const Front1DConfig& hat);

} // namespace stefankpp
