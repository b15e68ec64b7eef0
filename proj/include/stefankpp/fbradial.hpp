#pragma once

#include <functional>
#include <vector>

#include "stefankpp/model.hpp"

namespace stefankpp {

/// Radially symmetric free-boundary solvers in dimension N >= 2:
///   Interior — expanding ball 0 < r < k(t), symmetric at r = 0, Stefan front
///              at r = k(t); solved on the dilated coordinate xi = r/k in [0,1].
///   Exterior — shrinking hole h(t) < r < infinity, Stefan front at r = h(t);
///              solved on the translated coordinate xi = r - h(t) in [0, L].
enum class RadialMode { Interior, Exterior };

struct RadialState {
    double t = 0.0;
    double front = 0.0; ///< k(t) (interior) or h(t) (exterior)
    RadialMode mode = RadialMode::Interior;
    int dimension = 2;
    double h_xi = 0.0;
    std::vector<double> v; ///< samples on the front-fixed grid
};

struct RadialSnapshot {
    double t = 0.0;
    double front = 0.0;
    std::vector<double> v;
};

struct RadialTrajectory {
    std::vector<double> times;
    std::vector<double> front;
    std::vector<RadialSnapshot> snapshots;
};

/// A-priori front-speed certificate for the exterior problem.
/// With K the reaction Lipschitz bound and
///   C3 = C1 e^{K T},  M = max{(N-1) + sqrt(K/(2d) + (N-1)^2), 2 C2 / C3},
/// the front obeys -C4 <= h'(t) < 0 with C4 = 2 M C3 mu, hence
/// h(T) >= R0 - C4 T >= R0/2 whenever R0 >= 2 C4 T.
struct ExteriorCertificate {
    double R0 = 0.0;
    double T = 0.0;
    double h_T = 0.0;
    bool bound_ok = false; ///< h(T) >= R0/2
    double max_abs_hprime = 0.0;
    double C4 = 0.0;
    double M = 0.0;
    double C3 = 0.0;
    bool hprime_ok = false;    ///< max|h'| <= C4 (1 + 0.05)
    double r0_threshold = 0.0; ///< 2 C4 T
};

struct RadialConfig {
    ModelParams params;
    int dimension = 2;
    double T = 0.0;
    double cfl = 0.25;
    double sample_dt = 0.0;
    std::vector<double> snapshot_times;

    // interior
    double r0 = 0.0;
    int cells = 0; ///< xi-cells; 0 => sized for ~0.02 sqrt(d/a) at 4 r0

    // exterior
    double R0 = 0.0;
    double L = 0.0;         ///< 0 => 60 sqrt(d/a)
    double h = 0.0;         ///< 0 => 0.02 sqrt(d/a)
    double sup_bound = 1.0; ///< C1: 0 < v0 <= C1
    double grad_bound = 1.0; ///< C2: sup |v0'| <= C2

    std::function<double(double)> v0; ///< interior: on [0, r0]; exterior: on xi >= 0
};

/// First Dirichlet eigenvalue of the unit ball (N = 2: first Bessel J0 zero
/// squared; N = 3: pi^2). Other N unsupported.
double unit_ball_principal_eigenvalue(int dimension);

/// Critical radius R* = sqrt(d lambda_1 / a) separating spreading from
/// vanishing for ball-shaped initial ranges.
double critical_radius(const ModelParams& params, int dimension);

/// Expanding-ball solver. Throws FrontCollapse if k(t) -> 0.
RadialTrajectory run_interior(const RadialConfig& config);

/// Exterior (shrinking hole) solver with its a-priori certificate.
/// Throws HoleClosed if h reaches 0.
std::pair<RadialTrajectory, ExteriorCertificate> run_exterior(const RadialConfig& config);

} // namespace stefankpp
