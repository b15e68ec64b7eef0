#pragma once

#include <array>
#include <span>
#include <vector>

#include "stefankpp/errors.hpp"

namespace stefankpp {

/**
 * Open circular cone about the +e_N axis with vertex at xi * e_N:
 *
 *     { x : (x - xi e_N) . e_N > |x - xi e_N| cos(phi) },  phi in (0, pi).
 *
 * All predicates reduce a point to axial half-plane coordinates
 * (rho, z) = (|x'|, x_N - xi) and are evaluated there exactly.
 */
struct ConeSpec {
    double phi = 0.0;
    double xi = 0.0;
    int dimension = 2;
};

ConeSpec make_cone(double phi, double xi = 0.0, int dimension = 2);

/// Strict membership in the open cone (the vertex is excluded).
bool cone_contains(const ConeSpec& spec, std::span<const double> x);

/// Euclidean distance d(x, Lambda^phi): 0 on the closed cone, otherwise the
/// distance to the boundary ray or to the vertex, whichever is closer.
double dist_to_cone(const ConeSpec& spec, std::span<const double> x);

/// Distance to the cone surface from either side (0 only on the boundary).
double boundary_distance(const ConeSpec& spec, std::span<const double> x);

/// Membership in N[Lambda^phi, R] = { x : d(x, Lambda^phi) < R }.
bool neighborhood_contains(const ConeSpec& spec, double R, std::span<const double> x);

/// Half-plane core used by the point overloads; rho >= 0, z = x_N - xi.
bool cone_contains_rz(const ConeSpec& spec, double rho, double z);
double dist_to_cone_rz(const ConeSpec& spec, double rho, double z);
double boundary_distance_rz(const ConeSpec& spec, double rho, double z);

/// Cone neighborhood N[Lambda^phi, R]; R = 0 degenerates to the open cone.
struct ConeNeighborhood {
    ConeSpec spec;
    double R = 0.0;

    bool contains(std::span<const double> x) const;
    /// Negative inside, positive outside, zero on the boundary.
    double signed_distance(std::span<const double> x) const;
};

struct SandwichReport {
    std::size_t n_points = 0;
    std::size_t violations_in = 0;  ///< points that fell strictly inside the inner set
    std::size_t violations_out = 0; ///< points strictly outside the closed outer set
    double max_violation_dist = 0.0;
    bool pass() const { return violations_in == 0 && violations_out == 0; }
};

/// Checks that every front point lies outside the inner set and inside the
/// closure of the outer set; violations are measured by signed distance.
SandwichReport sandwich_check(std::span<const std::array<double, 2>> front,
                              const ConeNeighborhood& inner, const ConeNeighborhood& outer);

/// Deterministic polyline sampling of the boundary of N[Lambda^phi, R]
/// clipped to a box; used for plot overlays.
std::vector<std::array<double, 2>> sample_neighborhood_boundary(const ConeNeighborhood& set,
                                                                double x_lo, double x_hi,
                                                                double y_lo, double y_hi,
                                                                std::size_t n_samples = 512);

} // namespace stefankpp
