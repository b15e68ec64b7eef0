#include "stefankpp/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace stefankpp {

ConeSpec make_cone(double phi, double xi, int dimension) {
    if (!(phi > 0.0) || !(phi < M_PI)) throw ConfigError("geometry: phi must lie in (0, pi)");
    if (dimension < 2) throw ConfigError("geometry: cone dimension must be >= 2");
    return {phi, xi, dimension};
}

namespace {

// reduce an N-dimensional point to axial half-plane coordinates
inline void to_rz(const ConeSpec& spec, std::span<const double> x, double& rho, double& z) {
    if (static_cast<int>(x.size()) != spec.dimension)
        throw ConfigError("geometry: point dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) s += x[i] * x[i];
    rho = std::sqrt(s);
    z = x.back() - spec.xi;
}

} // namespace

bool cone_contains_rz(const ConeSpec& spec, double rho, double z) {
    const double n = std::hypot(rho, z);
    if (n == 0.0) return false; // the vertex is excluded
    return z > n * std::cos(spec.phi);
}

double boundary_distance_rz(const ConeSpec& spec, double rho, double z) {
    // boundary ray direction (sin phi, cos phi); vertex handles the corner
    const double sp = std::sin(spec.phi);
    const double cp = std::cos(spec.phi);
    const double proj = rho * sp + z * cp;
    if (proj <= 0.0) return std::hypot(rho, z);
    return std::fabs(rho * cp - z * sp);
}

double dist_to_cone_rz(const ConeSpec& spec, double rho, double z) {
    const double n = std::hypot(rho, z);
    if (z >= n * std::cos(spec.phi)) return 0.0; // closed cone
    return boundary_distance_rz(spec, rho, z);
}

bool cone_contains(const ConeSpec& spec, std::span<const double> x) {
    double rho, z;
    to_rz(spec, x, rho, z);
    return cone_contains_rz(spec, rho, z);
}

double dist_to_cone(const ConeSpec& spec, std::span<const double> x) {
    double rho, z;
    to_rz(spec, x, rho, z);
    return dist_to_cone_rz(spec, rho, z);
}

double boundary_distance(const ConeSpec& spec, std::span<const double> x) {
    double rho, z;
    to_rz(spec, x, rho, z);
    return boundary_distance_rz(spec, rho, z);
}

bool neighborhood_contains(const ConeSpec& spec, double R, std::span<const double> x) {
    if (R < 0.0) throw ConfigError("geometry: neighborhood radius must be nonnegative");
    if (R == 0.0) return cone_contains(spec, x);
    return dist_to_cone(spec, x) < R;
}

bool ConeNeighborhood::contains(std::span<const double> x) const {
    return neighborhood_contains(spec, R, x);
}

double ConeNeighborhood::signed_distance(std::span<const double> x) const {
    double rho, z;
    to_rz(spec, x, rho, z);
    const double n = std::hypot(rho, z);
    if (z >= n * std::cos(spec.phi)) {
        // inside the closed cone: depth below the neighborhood boundary
        return -(R + boundary_distance_rz(spec, rho, z));
    }
    return boundary_distance_rz(spec, rho, z) - R;
}

SandwichReport sandwich_check(std::span<const std::array<double, 2>> front,
                              const ConeNeighborhood& inner, const ConeNeighborhood& outer) {
    SandwichReport rep;
    rep.n_points = front.size();
    for (const auto& pt : front) {
        const double sd_in = inner.signed_distance(pt);
        const double sd_out = outer.signed_distance(pt);
        if (sd_in < 0.0 && inner.contains(pt)) {
            ++rep.violations_in;
            rep.max_violation_dist = std::max(rep.max_violation_dist, -sd_in);
        }
        if (sd_out > 0.0) {
            ++rep.violations_out;
            rep.max_violation_dist = std::max(rep.max_violation_dist, sd_out);
        }
    }
    return rep;
}

std::vector<std::array<double, 2>> sample_neighborhood_boundary(const ConeNeighborhood& set,
                                                                double x_lo, double x_hi,
                                                                double y_lo, double y_hi,
                                                                std::size_t n_samples) {
    const ConeSpec& c = set.spec;
    const double R = set.R;
    const double sp = std::sin(c.phi);
    const double cp = std::cos(c.phi);
    std::vector<std::array<double, 2>> pts;
    pts.reserve(n_samples);

    auto keep = [&](double x, double y) {
        if (x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi) pts.push_back({x, y});
    };

    // offset cone surface: rays from the shifted vertex, starting at the
    // tangency with the spherical cap when phi < pi/2
    const double vy = c.xi - R / sp;
    const double t_start = std::max(0.0, R * cp / sp);
    const double t_max = 2.0 * std::max({std::fabs(x_lo), std::fabs(x_hi), std::fabs(y_lo - vy),
                                         std::fabs(y_hi - vy)}) + 1.0;
    const std::size_t n_ray = n_samples / 3 + 1;
    for (std::size_t i = 0; i <= n_ray; ++i) {
        const double t = t_start + (t_max - t_start) * static_cast<double>(i) / n_ray;
        keep(t * sp, vy + t * cp);   // right branch
    }
    if (c.phi < M_PI / 2.0 && R > 0.0) {
        // spherical cap between the two tangencies
        const std::size_t n_arc = n_samples / 3 + 1;
        const double a0 = c.phi + M_PI / 2.0;
        for (std::size_t i = 0; i <= n_arc; ++i) {
            const double th = a0 + (M_PI - a0) * static_cast<double>(i) / n_arc;
            keep(R * std::sin(th), c.xi + R * std::cos(th));
        }
        for (std::size_t i = 0; i <= n_arc; ++i) {
            const double th = M_PI - (M_PI - a0) * static_cast<double>(i) / n_arc;
            keep(-R * std::sin(th), c.xi + R * std::cos(th));
        }
    }
    for (std::size_t i = 0; i <= n_ray; ++i) {
        const double t = t_max - (t_max - t_start) * static_cast<double>(i) / n_ray;
        keep(-t * sp, vy + t * cp);  // left branch
    }
    return pts;
}

} // namespace stefankpp
