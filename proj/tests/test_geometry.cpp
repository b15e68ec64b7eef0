#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stefankpp/geometry.hpp"

using namespace stefankpp;

namespace {

// brute-force distance to the cone: dense sampling of the boundary rays
double brute_dist(const ConeSpec& c, double x, double y) {
    const double sp = std::sin(c.phi), cp = std::cos(c.phi);
    double best = std::hypot(x, y - c.xi); // vertex
    for (int i = 1; i <= 200000; ++i) {
        const double t = 60.0 * i / 200000.0;
        best = std::min(best, std::hypot(std::fabs(x) - t * sp, (y - c.xi) - t * cp));
    }
    return best;
}

std::array<double, 2> pt(double x, double y) { return {x, y}; }

} // namespace

TEST_CASE("cone membership") {
    ConeSpec half = make_cone(M_PI / 2.0);
    CHECK(cone_contains(half, pt(0, 1)));
    CHECK_FALSE(cone_contains(half, pt(0, -1)));
    CHECK_FALSE(cone_contains(half, pt(0, 0))); // vertex excluded

    ConeSpec wide = make_cone(3.0 * M_PI / 4.0);
    CHECK(cone_contains(wide, pt(1, 0)));
    CHECK_FALSE(cone_contains(wide, pt(0, -1)));

    ConeSpec narrow = make_cone(M_PI / 4.0);
    CHECK(cone_contains(narrow, pt(0, 1)));
    CHECK_FALSE(cone_contains(narrow, pt(1, 0)));
}

TEST_CASE("distance to cone: closed-form cases") {
    ConeSpec half = make_cone(M_PI / 2.0);
    CHECK(dist_to_cone(half, pt(0, -3)) == doctest::Approx(3.0));
    CHECK(dist_to_cone(half, pt(0.5, 2)) == 0.0);

    const double R = 2.5;
    ConeSpec wide = make_cone(3.0 * M_PI / 4.0);
    CHECK(dist_to_cone(wide, pt(0, -R)) == doctest::Approx(R * std::sin(wide.phi)).epsilon(1e-14));

    ConeSpec narrow = make_cone(M_PI / 4.0);
    CHECK(dist_to_cone(narrow, pt(0, -R)) == doctest::Approx(R).epsilon(1e-14));
}

TEST_CASE("distance to cone matches brute force") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    for (double phi : {M_PI / 5.0, M_PI / 2.5, 2.2, 3.0 * M_PI / 4.0}) {
        ConeSpec c = make_cone(phi, 0.4);
        int outside = 0;
        while (outside < 40) {
            const double x = coord(rng), y = coord(rng);
            const double d = dist_to_cone(c, pt(x, y));
            if (d == 0.0) continue;
            ++outside;
            CHECK(d == doctest::Approx(brute_dist(c, x, y)).epsilon(2e-3));
        }
    }
}

TEST_CASE("neighborhood equals the shifted cone for phi >= pi/2") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> coord(-20.0, 20.0);
    for (double phi : {M_PI / 2.0, 2.0, 3.0 * M_PI / 4.0, 2.9}) {
        ConeSpec c = make_cone(phi, -0.3);
        const double R = 1.7;
        ConeSpec shifted = make_cone(phi, c.xi - R / std::sin(phi));
        for (int i = 0; i < 10000; ++i) {
            const auto p = pt(coord(rng), coord(rng));
            CHECK(neighborhood_contains(c, R, p) == cone_contains(shifted, p));
        }
    }
}

TEST_CASE("neighborhood basics") {
    ConeSpec narrow = make_cone(M_PI / 4.0);
    const double R = 3.0;
    CHECK(neighborhood_contains(narrow, R, pt(0, -R / 2.0))); // spherical cap region
    CHECK_FALSE(neighborhood_contains(narrow, R, pt(0, -2.0 * R)));
    // R = 0 degenerates to open-cone membership
    CHECK(neighborhood_contains(narrow, 0.0, pt(0, 1)));
    CHECK_FALSE(neighborhood_contains(narrow, 0.0, pt(1, 0)));
}

TEST_CASE("distance is 1-Lipschitz and monotone in R") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> coord(-8.0, 8.0);
    ConeSpec c = make_cone(1.9, 0.0);
    for (int i = 0; i < 2000; ++i) {
        const auto p = pt(coord(rng), coord(rng));
        const auto q = pt(coord(rng), coord(rng));
        const double dp = dist_to_cone(c, p), dq = dist_to_cone(c, q);
        const double sep = std::hypot(p[0] - q[0], p[1] - q[1]);
        CHECK(std::fabs(dp - dq) <= sep * (1.0 + 1e-12) + 1e-13);
        if (dp < 1.0) CHECK(neighborhood_contains(c, 2.0, p));
    }
}

TEST_CASE("sandwich check") {
    ConeSpec c = make_cone(3.0 * M_PI / 4.0);
    ConeNeighborhood inner{c, 1.0};
    ConeNeighborhood outer{c, 3.0};

    // points in the closed collar between the sets: no violations
    std::vector<std::array<double, 2>> ring;
    for (int i = 0; i <= 64; ++i) {
        const double th = M_PI * i / 64.0;
        // boundary of N[cone, 2]: sample of the shifted cone surface
        const double shift = 2.0 / std::sin(c.phi);
        const double t = 0.2 + 5.0 * i / 64.0;
        ring.push_back({t * std::sin(c.phi), -shift + t * std::cos(c.phi)});
        (void)th;
    }
    SandwichReport ok = sandwich_check(ring, inner, outer);
    CHECK(ok.pass());
    CHECK(ok.n_points == ring.size());

    // translate the ring well beyond the outer set
    std::vector<std::array<double, 2>> moved = ring;
    for (auto& p : moved) p[1] -= 5.0;
    SandwichReport bad = sandwich_check(moved, inner, outer);
    CHECK(bad.violations_out > 0);
    CHECK(bad.max_violation_dist > 0.5);

    // push the points deep inside the inner set
    std::vector<std::array<double, 2>> inside = ring;
    for (auto& p : inside) p[1] += 6.0;
    SandwichReport bad2 = sandwich_check(inside, inner, outer);
    CHECK(bad2.violations_in > 0);
}

TEST_CASE("boundary sampling stays on the neighborhood boundary") {
    for (double phi : {M_PI / 4.0, 3.0 * M_PI / 4.0}) {
        ConeNeighborhood set{make_cone(phi), 2.0};
        auto poly = sample_neighborhood_boundary(set, -20, 20, -20, 20, 256);
        REQUIRE(poly.size() > 50);
        for (const auto& p : poly) {
            CHECK(dist_to_cone(set.spec, p) == doctest::Approx(set.R).epsilon(1e-9));
        }
    }
}
