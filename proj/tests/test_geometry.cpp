#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lisl/geometry.hpp"

using namespace lisl;

namespace {

EciPosition pos(double x, double y, double z, double t = 0.0) {
    return EciPosition{x, y, z, t};
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("distance basics") {
    CHECK(distance(pos(1, 2, 3), pos(1, 2, 3)) == 0.0);
    // Antipodal satellites on the 6921 km sphere: one orbital diameter apart.
    CHECK(distance(pos(6921, 0, 0), pos(-6921, 0, 0)) == doctest::Approx(13842.0));
    CHECK_THROWS_AS(distance(pos(0, 0, 0, 1.0), pos(0, 0, 0, 2.0)), std::invalid_argument);
}

TEST_CASE("distance equals the slot-1 chord for same-plane neighbors") {
    // 2 * 6921 * sin(pi/66), evaluated independently.
    const double u = 2.0 * std::numbers::pi / 66.0;
    const EciPosition a = pos(6921.0, 0.0, 0.0);
    const EciPosition b = pos(6921.0 * std::cos(u), 6921.0 * std::sin(u), 0.0);
    CHECK(distance(a, b) == doctest::Approx(658.6289).epsilon(1e-6));
}

TEST_CASE("distance is symmetric") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> coord(-7000.0, 7000.0);
    for (int i = 0; i < 200; ++i) {
        const EciPosition a = pos(coord(rng), coord(rng), coord(rng));
        const EciPosition b = pos(coord(rng), coord(rng), coord(rng));
        CHECK(distance(a, b) == distance(b, a));
    }
}

TEST_CASE("grazing altitude of a degenerate segment is the endpoint altitude") {
    const EciPosition a = pos(6921.0, 0.0, 0.0);
    CHECK(grazing_altitude(a, a, 6371.0) == doctest::Approx(550.0).epsilon(1e-12));
}

TEST_CASE("grazing altitude through the Earth's center is minus the radius") {
    CHECK(grazing_altitude(pos(6921, 0, 0), pos(-6921, 0, 0), 6371.0) ==
          doctest::Approx(-6371.0).epsilon(1e-12));
}

TEST_CASE("grazing altitude at the slot-1 chord midpoint") {
    // 6921 * cos(pi/66) - 6371, evaluated independently.
    const double u = 2.0 * std::numbers::pi / 66.0;
    const EciPosition a = pos(6921.0, 0.0, 0.0);
    const EciPosition b = pos(6921.0 * std::cos(u), 6921.0 * std::sin(u), 0.0);
    CHECK(grazing_altitude(a, b, 6371.0) == doctest::Approx(542.1609).epsilon(1e-6));
}

TEST_CASE("grazing altitude uses the endpoint when the line minimum lies outside") {
    // Both points on the same side: closest approach of the infinite line sits
    // behind a, so the segment minimum is a's own altitude.
    const EciPosition a = pos(7000.0, 100.0, 0.0);
    const EciPosition b = pos(8000.0, 200.0, 0.0);
    const double expected = std::sqrt(7000.0 * 7000.0 + 100.0 * 100.0) - 6371.0;
    CHECK(grazing_altitude(a, b, 6371.0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("grazing altitude is symmetric and bounded by endpoint altitudes") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coord(-9000.0, 9000.0);
    for (int i = 0; i < 200; ++i) {
        const EciPosition a = pos(coord(rng), coord(rng), coord(rng));
        const EciPosition b = pos(coord(rng), coord(rng), coord(rng));
        const double g = grazing_altitude(a, b, 6371.0);
        CHECK(g == grazing_altitude(b, a, 6371.0));
        const double alt_a = std::sqrt(a.x_km * a.x_km + a.y_km * a.y_km + a.z_km * a.z_km) - 6371.0;
        const double alt_b = std::sqrt(b.x_km * b.x_km + b.y_km * b.y_km + b.z_km * b.z_km) - 6371.0;
        CHECK(g <= std::min(alt_a, alt_b) + 1e-9);
    }
}

TEST_CASE("maximum LISL range reproduces the published 5016 km") {
    CHECK(std::abs(max_lisl_range(550.0, 80.0, 6378.0) - 5016.0) < 1.0);
    // Exact formula value, evaluated independently.
    CHECK(max_lisl_range(550.0, 80.0, 6378.0) == doctest::Approx(5016.5406).epsilon(1e-7));
}

TEST_CASE("maximum LISL range edge cases") {
    CHECK(max_lisl_range(550.0, 550.0, 6378.0) == 0.0);
    // 2*sqrt(6928^2 - 6378^2), evaluated independently.
    CHECK(max_lisl_range(550.0, 0.0, 6378.0) == doctest::Approx(5410.4713).epsilon(1e-7));
    CHECK_THROWS_AS(max_lisl_range(70.0, 80.0, 6378.0), std::domain_error);
    CHECK_THROWS_AS(max_lisl_range(550.0, -1.0, 6378.0), std::domain_error);
}

TEST_CASE("intra-plane chord endpoints and bounds") {
    CHECK(intra_plane_chord(33, 6921.0, 66) == doctest::Approx(2.0 * 6921.0).epsilon(1e-12));
    CHECK(intra_plane_chord(1, 6921.0, 66) == doctest::Approx(658.6289).epsilon(1e-6));
    // Seven slots still fit inside the 5016 km budget, eight do not.
    CHECK(intra_plane_chord(7, 6921.0, 66) == doctest::Approx(4527.2747).epsilon(1e-6));
    CHECK(intra_plane_chord(7, 6921.0, 66) < 5016.0);
    CHECK(intra_plane_chord(8, 6921.0, 66) > 5016.0);
    CHECK_THROWS_AS(intra_plane_chord(0, 6921.0, 66), std::domain_error);
    CHECK_THROWS_AS(intra_plane_chord(34, 6921.0, 66), std::domain_error);
}

TEST_CASE("a pair separated by the maximum range grazes the atmosphere shell") {
    // Symmetric configuration: both satellites at altitude h, chord equal to
    // max_lisl_range, so the midpoint must sit exactly on the shell.
    const double re = 6378.0;
    const double h = 550.0;
    const double a_km = 80.0;
    const double radius = re + h;
    const double theta = std::acos((re + a_km) / radius);
    const EciPosition p1 = pos(radius * std::cos(theta), radius * std::sin(theta), 0.0);
    const EciPosition p2 = pos(radius * std::cos(theta), -radius * std::sin(theta), 0.0);
    CHECK(distance(p1, p2) == doctest::Approx(max_lisl_range(h, a_km, re)).epsilon(1e-12));
    CHECK(std::abs(grazing_altitude(p1, p2, re) - a_km) < 1e-6);
}

TEST_CASE("propagated same-plane separations equal the chord at all times") {
    const ConstellationConfig config;
    const auto records = build_constellation(config);
    for (int k : {1, 2, 7, 33}) {
        const double chord = intra_plane_chord(k, records[0].orbit_radius_km, 66);
        for (double t : {0.0, 1234.5, 86399.0}) {
            const double d = distance(propagate(records[0], t), propagate(records[k], t));
            CHECK(std::abs(d - chord) < 1e-6);
        }
    }
}

TEST_CASE("link_geometry bundles both kernels") {
    const EciPosition a = pos(6921.0, 0.0, 0.0);
    const LinkGeometry g = link_geometry(a, a, 6371.0);
    CHECK(g.distance_km == 0.0);
    CHECK(g.grazing_altitude_km == doctest::Approx(550.0));
}

}  // TEST_SUITE
