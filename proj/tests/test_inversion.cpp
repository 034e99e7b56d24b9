#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "echoloc/errors.hpp"
#include "echoloc/inversion.hpp"
#include "echoloc/transforms.hpp"
#include "support/helpers.hpp"

using namespace echoloc;

namespace {
constexpr double kPi = std::numbers::pi;

SpectralModel make(const std::string& spec) {
    return SpectralModel(parse_model_spec(spec));
}

bool report_orbit_contains(const LocationReport& rep, const Point& x, double tol) {
    for (const auto& orbit : rep.orbits)
        for (const auto& c : orbit) {
            bool hit = c.point.dim == x.dim;
            for (int i = 0; hit && i < x.dim; ++i)
                if (std::abs(c.point[i] - x[i]) > tol) hit = false;
            if (hit) return true;
        }
    return false;
}
} // namespace

TEST_CASE("interval inversion") {
    SUBCASE("maximal weight pins the midpoint") {
        auto xs = locate_on_interval(1.0, 2.0);
        REQUIRE(xs.size() == 1);
        CHECK(xs[0] == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("weight 1 on the unit string gives the quarter points") {
        auto xs = locate_on_interval(1.0, 1.0);
        REQUIRE(xs.size() == 2);
        CHECK(xs[0] == doctest::Approx(0.25).epsilon(1e-13));
        CHECK(xs[1] == doctest::Approx(0.75).epsilon(1e-13));
    }
    SUBCASE("length pi with weight 2/pi gives the midpoint") {
        auto xs = locate_on_interval(kPi, 2.0 / kPi);
        REQUIRE(xs.size() == 1);
        CHECK(xs[0] == doctest::Approx(kPi / 2.0).epsilon(1e-13));
    }
    SUBCASE("infeasible weights") {
        CHECK_THROWS_AS(locate_on_interval(1.0, 2.5), InfeasibleSignatureError);
        CHECK_THROWS_AS(locate_on_interval(1.0, 0.0), InfeasibleSignatureError);
        CHECK_THROWS_AS(locate_on_interval(1.0, -0.1), InfeasibleSignatureError);
    }
}

TEST_CASE("rectangle inversion") {
    double b = 0.5;
    auto forward = [b](double x, double y) {
        double j11 = 4.0 / b * std::pow(std::sin(kPi * x) * std::sin(kPi * y / b), 2);
        double j21 =
            4.0 / b * std::pow(std::sin(2.0 * kPi * x) * std::sin(kPi * y / b), 2);
        return std::pair{j11, j21};
    };
    SUBCASE("(1/4, 1/8) round trip") {
        auto [j11, j21] = forward(0.25, 0.125);
        auto rep = locate_on_rectangle(b, j11, j21);
        CHECK(rep.status == LocationReport::Status::unique_orbit);
        REQUIRE(rep.orbits.size() == 1);
        CHECK(rep.orbits[0].size() == 4);
        CHECK(report_orbit_contains(rep, Point(0.25, 0.125), 1e-12));
        for (const auto& c : rep.orbits[0]) CHECK(c.residual <= 1e-10);
    }
    SUBCASE("every Klein image produces the same signature") {
        auto model = make("rect:b=0.5");
        auto [j11, j21] = forward(1.0 / 3.0, 0.25);
        for (const auto& img : model.isometry_images(Point(1.0 / 3.0, 0.25))) {
            auto [i11, i21] = forward(img[0], img[1]);
            CHECK(i11 == doctest::Approx(j11).epsilon(1e-12));
            CHECK(i21 == doctest::Approx(j21).epsilon(1e-12));
        }
    }
    SUBCASE("ratio at the boundary of feasibility") {
        // jump21/jump11 = 4 cos^2(pi x) reaches 4 only as x -> 0 or 1, where
        // every jump vanishes; ratios >= 4 are therefore infeasible.
        CHECK_THROWS_AS(locate_on_rectangle(b, 1.0, 4.0 + 1e-9),
                        InfeasibleSignatureError);
        CHECK_THROWS_AS(locate_on_rectangle(b, 1.0, 5.0), InfeasibleSignatureError);
        // ratio 2 corresponds to x = 1/4 and stays feasible
        auto [j11, j21] = forward(0.25, 0.2);
        CHECK(j21 / j11 == doctest::Approx(2.0).epsilon(1e-12));
        CHECK_NOTHROW(locate_on_rectangle(b, j11, j21));
    }
    SUBCASE("nodal first jump is rejected") {
        CHECK_THROWS_AS(locate_on_rectangle(b, 0.0, 1.0), InfeasibleSignatureError);
    }
    SUBCASE("oversized y-equation is infeasible") {
        CHECK_THROWS_AS(locate_on_rectangle(b, 100.0, 1.0), InfeasibleSignatureError);
    }
}

TEST_CASE("square inversion") {
    auto forward = [](double x, double y) {
        double sx = std::pow(std::sin(kPi * x), 2), sy = std::pow(std::sin(kPi * y), 2);
        double j11 = 4.0 * sx * sy;
        double j2 = 4.0 * (std::pow(std::sin(2.0 * kPi * x), 2) * sy +
                           sx * std::pow(std::sin(2.0 * kPi * y), 2));
        return std::pair{j11, j2};
    };
    SUBCASE("center: double root, unique orbit point") {
        auto rep = locate_on_square(4.0, 0.0);
        REQUIRE(rep.orbits.size() == 1);
        REQUIRE(rep.orbits[0].size() == 1);
        CHECK(rep.orbits[0][0].point[0] == doctest::Approx(0.5).epsilon(1e-13));
        CHECK(rep.orbits[0][0].point[1] == doctest::Approx(0.5).epsilon(1e-13));
    }
    SUBCASE("(1/4, 1/3) round trip") {
        auto [j11, j2] = forward(0.25, 1.0 / 3.0);
        auto rep = locate_on_square(j11, j2);
        CHECK(report_orbit_contains(rep, Point(0.25, 1.0 / 3.0), 1e-11));
        REQUIRE(rep.orbits.size() == 1);
        CHECK(rep.orbits[0].size() == 8);
        for (const auto& c : rep.orbits[0]) CHECK(c.residual <= 1e-10);
    }
    SUBCASE("diagonal point: zero discriminant, orbit of four") {
        auto [j11, j2] = forward(0.2, 0.2);
        auto rep = locate_on_square(j11, j2);
        CHECK(report_orbit_contains(rep, Point(0.2, 0.2), 1e-9));
        REQUIRE(rep.orbits.size() == 1);
        CHECK(rep.orbits[0].size() == 4);
    }
    SUBCASE("inconsistent jumps are infeasible") {
        CHECK_THROWS_AS(locate_on_square(0.0, 1.0), InfeasibleSignatureError);
        CHECK_THROWS_AS(locate_on_square(1.0, 40.0), InfeasibleSignatureError);
    }
}

TEST_CASE("ellipsoid curvature inversion") {
    SUBCASE("equator of the a=2 ellipsoid") {
        // K(0) = a^2/a^4 = 1/4
        auto [zp, zm] = ellipsoid_z_from_curvature(0.25, 2.0);
        CHECK(zp == doctest::Approx(0.0));
        CHECK(zm == doctest::Approx(0.0));
    }
    SUBCASE("poles of the a=2 ellipsoid") {
        // near (0, 0, 2) the surface osculates the paraboloid h = rho^2, so
        // both principal curvatures are 2 and K = a^2 = 4 there
        auto [zp, zm] = ellipsoid_z_from_curvature(4.0, 2.0);
        CHECK(zp == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(zm == doctest::Approx(-2.0).epsilon(1e-12));
    }
    SUBCASE("round trip through the curvature formula, prolate and oblate") {
        for (double a : {2.0, 0.6}) {
            for (double z : {0.0, 0.21, 0.5 * a, 0.99 * a}) {
                double K =
                    a * a / std::pow(z * z * (1.0 / (a * a) - 1.0) + a * a, 2);
                auto [zp, zm] = ellipsoid_z_from_curvature(K, a);
                CHECK(zp == doctest::Approx(z).epsilon(1e-9));
                CHECK(zm == doctest::Approx(-z).epsilon(1e-9));
            }
        }
    }
    SUBCASE("the sphere is rejected") {
        CHECK_THROWS_AS(ellipsoid_z_from_curvature(1.0, 1.0), ArgumentError);
    }
    SUBCASE("unattained curvatures") {
        // attainable range is [1/a^2, a^2] = [0.25, 4] for a = 2
        CHECK_THROWS_AS(ellipsoid_z_from_curvature(10.0, 2.0),
                        InfeasibleSignatureError);
        CHECK_THROWS_AS(ellipsoid_z_from_curvature(0.2, 2.0),
                        InfeasibleSignatureError);
        CHECK_THROWS_AS(ellipsoid_z_from_curvature(1e-4, 2.0),
                        InfeasibleSignatureError);
    }
}

TEST_CASE("disk radius from the shortest looping time") {
    CHECK(disk_radius_from_looping_time(1.0) == doctest::Approx(0.5));
    CHECK(disk_radius_from_looping_time(1.4) == doctest::Approx(0.3));
    CHECK(disk_radius_from_looping_time(1e-9) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(disk_radius_from_looping_time(2.0), InfeasibleSignatureError);
    CHECK_THROWS_AS(disk_radius_from_looping_time(-0.5), InfeasibleSignatureError);
}

TEST_CASE("wave-trace to radius pipeline on the disk") {
    auto model = make("disk");
    auto cf = counting_function(model, Point(0.3, 1.0), 60.0);
    std::vector<double> grid;
    for (int i = 0; i <= 320; ++i) grid.push_back(0.2 + 1.6 * i / 320.0);
    auto samples = smoothed_wave_trace(cf, grid, 15.0);
    auto times = detect_looping_times(samples, 0.25);
    REQUIRE(!times.empty());
    double r = disk_radius_from_looping_time(times.front());
    CHECK(r >= 0.25);
    CHECK(r <= 0.35);
}

TEST_CASE("generic locate") {
    SUBCASE("square self-consistency at (0.2, 0.4)") {
        auto model = make("square");
        auto target = counting_function(model, Point(0.2, 0.4), 30.0);
        auto rep = generic_locate(model, target);
        CHECK(rep.status == LocationReport::Status::unique_orbit);
        REQUIRE(rep.orbits.size() == 1);
        CHECK(report_orbit_contains(rep, Point(0.2, 0.4), 1e-6));
        for (const auto& c : rep.orbits[0]) CHECK(c.residual <= 1e-8);
    }
    SUBCASE("torus targets match everywhere") {
        auto model = make("torus");
        auto target = counting_function(model, Point(1.0, 2.0), 10.0);
        auto rep = generic_locate(model, target);
        CHECK(rep.status == LocationReport::Status::all_points);
        REQUIRE(!rep.orbits.empty());
    }
    SUBCASE("sphere targets match everywhere") {
        auto model = make("sphere");
        auto target = counting_function(model, Point(1.0, 2.0), 12.0);
        auto rep = generic_locate(model, target);
        CHECK(rep.status == LocationReport::Status::all_points);
    }
    SUBCASE("a target from another model never matches") {
        auto target = counting_function(make("interval:a=1"), Point(0.3), 30.0);
        auto rep = generic_locate(make("square"), target);
        CHECK(rep.status == LocationReport::Status::no_match);
        CHECK(rep.orbits.empty());
    }
    SUBCASE("empty targets are rejected") {
        CountingFunction empty({}, {}, 3.0, "square", {0.2, 0.3});
        CHECK_THROWS_AS(generic_locate(make("square"), empty), ArgumentError);
    }
    SUBCASE("disk target recovers the radius orbit") {
        auto model = make("disk");
        auto target = counting_function(model, Point(0.62, 0.8), 25.0);
        auto rep = generic_locate(model, target);
        CHECK(rep.status == LocationReport::Status::unique_orbit);
        REQUIRE(!rep.orbits.empty());
        CHECK(rep.orbits[0][0].point[0] == doctest::Approx(0.62).epsilon(1e-6));
    }
}

TEST_CASE("locate router") {
    LocateOptions opts;
    SUBCASE("closed-form round trips for 100 random points per model") {
        auto rng = testsupport::rng(7);
        std::uniform_real_distribution<double> u(1e-3, 1.0 - 1e-3);
        // interval
        auto interval = make("interval:a=1");
        for (int i = 0; i < 100; ++i) {
            Point x(u(rng));
            auto rep = locate(interval, counting_function(interval, x, 10.0), opts);
            CHECK(report_orbit_contains(rep, x, 1e-9));
        }
        // rectangle b = 1/2
        auto rect = make("rect:b=0.5");
        for (int i = 0; i < 100; ++i) {
            Point x(u(rng), 0.5 * u(rng));
            auto rep = locate(rect, counting_function(rect, x, 9.0), opts);
            CHECK(report_orbit_contains(rep, x, 1e-9));
        }
        // square
        auto square = make("square");
        for (int i = 0; i < 100; ++i) {
            Point x(u(rng), u(rng));
            auto rep = locate(square, counting_function(square, x, 7.1), opts);
            CHECK(report_orbit_contains(rep, x, 1e-9));
        }
    }
    SUBCASE("generic and closed-form square inversions agree on 20 points") {
        auto square = make("square");
        auto rng = testsupport::rng(11);
        std::uniform_real_distribution<double> u(0.05, 0.95);
        for (int i = 0; i < 20; ++i) {
            Point x(u(rng), u(rng));
            auto target = counting_function(square, x, 30.0);
            auto closed = locate(square, target, opts);
            auto generic = generic_locate(square, target, opts);
            REQUIRE(!closed.orbits.empty());
            REQUIRE(!generic.orbits.empty());
            // same orbit: representatives are isometric images of each other
            CHECK(square.same_orbit(closed.orbits[0][0].point,
                                    generic.orbits[0][0].point, 1e-6));
            for (const auto& c : generic.orbits[0]) CHECK(c.residual <= 1e-6);
        }
    }
    SUBCASE("nodal targets fall back to the numerical matcher") {
        auto square = make("square");
        // x = 1/2 zeroes sin(2 pi x): the lambda_{1,1} jump survives but a
        // target built below lambda_{1,1} has nothing for the closed form.
        auto target = counting_function(square, Point(0.5, 0.25), 30.0);
        auto rep = locate(square, target, opts);
        CHECK(report_orbit_contains(rep, Point(0.5, 0.25), 1e-6));
    }
    SUBCASE("insufficient cutoff for the closed form is an error") {
        auto square = make("square");
        auto target = counting_function(square, Point(0.2, 0.3), 5.0);
        CHECK_THROWS_AS(locate(square, target, opts), ArgumentError);
    }
}
