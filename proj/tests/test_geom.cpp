#include <doctest.h>

#include <random>

#include "ballcover/geom.hpp"

using namespace ballcover;

TEST_CASE("oriented_angle basic cases") {
    CHECK(oriented_angle(Point2{1, 0}, Point2{0, 1}).value() == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(oriented_angle(Point2{0, 1}, Point2{1, 0}).value() == doctest::Approx(3 * kPi / 2).epsilon(1e-15));
    CHECK(oriented_angle(Point2{1, 0}, Point2{1, 0}).value() == 0.0);
    CHECK_THROWS_AS(oriented_angle(Point2{0, 0}, Point2{1, 0}), Error);
}

TEST_CASE("angle_at basic cases") {
    const Point2 b{0, 0};
    CHECK(angle_at({1, 0}, b, {0, 1}).value() == doctest::Approx(kPi / 2));
    CHECK(angle_at({1, 0}, b, {1, 0}).value() == 0.0);
    CHECK(angle_at({1, 0}, b, {-1, 0}).value() == doctest::Approx(kPi));
    CHECK_THROWS_AS(angle_at(b, b, {1, 0}), Error);
    try {
        angle_at({1, 0}, b, b);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidArgument);
    }
}

TEST_CASE("OrientedAngle canonicalization snaps near 2pi") {
    CHECK(OrientedAngle(kTwoPi - 1e-13).value() == 0.0);
    CHECK(OrientedAngle(-kPi / 2).value() == doctest::Approx(3 * kPi / 2));
    CHECK(OrientedAngle(5 * kPi).value() == doctest::Approx(kPi));
}

TEST_CASE("oriented_angle properties on random vectors") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0), ang(0.0, kTwoPi), scale(0.01, 100.0);
    for (int i = 0; i < 2000; ++i) {
        const Point2 a{u(rng), u(rng)}, b{u(rng), u(rng)};
        if (norm(a) < 1e-3 || norm(b) < 1e-3) continue;
        CHECK(oriented_angle(a, a).value() == 0.0);
        const double ab = oriented_angle(a, b).value(), ba = oriented_angle(b, a).value();
        if (std::abs(cross(a, b)) > 1e-9) CHECK(ab + ba == doctest::Approx(kTwoPi).epsilon(1e-12));
        const double t = ang(rng);
        const double rotated = oriented_angle(rotate(a, t), rotate(b, t)).value();
        double diff = std::abs(rotated - ab);
        diff = std::min(diff, kTwoPi - diff);
        CHECK(diff < 1e-12);
        CHECK(oriented_angle(scale(rng) * a, scale(rng) * b).value() == doctest::Approx(ab).epsilon(1e-13));
    }
}

TEST_CASE("circle_circle_intersection cases") {
    const Circle unit({0, 0}, 1);
    auto tangent = circle_circle_intersection(unit, Circle({2, 0}, 1));
    REQUIRE(tangent.size() == 1);
    CHECK(tangent[0].x == doctest::Approx(1.0));
    CHECK(tangent[0].y == doctest::Approx(0.0));

    auto lens = circle_circle_intersection(unit, Circle({1, 0}, 1));
    REQUIRE(lens.size() == 2);
    const double s3 = std::sqrt(3.0) / 2;
    CHECK(lens[0].x == doctest::Approx(0.5));
    CHECK(std::abs(lens[0].y) == doctest::Approx(s3));
    CHECK(lens[0].y == doctest::Approx(-lens[1].y));

    CHECK(circle_circle_intersection(unit, Circle({3, 0}, 1)).empty());
    CHECK(circle_circle_intersection(unit, Circle({0, 0}, 2)).empty());
}

TEST_CASE("circle_line_intersection cases") {
    auto two = circle_line_intersection(Circle({0, 0}, 1), {0, 0}, {0, 1});
    REQUIRE(two.size() == 2);
    CHECK(std::abs(two[0].y) == doctest::Approx(1.0));
    CHECK(two[0].y == doctest::Approx(-two[1].y));
    auto one = circle_line_intersection(Circle({1, 0}, 1), {0, 0}, {0, 1});
    REQUIRE(one.size() == 1);
    CHECK(norm(one[0]) < 1e-12);
    CHECK(circle_line_intersection(Circle({3, 0}, 1), {0, 0}, {0, 1}).empty());
    CHECK_THROWS_AS(circle_line_intersection(Circle({0, 0}, 1), {0, 0}, {0, 0}), Error);
}

TEST_CASE("intersection points satisfy both equations") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0), rad(0.1, 2.0);
    int hits = 0;
    for (int i = 0; i < 3000; ++i) {
        const Circle a({u(rng), u(rng)}, rad(rng)), b({u(rng), u(rng)}, rad(rng));
        const double tol = 1e-9 * std::max(a.radius, b.radius);
        for (const Point2& p : circle_circle_intersection(a, b)) {
            ++hits;
            CHECK(std::abs(distance(p, a.center) - a.radius) < tol);
            CHECK(std::abs(distance(p, b.center) - b.radius) < tol);
        }
        const Point2 p0{u(rng), u(rng)}, d{u(rng), u(rng)};
        if (norm(d) < 1e-3) continue;
        for (const Point2& p : circle_line_intersection(a, p0, d)) {
            CHECK(std::abs(distance(p, a.center) - a.radius) < 1e-9 * a.radius);
            CHECK(std::abs(cross(p - p0, d)) / norm(d) < 1e-9 * a.radius);
        }
    }
    CHECK(hits > 100);
}

TEST_CASE("second_intersection picks the far point and rejects tangency at the excluded point") {
    const Point2 o{0, 0};
    CHECK(second_intersection({{0, 0}, {0.4, 0.8}}, o, 1e-9) == Point2{0.4, 0.8});
    CHECK(second_intersection({{-1, 0}, {1, 0}}, o, 1e-9) == Point2{-1, 0});
    CHECK_THROWS_AS(second_intersection({{0, 0}}, o, 1e-9), Error);
}
