#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "ballcover/error.hpp"

namespace ballcover {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
    friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Point2 a, Point2 b) = default;
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
constexpr Point2 midpoint(Point2 a, Point2 b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }
constexpr Point2 perp_ccw(Point2 a) { return {-a.y, a.x}; }

/// Lexicographic (x, y) order, used for every tie-break in the library.
constexpr bool lex_less(Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

/// Unit-length direction. Construction normalizes; zero vectors are rejected.
class UnitDir {
public:
    explicit UnitDir(Point2 v);
    static UnitDir from_angle(double radians) { return UnitDir(Point2{std::cos(radians), std::sin(radians)}); }

    double ux() const { return v_.x; }
    double uy() const { return v_.y; }
    Point2 vec() const { return v_; }
    UnitDir operator-() const { return UnitDir(Point2{-v_.x, -v_.y}); }

private:
    Point2 v_;
};

/// Counterclockwise angle in [0, 2π).
class OrientedAngle {
public:
    OrientedAngle() = default;
    /// Reduces any finite angle into [0, 2π); values within 1e-12 of 0 or 2π snap to 0.
    explicit OrientedAngle(double radians);

    double value() const { return value_; }
    /// The smaller of the two angles between the rays, in [0, π].
    double unsigned_value() const { return value_ <= kPi ? value_ : kTwoPi - value_; }

private:
    double value_ = 0.0;
};

struct Circle {
    Point2 center;
    double radius;

    Circle(Point2 c, double r);
};

OrientedAngle oriented_angle(Point2 u, Point2 v);
inline OrientedAngle oriented_angle(UnitDir u, UnitDir v) { return oriented_angle(u.vec(), v.vec()); }

/// The angle at b from a to c.
OrientedAngle angle_at(Point2 a, Point2 b, Point2 c);

/// 0, 1 or 2 points; empty for disjoint or concentric circles.
std::vector<Point2> circle_circle_intersection(const Circle& c1, const Circle& c2);

std::vector<Point2> circle_line_intersection(const Circle& c, Point2 p, Point2 d);

/// Picks the intersection point farthest from `excluded` (ties: lexicographic).
/// Throws Degenerate when every candidate coincides with `excluded` within `tol`.
Point2 second_intersection(const std::vector<Point2>& points, Point2 excluded, double tol);

Point2 rotate(Point2 v, double radians);

} // namespace ballcover
