#include "ballcover/geom.hpp"

#include <algorithm>
#include <string>

namespace ballcover {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Constraint: return "constraint";
    case ErrorKind::Degenerate: return "degenerate-configuration";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Resource: return "resource";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::EmptyTarget: return "infinite-distance";
    case ErrorKind::Undefined: return "undefined";
    case ErrorKind::InconsistentWitness: return "inconsistent-witness";
    case ErrorKind::InconsistentTrace: return "inconsistent-trace";
    case ErrorKind::NoContact: return "no-contact";
    case ErrorKind::DistinctnessViolation: return "distinctness-violation";
    case ErrorKind::NotApplicable: return "not-applicable";
    }
    return "unknown";
}

UnitDir::UnitDir(Point2 v) {
    const double n = norm(v);
    if (!(n > 0.0) || !std::isfinite(n))
        throw Error(ErrorKind::InvalidArgument, "unit direction from a zero or non-finite vector");
    v_ = {v.x / n, v.y / n};
}

OrientedAngle::OrientedAngle(double radians) {
    if (!std::isfinite(radians))
        throw Error(ErrorKind::InvalidArgument, "non-finite angle");
    double v = std::fmod(radians, kTwoPi);
    if (v < 0.0) v += kTwoPi;
    if (v < 1e-12 || kTwoPi - v < 1e-12) v = 0.0;
    value_ = v;
}

Circle::Circle(Point2 c, double r) : center(c), radius(r) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw Error(ErrorKind::InvalidArgument, "circle radius must be positive");
}

OrientedAngle oriented_angle(Point2 u, Point2 v) {
    if (!(norm(u) > 0.0) || !(norm(v) > 0.0))
        throw Error(ErrorKind::InvalidArgument, "oriented angle of a zero vector");
    return OrientedAngle(std::atan2(cross(u, v), dot(u, v)));
}

OrientedAngle angle_at(Point2 a, Point2 b, Point2 c) {
    if (a == b || c == b)
        throw Error(ErrorKind::InvalidArgument, "angle_at with coincident points");
    return oriented_angle(a - b, c - b);
}

std::vector<Point2> circle_circle_intersection(const Circle& c1, const Circle& c2) {
    const Point2 delta = c2.center - c1.center;
    const double d = norm(delta);
    if (d == 0.0) return {};
    const double r1 = c1.radius;
    const double r2 = c2.radius;
    // Foot of the radical line along the center axis.
    const double a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    const double h2 = r1 * r1 - a * a;
    const double scale = std::max(r1, r2);
    const Point2 e = (1.0 / d) * delta;
    const Point2 foot = c1.center + a * e;
    if (std::abs(h2) <= 1e-12 * scale * scale) return {foot};
    if (h2 < 0.0) return {};
    const double h = std::sqrt(h2);
    const Point2 n = perp_ccw(e);
    return {foot + h * n, foot - h * n};
}

std::vector<Point2> circle_line_intersection(const Circle& c, Point2 p, Point2 d) {
    const double dn = norm(d);
    if (!(dn > 0.0))
        throw Error(ErrorKind::InvalidArgument, "line direction must be nonzero");
    const Point2 e = (1.0 / dn) * d;
    const double t0 = dot(c.center - p, e);
    const Point2 foot = p + t0 * e;
    const double off = distance(foot, c.center);
    const double h2 = c.radius * c.radius - off * off;
    if (std::abs(h2) <= 1e-12 * c.radius * c.radius) return {foot};
    if (h2 < 0.0) return {};
    const double h = std::sqrt(h2);
    return {foot + h * e, foot - h * e};
}

Point2 second_intersection(const std::vector<Point2>& points, Point2 excluded, double tol) {
    const Point2* best = nullptr;
    double best_d = -1.0;
    for (const Point2& q : points) {
        const double d = distance(q, excluded);
        if (d > best_d || (d == best_d && best && lex_less(q, *best))) {
            best = &q;
            best_d = d;
        }
    }
    if (!best || best_d <= tol)
        throw Error(ErrorKind::Degenerate, "second intersection point coincides with the excluded point");
    return *best;
}

Point2 rotate(Point2 v, double radians) {
    const double c = std::cos(radians);
    const double s = std::sin(radians);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

} // namespace ballcover
