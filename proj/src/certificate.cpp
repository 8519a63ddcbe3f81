#include "ballcover/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ballcover {

namespace {

double domain_diameter(const Grid& g) { return std::hypot(g.width(), g.height()) * g.spacing(); }

bool leaves_grid(const Grid& g, Point2 c, double r) {
    const BBox b = g.bounds();
    return c.x - r < b.xmin || c.y - r < b.ymin || c.x + r > b.xmax || c.y + r > b.ymax;
}

template <class Feasible>
Growth bisect_growth(double start, double upper, Feasible&& feasible) {
    Growth g;
    g.lo = start;
    g.hi = std::max(upper, start);
    if (feasible(g.hi)) {
        g.lo = g.hi;
        g.clipped = true;
    } else {
        for (int it = 0; it < kBisectionIterations; ++it) {
            const double mid = 0.5 * (g.lo + g.hi);
            if (feasible(mid)) g.lo = mid;
            else g.hi = mid;
        }
    }
    g.r = g.lo;
    return g;
}

Point2 reflect_y(Point2 p) { return {p.x, -p.y}; }

double violation(const std::array<double, 3>& s) {
    double v = 0.0;
    for (double x : s) v += std::max(0.0, -x);
    return v;
}

} // namespace

Projection project_boundary(const Grid& grid, Point2 x0) {
    const CellIndex c = grid.cell_of(x0);
    if (!grid.occupied(c.i, c.j)) throw Error(ErrorKind::Precondition, "x0 is not an occupied cell");
    const BoundarySet b = boundary_cells(grid);
    if (b.centers.empty()) throw Error(ErrorKind::Undefined, "grid has no boundary cell");
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < b.centers.size(); ++k) {
        const double d = distance(x0, b.centers[k]);
        if (d < best_d || (d == best_d && lex_less(b.centers[k], b.centers[best]))) {
            best = k;
            best_d = d;
        }
    }
    if (best_d <= 1e-12 * grid.spacing())
        throw Error(ErrorKind::Degenerate, "x0 is a boundary cell (r0 = 0)");
    const Point2 s0 = b.centers[best];
    return {s0, UnitDir(x0 - s0), best_d};
}

Growth grow_one_contact(const Grid& grid, const DistanceField& du, Point2 s0, UnitDir zeta, double r0) {
    auto feasible = [&](double t) { return du.distance_at(s0 + t * zeta.vec()) >= t; };
    if (!feasible(r0))
        throw Error(ErrorKind::InconsistentWitness, "ball of radius r0 tangent at s0 is not inside the raster");
    Growth g = bisect_growth(r0, domain_diameter(grid), feasible);
    g.center = s0 + g.r * zeta.vec();
    g.clipped = g.clipped || leaves_grid(grid, g.center, g.r);
    return g;
}

Point2 contact_point(const Grid& grid, const DistanceField& du, Point2 center, double radius,
                     const std::vector<Exclusion>& exclusions) {
    if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "contact circle needs a positive radius");
    const double h = grid.spacing();
    const std::size_t n = std::max<std::size_t>(64, static_cast<std::size_t>(std::ceil(kTwoPi * radius / (0.5 * h))));
    double best = std::numeric_limits<double>::infinity(), best_any = best;
    Point2 arg;
    for (std::size_t k = 0; k < n; ++k) {
        const double th = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
        const Point2 q = center + radius * Point2{std::cos(th), std::sin(th)};
        const double d = du.distance_at(q);
        best_any = std::min(best_any, d);
        const bool excluded = std::any_of(exclusions.begin(), exclusions.end(),
                                          [&](const Exclusion& e) { return distance(q, e.point) <= e.separation; });
        if (!excluded && d < best) {
            best = d;
            arg = q;
        }
    }
    if (best <= 2.0 * h) return arg;
    if (best_any <= 2.0 * h)
        throw Error(ErrorKind::DistinctnessViolation, "every contact on the circle lies in an exclusion zone");
    throw Error(ErrorKind::NoContact, "no circle point within 2h of the complement");
}

TwoContactGrowth grow_two_contact(const Grid& grid, const DistanceField& du, Point2 s0, Point2 s0p,
                                  Point2 side_hint, std::optional<Point2> fallback_center) {
    const double half = 0.5 * distance(s0, s0p);
    if (!(half > 0.0)) throw Error(ErrorKind::Degenerate, "s0 and s0p coincide");
    TwoContactGrowth out;
    out.m = midpoint(s0, s0p);
    const Point2 chord = s0p - s0;
    UnitDir z1(perp_ccw(chord));  // positive cross with the chord
    if (dot(z1.vec(), side_hint - out.m) < 0) z1 = -z1;
    out.zeta1 = z1;

    auto center_at = [&](double t) { return out.m + std::sqrt(std::max(0.0, t * t - half * half)) * z1.vec(); };
    auto feasible = [&](double t) { return du.distance_at(center_at(t)) >= t; };

    out.start_t = half;
    if (!feasible(half)) {
        if (!fallback_center)
            throw Error(ErrorKind::InconsistentTrace, "two-contact family infeasible at the half-chord start");
        const double k = std::max(0.0, dot(*fallback_center - out.m, z1.vec()));
        out.start_t = std::hypot(half, k);
        out.restarted = true;
        if (!feasible(out.start_t))
            throw Error(ErrorKind::InconsistentTrace, "two-contact family infeasible at the fallback start");
    }
    out.growth = bisect_growth(out.start_t, domain_diameter(grid), feasible);
    out.growth.center = center_at(out.growth.r);
    out.growth.clipped = out.growth.clipped || leaves_grid(grid, out.growth.center, out.growth.r);
    return out;
}

NormalFan normal_fan(const Grid& grid, const DistanceField& du, Point2 s, double r, std::size_t K) {
    if (K < kMinDirectionSamples) throw Error(ErrorKind::InvalidArgument, "direction_samples must be >= 64");
    if (!(r > 0.0)) throw Error(ErrorKind::InvalidArgument, "fan radius must be positive");
    NormalFan fan;
    fan.s = s;
    fan.r = r;
    fan.samples = K;
    const double tol = 2.0 * grid.spacing();
    std::vector<char> ok(K, 0);
    for (std::size_t k = 0; k < K; ++k) {
        const UnitDir u = fan.direction(k);
        ok[k] = du.distance_at(s + r * u.vec()) >= r - tol;
        if (ok[k]) fan.arc.push_back(k);
    }
    if (fan.arc.empty()) return fan;
    fan.empty = false;
    if (fan.arc.size() == K) {
        fan.lo_index = 0;
        fan.hi_index = K - 1;
    } else {
        // The complement of the largest infeasible gap is the shortest covering arc.
        std::size_t best_len = 0;
        for (std::size_t k = 0; k < K; ++k) {
            if (!ok[k] || ok[(k + 1) % K]) continue;
            std::size_t len = 0;
            while (!ok[(k + 1 + len) % K]) ++len;
            if (len > best_len) {
                best_len = len;
                fan.hi_index = k;
                fan.lo_index = (k + 1 + len) % K;
            }
        }
    }
    fan.extremal_lo = fan.direction(fan.lo_index);
    fan.extremal_hi = fan.direction(fan.hi_index);
    return fan;
}

std::array<double, 3> fan_chain(UnitDir zeta, UnitDir zeta0, UnitDir xi0, double r0, double r) {
    const double a = std::acos(std::clamp(r0 / (2.0 * r), -1.0, 1.0));
    const double a1 = oriented_angle(zeta, zeta0).value();
    const double a2 = oriented_angle(zeta, xi0).value();
    return {a1 - a, (a2 - kPi) - a1, (kPi - a) - (a2 - kPi)};
}

ChainSlack check_fan_chain(const NormalFan& fan, UnitDir zeta, double r0, double r) {
    ChainSlack out;
    if (fan.empty) {
        out.reason = "empty fan";
        return out;
    }
    if (fan.lo_index == fan.hi_index) {
        out.reason = "single-direction fan (regular point)";
        return out;
    }
    if (!(r0 > 0.0 && r0 < 2.0 * r)) {
        out.reason = "r0 outside (0, 2r)";
        return out;
    }
    // ζ-relative extremes: the feasible directions first and last reached turning from ζ.
    // They coincide with the fan's arc ends unless the covering arc contains ζ.
    auto extremes = [&](bool clockwise) {
        std::size_t first = fan.arc.front(), last = fan.arc.front();
        double amin = kTwoPi, amax = -1.0;
        for (std::size_t k : fan.arc) {
            const UnitDir u = fan.direction(k);
            const double a = clockwise ? oriented_angle(u, zeta).value() : oriented_angle(zeta, u).value();
            if (a < amin) amin = a, first = k;
            if (a > amax) amax = a, last = k;
        }
        return std::pair{fan.direction(first), fan.direction(last)};
    };
    out.applicable = true;
    const auto [z0, x0] = extremes(false);
    const auto ccw = fan_chain(zeta, z0, x0, r0, r);
    const auto [mz0, mx0] = extremes(true);
    const auto cw = fan_chain(UnitDir(reflect_y(zeta.vec())), UnitDir(reflect_y(mz0.vec())),
                                  UnitDir(reflect_y(mx0.vec())), r0, r);
    out.mirrored = violation(cw) < violation(ccw);
    out.slack = out.mirrored ? cw : ccw;
    out.zeta0 = out.mirrored ? mz0 : z0;
    out.xi0 = out.mirrored ? mx0 : x0;
    return out;
}

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(e.kind(), std::string(name) + ": " + e.what());
    }
}

ContactAnnex annex(const Grid& grid, const DistanceField& du, Point2 s, Point2 x0, double r, double rho,
                   std::size_t K) {
    ContactAnnex a;
    a.s = s;
    a.r0 = distance(x0, s);
    if (a.r0 > 0) a.zeta = UnitDir(x0 - s);
    if (!(r > 0)) {
        a.fan.samples = K;
        a.slack.reason = "no positive fan radius";
        return a;
    }
    a.fan = normal_fan(grid, du, s, r, K);
    a.slack = check_fan_chain(a.fan, a.zeta, a.r0, r);
    double span = a.fan.span();
    if (a.slack.applicable)
        span = (a.slack.mirrored ? oriented_angle(a.slack.xi0, a.slack.zeta0)
                                 : oriented_angle(a.slack.zeta0, a.slack.xi0)).value();
    a.extremal_signature = !a.fan.empty && span >= kPi - 2 * a.fan.step() - 1e-9 && span <= kPi + 1e-9;
    // The chain needs x0 outside the opening at some r* < r.
    if (a.slack.applicable && !(rho < r)) {
        a.slack.applicable = false;
        a.slack.reason = "trace radius not below the fan radius";
    }
    return a;
}

} // namespace

TraceOutcome build_certificate(const Grid& grid, double rho, std::size_t K, double fan_radius) {
    const DistanceField du = edt(grid, Polarity::ToUnoccupied);
    TraceOutcome out;
    const auto witness = find_witness(grid, du, rho);
    if (!witness) {
        out.covered = true;
        return out;
    }
    const double h = grid.spacing();
    const double delta = kContactSeparationCells * h;
    Certificate c;
    c.rho = rho;
    c.x0 = *witness;
    const Projection p = stage("project_boundary", [&] { return project_boundary(grid, c.x0); });
    c.s0 = p.s0;
    c.zeta = p.zeta;
    c.r0 = p.r0;
    const Growth g1 = stage("grow_one_contact", [&] { return grow_one_contact(grid, du, c.s0, c.zeta, c.r0); });
    c.r1 = g1.r;
    c.x1 = g1.center;
    c.s0p = stage("contact_point(s0p)", [&] { return contact_point(grid, du, c.x1, c.r1, {{c.s0, delta}}); });
    const TwoContactGrowth g2 =
        stage("grow_two_contact", [&] { return grow_two_contact(grid, du, c.s0, c.s0p, c.x1, c.x1); });
    c.m = g2.m;
    c.zeta1 = g2.zeta1;
    c.r2 = g2.growth.r;
    c.x2 = g2.growth.center;
    c.two_contact_restarted = g2.restarted;
    c.s0pp = stage("contact_point(s0pp)",
                   [&] { return contact_point(grid, du, c.x2, c.r2, {{c.s0, delta}, {c.s0p, delta}}); });
    c.clipped = g1.clipped || g2.growth.clipped;
    c.triangle_angles = {angle_at(c.s0p, c.s0, c.s0pp).unsigned_value(),
                         angle_at(c.s0, c.s0p, c.s0pp).unsigned_value(),
                         angle_at(c.s0, c.s0pp, c.s0p).unsigned_value()};
    c.fan_radius = fan_radius > 0 ? fan_radius : interior_sphere_radius(grid, du).value;
    c.direction_samples = K;
    c.contacts = {annex(grid, du, c.s0, c.x0, c.fan_radius, rho, K), annex(grid, du, c.s0p, c.x0, c.fan_radius, rho, K),
                  annex(grid, du, c.s0pp, c.x0, c.fan_radius, rho, K)};
    out.certificate = std::move(c);
    return out;
}

} // namespace ballcover

namespace ballcover {

CertificateCheck check_certificate(const Grid& grid, const DistanceField& du, const Certificate& c) {
    const double h = grid.spacing();
    CertificateCheck k;
    const double half = 0.5 * distance(c.s0, c.s0p);
    const Point2 x2 = c.m + std::sqrt(std::max(0.0, c.r2 * c.r2 - half * half)) * c.zeta1.vec();
    k.identity_residual = std::max({distance(c.x1, c.s0 + c.r1 * c.zeta.vec()), distance(c.m, midpoint(c.s0, c.s0p)),
                                    std::abs(dot(c.zeta1.vec(), c.s0p - c.s0)) / std::max(1.0, 2 * half),
                                    distance(c.x2, x2)});
    k.angle_sum_residual = std::abs(c.triangle_angles[0] + c.triangle_angles[1] + c.triangle_angles[2] - kPi);
    k.circle_residual = std::max({std::abs(distance(c.s0, c.x2) - c.r2), std::abs(distance(c.s0p, c.x2) - c.r2),
                                  std::abs(distance(c.s0pp, c.x2) - c.r2)});
    k.min_separation = std::min({distance(c.s0, c.s0p), distance(c.s0, c.s0pp), distance(c.s0p, c.s0pp)});
    k.monotone = c.r0 - 2 * h <= c.r1 && c.r1 <= c.r2 + 2 * h;
    k.maximal = du.distance_at(c.x1) <= c.r1 + 2 * h && du.distance_at(c.x2) <= c.r2 + 2 * h;
    k.identities_ok = k.identity_residual <= 1e-9;
    k.angle_sum_ok = k.angle_sum_residual <= 1e-9;
    k.on_circle_ok = k.circle_residual <= 2 * h;
    k.separated_ok = k.min_separation > kContactSeparationCells * h;
    return k;
}

} // namespace ballcover
