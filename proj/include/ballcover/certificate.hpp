#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ballcover/morphology.hpp"

namespace ballcover {

struct Projection {
    Point2 s0;
    UnitDir zeta{Point2{1, 0}};
    double r0 = 0.0;
};

/// Nearest boundary cell center to x0 (ties: lexicographic).
/// Throws Degenerate when x0 is itself a boundary cell, Precondition when it is not occupied.
Projection project_boundary(const Grid& grid, Point2 x0);

struct Growth {
    double r = 0.0;       // largest feasible t found
    Point2 center;
    double lo = 0.0, hi = 0.0;
    bool clipped = false;  // the ball reaches past the grid, or the upper bound was still feasible
};

/// Largest t with distance-to-unoccupied(s0 + t·zeta) >= t, starting from the known-feasible r0.
/// Throws InconsistentWitness when r0 itself is infeasible.
Growth grow_one_contact(const Grid& grid, const DistanceField& du, Point2 s0, UnitDir zeta, double r0);

struct Exclusion {
    Point2 point;
    double separation;
};

/// Circle point minimizing distance-to-unoccupied outside the exclusion zones.
/// Throws NoContact when no circle point is within 2h of the complement, and
/// DistinctnessViolation when the only such points are excluded.
Point2 contact_point(const Grid& grid, const DistanceField& du, Point2 center, double radius,
                     const std::vector<Exclusion>& exclusions);

struct TwoContactGrowth {
    Growth growth;
    Point2 m;
    UnitDir zeta1{Point2{1, 0}};
    /// The half-chord start was infeasible and the family was entered at `restart_t`.
    bool restarted = false;
    double start_t = 0.0;
};

/// Balls through s0 and s0p with centers m + sqrt(t² − |s0 − m|²)·zeta1, zeta1 on the side of side_hint.
/// When the half-chord start is infeasible, `fallback_center` (a known feasible member of the family,
/// typically x1) is used instead; throws InconsistentTrace if that is infeasible too.
TwoContactGrowth grow_two_contact(const Grid& grid, const DistanceField& du, Point2 s0, Point2 s0p,
                                  Point2 side_hint, std::optional<Point2> fallback_center = std::nullopt);

struct NormalFan {
    Point2 s;
    double r = 0.0;
    std::size_t samples = 0;
    std::vector<std::size_t> arc;  // indices k of feasible directions angle 2πk/samples
    bool empty = true;
    UnitDir extremal_lo{Point2{1, 0}};
    UnitDir extremal_hi{Point2{1, 0}};
    std::size_t lo_index = 0, hi_index = 0;

    double step() const { return kTwoPi / static_cast<double>(samples); }
    UnitDir direction(std::size_t k) const { return UnitDir::from_angle(step() * static_cast<double>(k)); }
    /// Counterclockwise span from extremal_lo to extremal_hi.
    double span() const { return empty ? 0.0 : step() * static_cast<double>((hi_index + samples - lo_index) % samples); }
};

inline constexpr std::size_t kMinDirectionSamples = 64;

/// Directions u with distance-to-unoccupied(s + r·u) >= r − 2h. Extremes are the ends of the
/// shortest counterclockwise arc covering every feasible direction.
NormalFan normal_fan(const Grid& grid, const DistanceField& du, Point2 s, double r, std::size_t direction_samples);

struct ChainSlack {
    bool applicable = false;
    std::string reason;  // why not applicable
    std::array<double, 3> slack{};  // chain a ≤ ∠(ζ,ζ0) ≤ ∠(ζ,ξ0) − π ≤ π − a, a = acos(r0/2r)
    bool mirrored = false;          // chain tested with clockwise angles
    UnitDir zeta0{Point2{1, 0}};    // feasible direction first reached turning from ζ
    UnitDir xi0{Point2{1, 0}};      // and the last one
    double min_slack() const { return std::min({slack[0], slack[1], slack[2]}); }
};

/// ζ0 and ξ0 are the fan directions with the smallest and largest angle from ζ, in whichever
/// orientation (ccw or mirrored) gives the smaller total violation.
ChainSlack check_fan_chain(const NormalFan& fan, UnitDir zeta, double r0, double r);
/// Same chain on explicit extremal directions (ccw orientation only).
std::array<double, 3> fan_chain(UnitDir zeta, UnitDir zeta0, UnitDir xi0, double r0, double r);

struct ContactAnnex {
    Point2 s;
    UnitDir zeta{Point2{1, 0}};  // (x0 − s)/|x0 − s|
    double r0 = 0.0;             // |x0 − s|
    NormalFan fan;
    ChainSlack slack;
    bool extremal_signature = false;  // ∠(ζ0, ξ0) within two steps below π
};

struct Certificate {
    double rho = 0.0;
    Point2 x0, s0;
    double r0 = 0.0;
    UnitDir zeta{Point2{1, 0}};
    double r1 = 0.0;
    Point2 x1, s0p, m;
    UnitDir zeta1{Point2{1, 0}};
    double r2 = 0.0;
    Point2 x2, s0pp;
    std::array<double, 3> triangle_angles{};  // at s0, s0p, s0pp
    bool clipped = false;
    bool two_contact_restarted = false;
    double fan_radius = 0.0;
    std::size_t direction_samples = 0;
    std::array<ContactAnnex, 3> contacts;

    bool extremal_signature() const {
        return contacts[0].extremal_signature || contacts[1].extremal_signature || contacts[2].extremal_signature;
    }
};

struct TraceOutcome {
    bool covered = false;  // no witness: opening(grid, rho) equals the grid
    std::optional<Certificate> certificate;
};

inline constexpr double kContactSeparationCells = 4.0;

/// Full construction: witness, projection, one- and two-contact growth, third contact, fans.
/// `fan_radius` <= 0 means use interior_sphere_radius(grid). Stage errors are rethrown
/// with the stage name prefixed.
TraceOutcome build_certificate(const Grid& grid, double rho, std::size_t direction_samples = 1024,
                               double fan_radius = 0.0);

struct CertificateCheck {
    double identity_residual = 0.0;  // max over the x1, m, zeta1 ⊥ chord and x2 identities
    double angle_sum_residual = 0.0;
    double circle_residual = 0.0;    // max | |s − x2| − r2 | over the three contacts
    double min_separation = 0.0;
    bool monotone = false;           // r0 − 2h ≤ r1 ≤ r2 + 2h
    bool maximal = false;            // distance-to-unoccupied(x1) ≤ r1 + 2h, same for x2
    bool identities_ok = false, angle_sum_ok = false, on_circle_ok = false, separated_ok = false;

    bool ok() const { return identities_ok && angle_sum_ok && on_circle_ok && separated_ok && monotone && maximal; }
};

CertificateCheck check_certificate(const Grid& grid, const DistanceField& du, const Certificate& c);

} // namespace ballcover
