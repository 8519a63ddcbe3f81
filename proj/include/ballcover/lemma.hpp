#pragma once

#include <cstdint>
#include <vector>

#include "ballcover/geom.hpp"

namespace ballcover::lemma {

/// The three-circle configuration: A on a circle of radius r0 about the
/// origin O, B and C mirror images about the y-axis at radius r, and the
/// circles S_A, S_B, S_C all passing through O.
struct LemmaConfig {
    double r = 0.0;
    double r0 = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    Point2 A, B, C, O, D, E, F;
    Circle S_A{{0, 0}, 1}, S_B{{0, 0}, 1}, S_C{{0, 0}, 1};
    OrientedAngle angle_EOD;
    OrientedAngle angle_CAB;
};

/// Throws Constraint when a hypothesis fails and Degenerate when a circle
/// pair is tangent at O (or B and C collapse).
LemmaConfig build_config(double r, double r0, double alpha, double beta);

/// Law of cosines with the side lengths expanded in closed form.
double cos_angle_CAB(const LemmaConfig& config);

/// |∠EOD − (π − ∠CAB)| with both angles measured on the constructed points.
double check_angle_identity(const LemmaConfig& config);

struct BoundCheck {
    bool pass = false;
    double slack = 0.0;      ///< π/3 − ∠EOD
    double cos_slack = 0.0;  ///< (r0²−r²)/(r0²+r²) − cos∠CAB
};

/// Requires r0 < r/√3 (Precondition otherwise).
BoundCheck check_angle_bound(const LemmaConfig& config);

struct OutsideArcReport {
    OrientedAngle max_angle;   ///< largest ∠NOM over sampled pairs, in [0, π]
    std::size_t outside_count = 0;
    bool empty = true;
};

/// Samples S_A uniformly in arc length starting at O and returns the largest
/// angle at O subtended by two samples strictly outside S_B and S_C.
OutsideArcReport max_angle_outside(const LemmaConfig& config, std::size_t sample_count);

struct SweepRow {
    double r, r0, alpha, beta;
    double angle_CAB, angle_EOD;
    double identity_residual;
    double slack;
    double cos_slack;
};

struct LemmaSweepReport {
    std::size_t trials = 0;
    std::size_t rejected = 0;
    double max_identity_residual = 0.0;
    double max_angle_EOD = 0.0;
    std::size_t violations = 0;
    std::vector<SweepRow> rows;
};

inline constexpr double kAngleTol = 1e-9;

/// Draws hypothesis tuples with r = 1 and r0 < r/√3, rejecting empty ranges
/// and degenerate draws, until `trials` configurations have been checked.
LemmaSweepReport run_sweep(std::size_t trials, std::uint64_t seed);

/// Checks one fixed tuple; the row counts as a violation when any check fails.
LemmaSweepReport run_fixed(double r, double r0, double alpha, double beta);

} // namespace ballcover::lemma
