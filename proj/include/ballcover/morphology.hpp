#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ballcover/shape.hpp"

namespace ballcover {

enum class Polarity { ToOccupied, ToUnoccupied };

/// Per-cell Euclidean distance to the nearest cell center of the target polarity.
/// Values are kept squared and in cell units, so they are exact integers.
struct DistanceField {
    int width = 0, height = 0;
    double h = 1.0;
    Point2 origin;
    Polarity polarity = Polarity::ToUnoccupied;
    std::vector<double> sq;              // +inf when the grid has no target cell
    std::vector<std::int32_t> feature;   // index of a nearest target cell, -1 if none
    bool infinite = false;

    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * width + i; }
    double at(int i, int j) const { return std::sqrt(sq[index(i, j)]) * h; }
    double at(std::size_t k) const { return std::sqrt(sq[k]) * h; }
    Point2 center(std::size_t k) const {
        return {origin.x + (static_cast<double>(k % width) + 0.5) * h,
                origin.y + (static_cast<double>(k / width) + 0.5) * h};
    }
    /// Distance from an arbitrary point to the nearest target center, taken over
    /// the features of the 3x3 cells around p (exact up to a sub-cell defect).
    double distance_at(Point2 p) const;
    double max_value() const;
};

/// Exact separable lower-envelope transform.
DistanceField edt(const Grid& grid, Polarity polarity);

/// Cells whose closed discrete ball of radius rho lies in the grid:
/// distance-to-unoccupied > rho.
Grid erode(const Grid& grid, double rho);
/// Cells within rho of an occupied cell.
Grid dilate(const Grid& grid, double rho);
/// Union of the maximal inscribed discrete balls B(c; D(c)) with D(c) > rho,
/// where D is the distance to the unoccupied centers and the balls are open.
/// Contains dilate(erode(grid, rho), rho), is anti-extensive, idempotent and
/// anti-monotone in rho.
Grid opening(const Grid& grid, double rho);
/// Same, reusing a precomputed distance-to-unoccupied field of `grid`.
Grid opening(const Grid& grid, const DistanceField& to_unoccupied, double rho);

struct RadiusEstimate {
    double value = 0.0;     // bracket midpoint
    double lo = 0.0, hi = 0.0;
    double bracket() const { return hi - lo; }
};

inline constexpr int kBisectionIterations = 40;

/// Largest r such that every boundary cell is covered by opening(grid, r).
RadiusEstimate interior_sphere_radius(const Grid& grid);
RadiusEstimate interior_sphere_radius(const Grid& grid, const DistanceField& to_unoccupied);

/// Largest rho such that opening(grid, rho) misses only cells within 2h of the complement.
RadiusEstimate ball_union_radius(const Grid& grid);
RadiusEstimate ball_union_radius(const Grid& grid, const DistanceField& to_unoccupied);

/// Deepest occupied cell missed by opening(grid, rho) outside the 2h boundary band.
std::optional<Point2> find_witness(const Grid& grid, double rho);
std::optional<Point2> find_witness(const Grid& grid, const DistanceField& to_unoccupied, double rho);

enum class Verdict { Pass, Fail, NotApplicable };
std::string_view to_string(Verdict v);

struct VerificationReport {
    std::string shape_id;
    double h = 0.0;
    RadiusEstimate r_max;
    RadiusEstimate rho_star;
    double ratio = 0.0;
    double bound = 0.0;
    double tolerance = 0.0;
    Verdict verdict = Verdict::NotApplicable;
    std::optional<Point2> uncovered_witness;
    bool pass() const { return verdict == Verdict::Pass; }
};

inline constexpr double kDefaultToleranceC = 4.0;

/// Throws Undefined when the grid has no boundary cell.
VerificationReport verify_theorem(const Grid& grid, std::string shape_id = {},
                                  double tolerance_c = kDefaultToleranceC);

} // namespace ballcover
