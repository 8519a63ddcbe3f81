#pragma once
// Brute-force references for the morphology code. Quadratic or worse; small grids only.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "ballcover/morphology.hpp"

namespace oracle {

using namespace ballcover;

inline double d2(const Grid& g, std::size_t a, std::size_t b) {
    const double dx = static_cast<double>(a % g.width()) - static_cast<double>(b % g.width());
    const double dy = static_cast<double>(a / g.width()) - static_cast<double>(b / g.width());
    return dx * dx + dy * dy;
}

/// Squared cell-unit distance from every cell to the nearest target cell.
inline std::vector<double> edt_sq(const Grid& g, bool target_occupied) {
    std::vector<double> out(g.size(), std::numeric_limits<double>::infinity());
    for (std::size_t a = 0; a < g.size(); ++a)
        for (std::size_t b = 0; b < g.size(); ++b)
            if (g.occupied(b) == target_occupied) out[a] = std::min(out[a], d2(g, a, b));
    return out;
}

inline double rho_sq(double rho, double h) { return (rho / h) * (rho / h); }

/// Closed ball of radius rho around each kept cell must stay inside the grid's occupied set.
inline Grid erode(const Grid& g, double rho) {
    const auto du = edt_sq(g, false);
    std::vector<std::uint8_t> c(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) c[k] = g.occupied(k) && du[k] > rho_sq(rho, g.spacing());
    return g.with_occupancy(c);
}

inline Grid dilate(const Grid& g, double rho) {
    const auto dn = edt_sq(g, true);
    std::vector<std::uint8_t> c(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) c[k] = dn[k] <= rho_sq(rho, g.spacing());
    return g.with_occupancy(c);
}

/// Explicit union of the open maximal balls whose radius exceeds rho.
inline Grid opening(const Grid& g, double rho) {
    const auto du = edt_sq(g, false);
    std::vector<std::uint8_t> c(g.size(), 0);
    const double r2 = rho_sq(rho, g.spacing());
    for (std::size_t b = 0; b < g.size(); ++b) {
        if (!g.occupied(b) || !(du[b] > r2)) continue;
        for (std::size_t a = 0; a < g.size(); ++a)
            if (d2(g, a, b) < du[b]) c[a] = 1;
    }
    return g.with_occupancy(c);
}

/// Random occupancy: a union of a few disks plus sparse salt and pepper, so both
/// smooth and ragged boundaries occur.
inline Grid random_grid(std::mt19937_64& rng, int max_side) {
    std::uniform_int_distribution<int> side(4, max_side);
    const int w = side(rng), ht = side(rng);
    Grid g(w, ht, 1.0, {0, 0});
    std::uniform_real_distribution<double> ux(0, w), uy(0, ht), ur(1, 0.4 * std::max(w, ht)), u01(0, 1);
    const int n = 1 + static_cast<int>(u01(rng) * 4);
    std::vector<std::array<double, 3>> disks;
    for (int k = 0; k < n; ++k) disks.push_back({ux(rng), uy(rng), ur(rng)});
    const double noise = u01(rng) * 0.05;
    for (int j = 0; j < ht; ++j)
        for (int i = 0; i < w; ++i) {
            bool in = false;
            for (const auto& d : disks) in |= (i + 0.5 - d[0]) * (i + 0.5 - d[0]) + (j + 0.5 - d[1]) * (j + 0.5 - d[1]) <= d[2] * d[2];
            if (u01(rng) < noise) in = !in;
            g.set(i, j, in);
        }
    return g;
}

/// Every cell center strictly within radius - slack of c is occupied (no EDT involved).
inline bool ball_inside(const Grid& g, Point2 c, double radius, double slack) {
    const double r = radius - slack;
    for (std::size_t k = 0; k < g.size(); ++k)
        if (!g.occupied(k) && distance(g.center(k), c) < r) return false;
    return true;
}

/// Distance from p to the nearest unoccupied cell center, by exhaustive scan.
inline double to_unoccupied(const Grid& g, Point2 p) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < g.size(); ++k)
        if (!g.occupied(k)) best = std::min(best, distance(g.center(k), p));
    return best;
}

} // namespace oracle
