#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ballcover/geom.hpp"

namespace ballcover {

struct BBox {
    double xmin, ymin, xmax, ymax;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    bool empty() const { return !(xmax > xmin) || !(ymax > ymin); }
};

/// CSG tree over closed disks and closed half-planes {p : n·p ≤ offset}.
class ShapeSpec {
public:
    enum class Kind { Disk, HalfPlane, Union, Intersect, Complement };

    static ShapeSpec disk(Point2 center, double radius);
    /// `normal` must be unit length within 1e-9; it is renormalized.
    static ShapeSpec half_plane(Point2 normal, double offset);
    static ShapeSpec unite(std::vector<ShapeSpec> children);
    static ShapeSpec intersect(std::vector<ShapeSpec> children);
    static ShapeSpec complement(ShapeSpec child);

    Kind kind() const { return kind_; }
    Point2 center() const { return point_; }
    double radius() const { return scalar_; }
    Point2 normal() const { return point_; }
    double offset() const { return scalar_; }
    const std::vector<ShapeSpec>& children() const { return children_; }

    bool contains(Point2 p) const;

    /// Axis-aligned bounds of the set; nullopt when the set is unbounded.
    /// Conservative for intersections and complements.
    std::optional<BBox> bounds() const;

private:
    ShapeSpec(Kind k, Point2 p, double s, std::vector<ShapeSpec> c)
        : kind_(k), point_(p), scalar_(s), children_(std::move(c)) {}

    Kind kind_;
    Point2 point_;
    double scalar_;
    std::vector<ShapeSpec> children_;
};

enum class Membership { Inside, Outside };

Membership evaluate_membership(const ShapeSpec& spec, Point2 p);

struct CellIndex {
    int i = 0;
    int j = 0;
    friend bool operator==(CellIndex, CellIndex) = default;
};

/// Binary raster. Cell (i, j) covers [origin + (i, j)·h, origin + (i+1, j+1)·h)
/// and is sampled at its center. Row-major storage, j is the row.
class Grid {
public:
    Grid(int width, int height, double h, Point2 origin);

    int width() const { return width_; }
    int height() const { return height_; }
    double spacing() const { return h_; }
    Point2 origin() const { return origin_; }
    std::size_t size() const { return cells_.size(); }

    bool in_range(int i, int j) const { return i >= 0 && j >= 0 && i < width_ && j < height_; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * width_ + i; }
    bool occupied(int i, int j) const { return cells_[index(i, j)] != 0; }
    bool occupied(std::size_t k) const { return cells_[k] != 0; }
    void set(int i, int j, bool v) { cells_[index(i, j)] = v ? 1 : 0; }
    void set(std::size_t k, bool v) { cells_[k] = v ? 1 : 0; }

    Point2 center(int i, int j) const {
        return {origin_.x + (i + 0.5) * h_, origin_.y + (j + 0.5) * h_};
    }
    Point2 center(std::size_t k) const {
        return center(static_cast<int>(k % width_), static_cast<int>(k / width_));
    }
    /// Cell containing p, clamped into the grid.
    CellIndex cell_of(Point2 p) const;
    BBox bounds() const {
        return {origin_.x, origin_.y, origin_.x + width_ * h_, origin_.y + height_ * h_};
    }

    std::size_t count() const;
    bool any_occupied() const;
    bool any_unoccupied() const;

    Grid complemented() const;
    Grid with_occupancy(std::vector<std::uint8_t> cells) const;
    const std::vector<std::uint8_t>& cells() const { return cells_; }

    /// Same dimensions and spacing, and identical occupancy.
    friend bool operator==(const Grid& a, const Grid& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.h_ == b.h_ && a.cells_ == b.cells_;
    }
    /// Cellwise A ⊆ B.
    bool subset_of(const Grid& other) const;

private:
    int width_, height_;
    double h_;
    Point2 origin_;
    std::vector<std::uint8_t> cells_;
};

inline constexpr std::size_t kMaxCells = 100'000'000;

/// Occupied iff the cell center is inside the shape. Throws Resource above kMaxCells.
Grid rasterize(const ShapeSpec& spec, const BBox& bbox, double h);

struct BoundarySet {
    std::vector<CellIndex> cells;
    std::vector<Point2> centers;
    /// Some occupied cell touches the grid edge, so part of the boundary may be missing.
    bool clipped = false;
};

/// Occupied cells with an unoccupied 4-neighbor inside the grid.
BoundarySet boundary_cells(const Grid& grid);

struct ParsedShape {
    ShapeSpec spec;
    std::optional<BBox> bbox;
};

/// Text format:
///   disk cx cy r | halfplane nx ny c | union{...} | intersect{...} | complement{...}
/// plus an optional top-level `bbox xmin ymin xmax ymax` line and `#` comments.
ParsedShape parse_shape(std::string_view text);
ParsedShape load_shape_file(const std::string& path);
std::string format_shape(const ShapeSpec& spec);

} // namespace ballcover
