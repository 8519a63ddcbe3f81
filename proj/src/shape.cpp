#include "ballcover/shape.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace ballcover {

// ---------------------------------------------------------------- ShapeSpec

ShapeSpec ShapeSpec::disk(Point2 center, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius) || !std::isfinite(center.x) || !std::isfinite(center.y))
        throw Error(ErrorKind::InvalidArgument, "disk radius must be positive and finite");
    return ShapeSpec(Kind::Disk, center, radius, {});
}

ShapeSpec ShapeSpec::half_plane(Point2 normal, double offset) {
    const double n = norm(normal);
    if (!(std::abs(n - 1.0) <= 1e-9) || !std::isfinite(offset))
        throw Error(ErrorKind::InvalidArgument, "half-plane normal must be unit length");
    // Already-normalized input is kept bit-for-bit so that format/parse round-trips.
    const Point2 u = std::abs(n - 1.0) <= 4e-16 ? normal : (1.0 / n) * normal;
    return ShapeSpec(Kind::HalfPlane, u, offset, {});
}

ShapeSpec ShapeSpec::unite(std::vector<ShapeSpec> children) {
    if (children.empty()) throw Error(ErrorKind::InvalidArgument, "union needs at least one child");
    return ShapeSpec(Kind::Union, {}, 0.0, std::move(children));
}

ShapeSpec ShapeSpec::intersect(std::vector<ShapeSpec> children) {
    if (children.empty()) throw Error(ErrorKind::InvalidArgument, "intersection needs at least one child");
    return ShapeSpec(Kind::Intersect, {}, 0.0, std::move(children));
}

ShapeSpec ShapeSpec::complement(ShapeSpec child) {
    std::vector<ShapeSpec> c;
    c.push_back(std::move(child));
    return ShapeSpec(Kind::Complement, {}, 0.0, std::move(c));
}

bool ShapeSpec::contains(Point2 p) const {
    switch (kind_) {
    case Kind::Disk: {
        const Point2 d = p - point_;
        return dot(d, d) <= scalar_ * scalar_;
    }
    case Kind::HalfPlane: return dot(point_, p) <= scalar_;
    case Kind::Union:
        return std::any_of(children_.begin(), children_.end(), [&](const ShapeSpec& c) { return c.contains(p); });
    case Kind::Intersect:
        return std::all_of(children_.begin(), children_.end(), [&](const ShapeSpec& c) { return c.contains(p); });
    case Kind::Complement: return !children_.front().contains(p);
    }
    return false;
}

namespace {

constexpr double kHuge = 1e6;

using Polygon = std::vector<Point2>;

Polygon clip(const Polygon& poly, Point2 n, double c) {
    Polygon out;
    for (std::size_t k = 0; k < poly.size(); ++k) {
        const Point2 a = poly[k], b = poly[(k + 1) % poly.size()];
        const double da = dot(n, a) - c, db = dot(n, b) - c;
        if (da <= 0) out.push_back(a);
        if ((da < 0 && db > 0) || (da > 0 && db < 0)) out.push_back(a + (da / (da - db)) * (b - a));
    }
    return out;
}

std::optional<BBox> box_of(const Polygon& poly) {
    if (poly.empty()) return BBox{0, 0, 0, 0};
    BBox b{poly[0].x, poly[0].y, poly[0].x, poly[0].y};
    for (const Point2& p : poly) {
        b.xmin = std::min(b.xmin, p.x);
        b.ymin = std::min(b.ymin, p.y);
        b.xmax = std::max(b.xmax, p.x);
        b.ymax = std::max(b.ymax, p.y);
    }
    if (b.xmin <= -0.5 * kHuge || b.ymin <= -0.5 * kHuge || b.xmax >= 0.5 * kHuge || b.ymax >= 0.5 * kHuge)
        return std::nullopt;
    return b;
}

} // namespace

std::optional<BBox> ShapeSpec::bounds() const {
    switch (kind_) {
    case Kind::Disk:
        return BBox{point_.x - scalar_, point_.y - scalar_, point_.x + scalar_, point_.y + scalar_};
    case Kind::HalfPlane:
    case Kind::Complement: return std::nullopt;
    case Kind::Union: {
        std::optional<BBox> acc;
        for (const ShapeSpec& c : children_) {
            auto b = c.bounds();
            if (!b) return std::nullopt;
            if (b->empty()) continue;
            if (!acc) acc = *b;
            else acc = BBox{std::min(acc->xmin, b->xmin), std::min(acc->ymin, b->ymin),
                            std::max(acc->xmax, b->xmax), std::max(acc->ymax, b->ymax)};
        }
        return acc ? acc : BBox{0, 0, 0, 0};
    }
    case Kind::Intersect: {
        Polygon poly{{-kHuge, -kHuge}, {kHuge, -kHuge}, {kHuge, kHuge}, {-kHuge, kHuge}};
        for (const ShapeSpec& c : children_) {
            if (c.kind() == Kind::HalfPlane) {
                poly = clip(poly, c.normal(), c.offset());
            } else if (auto b = c.bounds()) {
                poly = clip(poly, {1, 0}, b->xmax);
                poly = clip(poly, {-1, 0}, -b->xmin);
                poly = clip(poly, {0, 1}, b->ymax);
                poly = clip(poly, {0, -1}, -b->ymin);
            }
            if (poly.empty()) break;
        }
        return box_of(poly);
    }
    }
    return std::nullopt;
}

Membership evaluate_membership(const ShapeSpec& spec, Point2 p) {
    return spec.contains(p) ? Membership::Inside : Membership::Outside;
}

// --------------------------------------------------------------------- Grid

Grid::Grid(int width, int height, double h, Point2 origin)
    : width_(width), height_(height), h_(h), origin_(origin) {
    if (width < 1 || height < 1 || !(h > 0.0))
        throw Error(ErrorKind::InvalidArgument, "grid needs positive dimensions and spacing");
    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (n > kMaxCells) throw Error(ErrorKind::Resource, "grid exceeds the cell limit");
    cells_.assign(n, 0);
}

CellIndex Grid::cell_of(Point2 p) const {
    const int i = static_cast<int>(std::floor((p.x - origin_.x) / h_));
    const int j = static_cast<int>(std::floor((p.y - origin_.y) / h_));
    return {std::clamp(i, 0, width_ - 1), std::clamp(j, 0, height_ - 1)};
}

std::size_t Grid::count() const { return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), 1)); }
bool Grid::any_occupied() const { return std::find(cells_.begin(), cells_.end(), 1) != cells_.end(); }
bool Grid::any_unoccupied() const { return std::find(cells_.begin(), cells_.end(), 0) != cells_.end(); }

Grid Grid::complemented() const {
    Grid g = *this;
    for (auto& c : g.cells_) c = c ? 0 : 1;
    return g;
}

Grid Grid::with_occupancy(std::vector<std::uint8_t> cells) const {
    if (cells.size() != cells_.size()) throw Error(ErrorKind::InvalidArgument, "occupancy size mismatch");
    Grid g = *this;
    g.cells_ = std::move(cells);
    return g;
}

bool Grid::subset_of(const Grid& other) const {
    if (other.size() != size()) return false;
    for (std::size_t k = 0; k < cells_.size(); ++k)
        if (cells_[k] && !other.cells_[k]) return false;
    return true;
}

Grid rasterize(const ShapeSpec& spec, const BBox& bbox, double h) {
    if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "spacing must be positive");
    if (bbox.empty()) throw Error(ErrorKind::InvalidArgument, "empty bounding box");
    const double wx = std::ceil(bbox.width() / h - 1e-9);
    const double wy = std::ceil(bbox.height() / h - 1e-9);
    if (wx * wy > static_cast<double>(kMaxCells))
        throw Error(ErrorKind::Resource, "rasterization would exceed 1e8 cells");
    Grid g(std::max(1, static_cast<int>(wx)), std::max(1, static_cast<int>(wy)), h, {bbox.xmin, bbox.ymin});
    for (int j = 0; j < g.height(); ++j)
        for (int i = 0; i < g.width(); ++i)
            if (spec.contains(g.center(i, j))) g.set(i, j, true);
    return g;
}

BoundarySet boundary_cells(const Grid& g) {
    BoundarySet out;
    const int w = g.width(), h = g.height();
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < w; ++i) {
            if (!g.occupied(i, j)) continue;
            if (i == 0 || j == 0 || i == w - 1 || j == h - 1) out.clipped = true;
            const bool edge = (i > 0 && !g.occupied(i - 1, j)) || (i + 1 < w && !g.occupied(i + 1, j)) ||
                              (j > 0 && !g.occupied(i, j - 1)) || (j + 1 < h && !g.occupied(i, j + 1));
            if (edge) {
                out.cells.push_back({i, j});
                out.centers.push_back(g.center(i, j));
            }
        }
    return out;
}

// ------------------------------------------------------------------ parsing

namespace {

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::string_view peek() {
        skip();
        if (pos_ >= text_.size()) return {};
        const char c = text_[pos_];
        if (c == '{' || c == '}') return text_.substr(pos_, 1);
        std::size_t end = pos_;
        while (end < text_.size() && !std::isspace(static_cast<unsigned char>(text_[end])) && text_[end] != '{' &&
               text_[end] != '}' && text_[end] != '#')
            ++end;
        return text_.substr(pos_, end - pos_);
    }

    std::string_view next() {
        std::string_view t = peek();
        pos_ += t.size();
        return t;
    }

    double number() {
        const std::string_view t = next();
        double v = 0.0;
        const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
        if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size() || !std::isfinite(v))
            fail("expected a number, got '" + std::string(t) + "'");
        return v;
    }

    void expect(std::string_view tok) {
        const std::string_view t = next();
        if (t != tok) fail("expected '" + std::string(tok) + "', got '" + std::string(t) + "'");
    }

    [[noreturn]] void fail(const std::string& msg) const {
        std::size_t line = 1 + static_cast<std::size_t>(std::count(text_.begin(), text_.begin() + pos_, '\n'));
        throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + msg);
    }

private:
    void skip() {
        while (pos_ < text_.size()) {
            if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            } else if (text_[pos_] == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

ShapeSpec parse_expr(Lexer& lx, int depth) {
    if (depth > 256) lx.fail("nesting too deep");
    const std::string_view word = lx.next();
    try {
        if (word == "disk") {
            const double cx = lx.number(), cy = lx.number(), r = lx.number();
            return ShapeSpec::disk({cx, cy}, r);
        }
        if (word == "halfplane") {
            const double nx = lx.number(), ny = lx.number(), c = lx.number();
            return ShapeSpec::half_plane({nx, ny}, c);
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Parse) throw;
        lx.fail(e.what());
    }
    if (word == "union" || word == "intersect" || word == "complement") {
        lx.expect("{");
        std::vector<ShapeSpec> kids;
        while (lx.peek() != "}") {
            if (lx.peek().empty()) lx.fail("unterminated '" + std::string(word) + "{'");
            kids.push_back(parse_expr(lx, depth + 1));
        }
        lx.expect("}");
        if (kids.empty()) lx.fail(std::string(word) + " needs at least one child");
        if (word == "union") return ShapeSpec::unite(std::move(kids));
        if (word == "intersect") return ShapeSpec::intersect(std::move(kids));
        if (kids.size() != 1) lx.fail("complement takes exactly one child");
        return ShapeSpec::complement(std::move(kids.front()));
    }
    lx.fail(word.empty() ? "unexpected end of input" : "unknown token '" + std::string(word) + "'");
}

void format_into(const ShapeSpec& s, std::string& out, int indent) {
    char buf[160];
    out.append(static_cast<std::size_t>(indent) * 2, ' ');
    switch (s.kind()) {
    case ShapeSpec::Kind::Disk:
        std::snprintf(buf, sizeof buf, "disk %.17g %.17g %.17g\n", s.center().x, s.center().y, s.radius());
        out += buf;
        return;
    case ShapeSpec::Kind::HalfPlane:
        std::snprintf(buf, sizeof buf, "halfplane %.17g %.17g %.17g\n", s.normal().x, s.normal().y, s.offset());
        out += buf;
        return;
    case ShapeSpec::Kind::Union: out += "union{\n"; break;
    case ShapeSpec::Kind::Intersect: out += "intersect{\n"; break;
    case ShapeSpec::Kind::Complement: out += "complement{\n"; break;
    }
    for (const ShapeSpec& c : s.children()) format_into(c, out, indent + 1);
    out.append(static_cast<std::size_t>(indent) * 2, ' ');
    out += "}\n";
}

} // namespace

ParsedShape parse_shape(std::string_view text) {
    Lexer lx(text);
    std::optional<BBox> bbox;
    std::optional<ShapeSpec> spec;
    while (!lx.peek().empty()) {
        if (lx.peek() == "bbox") {
            lx.next();
            if (bbox) lx.fail("duplicate bbox");
            BBox b{lx.number(), lx.number(), lx.number(), lx.number()};
            if (b.empty()) lx.fail("bbox must have xmax > xmin and ymax > ymin");
            bbox = b;
            continue;
        }
        if (spec) lx.fail("more than one top-level shape; wrap them in union{...}");
        spec = parse_expr(lx, 0);
    }
    if (!spec) throw Error(ErrorKind::Parse, "no shape in input");
    return {std::move(*spec), bbox};
}

ParsedShape load_shape_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot open shape file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_shape(ss.str());
}

std::string format_shape(const ShapeSpec& spec) {
    std::string out;
    format_into(spec, out, 0);
    return out;
}

} // namespace ballcover
