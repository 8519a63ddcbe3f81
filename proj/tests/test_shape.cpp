#include <doctest.h>

#include <cmath>
#include <random>

#include "ballcover/report.hpp"
#include "ballcover/shape.hpp"

using namespace ballcover;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::InvalidArgument;
}

} // namespace

TEST_CASE("factories validate their arguments") {
    CHECK(kind_of([] { ShapeSpec::disk({0, 0}, 0.0); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { ShapeSpec::disk({0, 0}, -1.0); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { ShapeSpec::disk({NAN, 0}, 1.0); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { ShapeSpec::half_plane({1, 1}, 0.0); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { ShapeSpec::unite({}); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { ShapeSpec::intersect({}); }) == ErrorKind::InvalidArgument);
    const auto hp = ShapeSpec::half_plane({1, 1e-10}, 0.5);
    CHECK(norm(hp.normal()) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("membership of primitives is closed") {
    const auto d = ShapeSpec::disk({1, 2}, 0.5);
    CHECK(d.contains({1.5, 2}));
    CHECK(!d.contains({1.5 + 1e-12, 2}));
    const auto hp = ShapeSpec::half_plane({0, 1}, 1.0);
    CHECK(hp.contains({100, 1}));
    CHECK(!hp.contains({0, 1.000001}));
    const auto c = ShapeSpec::complement(d);
    CHECK(!c.contains({1, 2}));
    CHECK(c.contains({3, 3}));
    CHECK(evaluate_membership(d, {1, 2}) == Membership::Inside);
}

TEST_CASE("complement of a union equals intersection of complements on random points") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2, 2);
    const auto a = ShapeSpec::disk({0.3, 0}, 0.8), b = ShapeSpec::disk({-0.4, 0.2}, 0.6);
    const auto hp = ShapeSpec::half_plane({0.6, 0.8}, 0.1);
    const auto lhs = ShapeSpec::complement(ShapeSpec::unite({a, b, hp}));
    const auto rhs = ShapeSpec::intersect(
        {ShapeSpec::complement(a), ShapeSpec::complement(b), ShapeSpec::complement(hp)});
    for (int k = 0; k < 20000; ++k) {
        const Point2 p{u(rng), u(rng)};
        REQUIRE(lhs.contains(p) == rhs.contains(p));
        REQUIRE(ShapeSpec::unite({a, b}).contains(p) == (a.contains(p) || b.contains(p)));
    }
}

TEST_CASE("bounds") {
    const auto b = ShapeSpec::disk({1, -1}, 2).bounds();
    REQUIRE(b);
    CHECK(b->xmin == -1);
    CHECK(b->ymax == 1);
    CHECK(!ShapeSpec::half_plane({1, 0}, 0).bounds());
    CHECK(!ShapeSpec::complement(ShapeSpec::disk({0, 0}, 1)).bounds());
    const auto sq = ShapeSpec::intersect({ShapeSpec::half_plane({1, 0}, 1), ShapeSpec::half_plane({-1, 0}, 1),
                                          ShapeSpec::half_plane({0, 1}, 1), ShapeSpec::half_plane({0, -1}, 1)})
                        .bounds();
    REQUIRE(sq);
    CHECK(sq->xmin == doctest::Approx(-1));
    CHECK(sq->xmax == doctest::Approx(1));
    CHECK(sq->ymin == doctest::Approx(-1));
    CHECK(sq->ymax == doctest::Approx(1));
    const auto cut = ShapeSpec::intersect({ShapeSpec::disk({0, 0}, 1), ShapeSpec::half_plane({1, 0}, 0)}).bounds();
    REQUIRE(cut);
    CHECK(cut->xmax <= 1.0);
    CHECK(cut->ymin == doctest::Approx(-1));
}

TEST_CASE("auto_bbox pads and squares") {
    const BBox b = auto_bbox(stadium_shape(0.6, 1.2));
    CHECK(b.width() == doctest::Approx(b.height()));
    CHECK(b.xmin < -1.2);
    CHECK(b.xmax > 1.2);
    CHECK(kind_of([] { auto_bbox(ShapeSpec::half_plane({1, 0}, 0)); }) == ErrorKind::Precondition);
}

TEST_CASE("rasterized disk area within one percent") {
    const auto d = ShapeSpec::disk({0, 0}, 1);
    const double h = 2.4 / 256;
    const Grid g = rasterize(d, {-1.2, -1.2, 1.2, 1.2}, h);
    CHECK(g.width() == 256);
    CHECK(g.height() == 256);
    const double area = static_cast<double>(g.count()) * h * h;
    CHECK(std::abs(area - kPi) / kPi < 0.01);
    // Cell centers decide membership.
    for (std::size_t k = 0; k < g.size(); k += 97) CHECK(g.occupied(k) == d.contains(g.center(k)));
}

TEST_CASE("rasterize rejects bad input") {
    const auto d = ShapeSpec::disk({0, 0}, 1);
    CHECK(kind_of([&] { rasterize(d, {0, 0, 1, 1}, 0.0); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { rasterize(d, {0, 0, -1, 1}, 0.1); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { rasterize(d, {0, 0, 1e5, 1e5}, 1e-3); }) == ErrorKind::Resource);
}

TEST_CASE("grid helpers") {
    Grid g(4, 3, 0.5, {1, 1});
    CHECK(g.bounds().xmax == 3.0);
    CHECK(g.center(0, 0) == Point2{1.25, 1.25});
    CHECK(!g.any_occupied());
    g.set(2, 1, true);
    CHECK(g.count() == 1);
    CHECK(g.cell_of({2.3, 1.6}) == CellIndex{2, 1});
    CHECK(g.cell_of({-100, 100}) == CellIndex{0, 2});
    const Grid c = g.complemented();
    CHECK(c.count() == 11);
    CHECK(g.subset_of(c.complemented()));
    CHECK(!c.subset_of(g));
}

TEST_CASE("boundary of a rasterized disk lies within 2h of the circle") {
    const double h = 2.4 / 200;
    const Grid g = rasterize(ShapeSpec::disk({0, 0}, 1), {-1.2, -1.2, 1.2, 1.2}, h);
    const BoundarySet b = boundary_cells(g);
    CHECK(!b.clipped);
    REQUIRE(b.centers.size() > 100);
    for (Point2 p : b.centers) {
        CHECK(norm(p) <= 1.0);
        CHECK(norm(p) >= 1.0 - 2 * h);
    }
}

TEST_CASE("boundary clipped flag") {
    Grid g(5, 5, 1.0, {0, 0});
    for (int j = 0; j < 5; ++j)
        for (int i = 0; i < 5; ++i) g.set(i, j, true);
    BoundarySet b = boundary_cells(g);
    CHECK(b.cells.empty());
    CHECK(b.clipped);
    g.set(2, 2, false);
    b = boundary_cells(g);
    CHECK(b.cells.size() == 4);
}

TEST_CASE("parse shapes") {
    const ParsedShape p = parse_shape("# c\nbbox -2 -2 2 2\nunion{ disk 0 0 1 complement{ halfplane 1 0 0.5 } }\n");
    REQUIRE(p.bbox);
    CHECK(p.bbox->xmin == -2);
    CHECK(p.spec.kind() == ShapeSpec::Kind::Union);
    CHECK(p.spec.children().size() == 2);
    CHECK(p.spec.contains({0, 0}));
    CHECK(p.spec.contains({1.5, 0}));
    CHECK(!p.spec.contains({0, 1.5}));
}

TEST_CASE("parse errors carry kind Parse") {
    for (const char* bad : {"", "disk 0 0", "disk 0 zero 1", "union{ disk 0 0 1", "blob 1 2 3",
                            "complement{ disk 0 0 1 disk 1 1 1 }", "disk 0 0 1 disk 1 1 1", "bbox 0 0 1 1"}) {
        CAPTURE(bad);
        CHECK(kind_of([&] { parse_shape(bad); }) == ErrorKind::Parse);
    }
    CHECK(kind_of([] { parse_shape("disk 0 0 -1"); }) != ErrorKind::Resource);
    std::string deep;
    for (int i = 0; i < 300; ++i) deep += "union{ ";
    CHECK(kind_of([&] { parse_shape(deep); }) == ErrorKind::Parse);
    CHECK(kind_of([] { load_shape_file("/nonexistent/x.shape"); }) == ErrorKind::Parse);
}

TEST_CASE("format_shape round-trips exactly") {
    const ShapeSpec specs[] = {three_gap_shape(0.37), three_spike_shape(), stadium_shape(0.6, 1.2),
                               rounded_polygon({{-0.5, -0.3}, {0.7, -0.2}, {0.1, 0.9}}, 0.25)};
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (const auto& s : specs) {
        const std::string text = format_shape(s);
        const ParsedShape back = parse_shape(text);
        CHECK(format_shape(back.spec) == text);
        for (int k = 0; k < 2000; ++k) {
            const Point2 p{u(rng), u(rng)};
            REQUIRE(back.spec.contains(p) == s.contains(p));
        }
    }
}
