#include <cstdio>
#include <string>

#include "ballcover/report.hpp"

namespace ballcover {

namespace {

std::string f(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Physical coordinates inside a y-flipped group; the viewport is always 1000 units.
std::string open_svg(const BBox& b) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" viewBox=\"" + f(b.xmin) + " " +
           f(-b.ymax) + " " + f(b.width()) + " " + f(b.height()) + "\">\n<g transform=\"scale(1,-1)\">\n";
}

const char* kClose = "</g>\n</svg>\n";

// One subpath per horizontal run of occupied cells.
std::string layer(const Grid& g, const char* fill, double opacity) {
    std::string d;
    const double h = g.spacing();
    for (int j = 0; j < g.height(); ++j) {
        int i = 0;
        while (i < g.width()) {
            if (!g.occupied(i, j)) {
                ++i;
                continue;
            }
            const int start = i;
            while (i < g.width() && g.occupied(i, j)) ++i;
            const double x0 = g.origin().x + start * h, x1 = g.origin().x + i * h;
            const double y0 = g.origin().y + j * h, y1 = y0 + h;
            d += "M" + f(x0) + " " + f(y0) + "H" + f(x1) + "V" + f(y1) + "H" + f(x0) + "Z";
        }
    }
    return "<path fill=\"" + std::string(fill) + "\" fill-opacity=\"" + f(opacity) + "\" d=\"" + d + "\"/>\n";
}

std::string circle(Point2 c, double r, const char* stroke, const char* fill = "none") {
    return "<circle cx=\"" + f(c.x) + "\" cy=\"" + f(c.y) + "\" r=\"" + f(r) + "\" fill=\"" + fill + "\" stroke=\"" +
           stroke + "\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"/>\n";
}

std::string segment(Point2 a, Point2 b, const char* stroke) {
    return "<line x1=\"" + f(a.x) + "\" y1=\"" + f(a.y) + "\" x2=\"" + f(b.x) + "\" y2=\"" + f(b.y) + "\" stroke=\"" +
           stroke + "\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"/>\n";
}

} // namespace

std::string svg_verify(const Grid& grid, const VerificationReport& r) {
    std::string s = open_svg(grid.bounds());
    s += layer(grid, "#bbbbbb", 1.0);
    const double rho = r.r_max.value * r.bound;
    const double er = std::max(0.0, rho - r.tolerance);
    s += layer(erode(grid, er), "#666666", 1.0);
    s += layer(opening(grid, rho), "#3366cc", 0.35);
    if (r.uncovered_witness) s += circle(*r.uncovered_witness, 3 * grid.spacing(), "#cc0000", "#cc0000");
    return s + kClose;
}

std::string svg_trace(const Grid& grid, const Certificate& c) {
    const double h = grid.spacing();
    std::string s = open_svg(grid.bounds());
    s += layer(grid, "#dddddd", 1.0);
    s += circle(c.x1, c.r1, "#3366cc");
    s += circle(c.x2, c.r2, "#009944");
    s += segment(c.s0, c.s0p, "#000000") + segment(c.s0p, c.s0pp, "#000000") + segment(c.s0pp, c.s0, "#000000");
    s += circle(c.x0, 2 * h, "#cc0000", "#cc0000");
    for (const ContactAnnex& a : c.contacts) {
        s += circle(a.s, 2 * h, "#000000", "#000000");
        if (a.fan.empty) continue;
        // Extremal rays and the counterclockwise arc between them.
        const double len = 0.25 * a.fan.r;
        const Point2 lo = a.s + len * a.fan.extremal_lo.vec(), hi = a.s + len * a.fan.extremal_hi.vec();
        s += segment(a.s, lo, "#aa6600") + segment(a.s, hi, "#aa6600");
        const int large = a.fan.span() > kPi ? 1 : 0;
        s += "<path fill=\"none\" stroke=\"#aa6600\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\" d=\"M" +
             f(lo.x) + " " + f(lo.y) + "A" + f(len) + " " + f(len) + " 0 " + std::to_string(large) + " 1 " + f(hi.x) +
             " " + f(hi.y) + "\"/>\n";
    }
    return s + kClose;
}

} // namespace ballcover
