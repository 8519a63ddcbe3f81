#include "ballcover/morphology.hpp"

#include <algorithm>
#include <limits>

namespace ballcover {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lower envelope of the parabolas y = f[q] + (x - q)^2 over the q with finite f
// (Felzenszwalb–Huttenlocher). Writes min and argmin for x = 0..n-1; argmin is
// -1 when every f is infinite. v and z are scratch of size n and n+1.
void envelope(const double* f, int n, double* out, int* arg, std::vector<int>& v, std::vector<double>& z) {
    int k = -1;
    for (int q = 0; q < n; ++q) {
        if (f[q] == kInf) continue;
        const double fq = f[q] + static_cast<double>(q) * q;
        if (k < 0) {
            k = 0;
            v[0] = q;
            z[0] = -kInf;
            z[1] = kInf;
            continue;
        }
        double s;
        for (;;) {
            const int p = v[k];
            s = (fq - (f[p] + static_cast<double>(p) * p)) / (2.0 * (q - p));
            if (s <= z[k]) --k;
            else break;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kInf;
    }
    if (k < 0) {
        std::fill(out, out + n, kInf);
        std::fill(arg, arg + n, -1);
        return;
    }
    int j = 0;
    for (int x = 0; x < n; ++x) {
        while (z[j + 1] < x) ++j;
        const double dx = x - v[j];
        out[x] = dx * dx + f[v[j]];
        arg[x] = v[j];
    }
}

// Separable two-pass min over all cells c of |p - c|^2 + g(c), in cell units.
// Optionally reports the argmin cell index.
void separable_min(const std::vector<double>& g, int w, int h, std::vector<double>& out,
                   std::vector<std::int32_t>* feature) {
    const int n = std::max(w, h);
    std::vector<double> col(n), res(n);
    std::vector<int> arg(n), v(n);
    std::vector<double> z(n + 1);
    std::vector<double> pass1(g.size());
    std::vector<int> row_of(feature ? g.size() : 0);

    for (int i = 0; i < w; ++i) {
        for (int j = 0; j < h; ++j) col[j] = g[static_cast<std::size_t>(j) * w + i];
        envelope(col.data(), h, res.data(), arg.data(), v, z);
        for (int j = 0; j < h; ++j) {
            const std::size_t k = static_cast<std::size_t>(j) * w + i;
            pass1[k] = res[j];
            if (feature) row_of[k] = arg[j];
        }
    }
    out.resize(g.size());
    if (feature) feature->assign(g.size(), -1);
    for (int j = 0; j < h; ++j) {
        const std::size_t base = static_cast<std::size_t>(j) * w;
        envelope(pass1.data() + base, w, out.data() + base, arg.data(), v, z);
        if (feature)
            for (int i = 0; i < w; ++i)
                if (arg[i] >= 0)
                    (*feature)[base + i] =
                        static_cast<std::int32_t>(static_cast<std::size_t>(row_of[base + arg[i]]) * w + arg[i]);
    }
}

double cell_units_sq(double rho, double h) {
    const double t = rho / h;
    return t * t;
}

} // namespace

double DistanceField::distance_at(Point2 p) const {
    if (infinite) return kInf;
    const int ci = std::clamp(static_cast<int>(std::floor((p.x - origin.x) / h)), 0, width - 1);
    const int cj = std::clamp(static_cast<int>(std::floor((p.y - origin.y) / h)), 0, height - 1);
    double best = kInf;
    for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
            const int i = ci + di, j = cj + dj;
            if (i < 0 || j < 0 || i >= width || j >= height) continue;
            const std::int32_t f = feature[index(i, j)];
            if (f >= 0) best = std::min(best, distance(p, center(static_cast<std::size_t>(f))));
        }
    return best;
}

double DistanceField::max_value() const {
    if (infinite) return kInf;
    double m = 0.0;
    for (double s : sq) m = std::max(m, s);
    return std::sqrt(m) * h;
}

DistanceField edt(const Grid& grid, Polarity polarity) {
    DistanceField d;
    d.width = grid.width();
    d.height = grid.height();
    d.h = grid.spacing();
    d.origin = grid.origin();
    d.polarity = polarity;
    const bool want = polarity == Polarity::ToOccupied;
    std::vector<double> g(grid.size());
    bool any = false;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const bool target = grid.occupied(k) == want;
        g[k] = target ? 0.0 : kInf;
        any = any || target;
    }
    if (!any) {
        d.infinite = true;
        d.sq.assign(grid.size(), kInf);
        d.feature.assign(grid.size(), -1);
        return d;
    }
    separable_min(g, d.width, d.height, d.sq, &d.feature);
    return d;
}

Grid erode(const Grid& grid, double rho) {
    if (rho < 0) throw Error(ErrorKind::InvalidArgument, "rho must be nonnegative");
    const DistanceField d = edt(grid, Polarity::ToUnoccupied);
    const double t = cell_units_sq(rho, grid.spacing());
    std::vector<std::uint8_t> out(grid.size(), 0);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = grid.occupied(k) && d.sq[k] > t;
    return grid.with_occupancy(std::move(out));
}

Grid dilate(const Grid& grid, double rho) {
    if (rho < 0) throw Error(ErrorKind::InvalidArgument, "rho must be nonnegative");
    const DistanceField d = edt(grid, Polarity::ToOccupied);
    const double t = cell_units_sq(rho, grid.spacing());
    std::vector<std::uint8_t> out(grid.size(), 0);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = d.sq[k] <= t;
    return grid.with_occupancy(std::move(out));
}

Grid opening(const Grid& grid, const DistanceField& du, double rho) {
    if (rho < 0) throw Error(ErrorKind::InvalidArgument, "rho must be nonnegative");
    if (du.infinite) return grid;  // nothing to avoid: every ball fits
    const double t = cell_units_sq(rho, grid.spacing());
    // Reverse transform: p is covered iff min_c |p - c|^2 - D(c)^2 < 0 over kept centers.
    std::vector<double> g(grid.size());
    bool any = false;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const bool keep = grid.occupied(k) && du.sq[k] > t;
        g[k] = keep ? -du.sq[k] : kInf;
        any = any || keep;
    }
    std::vector<std::uint8_t> out(grid.size(), 0);
    if (any) {
        std::vector<double> m;
        separable_min(g, grid.width(), grid.height(), m, nullptr);
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = m[k] < 0.0;
    }
    return grid.with_occupancy(std::move(out));
}

Grid opening(const Grid& grid, double rho) {
    return opening(grid, edt(grid, Polarity::ToUnoccupied), rho);
}

namespace {

template <class Pred>
RadiusEstimate bisect(double upper, Pred&& holds) {
    RadiusEstimate e;
    e.lo = 0.0;
    e.hi = upper;
    for (int it = 0; it < kBisectionIterations; ++it) {
        const double mid = 0.5 * (e.lo + e.hi);
        if (holds(mid)) e.lo = mid;
        else e.hi = mid;
    }
    e.value = 0.5 * (e.lo + e.hi);
    return e;
}

double bisection_upper(const DistanceField& du, const Grid& grid) {
    // With no unoccupied cell the opening never changes; the grid extent caps any radius.
    if (du.infinite) return std::hypot(grid.width(), grid.height()) * grid.spacing();
    return du.max_value();
}

// Occupied cells outside the opening and deeper than the 2h band.
bool band_only_loss(const Grid& grid, const Grid& open, const DistanceField& du) {
    for (std::size_t k = 0; k < grid.size(); ++k)
        if (grid.occupied(k) && !open.occupied(k) && du.sq[k] > 4.0) return false;
    return true;
}

} // namespace

RadiusEstimate interior_sphere_radius(const Grid& grid, const DistanceField& du) {
    const BoundarySet b = boundary_cells(grid);
    if (b.cells.empty()) throw Error(ErrorKind::Undefined, "grid has no boundary cell");
    std::vector<std::size_t> idx;
    idx.reserve(b.cells.size());
    for (CellIndex c : b.cells) idx.push_back(grid.index(c.i, c.j));
    return bisect(bisection_upper(du, grid), [&](double r) {
        const Grid open = opening(grid, du, r);
        return std::all_of(idx.begin(), idx.end(), [&](std::size_t k) { return open.occupied(k); });
    });
}

RadiusEstimate interior_sphere_radius(const Grid& grid) {
    return interior_sphere_radius(grid, edt(grid, Polarity::ToUnoccupied));
}

RadiusEstimate ball_union_radius(const Grid& grid, const DistanceField& du) {
    if (boundary_cells(grid).cells.empty()) throw Error(ErrorKind::Undefined, "grid has no boundary cell");
    return bisect(bisection_upper(du, grid),
                  [&](double rho) { return band_only_loss(grid, opening(grid, du, rho), du); });
}

RadiusEstimate ball_union_radius(const Grid& grid) {
    return ball_union_radius(grid, edt(grid, Polarity::ToUnoccupied));
}

std::optional<Point2> find_witness(const Grid& grid, const DistanceField& du, double rho) {
    if (!(rho > 0.0)) return std::nullopt;
    const Grid open = opening(grid, du, rho);
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < grid.size(); ++k)
        if (grid.occupied(k) && !open.occupied(k) && du.sq[k] > 4.0 && (!best || du.sq[k] > du.sq[*best]))
            best = k;
    if (!best) return std::nullopt;
    return grid.center(*best);
}

std::optional<Point2> find_witness(const Grid& grid, double rho) {
    return find_witness(grid, edt(grid, Polarity::ToUnoccupied), rho);
}

std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotApplicable: return "not-applicable";
    }
    return "?";
}

VerificationReport verify_theorem(const Grid& grid, std::string shape_id, double tolerance_c) {
    if (!(tolerance_c >= 1.0)) throw Error(ErrorKind::InvalidArgument, "tolerance constant must be >= 1");
    const DistanceField du = edt(grid, Polarity::ToUnoccupied);
    VerificationReport rep;
    rep.shape_id = std::move(shape_id);
    rep.h = grid.spacing();
    rep.bound = 1.0 / std::sqrt(3.0);
    rep.tolerance = tolerance_c * rep.h;
    rep.r_max = interior_sphere_radius(grid, du);
    rep.rho_star = ball_union_radius(grid, du);
    rep.ratio = rep.r_max.value > 0 ? rep.rho_star.value / rep.r_max.value : 0.0;
    if (rep.r_max.value <= rep.tolerance) {
        rep.verdict = Verdict::NotApplicable;
        return rep;
    }
    const double target = rep.r_max.value * rep.bound - rep.tolerance;
    if (rep.rho_star.value >= target) {
        rep.verdict = Verdict::Pass;
    } else {
        rep.verdict = Verdict::Fail;
        rep.uncovered_witness = find_witness(grid, du, target);
    }
    return rep;
}

} // namespace ballcover
