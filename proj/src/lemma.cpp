#include "ballcover/lemma.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace ballcover::lemma {

namespace {

constexpr double kInvSqrt3 = 0.57735026918962576451;

void require(bool ok, const std::string& failed) {
    if (!ok) throw Error(ErrorKind::Constraint, "hypothesis violated: " + failed);
}

// Largest unsigned angle between any two of the given polar angles.
double max_pairwise_angle(std::vector<double> phis) {
    if (phis.size() < 2) return 0.0;
    std::sort(phis.begin(), phis.end());
    double largest_gap = kTwoPi - (phis.back() - phis.front());
    for (std::size_t i = 1; i < phis.size(); ++i)
        largest_gap = std::max(largest_gap, phis[i] - phis[i - 1]);
    const double span = kTwoPi - largest_gap;
    if (span <= kPi) return span;
    double best = 0.0;
    for (std::size_t i = 0; i < phis.size(); ++i)
        for (std::size_t j = i + 1; j < phis.size(); ++j) {
            const double d = phis[j] - phis[i];
            best = std::max(best, std::min(d, kTwoPi - d));
        }
    return best;
}

SweepRow evaluate(const LemmaConfig& cfg, LemmaSweepReport& report) {
    SweepRow row{};
    row.r = cfg.r;
    row.r0 = cfg.r0;
    row.alpha = cfg.alpha;
    row.beta = cfg.beta;
    row.angle_CAB = cfg.angle_CAB.value();
    row.angle_EOD = cfg.angle_EOD.value();
    row.identity_residual = check_angle_identity(cfg);
    bool ok = row.identity_residual < kAngleTol;
    if (cfg.r0 < cfg.r * kInvSqrt3) {
        const BoundCheck b = check_angle_bound(cfg);
        row.slack = b.slack;
        row.cos_slack = b.cos_slack;
        ok = ok && b.pass;
    } else {
        row.slack = kPi / 3.0 - row.angle_EOD;
        row.cos_slack = (cfg.r0 * cfg.r0 - cfg.r * cfg.r) / (cfg.r0 * cfg.r0 + cfg.r * cfg.r) -
                        cos_angle_CAB(cfg);
    }
    ++report.trials;
    report.max_identity_residual = std::max(report.max_identity_residual, row.identity_residual);
    report.max_angle_EOD = std::max(report.max_angle_EOD, row.angle_EOD);
    if (!ok) ++report.violations;
    return row;
}

} // namespace

LemmaConfig build_config(double r, double r0, double alpha, double beta) {
    require(r > 0.0, "r > 0");
    require(r0 > 0.0, "r0 > 0");
    require(alpha > 0.0 && alpha < kPi, "alpha in (0, pi)");
    require(beta >= 0.0, "0 <= beta");
    require(beta <= alpha, "beta <= alpha");
    require(alpha <= kPi - beta, "alpha <= pi - beta");
    const double lhs = r0 * std::sin(alpha);
    const double rhs = r * std::sin(beta);
    require(rhs >= 0.0, "r sin(beta) >= 0");
    require(lhs >= rhs - 1e-12 * std::max(r, r0), "r0 sin(alpha) >= r sin(beta)");

    LemmaConfig c;
    c.r = r;
    c.r0 = r0;
    c.alpha = alpha;
    c.beta = beta;
    c.O = {0.0, 0.0};
    c.A = {r0 * std::cos(alpha), r0 * std::sin(alpha)};
    c.B = {r * std::cos(beta), r * std::sin(beta)};
    c.C = {-r * std::cos(beta), r * std::sin(beta)};
    const double scale = std::max(r, r0);
    if (distance(c.B, c.C) <= 1e-12 * scale)
        throw Error(ErrorKind::Degenerate, "B and C coincide");
    c.S_A = Circle(c.A, r0);
    c.S_B = Circle(c.B, r);
    c.S_C = Circle(c.C, r);

    const double tol = 1e-9 * scale;
    c.D = second_intersection(circle_circle_intersection(c.S_A, c.S_C), c.O, tol);
    c.E = second_intersection(circle_circle_intersection(c.S_A, c.S_B), c.O, tol);
    c.F = second_intersection(circle_line_intersection(c.S_A, c.O, {0.0, 1.0}), c.O, tol);
    c.angle_EOD = angle_at(c.E, c.O, c.D);
    c.angle_CAB = angle_at(c.C, c.A, c.B);
    return c;
}

double cos_angle_CAB(const LemmaConfig& c) {
    const double r = c.r, r0 = c.r0;
    const double sa = std::sin(c.alpha), ca = std::cos(c.alpha);
    const double sb = std::sin(c.beta), cb = std::cos(c.beta);
    const double bc2 = 4.0 * r * r * cb * cb;
    const double ab2 = r * r + r0 * r0 - 2.0 * r * r0 * sb * sa - 2.0 * r * r0 * cb * ca;
    const double ac2 = r * r + r0 * r0 - 2.0 * r * r0 * sb * sa + 2.0 * r * r0 * cb * ca;
    const double scale = std::max(r, r0);
    if (bc2 <= 1e-24 * scale * scale || ab2 <= 1e-24 * scale * scale || ac2 <= 1e-24 * scale * scale)
        throw Error(ErrorKind::Degenerate, "triangle ABC collapsed");
    const double v = (ab2 + ac2 - bc2) / (2.0 * std::sqrt(ab2) * std::sqrt(ac2));
    return std::clamp(v, -1.0, 1.0);
}

double check_angle_identity(const LemmaConfig& c) {
    const double eod = angle_at(c.E, c.O, c.D).value();
    const double cab = angle_at(c.C, c.A, c.B).value();
    return std::abs(eod - (kPi - cab));
}

BoundCheck check_angle_bound(const LemmaConfig& c) {
    if (!(c.r0 < c.r * kInvSqrt3))
        throw Error(ErrorKind::Precondition, "check_angle_bound requires r0 < r/sqrt(3)");
    BoundCheck out;
    const double bound = (c.r0 * c.r0 - c.r * c.r) / (c.r0 * c.r0 + c.r * c.r);
    out.cos_slack = bound - cos_angle_CAB(c);
    out.slack = kPi / 3.0 - angle_at(c.E, c.O, c.D).value();
    // The intermediate inequality is an equality at beta = 0, alpha = pi/2.
    out.pass = out.slack > 0.0 && out.cos_slack >= -1e-12;
    return out;
}

OutsideArcReport max_angle_outside(const LemmaConfig& c, std::size_t sample_count) {
    if (!(c.r0 < c.r * kInvSqrt3))
        throw Error(ErrorKind::Precondition, "max_angle_outside requires r0 < r/sqrt(3)");
    if (sample_count < 3)
        throw Error(ErrorKind::Precondition, "max_angle_outside needs at least 3 samples");
    const Point2 start = c.O - c.A;
    const double theta0 = std::atan2(start.y, start.x);
    const double eps = 1e-12 * std::max(c.r, c.r0);
    std::vector<double> phis;
    for (std::size_t k = 0; k < sample_count; ++k) {
        const double t = theta0 + kTwoPi * static_cast<double>(k) / static_cast<double>(sample_count);
        const Point2 m = c.A + c.r0 * Point2{std::cos(t), std::sin(t)};
        if (distance(m, c.B) > c.r + eps && distance(m, c.C) > c.r + eps && norm(m) > eps)
            phis.push_back(std::atan2(m.y, m.x));
    }
    OutsideArcReport out;
    out.outside_count = phis.size();
    out.empty = phis.empty();
    out.max_angle = OrientedAngle(max_pairwise_angle(std::move(phis)));
    return out;
}

LemmaSweepReport run_sweep(std::size_t trials, std::uint64_t seed) {
    constexpr double kAlphaEps = 1e-3;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    LemmaSweepReport report;
    report.rows.reserve(trials);
    const double r = 1.0;
    while (report.trials < trials) {
        const double alpha = kAlphaEps + (kPi - 2.0 * kAlphaEps) * unit(rng);
        const double beta = std::min(alpha, kPi - alpha) * unit(rng);
        const double lo = r * std::sin(beta) / std::sin(alpha);
        const double hi = r * kInvSqrt3;
        const double u = unit(rng);
        if (!(lo < hi)) {
            ++report.rejected;
            continue;
        }
        const double r0 = lo + (hi - lo) * u;
        if (!(r0 > 0.0) || !(r0 < hi)) {
            ++report.rejected;
            continue;
        }
        try {
            const LemmaConfig cfg = build_config(r, r0, alpha, beta);
            report.rows.push_back(evaluate(cfg, report));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Degenerate) throw;
            ++report.rejected;
        }
    }
    return report;
}

LemmaSweepReport run_fixed(double r, double r0, double alpha, double beta) {
    LemmaSweepReport report;
    const LemmaConfig cfg = build_config(r, r0, alpha, beta);
    report.rows.push_back(evaluate(cfg, report));
    return report;
}

} // namespace ballcover::lemma
