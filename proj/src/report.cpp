#include "ballcover/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>

namespace ballcover {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

void RunConfig::validate() const {
    if (grid < 32) throw Error(ErrorKind::InvalidArgument, "--grid must be >= 32");
    if (spacing && !(*spacing > 0.0)) throw Error(ErrorKind::InvalidArgument, "--spacing must be positive");
    if (!(tolerance_c >= 1.0)) throw Error(ErrorKind::InvalidArgument, "--tolerance-c must be >= 1");
    if (dir_samples < kMinDirectionSamples) throw Error(ErrorKind::InvalidArgument, "--dir-samples must be >= 64");
}

// ------------------------------------------------------------------ shapes

namespace {

ShapeSpec box(double x0, double y0, double x1, double y1) {
    return ShapeSpec::intersect({ShapeSpec::half_plane({1, 0}, x1), ShapeSpec::half_plane({-1, 0}, -x0),
                                 ShapeSpec::half_plane({0, 1}, y1), ShapeSpec::half_plane({0, -1}, -y0)});
}

Point2 polar(double radius, double degrees) {
    const double t = degrees * kPi / 180.0;
    return {radius * std::cos(t), radius * std::sin(t)};
}

} // namespace

ShapeSpec square_shape(double a) { return box(-a, -a, a, a); }

ShapeSpec stadium_shape(double radius, double length) {
    const double a = 0.5 * length;
    return ShapeSpec::unite({ShapeSpec::disk({-a, 0}, radius), ShapeSpec::disk({a, 0}, radius),
                             box(-a, -radius, a, radius)});
}

ShapeSpec annulus_shape(double outer, double inner) {
    return ShapeSpec::intersect({ShapeSpec::disk({0, 0}, outer), ShapeSpec::complement(ShapeSpec::disk({0, 0}, inner))});
}

ShapeSpec rounded_polygon(const std::vector<Point2>& v, double radius) {
    if (v.size() < 3) throw Error(ErrorKind::InvalidArgument, "polygon needs three vertices");
    std::vector<ShapeSpec> parts, core;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const Point2 a = v[k], b = v[(k + 1) % v.size()];
        const UnitDir t(b - a);
        const Point2 n{t.uy(), -t.ux()};  // outward for ccw order
        core.push_back(ShapeSpec::half_plane(n, dot(n, a)));
        // Edge slab: between the edge line and its offset, clipped to the edge's extent.
        parts.push_back(ShapeSpec::intersect({ShapeSpec::half_plane(n, dot(n, a) + radius),
                                              ShapeSpec::half_plane(-1.0 * n, -dot(n, a)),
                                              ShapeSpec::half_plane(t.vec(), dot(t.vec(), b)),
                                              ShapeSpec::half_plane(-1.0 * t.vec(), -dot(t.vec(), a))}));
        parts.push_back(ShapeSpec::disk(a, radius));
    }
    parts.push_back(ShapeSpec::intersect(std::move(core)));
    return ShapeSpec::unite(std::move(parts));
}

ShapeSpec three_gap_shape(double d, double hole, double outer) {
    std::vector<ShapeSpec> parts{ShapeSpec::disk({0, 0}, outer)};
    for (double deg : {90.0, 210.0, 330.0}) parts.push_back(ShapeSpec::complement(ShapeSpec::disk(polar(d, deg), hole)));
    return ShapeSpec::intersect(std::move(parts));
}

ShapeSpec three_spike_shape(double tip, double half_angle, double length, double outer) {
    std::vector<ShapeSpec> wedges;
    for (double deg : {90.0, 210.0, 330.0}) {
        const Point2 e = polar(1.0, deg), a = tip * e;
        const Point2 n1 = rotate(e, kPi / 2 + half_angle), n2 = rotate(e, -(kPi / 2 + half_angle));
        wedges.push_back(ShapeSpec::intersect({ShapeSpec::half_plane(n1, dot(n1, a)), ShapeSpec::half_plane(n2, dot(n2, a)),
                                               ShapeSpec::half_plane(e, tip + length)}));
    }
    return ShapeSpec::intersect({ShapeSpec::disk({0, 0}, outer), ShapeSpec::complement(ShapeSpec::unite(std::move(wedges)))});
}

BBox auto_bbox(const ShapeSpec& spec) {
    const auto b = spec.bounds();
    if (!b) throw Error(ErrorKind::Precondition, "shape is unbounded; add a bbox line");
    if (b->empty()) throw Error(ErrorKind::Precondition, "shape is empty");
    const double side = 1.1 * std::max(b->width(), b->height());
    const Point2 c{0.5 * (b->xmin + b->xmax), 0.5 * (b->ymin + b->ymax)};
    return {c.x - 0.5 * side, c.y - 0.5 * side, c.x + 0.5 * side, c.y + 0.5 * side};
}

std::vector<CorpusEntry> default_corpus(std::uint64_t seed) {
    using K = Expectation::Kind;
    std::vector<CorpusEntry> out;
    auto add = [&](std::string id, ShapeSpec s, Expectation e) {
        const BBox b = auto_bbox(s);
        out.push_back({std::move(id), std::move(s), b, e});
    };
    add("disk", ShapeSpec::disk({0, 0}, 1.0), {K::DerivedRatio, 1.0, 0.02});
    add("stadium", stadium_shape(0.6, 1.2), {K::DerivedRatio, 1.0, 0.02});
    add("annulus", annulus_shape(1.0, 0.4), {K::Pass});
    add("lune", ShapeSpec::intersect({ShapeSpec::disk({0, 0}, 1.0), ShapeSpec::complement(ShapeSpec::disk({0.6, 0}, 0.8))}),
        {K::NotApplicable});
    add("square", square_shape(1.0), {K::NotApplicable});
    add("rounded_square", rounded_polygon({{-0.6, -0.6}, {0.6, -0.6}, {0.6, 0.6}, {-0.6, 0.6}}, 0.4),
        {K::DerivedRatio, 1.0, 0.1});
    add("rounded_triangle", rounded_polygon({polar(0.6, 90), polar(0.6, 210), polar(0.6, 330)}, 0.3),
        {K::DerivedRatio, 1.0, 0.1});
    add("three_spike", three_spike_shape(), {K::Pass});

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> centre(-0.6, 0.6), radius(0.3, 0.6), gap(0.3, 0.6);
    std::vector<ShapeSpec> disks;
    for (int k = 0; k < 5; ++k) {
        const double x = centre(rng), y = centre(rng);
        disks.push_back(ShapeSpec::disk({x, y}, radius(rng)));
    }
    add("random_disks", ShapeSpec::unite(std::move(disks)), {K::Pass});
    for (int k = 0; k < 5; ++k) add("three_gap_d" + std::to_string(k), three_gap_shape(gap(rng)), {K::Pass});
    return out;
}

// ---------------------------------------------------------------- verifying

double coarse_spacing(const BBox& bbox, const RunConfig& cfg) {
    return cfg.spacing ? *cfg.spacing : std::max(bbox.width(), bbox.height()) / cfg.grid;
}

void check_margin(const Grid& g) {
    const int m = 2;
    for (int j = 0; j < g.height(); ++j)
        for (int i = 0; i < g.width(); ++i)
            if ((i < m || j < m || i >= g.width() - m || j >= g.height() - m) && g.occupied(i, j))
                throw Error(ErrorKind::Precondition, "shape touches the bbox margin; enlarge the bbox");
    if (!g.any_occupied()) throw Error(ErrorKind::Precondition, "shape rasterizes to no cell");
}

bool VerifyRun::refinement_ok() const {
    if (coarse.verdict == Verdict::NotApplicable || fine.verdict == Verdict::NotApplicable) return true;
    return std::abs(coarse.ratio - fine.ratio) <= 8.0 * coarse.h / coarse.r_max.value;
}

VerifyRun run_verify(const std::string& id, const ShapeSpec& spec, const BBox& bbox, const RunConfig& cfg,
                     Grid* coarse_grid) {
    cfg.validate();
    const double h = coarse_spacing(bbox, cfg);
    VerifyRun run;
    for (int level = 0; level < 2; ++level) {
        const auto t0 = std::chrono::steady_clock::now();
        const Grid g = rasterize(spec, bbox, level == 0 ? h : 0.5 * h);
        check_margin(g);
        VerificationReport rep = verify_theorem(g, id, cfg.tolerance_c);
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (level == 0) {
            run.coarse = std::move(rep);
            if (cfg.timing) run.coarse_ms = ms;
            if (coarse_grid) *coarse_grid = g;
        } else {
            run.fine = std::move(rep);
            if (cfg.timing) run.fine_ms = ms;
        }
    }
    return run;
}

namespace {

bool expectation_met(const Expectation& e, const VerifyRun& r) {
    switch (e.kind) {
    case Expectation::Kind::Pass: return r.coarse.pass() && r.fine.pass();
    case Expectation::Kind::NotApplicable:
        return r.coarse.verdict == Verdict::NotApplicable && r.fine.verdict == Verdict::NotApplicable;
    case Expectation::Kind::DerivedRatio:
        return r.coarse.pass() && r.fine.pass() && std::abs(r.coarse.ratio - e.value) <= e.tolerance &&
               std::abs(r.fine.ratio - e.value) <= e.tolerance;
    }
    return false;
}

} // namespace

CorpusResult run_corpus(const RunConfig& cfg, std::vector<CorpusEntry> entries) {
    std::sort(entries.begin(), entries.end(), [](const CorpusEntry& a, const CorpusEntry& b) { return a.id < b.id; });
    CorpusResult res;
    res.min_ratio = std::numeric_limits<double>::infinity();
    res.three_gap_min_ratio = res.min_ratio;
    for (const CorpusEntry& e : entries) {
        Grid g(1, 1, 1.0, {});
        VerifyRun run = run_verify(e.id, e.spec, e.bbox, cfg, &g);
        res.expectation_met.push_back(expectation_met(e.expected, run));
        res.any_persistent_violation = res.any_persistent_violation || run.persistent_violation();
        for (const VerificationReport* r : {&run.coarse, &run.fine}) {
            if (r->verdict == Verdict::NotApplicable) continue;
            if (r->ratio < res.min_ratio) res.min_ratio = r->ratio, res.min_ratio_id = e.id;
            if (e.id.rfind("three_gap", 0) == 0 && r->ratio < res.three_gap_min_ratio)
                res.three_gap_min_ratio = r->ratio, res.three_gap_min_id = e.id;
        }
        // Trace only where a witness can exist below the interior radius.
        std::optional<Certificate> cert;
        std::string err;
        const VerificationReport& c = run.coarse;
        if (c.verdict != Verdict::NotApplicable && c.rho_star.value + 2 * c.h < c.r_max.value) {
            try {
                TraceOutcome t = build_certificate(g, c.rho_star.value + 2 * c.h, cfg.dir_samples, c.r_max.value);
                cert = std::move(t.certificate);
            } catch (const Error& ex) {
                err = ex.what();
            }
        }
        res.traces.push_back(std::move(cert));
        res.trace_errors.push_back(std::move(err));
        res.runs.push_back(std::move(run));
    }
    res.entries = std::move(entries);
    return res;
}

// ------------------------------------------------------------ serialization

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

ordered_json pt(Point2 p) { return ordered_json::array({p.x, p.y}); }
ordered_json dir(UnitDir u) { return ordered_json::array({u.ux(), u.uy()}); }

bool write_file(const std::string& dir_path, const std::string& name, const std::string& content, std::ostream& err) {
    if (dir_path.empty()) return true;
    std::error_code ec;
    fs::create_directories(dir_path, ec);
    std::ofstream f(fs::path(dir_path) / name, std::ios::binary);
    if (!f) {
        err << "error: cannot write " << (fs::path(dir_path) / name).string() << "\n";
        return false;
    }
    f << content;
    return true;
}

} // namespace

std::string csv_header() {
    return "shape_id,h,r_max,r_max_bracket,rho_star,rho_star_bracket,ratio,bound,tolerance,verdict,runtime_ms\n";
}

std::string csv_row(const VerificationReport& r, std::optional<double> runtime_ms) {
    std::string s = r.shape_id + "," + num(r.h) + "," + num(r.r_max.value) + "," + num(r.r_max.bracket()) + "," +
                    num(r.rho_star.value) + "," + num(r.rho_star.bracket()) + "," + num(r.ratio) + "," +
                    num(r.bound) + "," + num(r.tolerance) + "," + std::string(to_string(r.verdict)) + ",";
    if (runtime_ms) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1f", *runtime_ms);
        s += buf;
    }
    return s + "\n";
}

std::string sweep_csv(const lemma::LemmaSweepReport& rep) {
    std::string s = "r,r0,alpha,beta,angle_CAB,angle_EOD,identity_residual,slack\n";
    for (const lemma::SweepRow& w : rep.rows)
        s += num(w.r) + "," + num(w.r0) + "," + num(w.alpha) + "," + num(w.beta) + "," + num(w.angle_CAB) + "," +
             num(w.angle_EOD) + "," + num(w.identity_residual) + "," + num(w.slack) + "\n";
    return s;
}

ordered_json to_json(const VerificationReport& r) {
    ordered_json j;
    j["shape_id"] = r.shape_id;
    j["h"] = r.h;
    j["r_max"] = r.r_max.value;
    j["r_max_bracket"] = {r.r_max.lo, r.r_max.hi};
    j["rho_star"] = r.rho_star.value;
    j["rho_star_bracket"] = {r.rho_star.lo, r.rho_star.hi};
    j["ratio"] = r.ratio;
    j["bound"] = r.bound;
    j["tolerance"] = r.tolerance;
    j["verdict"] = to_string(r.verdict);
    j["uncovered_witness"] = r.uncovered_witness ? pt(*r.uncovered_witness) : ordered_json(nullptr);
    return j;
}

namespace {

ordered_json to_json(const ContactAnnex& a) {
    ordered_json j;
    j["s"] = pt(a.s);
    j["zeta"] = dir(a.zeta);
    j["r0"] = a.r0;
    ordered_json f;
    f["radius"] = a.fan.r;
    f["samples"] = a.fan.samples;
    f["feasible_count"] = a.fan.arc.size();
    f["empty"] = a.fan.empty;
    if (!a.fan.empty) {
        f["extremal_lo"] = dir(a.fan.extremal_lo);
        f["extremal_hi"] = dir(a.fan.extremal_hi);
        f["span"] = a.fan.span();
    }
    j["fan"] = f;
    ordered_json l;
    l["applicable"] = a.slack.applicable;
    if (a.slack.applicable) {
        l["zeta0"] = dir(a.slack.zeta0);
        l["xi0"] = dir(a.slack.xi0);
        l["slacks"] = a.slack.slack;
        l["mirrored"] = a.slack.mirrored;
    } else {
        l["reason"] = a.slack.reason;
    }
    j["lemma_chain"] = l;
    j["extremal_signature"] = a.extremal_signature;
    return j;
}

} // namespace

ordered_json to_json(const Certificate& c, const CertificateCheck& k) {
    ordered_json j;
    j["rho"] = c.rho;
    j["x0"] = pt(c.x0);
    j["s0"] = pt(c.s0);
    j["r0"] = c.r0;
    j["zeta"] = dir(c.zeta);
    j["r1"] = c.r1;
    j["x1"] = pt(c.x1);
    j["s0p"] = pt(c.s0p);
    j["m"] = pt(c.m);
    j["zeta1"] = dir(c.zeta1);
    j["r2"] = c.r2;
    j["x2"] = pt(c.x2);
    j["s0pp"] = pt(c.s0pp);
    j["triangle_angles"] = c.triangle_angles;
    j["angle_sum"] = c.triangle_angles[0] + c.triangle_angles[1] + c.triangle_angles[2];
    j["clipped"] = c.clipped;
    j["two_contact_restarted"] = c.two_contact_restarted;
    j["fan_radius"] = c.fan_radius;
    j["direction_samples"] = c.direction_samples;
    j["contacts"] = ordered_json::array();
    for (const ContactAnnex& a : c.contacts) j["contacts"].push_back(to_json(a));
    j["extremal_signature"] = c.extremal_signature();
    ordered_json chk;
    chk["identity_residual"] = k.identity_residual;
    chk["angle_sum_residual"] = k.angle_sum_residual;
    chk["circle_residual"] = k.circle_residual;
    chk["min_separation"] = k.min_separation;
    chk["monotone"] = k.monotone;
    chk["maximal"] = k.maximal;
    chk["ok"] = k.ok();
    j["invariants"] = chk;
    return j;
}

ordered_json to_json(const CorpusResult& r) {
    ordered_json j;
    j["bound"] = 1.0 / std::sqrt(3.0);
    j["min_ratio"] = r.min_ratio;
    j["min_ratio_shape"] = r.min_ratio_id;
    j["three_gap_min_ratio"] = r.three_gap_min_ratio;
    j["three_gap_min_shape"] = r.three_gap_min_id;
    j["persistent_violation"] = r.any_persistent_violation;
    j["shapes"] = ordered_json::array();
    for (std::size_t k = 0; k < r.entries.size(); ++k) {
        const VerifyRun& run = r.runs[k];
        ordered_json e;
        e["shape_id"] = r.entries[k].id;
        e["coarse"] = to_json(run.coarse);
        e["fine"] = to_json(run.fine);
        e["refinement_ok"] = run.refinement_ok();
        e["expectation_met"] = static_cast<bool>(r.expectation_met[k]);
        if (r.traces[k]) {
            e["trace"] = {{"rho", r.traces[k]->rho},
                          {"angle_sum", r.traces[k]->triangle_angles[0] + r.traces[k]->triangle_angles[1] +
                                            r.traces[k]->triangle_angles[2]},
                          {"extremal_signature", r.traces[k]->extremal_signature()}};
        } else if (!r.trace_errors[k].empty()) {
            e["trace_error"] = r.trace_errors[k];
        }
        j["shapes"].push_back(std::move(e));
    }
    return j;
}

// ------------------------------------------------------------------ commands

namespace {

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

struct LoadedShape {
    std::string id;
    ShapeSpec spec;
    BBox bbox;
};

LoadedShape load(const std::string& path) {
    ParsedShape p = load_shape_file(path);
    const BBox b = p.bbox ? *p.bbox : auto_bbox(p.spec);
    return {stem_of(path), std::move(p.spec), b};
}

void print_report(std::ostream& out, const char* level, const VerificationReport& r) {
    out << r.shape_id << " [" << level << "] h=" << num(r.h) << " r_max=" << num(r.r_max.value)
        << " rho_star=" << num(r.rho_star.value) << " ratio=" << num(r.ratio) << " bound=" << num(r.bound)
        << " tolerance=" << num(r.tolerance) << " verdict=" << to_string(r.verdict) << "\n";
}

int input_error(std::ostream& err, const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
}

} // namespace

int cmd_lemma_sweep(std::size_t trials, std::uint64_t seed, const std::optional<std::array<double, 4>>& fixed,
                    const std::string& out_dir, std::ostream& out, std::ostream& err) {
    lemma::LemmaSweepReport rep;
    try {
        if (fixed) {
            rep = lemma::run_fixed((*fixed)[0], (*fixed)[1], (*fixed)[2], (*fixed)[3]);
        } else {
            if (trials < 1) throw Error(ErrorKind::InvalidArgument, "--trials must be >= 1");
            rep = lemma::run_sweep(trials, seed);
        }
    } catch (const Error& e) {
        return input_error(err, e);
    }
    out << "trials=" << rep.trials << " rejected=" << rep.rejected << " violations=" << rep.violations
        << " max_identity_residual=" << num(rep.max_identity_residual) << " max_angle_EOD=" << num(rep.max_angle_EOD)
        << "\n";
    ordered_json j{{"trials", rep.trials},
                   {"seed", fixed ? ordered_json(nullptr) : ordered_json(seed)},
                   {"rejected", rep.rejected},
                   {"violations", rep.violations},
                   {"max_identity_residual", rep.max_identity_residual},
                   {"max_angle_EOD", rep.max_angle_EOD}};
    if (!write_file(out_dir, "lemma_sweep.csv", sweep_csv(rep), err) ||
        !write_file(out_dir, "lemma_sweep.json", j.dump(2) + "\n", err))
        return 2;
    return rep.violations == 0 ? 0 : 1;
}

int cmd_verify(const std::string& spec_path, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::optional<LoadedShape> loaded;
    VerifyRun run;
    Grid g(1, 1, 1.0, {});
    try {
        cfg.validate();
        loaded = load(spec_path);
        run = run_verify(loaded->id, loaded->spec, loaded->bbox, cfg, &g);
    } catch (const Error& e) {
        return input_error(err, e);
    }
    const LoadedShape& s = *loaded;
    print_report(out, "h", run.coarse);
    print_report(out, "h/2", run.fine);
    if (!run.refinement_ok()) out << s.id << " refinement: |ratio(h) - ratio(h/2)| exceeds 8h/r_max\n";
    ordered_json j{{"shape_id", s.id},
                   {"coarse", to_json(run.coarse)},
                   {"fine", to_json(run.fine)},
                   {"persistent_violation", run.persistent_violation()},
                   {"refinement_ok", run.refinement_ok()}};
    const std::string csv = csv_header() + csv_row(run.coarse, run.coarse_ms) + csv_row(run.fine, run.fine_ms);
    if (!write_file(cfg.out_dir, s.id + ".csv", csv, err) ||
        !write_file(cfg.out_dir, s.id + ".json", j.dump(2) + "\n", err) ||
        !write_file(cfg.out_dir, s.id + ".svg", svg_verify(g, run.coarse), err))
        return 2;
    if (run.persistent_violation()) {
        out << s.id << " ANOMALY: violation at both resolutions\n";
        return 1;
    }
    return 0;
}

int cmd_trace(const std::string& spec_path, double rho, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::optional<LoadedShape> loaded;
    std::optional<Grid> g;
    try {
        cfg.validate();
        if (!(rho > 0.0)) throw Error(ErrorKind::InvalidArgument, "--rho must be positive");
        loaded = load(spec_path);
        g = rasterize(loaded->spec, loaded->bbox, coarse_spacing(loaded->bbox, cfg));
        check_margin(*g);
    } catch (const Error& e) {
        return input_error(err, e);
    }
    const LoadedShape& s = *loaded;
    TraceOutcome t;
    try {
        t = build_certificate(*g, rho, cfg.dir_samples);
    } catch (const Error& e) {
        out << s.id << " trace anomaly (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return 1;
    }
    if (t.covered) {
        out << s.id << " covered: opening at rho=" << num(rho) << " equals the shape, no witness\n";
        ordered_json j{{"shape_id", s.id}, {"rho", rho}, {"covered", true}};
        return write_file(cfg.out_dir, s.id + "_trace.json", j.dump(2) + "\n", err) ? 0 : 2;
    }
    const Certificate& c = *t.certificate;
    const CertificateCheck k = check_certificate(*g, edt(*g, Polarity::ToUnoccupied), c);
    ordered_json j{{"shape_id", s.id}, {"covered", false}, {"certificate", to_json(c, k)}};
    out << s.id << " certificate: x0=(" << num(c.x0.x) << "," << num(c.x0.y) << ") r0=" << num(c.r0)
        << " r1=" << num(c.r1) << " r2=" << num(c.r2)
        << " angle_sum=" << num(c.triangle_angles[0] + c.triangle_angles[1] + c.triangle_angles[2])
        << " invariants=" << (k.ok() ? "ok" : "violated")
        << " extremal_signature=" << (c.extremal_signature() ? "yes" : "no") << "\n";
    for (std::size_t n = 0; n < 3; ++n) {
        const ContactAnnex& a = c.contacts[n];
        out << "  contact " << n << " fan=" << a.fan.arc.size() << "/" << a.fan.samples;
        if (a.slack.applicable)
            out << " slacks=" << num(a.slack.slack[0]) << "," << num(a.slack.slack[1]) << "," << num(a.slack.slack[2]);
        else
            out << " lemma chain n/a (" << a.slack.reason << ")";
        out << "\n";
    }
    if (!write_file(cfg.out_dir, s.id + "_trace.json", j.dump(2) + "\n", err) ||
        !write_file(cfg.out_dir, s.id + "_trace.svg", svg_trace(*g, c), err))
        return 2;
    return k.ok() ? 0 : 1;
}

int cmd_corpus(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    CorpusResult res;
    try {
        cfg.validate();
        res = run_corpus(cfg, default_corpus(cfg.seed));
    } catch (const Error& e) {
        return input_error(err, e);
    }
    std::string csv = csv_header();
    for (std::size_t k = 0; k < res.entries.size(); ++k) {
        const VerifyRun& r = res.runs[k];
        csv += csv_row(r.coarse, r.coarse_ms) + csv_row(r.fine, r.fine_ms);
        out << res.entries[k].id << ": " << to_string(r.coarse.verdict) << "/" << to_string(r.fine.verdict)
            << " ratio=" << num(r.coarse.ratio) << "/" << num(r.fine.ratio)
            << (res.expectation_met[k] ? "" : "  [expectation not met]")
            << (r.refinement_ok() ? "" : "  [refinement drift]") << (res.traces[k] ? "  [traced]" : "")
            << (res.trace_errors[k].empty() ? "" : "  [trace error: " + res.trace_errors[k] + "]") << "\n";
    }
    out << "min_ratio=" << num(res.min_ratio) << " (" << res.min_ratio_id << ")"
        << " three_gap_min_ratio=" << num(res.three_gap_min_ratio) << " (" << res.three_gap_min_id << ")"
        << " bound=" << num(1.0 / std::sqrt(3.0)) << "\n";
    if (!write_file(cfg.out_dir, "corpus.csv", csv, err) ||
        !write_file(cfg.out_dir, "corpus.json", to_json(res).dump(2) + "\n", err))
        return 2;
    if (res.any_persistent_violation) {
        out << "ANOMALY: persistent violation in the corpus\n";
        return 1;
    }
    return 0;
}

} // namespace ballcover
