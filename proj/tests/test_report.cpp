#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ballcover/report.hpp"

using namespace ballcover;
namespace fs = std::filesystem;

namespace {

const std::string kData = BALLCOVER_TEST_DATA;

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("ballcover_unit_" + name);
    fs::remove_all(p);
    return p;
}

RunConfig small_config(const fs::path& out) {
    RunConfig cfg;
    cfg.grid = 64;
    cfg.out_dir = out.string();
    return cfg;
}

} // namespace

TEST_CASE("RunConfig validation") {
    RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.grid = 16;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.tolerance_c = 0.5;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.dir_samples = 8;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.spacing = -0.1;
    CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("csv layout") {
    CHECK(csv_header() ==
          "shape_id,h,r_max,r_max_bracket,rho_star,rho_star_bracket,ratio,bound,tolerance,verdict,runtime_ms\n");
    VerificationReport r;
    r.shape_id = "x";
    r.h = 0.5;
    r.verdict = Verdict::Pass;
    const std::string row = csv_row(r, std::nullopt);
    CHECK(row.back() == '\n');
    CHECK(row.substr(row.size() - 7) == ",pass,\n");  // runtime left empty
    CHECK(csv_row(r, 12.25).find(",pass,12.2") != std::string::npos);
    CHECK(std::count(row.begin(), row.end(), ',') == 10);
    lemma::LemmaSweepReport rep = lemma::run_fixed(1.0, 0.5, kPi / 2, 0.0);
    const std::string sw = sweep_csv(rep);
    CHECK(sw.rfind("r,r0,alpha,beta,angle_CAB,angle_EOD,identity_residual,slack\n", 0) == 0);
    CHECK(std::count(sw.begin(), sw.end(), '\n') == 2);
}

TEST_CASE("corpus is deterministic in the seed") {
    const auto a = default_corpus(1), b = default_corpus(1), c = default_corpus(2);
    REQUIRE(a.size() == b.size());
    bool differs = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].id == b[k].id);
        CHECK(format_shape(a[k].spec) == format_shape(b[k].spec));
        differs |= format_shape(a[k].spec) != format_shape(c[k].spec);
    }
    CHECK(differs);
    auto has = [&](const std::string& id) {
        return std::any_of(a.begin(), a.end(), [&](const CorpusEntry& e) { return e.id == id; });
    };
    for (const char* id : {"disk", "stadium", "square", "annulus", "three_gap_d0", "three_spike"}) CHECK(has(id));
}

TEST_CASE("corpus shapes leave the bbox margin free") {
    for (const CorpusEntry& e : default_corpus(1)) {
        CAPTURE(e.id);
        const Grid g = rasterize(e.spec, e.bbox, e.bbox.width() / 64);
        CHECK_NOTHROW(check_margin(g));
    }
    const Grid tight = rasterize(ShapeSpec::disk({0, 0}, 1), {-1, -1, 1, 1}, 2.0 / 64);
    CHECK_THROWS_AS(check_margin(tight), Error);
}

TEST_CASE("run_verify refines by a factor two") {
    RunConfig cfg;
    cfg.grid = 64;
    const auto d = ShapeSpec::disk({0, 0}, 1);
    const VerifyRun run = run_verify("disk", d, auto_bbox(d), cfg);
    CHECK(run.fine.h == doctest::Approx(run.coarse.h / 2));
    CHECK(run.coarse.pass());
    CHECK(run.fine.pass());
    CHECK(run.refinement_ok());
    CHECK(!run.persistent_violation());
    CHECK(!run.coarse_ms);
}

TEST_CASE("cmd_lemma_sweep exit codes and reproducible files") {
    std::ostringstream out, err;
    CHECK(cmd_lemma_sweep(0, 1, std::nullopt, "", out, err) == 2);
    const fs::path d1 = scratch("sweep1"), d2 = scratch("sweep2");
    CHECK(cmd_lemma_sweep(300, 5, std::nullopt, d1.string(), out, err) == 0);
    CHECK(cmd_lemma_sweep(300, 5, std::nullopt, d2.string(), out, err) == 0);
    CHECK(slurp(d1 / "lemma_sweep.csv") == slurp(d2 / "lemma_sweep.csv"));
    CHECK(slurp(d1 / "lemma_sweep.json") == slurp(d2 / "lemma_sweep.json"));
    CHECK(cmd_lemma_sweep(1, 1, std::array<double, 4>{1.0, 0.5, kPi / 2, 0.0}, "", out, err) == 0);
    // A tuple that cannot be constructed is an input error.
    CHECK(cmd_lemma_sweep(1, 1, std::array<double, 4>{-1.0, 0.5, kPi / 2, 0.0}, "", out, err) == 2);
}

TEST_CASE("cmd_verify") {
    std::ostringstream out, err;
    const fs::path d1 = scratch("verify1"), d2 = scratch("verify2");
    CHECK(cmd_verify(kData + "/disk.shape", small_config(d1), out, err) == 0);
    CHECK(out.str().find("verdict=pass") != std::string::npos);
    CHECK(cmd_verify(kData + "/disk.shape", small_config(d2), out, err) == 0);
    CHECK(fs::exists(d1 / "disk.svg"));
    CHECK(slurp(d1 / "disk.csv") == slurp(d2 / "disk.csv"));
    CHECK(slurp(d1 / "disk.json") == slurp(d2 / "disk.json"));
    std::ostringstream o2;
    CHECK(cmd_verify(kData + "/square.shape", small_config(d1), o2, err) == 0);
    CHECK(o2.str().find("verdict=not-applicable") != std::string::npos);
    CHECK(cmd_verify(kData + "/malformed.shape", small_config(d1), out, err) == 2);
    CHECK(cmd_verify(kData + "/missing.shape", small_config(d1), out, err) == 2);
    RunConfig bad = small_config(d1);
    bad.grid = 4;
    CHECK(cmd_verify(kData + "/disk.shape", bad, out, err) == 2);
}

TEST_CASE("cmd_trace") {
    std::ostringstream out, err;
    const fs::path d = scratch("trace");
    RunConfig cfg = small_config(d);
    cfg.grid = 128;
    CHECK(cmd_trace(kData + "/square.shape", 0.25, cfg, out, err) == 0);
    CHECK(out.str().find("certificate:") != std::string::npos);
    CHECK(out.str().find("invariants=ok") != std::string::npos);
    CHECK(fs::exists(d / "square_trace.json"));
    std::ostringstream o2;
    CHECK(cmd_trace(kData + "/disk.shape", 0.5, cfg, o2, err) == 0);
    CHECK(o2.str().find("covered") != std::string::npos);
    CHECK(cmd_trace(kData + "/malformed.shape", 0.5, cfg, out, err) == 2);
}
