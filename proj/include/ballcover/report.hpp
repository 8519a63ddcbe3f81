#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ballcover/certificate.hpp"
#include "ballcover/lemma.hpp"
#include "ballcover/morphology.hpp"

namespace ballcover {

struct RunConfig {
    int grid = 512;                   // cells across the (square) bbox at the coarse resolution
    std::optional<double> spacing;    // overrides grid when set
    double tolerance_c = kDefaultToleranceC;
    std::size_t dir_samples = 1024;
    std::uint64_t seed = 1;
    std::string out_dir;              // empty: write nothing
    bool timing = false;              // fill runtime_ms (makes output run-dependent)

    /// Throws InvalidArgument on grid < 32, C < 1, dir_samples < 64 or a non-positive spacing.
    void validate() const;
};

struct Expectation {
    enum class Kind { Pass, NotApplicable, DerivedRatio };
    Kind kind = Kind::Pass;
    double value = 0.0;      // DerivedRatio only
    double tolerance = 0.0;
};

struct CorpusEntry {
    std::string id;
    ShapeSpec spec;
    BBox bbox;
    Expectation expected;
};

// Shape builders shared by the corpus and the tests.
ShapeSpec square_shape(double half_side);
ShapeSpec stadium_shape(double radius, double length);
ShapeSpec annulus_shape(double outer, double inner);
/// Minkowski sum of a convex polygon (ccw vertices) with a disk of `radius`.
ShapeSpec rounded_polygon(const std::vector<Point2>& ccw_vertices, double radius);
/// Bounding disk minus three disks of radius `hole` at 90°/210°/330°, center distance d.
ShapeSpec three_gap_shape(double d, double hole = 0.2, double outer = 1.0);
/// Disk minus three thin wedges with tips at distance `tip` on 90°/210°/330°, pointing at the origin.
ShapeSpec three_spike_shape(double tip = 1.0, double half_angle = 0.1, double length = 0.8, double outer = 5.4);

/// Analytic bounds padded 5% per side and made square. Throws Precondition for unbounded shapes.
BBox auto_bbox(const ShapeSpec& spec);

std::vector<CorpusEntry> default_corpus(std::uint64_t seed);

/// Coarse spacing for a bbox under a config; the fine run uses half of it.
double coarse_spacing(const BBox& bbox, const RunConfig& cfg);
/// Throws Precondition when an occupied cell lies within two cells of the grid border.
void check_margin(const Grid& grid);

struct VerifyRun {
    VerificationReport coarse, fine;
    std::optional<double> coarse_ms, fine_ms;
    bool persistent_violation() const {
        return coarse.verdict == Verdict::Fail && fine.verdict == Verdict::Fail;
    }
    /// |ratio(h) − ratio(h/2)| ≤ 8h/r_max, only meaningful when both are applicable.
    bool refinement_ok() const;
};

/// Rasterizes at h and h/2 and verifies both. `coarse_grid` receives the h raster when requested.
VerifyRun run_verify(const std::string& id, const ShapeSpec& spec, const BBox& bbox, const RunConfig& cfg,
                     Grid* coarse_grid = nullptr);

struct CorpusResult {
    std::vector<CorpusEntry> entries;
    std::vector<VerifyRun> runs;                 // parallel to entries, sorted by id
    std::vector<std::optional<Certificate>> traces;  // one per entry where a trace was run
    std::vector<std::string> trace_errors;       // empty string: no error
    std::vector<bool> expectation_met;
    double min_ratio = 0.0;
    std::string min_ratio_id;
    double three_gap_min_ratio = 0.0;
    std::string three_gap_min_id;
    bool any_persistent_violation = false;
};

CorpusResult run_corpus(const RunConfig& cfg, std::vector<CorpusEntry> entries);

// ---- serialization
std::string csv_header();
std::string csv_row(const VerificationReport& r, std::optional<double> runtime_ms);
std::string sweep_csv(const lemma::LemmaSweepReport& rep);
nlohmann::ordered_json to_json(const VerificationReport& r);
nlohmann::ordered_json to_json(const Certificate& c, const CertificateCheck& check);
nlohmann::ordered_json to_json(const CorpusResult& r);

// ---- figures (svg.cpp)
std::string svg_verify(const Grid& grid, const VerificationReport& r);
std::string svg_trace(const Grid& grid, const Certificate& c);

// ---- commands; return the process exit code
int cmd_lemma_sweep(std::size_t trials, std::uint64_t seed, const std::optional<std::array<double, 4>>& fixed,
                    const std::string& out_dir, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& spec_path, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_trace(const std::string& spec_path, double rho, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_corpus(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace ballcover
