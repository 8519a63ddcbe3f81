// Command-line front end: lemma-sweep, verify, trace, corpus.
#include <iostream>

#include <CLI11.hpp>

#include "ballcover/report.hpp"

namespace {

void add_run_options(CLI::App* cmd, ballcover::RunConfig& cfg, double& spacing) {
    cmd->add_option("--grid", cfg.grid, "cells across the bbox at the coarse resolution (fine run uses twice)");
    cmd->add_option("--spacing", spacing, "cell spacing h; overrides --grid");
    cmd->add_option("--tolerance-c", cfg.tolerance_c, "tolerance constant C (tolerance = C*h)");
    cmd->add_option("--dir-samples", cfg.dir_samples, "directions per normal fan");
    cmd->add_option("--seed", cfg.seed, "random seed");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_flag("--timing", cfg.timing, "fill runtime_ms in CSV (output no longer byte-reproducible)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ball-union radius verification for planar sets with an interior sphere condition"};
    app.require_subcommand(1);

    ballcover::RunConfig cfg;
    cfg.out_dir = "out";
    double spacing = 0.0;

    std::size_t trials = 10000;
    std::uint64_t sweep_seed = 1;
    std::vector<double> fixed;
    std::string sweep_out = "out";
    auto* sweep = app.add_subcommand("lemma-sweep", "random check of the circle-configuration lemma");
    sweep->add_option("--trials", trials, "number of accepted tuples");
    sweep->add_option("--seed", sweep_seed, "random seed");
    sweep->add_option("--fixed", fixed, "single tuple: r r0 alpha beta")->expected(4);
    sweep->add_option("--out", sweep_out, "output directory");

    std::string spec_path;
    auto* verify = app.add_subcommand("verify", "verify the ball-union radius bound on a shape file");
    verify->add_option("spec", spec_path, "shape file")->required();
    add_run_options(verify, cfg, spacing);

    double rho = 0.0;
    auto* trace = app.add_subcommand("trace", "build the three-contact certificate at radius rho");
    trace->add_option("spec", spec_path, "shape file")->required();
    trace->add_option("--rho", rho, "opening radius probed for a witness")->required();
    add_run_options(trace, cfg, spacing);

    auto* corpus = app.add_subcommand("corpus", "run the built-in corpus");
    add_run_options(corpus, cfg, spacing);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    if (spacing > 0.0) cfg.spacing = spacing;
    else if (spacing < 0.0) cfg.spacing = spacing;  // rejected by validate()

    try {
        if (*sweep) {
            std::optional<std::array<double, 4>> f;
            if (!fixed.empty()) f = std::array<double, 4>{fixed[0], fixed[1], fixed[2], fixed[3]};
            return ballcover::cmd_lemma_sweep(trials, sweep_seed, f, sweep_out, std::cout, std::cerr);
        }
        if (*verify) return ballcover::cmd_verify(spec_path, cfg, std::cout, std::cerr);
        if (*trace) return ballcover::cmd_trace(spec_path, rho, cfg, std::cout, std::cerr);
        if (*corpus) return ballcover::cmd_corpus(cfg, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
