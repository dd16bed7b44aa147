#include "pvg/cli.hpp"

#include "pvg/error.hpp"
#include "pvg/format.hpp"
#include "pvg/graph_builder.hpp"
#include "pvg/matrix_io.hpp"
#include "pvg/metrics.hpp"
#include "pvg/series_io.hpp"
#include "pvg/sweep_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

namespace pvg {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidParams:
        case ErrorCode::InvalidConfig: return kExitConfig;
        case ErrorCode::ParseError: return kExitParse;
        case ErrorCode::IoError: return kExitIo;
        default: return kExitComputation;
    }
}

unsigned thread_count(const std::optional<unsigned>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("PVG_THREADS")) {
        try {
            return static_cast<unsigned>(std::stoul(env));
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidConfig, std::string("PVG_THREADS is not a number: ") + env);
        }
    }
    return 0;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw Error(ErrorCode::IoError, "cannot create output directory " + dir.string());
    }
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Progress lines on stderr; stdout and output files are unaffected.
class Log {
public:
    Log(std::ostream& err, bool enabled) : err_(err), enabled_(enabled) {}

    void operator()(const std::string& msg) const {
        if (!enabled_) return;
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        std::ostringstream stamp;
        stamp << std::fixed << std::setprecision(3) << s;
        err_ << "[" << stamp.str() << " s] " << msg << "\n";
    }

private:
    std::ostream& err_;
    bool enabled_;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct GenerateOptions {
    AmSignalParams am;
    std::string output;
    std::optional<std::string> config;
};

struct BuildOptions {
    std::string input;
    std::string output;
    PvgParams params;
    double dt = 1.0;
    bool dense_csv = false;
    bool timing = false;
};

struct MetricsOptions {
    std::optional<std::string> graph;
    std::optional<std::size_t> nodes;
    std::optional<std::string> input;
    PvgParams params;
    double dt = 1.0;
    BaselineConfig baseline;
    bool no_baseline = false;
    std::string output;
};

struct SweepOptions {
    std::string config;
    std::string output;
};

int cmd_generate(const GenerateOptions& opt, std::ostream& out, const Log& log) {
    AmSignalParams am = opt.am;
    if (opt.config) {
        // Reuse the experiment schema: only the am_signal section matters.
        const auto cfg = load_experiment_config(*opt.config);
        am = cfg.am;
    }
    const auto series = generate_am(am);
    save_series_csv(opt.output, series);
    log("wrote " + std::to_string(series.size()) + " samples to " + opt.output);

    double sq = 0.0;
    for (double v : series.values()) sq += v * v;
    const double rms = std::sqrt(sq / static_cast<double>(series.size()));
    out << "N=" << series.size() << " RMS=" << format_double(rms) << "\n";
    return kExitOk;
}

int cmd_build(const BuildOptions& opt, unsigned threads, std::ostream& out, const Log& log) {
    opt.params.validate();
    const auto start = std::chrono::steady_clock::now();
    const auto series = normalize(load_series_csv(opt.input, opt.dt));
    log("loaded " + std::to_string(series.size()) + " samples");
    const auto pvg = build_pvg(series, opt.params, threads);
    log("built graph with " + std::to_string(pvg.adjacency().edge_count()) + " edges");
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const fs::path dir(opt.output);
    ensure_dir(dir);
    const std::size_t n = pvg.size();
    save_pvgm(dir / "prob.pvgm", n, [&](std::size_t i, std::size_t j) { return pvg.prob(i, j); });
    save_pvgm(dir / "strength.pvgm", n,
              [&](std::size_t i, std::size_t j) { return pvg.strength(i, j); });
    save_pvgm(dir / "weighted.pvgm", n,
              [&](std::size_t i, std::size_t j) { return pvg.weighted(i, j); });
    save_edge_list(dir / "edges.csv", pvg.adjacency());
    if (opt.dense_csv) {
        save_dense_csv(dir / "prob.csv", n, [&](std::size_t i, std::size_t j) { return pvg.prob(i, j); });
        save_dense_csv(dir / "strength.csv", n,
                       [&](std::size_t i, std::size_t j) { return pvg.strength(i, j); });
        save_dense_csv(dir / "weighted.csv", n,
                       [&](std::size_t i, std::size_t j) { return pvg.weighted(i, j); });
    }

    json report;
    report["n_nodes"] = n;
    report["n_edges"] = pvg.adjacency().edge_count();
    report["rho"] = opt.params.rho;
    report["p0"] = opt.params.p0;
    report["dt"] = series.dt();
    report["original_min"] = series.original_min();
    report["original_max"] = series.original_max();
    report["constant_series"] = series.is_constant();
    if (opt.timing) report["wall_time_s"] = seconds;
    write_text(dir / "report.json", dump(report));

    out << "N=" << n << " edges=" << pvg.adjacency().edge_count() << " wall_time_s="
        << format_double(seconds) << "\n";
    return kExitOk;
}

int cmd_metrics(const MetricsOptions& opt, unsigned threads, std::ostream& out,
                std::ostream& err, const Log& log) {
    Adjacency adjacency;
    if (opt.graph) {
        adjacency = load_edge_list(*opt.graph, opt.nodes);
    } else if (opt.input) {
        opt.params.validate();
        const auto series = normalize(load_series_csv(*opt.input, opt.dt));
        adjacency = build_pvg(series, opt.params, threads).adjacency();
    } else {
        throw Error(ErrorCode::InvalidConfig, "metrics needs --graph or --input");
    }

    log("graph: " + std::to_string(adjacency.size()) + " nodes, " +
        std::to_string(adjacency.edge_count()) + " edges");
    const std::size_t components = count_components(adjacency);
    if (adjacency.size() < 2 || components != 1) {
        json e = {{"error", "Disconnected"}, {"components", components}};
        err << e.dump() << "\n";
        return kExitComputation;
    }

    std::optional<BaselineConfig> baseline;
    if (!opt.no_baseline) baseline = opt.baseline;
    const auto metrics = compute_all(adjacency, baseline, MetricSelection{}, threads);
    write_text(opt.output, dump(metrics_to_json(metrics)));
    out << "N=" << metrics.n_nodes << " edges=" << metrics.n_edges << "\n";
    return kExitOk;
}

int cmd_sweep(const SweepOptions& opt, unsigned threads, std::ostream& out, const Log& log) {
    const auto cfg = load_experiment_config(opt.config);
    log("running " + std::string(cfg.kind == ExperimentConfig::Kind::Fig2 ? "fig2" : "fig3") + " sweep over " +
        std::to_string(cfg.sweep.rho_grid.size()) + " x " + std::to_string(cfg.sweep.p0_grid.size()) +
        " (rho, p0) cells per segment");
    const auto result = run_experiment(cfg, threads);
    log("sweep finished: " + std::to_string(result.cells.size()) + " cells");

    const fs::path dir(opt.output);
    ensure_dir(dir);
    {
        std::ostringstream cells;
        write_cells_csv(cells, result, cfg.sweep);
        write_text(dir / "cells.csv", cells.str());
    }
    {
        std::ostringstream agg;
        write_aggregates_csv(agg, result);
        write_text(dir / "aggregates.csv", agg.str());
    }
    write_text(dir / "sweep.json", dump(sweep_to_json(result, cfg.sweep)));
    write_text(dir / "manifest.json", dump(experiment_manifest(cfg)));

    std::size_t failed = 0;
    for (const auto& c : result.cells) failed += c.metrics ? 0 : 1;
    out << "cells=" << result.cells.size() << " failed=" << failed << "\n";
    if (!result.cells.empty() && failed == result.cells.size()) return kExitComputation;
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Probabilistic visibility graphs for time series", "pvg"};
    app.require_subcommand(1);
    app.fallthrough();
    std::optional<unsigned> threads;
    app.add_option("--threads", threads, "worker threads (default: PVG_THREADS or all cores)");
    bool verbose = false;
    app.add_flag("--verbose,-v", verbose, "progress messages on stderr");

    GenerateOptions gen;
    auto* generate = app.add_subcommand("generate", "write an amplitude-modulated test signal");
    generate->add_option("--output,-o", gen.output, "CSV destination")->required();
    generate->add_option("--config", gen.config, "JSON config with an am_signal section");
    generate->add_option("--seed", gen.am.rng_seed, "noise seed");
    generate->add_option("--carrier-amplitude", gen.am.carrier_amplitude);
    generate->add_option("--carrier-hz", gen.am.carrier_hz);
    generate->add_option("--modulation-hz", gen.am.modulation_hz);
    generate->add_option("--modulation-depth", gen.am.modulation_depth);
    generate->add_option("--noise-std", gen.am.noise_std);
    generate->add_option("--duration", gen.am.duration_s, "seconds");
    generate->add_option("--dt", gen.am.dt, "sample interval in seconds");

    BuildOptions bld;
    auto* build = app.add_subcommand("build", "build a PVG and export its matrices");
    build->add_option("--input,-i", bld.input, "series CSV")->required();
    build->add_option("--output,-o", bld.output, "output directory")->required();
    build->add_option("--rho", bld.params.rho, "decay parameter");
    build->add_option("--p0", bld.params.p0, "threshold probability");
    build->add_option("--dt", bld.dt, "sample interval for value-only CSVs");
    build->add_flag("--dense-csv", bld.dense_csv, "also write dense CSV matrices");
    build->add_flag("--report-timing", bld.timing, "record wall time in report.json");

    MetricsOptions met;
    auto* metrics = app.add_subcommand("metrics", "network statistics of a graph");
    metrics->add_option("--graph,-g", met.graph, "edge list CSV");
    metrics->add_option("--nodes", met.nodes, "node count for --graph");
    metrics->add_option("--input,-i", met.input, "series CSV (built with --rho/--p0)");
    metrics->add_option("--rho", met.params.rho);
    metrics->add_option("--p0", met.params.p0);
    metrics->add_option("--dt", met.dt, "sample interval for value-only CSVs");
    metrics->add_option("--realizations", met.baseline.n_realizations, "random baseline graphs");
    metrics->add_option("--seed", met.baseline.rng_seed, "baseline seed");
    metrics->add_flag("--no-baseline", met.no_baseline, "skip small-worldness");
    metrics->add_option("--output,-o", met.output, "JSON destination")->required();

    SweepOptions swp;
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep from a config document");
    sweep->add_option("--config,-c", swp.config, "JSON config or manifest")->required();
    sweep->add_option("--output,-o", swp.output, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        const unsigned n_threads = thread_count(threads);
        const Log log(err, verbose);
        if (*generate) return cmd_generate(gen, out, log);
        if (*build) return cmd_build(bld, n_threads, out, log);
        if (*metrics) return cmd_metrics(met, n_threads, out, err, log);
        if (*sweep) return cmd_sweep(swp, n_threads, out, log);
    } catch (const DisconnectedError& e) {
        err << json{{"error", "Disconnected"}, {"components", e.components()}}.dump() << "\n";
        return kExitComputation;
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitComputation;
    }
    return kExitConfig;
}

int run_cli(int argc, char** argv) { return run_cli(argc, argv, std::cout, std::cerr); }

}  // namespace pvg
