#pragma once

#include "pvg/metrics.hpp"
#include "pvg/preprocess.hpp"
#include "pvg/series.hpp"
#include "pvg/sweep.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

namespace pvg {

/// Flat object with fixed keys; absent metrics are null.
[[nodiscard]] nlohmann::json metrics_to_json(const GraphMetrics& metrics);

/// Long format `rho,p0,segment_id,metric,value,error`. A failed cell is one
/// row with empty metric/value and the error message.
void write_cells_csv(std::ostream& out, const SweepResult& result, const SweepConfig& cfg);
/// `rho,p0,metric,mean,std`; empty fields when no segment produced a value.
void write_aggregates_csv(std::ostream& out, const SweepResult& result);
/// {"cells": [...], "aggregates": [...]} mirroring both CSVs.
[[nodiscard]] nlohmann::json sweep_to_json(const SweepResult& result, const SweepConfig& cfg);

/// Seeded 1/f surrogate standing in for a real recording.
struct SurrogateParams {
    double duration_s = 300.0;
    double rate_hz = 1000.0;
    double std_dev = 1.0;
    std::uint64_t seed = 0;
};

/// Everything needed to rerun a sweep bit-identically.
struct ExperimentConfig {
    enum class Kind { Fig2, Fig3 };

    Kind kind = Kind::Fig2;
    AmSignalParams am;                       ///< fig2
    std::optional<std::string> input_path;   ///< fig3: CSV recording ...
    double input_dt = 0.001;                 ///< ... and its dt when the file has no times
    SurrogateParams surrogate;               ///< fig3 without input_path
    PreprocessConfig preprocess;             ///< fig3
    SweepConfig sweep;
};

/// Reads a config document. Missing sections take defaults; a top-level
/// "seed" fills any seed left unspecified. Relative input paths are resolved
/// against `base_dir`. Throws Error(InvalidConfig).
[[nodiscard]] ExperimentConfig parse_experiment_config(const nlohmann::json& doc,
                                                       const std::filesystem::path& base_dir);
[[nodiscard]] ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// The fully resolved config (explicit grids and seeds). Parsing the manifest
/// yields an identical config.
[[nodiscard]] nlohmann::json experiment_manifest(const ExperimentConfig& cfg);

[[nodiscard]] SweepResult run_experiment(const ExperimentConfig& cfg, unsigned threads = 0);

}  // namespace pvg
