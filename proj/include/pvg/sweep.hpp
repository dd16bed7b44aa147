#pragma once

#include "pvg/metrics.hpp"
#include "pvg/preprocess.hpp"
#include "pvg/series.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pvg {

enum class Metric { L, C, Density, MeanDegree, KMax, Sigma, Gamma };

[[nodiscard]] std::string_view metric_name(Metric m) noexcept;
/// Accepts the names produced by metric_name. Throws Error(InvalidConfig).
[[nodiscard]] Metric parse_metric(std::string_view name);

/// `count` values 10^lo .. 10^hi, evenly spaced in log10.
[[nodiscard]] std::vector<double> log_grid(double log10_lo, double log10_hi, std::size_t count);

struct SweepConfig {
    std::vector<double> rho_grid = default_rho_grid();
    std::vector<double> p0_grid = default_p0_grid();
    std::optional<BaselineConfig> baseline;
    std::vector<Metric> metrics = {Metric::L, Metric::C, Metric::KMax};

    /// Grids non-empty, strictly increasing, rho >= 0, p0 in [0, 1].
    void validate() const;
    [[nodiscard]] bool enabled(Metric m) const;

    /// 30 log-spaced points over [1e-1, 1e4].
    [[nodiscard]] static std::vector<double> default_rho_grid();
    [[nodiscard]] static std::vector<double> default_p0_grid();
};

struct CellRecord {
    double rho = 0.0;
    double p0 = 0.0;
    std::size_t segment_id = 0;
    std::optional<GraphMetrics> metrics;  ///< empty when the cell failed
    std::string error;
};

/// Mean and population standard deviation of one metric across segments.
/// Empty when no segment produced a value.
struct AggregateRecord {
    double rho = 0.0;
    double p0 = 0.0;
    std::string metric;
    std::optional<double> mean;
    std::optional<double> std;
    std::size_t count = 0;
};

struct SweepResult {
    std::size_t n_segments = 0;
    std::vector<CellRecord> cells;  ///< ordered by (segment, rho, p0)
    std::vector<AggregateRecord> aggregates;  ///< ordered by (rho, p0, metric)
};

/// Named metric values for one cell, in output column order: n_edges, then
/// each enabled metric (sigma brings C_rand and L_rand, gamma brings
/// gamma_r2).
[[nodiscard]] std::vector<std::pair<std::string, std::optional<double>>> metric_values(
    const GraphMetrics& metrics, const SweepConfig& cfg);

/// Recomputes the aggregates of `result` from its cells.
[[nodiscard]] std::vector<AggregateRecord> aggregate(const std::vector<CellRecord>& cells,
                                                     const SweepConfig& cfg);

/// Every (segment, rho, p0) cell: threshold the segment's PVG and compute the
/// enabled metrics. A failing cell is recorded with its error and the sweep
/// continues. Output is independent of `threads`.
[[nodiscard]] SweepResult run_sweep(const std::vector<NormalizedSeries>& segments,
                                    const SweepConfig& cfg, unsigned threads = 0);

/// Generate the AM signal, normalize it, sweep the single full series.
[[nodiscard]] SweepResult reproduce_fig2(const AmSignalParams& params, const SweepConfig& cfg,
                                         unsigned threads = 0);

/// Filter, decimate and segment the recording, normalize each segment,
/// sweep all segments.
[[nodiscard]] SweepResult reproduce_fig3(const TimeSeries& recording,
                                         const PreprocessConfig& pre_cfg, const SweepConfig& cfg,
                                         unsigned threads = 0);

}  // namespace pvg
