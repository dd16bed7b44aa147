#include "pvg/sweep.hpp"

#include "pvg/error.hpp"
#include "pvg/graph_builder.hpp"
#include "pvg/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

namespace pvg {

namespace {

constexpr Metric kAllMetrics[] = {Metric::L,          Metric::C,    Metric::Density,
                                  Metric::MeanDegree, Metric::KMax, Metric::Sigma,
                                  Metric::Gamma};

void check_grid(const std::vector<double>& grid, const char* name, double lo, double hi) {
    if (grid.empty()) throw Error(ErrorCode::InvalidConfig, std::string(name) + " is empty");
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!(grid[k] >= lo && grid[k] <= hi)) {
            throw Error(ErrorCode::InvalidConfig, std::string(name) + " value out of range");
        }
        if (k > 0 && !(grid[k] > grid[k - 1])) {
            throw Error(ErrorCode::InvalidConfig, std::string(name) + " must be strictly increasing");
        }
    }
}

}  // namespace

std::string_view metric_name(Metric m) noexcept {
    switch (m) {
        case Metric::L: return "L";
        case Metric::C: return "C";
        case Metric::Density: return "density";
        case Metric::MeanDegree: return "mean_degree";
        case Metric::KMax: return "k_max";
        case Metric::Sigma: return "sigma";
        case Metric::Gamma: return "gamma";
    }
    return "?";
}

Metric parse_metric(std::string_view name) {
    for (auto m : kAllMetrics) {
        if (metric_name(m) == name) return m;
    }
    throw Error(ErrorCode::InvalidConfig, "unknown metric '" + std::string(name) + "'");
}

std::vector<double> log_grid(double log10_lo, double log10_hi, std::size_t count) {
    if (count == 0) return {};
    if (count == 1) return {std::pow(10.0, log10_lo)};
    std::vector<double> grid(count);
    const double step = (log10_hi - log10_lo) / static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) {
        grid[k] = std::pow(10.0, log10_lo + step * static_cast<double>(k));
    }
    grid.back() = std::pow(10.0, log10_hi);
    return grid;
}

std::vector<double> SweepConfig::default_rho_grid() { return log_grid(-1.0, 4.0, 30); }

std::vector<double> SweepConfig::default_p0_grid() { return {0.25, 0.5, 0.75, 1.0}; }

void SweepConfig::validate() const {
    check_grid(rho_grid, "rho_grid", 0.0, HUGE_VAL);
    for (double r : rho_grid) {
        if (!std::isfinite(r)) throw Error(ErrorCode::InvalidConfig, "rho_grid must be finite");
    }
    check_grid(p0_grid, "p0_grid", 0.0, 1.0);
    if (baseline) baseline->validate();
    if (enabled(Metric::Sigma) && !baseline) {
        throw Error(ErrorCode::InvalidConfig, "metric 'sigma' requires a baseline configuration");
    }
}

bool SweepConfig::enabled(Metric m) const {
    return std::find(metrics.begin(), metrics.end(), m) != metrics.end();
}

std::vector<std::pair<std::string, std::optional<double>>> metric_values(
    const GraphMetrics& g, const SweepConfig& cfg) {
    std::vector<std::pair<std::string, std::optional<double>>> out;
    out.emplace_back("n_edges", static_cast<double>(g.n_edges));
    for (auto m : kAllMetrics) {
        if (!cfg.enabled(m)) continue;
        switch (m) {
            case Metric::L: out.emplace_back("L", g.avg_path_length); break;
            case Metric::C: out.emplace_back("C", g.clustering); break;
            case Metric::Density: out.emplace_back("density", g.density); break;
            case Metric::MeanDegree: out.emplace_back("mean_degree", g.mean_degree); break;
            case Metric::KMax: out.emplace_back("k_max", static_cast<double>(g.k_max)); break;
            case Metric::Sigma:
                out.emplace_back("sigma", g.sigma);
                out.emplace_back("C_rand", g.c_rand);
                out.emplace_back("L_rand", g.l_rand);
                break;
            case Metric::Gamma:
                out.emplace_back("gamma", g.gamma);
                out.emplace_back("gamma_r2", g.gamma_r2);
                break;
        }
    }
    return out;
}

std::vector<AggregateRecord> aggregate(const std::vector<CellRecord>& cells,
                                       const SweepConfig& cfg) {
    // (rho index, p0 index) -> metric name -> values in segment order.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::string, std::vector<double>>>>
        groups;
    const auto index_of = [](const std::vector<double>& grid, double v) {
        return static_cast<std::size_t>(std::find(grid.begin(), grid.end(), v) - grid.begin());
    };

    GraphMetrics blank;
    const auto names = metric_values(blank, cfg);
    for (std::size_t r = 0; r < cfg.rho_grid.size(); ++r) {
        for (std::size_t p = 0; p < cfg.p0_grid.size(); ++p) {
            auto& slot = groups[{r, p}];
            for (const auto& [name, value] : names) slot.emplace_back(name, std::vector<double>{});
        }
    }

    for (const auto& cell : cells) {
        if (!cell.metrics) continue;
        auto& slot = groups[{index_of(cfg.rho_grid, cell.rho), index_of(cfg.p0_grid, cell.p0)}];
        const auto values = metric_values(*cell.metrics, cfg);
        for (std::size_t k = 0; k < values.size(); ++k) {
            if (values[k].second) slot[k].second.push_back(*values[k].second);
        }
    }

    std::vector<AggregateRecord> out;
    for (const auto& [key, metrics] : groups) {
        for (const auto& [name, values] : metrics) {
            AggregateRecord rec;
            rec.rho = cfg.rho_grid[key.first];
            rec.p0 = cfg.p0_grid[key.second];
            rec.metric = name;
            rec.count = values.size();
            if (!values.empty()) {
                const auto k = static_cast<double>(values.size());
                double mean = 0.0;
                for (double v : values) mean += v;
                mean /= k;
                double var = 0.0;
                for (double v : values) var += (v - mean) * (v - mean);
                rec.mean = mean;
                rec.std = std::sqrt(var / k);
            }
            out.push_back(std::move(rec));
        }
    }
    return out;
}

SweepResult run_sweep(const std::vector<NormalizedSeries>& segments, const SweepConfig& cfg,
                      unsigned threads) {
    cfg.validate();
    threads = resolve_threads(threads);

    const std::size_t n_seg = segments.size();
    const std::size_t n_rho = cfg.rho_grid.size();
    const std::size_t n_p0 = cfg.p0_grid.size();

    // Geometry once per segment; every (rho, p0) cell is a threshold of it.
    std::vector<std::shared_ptr<const ObstructionField>> fields(n_seg);
    std::vector<std::string> field_errors(n_seg);
    const unsigned inner = n_seg < threads ? threads : 1;
    parallel_for(n_seg, n_seg < threads ? 1 : threads, [&](std::size_t s) {
        try {
            fields[s] = std::make_shared<const ObstructionField>(
                compute_obstruction_field(segments[s], inner));
        } catch (const std::exception& e) {
            field_errors[s] = e.what();
        }
    });

    MetricSelection selection;
    selection.path_length = cfg.enabled(Metric::L) || cfg.enabled(Metric::Sigma);
    selection.clustering = cfg.enabled(Metric::C) || cfg.enabled(Metric::Sigma);
    selection.small_world = cfg.enabled(Metric::Sigma);
    selection.power_law = cfg.enabled(Metric::Gamma);

    SweepResult result;
    result.n_segments = n_seg;
    result.cells.resize(n_seg * n_rho * n_p0);
    parallel_for(result.cells.size(), threads, [&](std::size_t idx) {
        const std::size_t s = idx / (n_rho * n_p0);
        const std::size_t r = (idx / n_p0) % n_rho;
        const std::size_t p = idx % n_p0;
        auto& cell = result.cells[idx];
        cell.rho = cfg.rho_grid[r];
        cell.p0 = cfg.p0_grid[p];
        cell.segment_id = s;
        if (!fields[s]) {
            cell.error = field_errors[s];
            return;
        }
        try {
            const auto adjacency = threshold_adjacency(*fields[s], PvgParams{cell.rho, cell.p0});
            cell.metrics = compute_all(adjacency, cfg.baseline, selection, 1);
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
    });

    result.aggregates = aggregate(result.cells, cfg);
    return result;
}

SweepResult reproduce_fig2(const AmSignalParams& params, const SweepConfig& cfg,
                           unsigned threads) {
    cfg.validate();
    std::vector<NormalizedSeries> segments;
    segments.push_back(normalize(generate_am(params)));
    return run_sweep(segments, cfg, threads);
}

SweepResult reproduce_fig3(const TimeSeries& recording, const PreprocessConfig& pre_cfg,
                           const SweepConfig& cfg, unsigned threads) {
    cfg.validate();
    std::vector<NormalizedSeries> segments;
    for (const auto& seg : preprocess(recording, pre_cfg)) segments.push_back(normalize(seg));
    return run_sweep(segments, cfg, threads);
}

}  // namespace pvg
