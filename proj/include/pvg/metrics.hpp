#pragma once

#include "pvg/adjacency.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pvg {

/// Random-graph baseline for small-worldness: n_realizations G(n, m) graphs,
/// realization r seeded with rng_seed + r.
struct BaselineConfig {
    std::size_t n_realizations = 20;
    std::uint64_t rng_seed = 0;

    void validate() const;
};

/// Which of the optional (costly) statistics compute_all evaluates. Node,
/// edge and degree statistics are always filled.
struct MetricSelection {
    bool path_length = true;
    bool clustering = true;
    bool small_world = true;
    bool power_law = true;
};

struct GraphMetrics {
    std::size_t n_nodes = 0;
    std::size_t n_edges = 0;
    double density = 0.0;
    double mean_degree = 0.0;
    std::size_t k_max = 0;
    std::optional<double> avg_path_length;  ///< L
    std::optional<double> clustering;       ///< C
    std::optional<double> sigma;
    std::optional<double> c_rand;
    std::optional<double> l_rand;
    std::optional<double> gamma;
    std::optional<double> gamma_r2;
};

/// Number of connected components (isolated nodes count as components).
[[nodiscard]] std::size_t count_components(const Adjacency& adjacency);

/// Mean shortest-path length over all unordered node pairs. Throws
/// DisconnectedError if some pair is unreachable, Error(InvalidParams) when
/// there are fewer than 2 nodes.
[[nodiscard]] double avg_path_length(const Adjacency& adjacency);

/// Mean shortest-path length within the largest connected component. Returns
/// NaN when that component is a single node.
[[nodiscard]] double largest_component_path_length(const Adjacency& adjacency);

/// Per-node clustering: closed triangles over k(k-1)/2; nodes of degree < 2
/// score 0.
[[nodiscard]] std::vector<double> local_clustering(const Adjacency& adjacency);

/// Average of local_clustering over all nodes. Requires N >= 3.
[[nodiscard]] double clustering_coefficient(const Adjacency& adjacency);

/// Uniform random simple graph with exactly `m` edges.
[[nodiscard]] Adjacency erdos_renyi_gnm(std::size_t n, std::size_t m, std::uint64_t seed);

struct SmallWorld {
    double sigma = 0.0;
    double clustering = 0.0;
    double path_length = 0.0;
    double c_rand = 0.0;
    double l_rand = 0.0;
};

/// sigma = (C / C_rand) / (L / L_rand) against G(n, m) graphs with the same
/// node and edge counts. Throws DisconnectedError for a disconnected input and
/// Error(DegenerateBaseline) when C_rand = 0 or L_rand is undefined.
[[nodiscard]] SmallWorld small_worldness(const Adjacency& adjacency, const BaselineConfig& cfg,
                                         unsigned threads = 1);

struct DegreeBin {
    std::size_t degree;
    double probability;
};

/// Relative frequency of each distinct degree >= 1, ascending by degree.
/// Degree-0 nodes count towards the total but get no bin.
[[nodiscard]] std::vector<DegreeBin> degree_distribution(std::span<const std::size_t> degrees);

struct PowerLawFit {
    double gamma = 0.0;
    double r2 = 0.0;
    std::size_t support = 0;
};

/// Ordinary least squares of log P(k) on log k; gamma is minus the slope.
/// Bins with zero probability are dropped. Throws
/// Error(InsufficientSupport) with fewer than 3 usable bins.
[[nodiscard]] PowerLawFit fit_power_law(std::span<const DegreeBin> distribution);

/// degree_distribution followed by fit_power_law.
[[nodiscard]] PowerLawFit power_law_exponent(std::span<const std::size_t> degrees);

/// Every statistic that applies; sigma and gamma (and L on a disconnected
/// graph) are left empty instead of failing the call.
[[nodiscard]] GraphMetrics compute_all(const Adjacency& adjacency,
                                       const std::optional<BaselineConfig>& baseline,
                                       const MetricSelection& selection = {},
                                       unsigned threads = 1);

}  // namespace pvg
