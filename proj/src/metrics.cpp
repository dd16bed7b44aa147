#include "pvg/metrics.hpp"

#include "pvg/error.hpp"
#include "pvg/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

namespace pvg {

namespace {

using Word = std::uint64_t;

// Breadth-first search over bit rows. Each level either pushes the frontier
// rows forward (top-down) or asks every unvisited node whether it touches
// the frontier (bottom-up), whichever touches fewer rows.
class BitBfs {
public:
    explicit BitBfs(const Adjacency& adjacency)
        : adj_(adjacency),
          words_(adjacency.words_per_row()),
          visited_(words_),
          frontier_(words_),
          next_(words_) {}

    struct Result {
        std::uint64_t distance_sum = 0;
        std::size_t reached = 0;
    };

    Result run(std::size_t source) {
        const std::size_t n = adj_.size();
        std::fill(visited_.begin(), visited_.end(), 0);
        std::fill(frontier_.begin(), frontier_.end(), 0);
        set(visited_, source);
        set(frontier_, source);

        Result r{0, 1};
        std::size_t frontier_count = 1;
        std::uint64_t depth = 0;
        while (frontier_count > 0) {
            ++depth;
            std::fill(next_.begin(), next_.end(), 0);
            const std::size_t unvisited = n - r.reached;
            if (frontier_count <= unvisited) {
                for (std::size_t w = 0; w < words_; ++w) {
                    for (Word bits = frontier_[w]; bits; bits &= bits - 1) {
                        const std::size_t u = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                        const auto row = adj_.row(u);
                        for (std::size_t k = 0; k < words_; ++k) next_[k] |= row[k];
                    }
                }
                for (std::size_t k = 0; k < words_; ++k) next_[k] &= ~visited_[k];
            } else {
                for (std::size_t w = 0; w < words_; ++w) {
                    Word open = ~visited_[w];
                    if (w + 1 == words_ && n % 64 != 0) open &= (Word{1} << (n % 64)) - 1;
                    for (; open; open &= open - 1) {
                        const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(open));
                        const auto row = adj_.row(v);
                        for (std::size_t k = 0; k < words_; ++k) {
                            if (row[k] & frontier_[k]) {
                                set(next_, v);
                                break;
                            }
                        }
                    }
                }
            }
            frontier_count = 0;
            for (std::size_t k = 0; k < words_; ++k) {
                frontier_count += static_cast<std::size_t>(std::popcount(next_[k]));
                visited_[k] |= next_[k];
            }
            r.distance_sum += depth * frontier_count;
            r.reached += frontier_count;
            std::swap(frontier_, next_);
        }
        return r;
    }

    [[nodiscard]] const std::vector<Word>& visited() const noexcept { return visited_; }

private:
    static void set(std::vector<Word>& bits, std::size_t i) {
        bits[i / 64] |= Word{1} << (i % 64);
    }

    const Adjacency& adj_;
    std::size_t words_;
    std::vector<Word> visited_;
    std::vector<Word> frontier_;
    std::vector<Word> next_;
};

// Component label per node, labels numbered in order of first appearance.
std::vector<std::size_t> component_labels(const Adjacency& adjacency, std::size_t& count) {
    const std::size_t n = adjacency.size();
    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> label(n, unset);
    BitBfs bfs(adjacency);
    count = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (label[s] != unset) continue;
        bfs.run(s);
        const auto& seen = bfs.visited();
        for (std::size_t v = 0; v < n; ++v) {
            if ((seen[v / 64] >> (v % 64)) & 1u) label[v] = count;
        }
        ++count;
    }
    return label;
}

double mean_path_over(const Adjacency& adjacency, std::span<const std::size_t> nodes) {
    BitBfs bfs(adjacency);
    std::uint64_t total = 0;
    for (std::size_t s : nodes) total += bfs.run(s).distance_sum;
    const auto k = static_cast<double>(nodes.size());
    return static_cast<double>(total) / (k * (k - 1.0));
}

}  // namespace

void BaselineConfig::validate() const {
    if (n_realizations < 1) throw Error(ErrorCode::InvalidConfig, "n_realizations must be >= 1");
}

std::size_t count_components(const Adjacency& adjacency) {
    std::size_t count = 0;
    (void)component_labels(adjacency, count);
    return count;
}

double avg_path_length(const Adjacency& adjacency) {
    const std::size_t n = adjacency.size();
    if (n < 2) throw Error(ErrorCode::InvalidParams, "path length needs at least 2 nodes");
    BitBfs bfs(adjacency);
    std::uint64_t total = 0;
    for (std::size_t s = 0; s < n; ++s) {
        const auto r = bfs.run(s);
        if (r.reached != n) throw DisconnectedError(count_components(adjacency));
        total += r.distance_sum;
    }
    const auto nn = static_cast<double>(n);
    return static_cast<double>(total) / (nn * (nn - 1.0));
}

double largest_component_path_length(const Adjacency& adjacency) {
    std::size_t count = 0;
    const auto label = component_labels(adjacency, count);
    std::vector<std::size_t> sizes(count, 0);
    for (auto l : label) ++sizes[l];
    if (sizes.empty()) return std::numeric_limits<double>::quiet_NaN();
    const auto biggest = static_cast<std::size_t>(
        std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    if (sizes[biggest] < 2) return std::numeric_limits<double>::quiet_NaN();

    std::vector<std::size_t> members;
    members.reserve(sizes[biggest]);
    for (std::size_t v = 0; v < label.size(); ++v) {
        if (label[v] == biggest) members.push_back(v);
    }
    return mean_path_over(adjacency, members);
}

std::vector<double> local_clustering(const Adjacency& adjacency) {
    const std::size_t n = adjacency.size();
    const std::size_t words = adjacency.words_per_row();
    // Each edge (i, j) closes |N(i) & N(j)| triangles at both endpoints;
    // summing over incident edges counts every triangle at a node twice.
    std::vector<std::uint64_t> twice_triangles(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row_i = adjacency.row(i);
        for (std::size_t w = i / 64; w < words; ++w) {
            Word bits = row_i[w];
            if (w == i / 64) bits &= ~((Word{2} << (i % 64)) - 1);  // only j > i
            for (; bits; bits &= bits - 1) {
                const std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                const auto row_j = adjacency.row(j);
                std::uint64_t common = 0;
                for (std::size_t k = 0; k < words; ++k) {
                    common += static_cast<std::uint64_t>(std::popcount(row_i[k] & row_j[k]));
                }
                twice_triangles[i] += common;
                twice_triangles[j] += common;
            }
        }
    }

    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto k = static_cast<double>(adjacency.degree(i));
        if (k < 2.0) continue;
        c[i] = static_cast<double>(twice_triangles[i]) / (k * (k - 1.0));
    }
    return c;
}

double clustering_coefficient(const Adjacency& adjacency) {
    if (adjacency.size() < 3) {
        throw Error(ErrorCode::InvalidParams, "clustering coefficient needs at least 3 nodes");
    }
    const auto c = local_clustering(adjacency);
    return std::accumulate(c.begin(), c.end(), 0.0) / static_cast<double>(c.size());
}

Adjacency erdos_renyi_gnm(std::size_t n, std::size_t m, std::uint64_t seed) {
    const std::size_t total = n < 2 ? 0 : n * (n - 1) / 2;
    if (m > total) {
        throw Error(ErrorCode::InvalidParams, "G(n, m): more edges than node pairs");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n == 0 ? 0 : n - 1);

    // Dense targets are drawn as the complement of a sparse random graph so
    // rejection sampling never needs more than ~2 draws per edge.
    const bool complement = m > total / 2;
    const std::size_t draws = complement ? total - m : m;
    Adjacency sparse(n);
    for (std::size_t placed = 0; placed < draws;) {
        const std::size_t i = pick(rng);
        const std::size_t j = pick(rng);
        if (i == j || sparse.has_edge(i, j)) continue;
        sparse.add_edge(i, j);
        ++placed;
    }
    if (!complement) return sparse;

    Adjacency dense = Adjacency::complete(n);
    for (const auto& [i, j] : sparse.edges()) dense.remove_edge(i, j);
    return dense;
}

namespace {

struct Baseline {
    double c_rand;
    double l_rand;
};

Baseline random_baseline(std::size_t n, std::size_t m, const BaselineConfig& cfg,
                         unsigned threads) {
    cfg.validate();
    std::vector<double> c_rand(cfg.n_realizations);
    std::vector<double> l_rand(cfg.n_realizations);
    parallel_for(cfg.n_realizations, threads, [&](std::size_t r) {
        const auto g = erdos_renyi_gnm(n, m, cfg.rng_seed + r);
        c_rand[r] = clustering_coefficient(g);
        l_rand[r] = largest_component_path_length(g);
    });
    const auto k = static_cast<double>(cfg.n_realizations);
    return {std::accumulate(c_rand.begin(), c_rand.end(), 0.0) / k,
            std::accumulate(l_rand.begin(), l_rand.end(), 0.0) / k};
}

SmallWorld combine(double clustering, double path_length, const Baseline& base) {
    if (!(base.c_rand > 0.0)) {
        throw Error(ErrorCode::DegenerateBaseline, "random baseline has zero clustering");
    }
    if (!std::isfinite(base.l_rand)) {
        throw Error(ErrorCode::DegenerateBaseline, "random baseline has no path of length >= 1");
    }
    SmallWorld out;
    out.clustering = clustering;
    out.path_length = path_length;
    out.c_rand = base.c_rand;
    out.l_rand = base.l_rand;
    out.sigma = (clustering / base.c_rand) / (path_length / base.l_rand);
    return out;
}

}  // namespace

SmallWorld small_worldness(const Adjacency& adjacency, const BaselineConfig& cfg,
                           unsigned threads) {
    cfg.validate();
    const double l = avg_path_length(adjacency);
    const double c = clustering_coefficient(adjacency);
    return combine(c, l, random_baseline(adjacency.size(), adjacency.edge_count(), cfg, threads));
}

std::vector<DegreeBin> degree_distribution(std::span<const std::size_t> degrees) {
    std::map<std::size_t, std::size_t> counts;
    for (auto d : degrees) {
        if (d >= 1) ++counts[d];
    }
    const auto total = static_cast<double>(degrees.size());
    std::vector<DegreeBin> bins;
    bins.reserve(counts.size());
    for (const auto& [k, c] : counts) bins.push_back({k, static_cast<double>(c) / total});
    return bins;
}

PowerLawFit fit_power_law(std::span<const DegreeBin> distribution) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& bin : distribution) {
        if (bin.degree < 1 || !(bin.probability > 0.0)) continue;
        xs.push_back(std::log(static_cast<double>(bin.degree)));
        ys.push_back(std::log(bin.probability));
    }
    if (xs.size() < 3) {
        throw Error(ErrorCode::InsufficientSupport,
                    "power-law fit needs at least 3 distinct degrees, found " +
                        std::to_string(xs.size()));
    }
    const auto count = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / count;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / count;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double dx = xs[k] - mx;
        const double dy = ys[k] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    const double slope = sxy / sxx;
    double ss_res = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double fitted = my + slope * (xs[k] - mx);
        ss_res += (ys[k] - fitted) * (ys[k] - fitted);
    }
    PowerLawFit fit;
    fit.gamma = -slope;
    fit.r2 = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    fit.support = xs.size();
    return fit;
}

PowerLawFit power_law_exponent(std::span<const std::size_t> degrees) {
    const auto bins = degree_distribution(degrees);
    return fit_power_law(bins);
}

GraphMetrics compute_all(const Adjacency& adjacency, const std::optional<BaselineConfig>& baseline,
                         const MetricSelection& selection, unsigned threads) {
    GraphMetrics g;
    const std::size_t n = adjacency.size();
    const auto degrees = degree_sequence(adjacency);
    g.n_nodes = n;
    g.n_edges = adjacency.edge_count();
    const auto nn = static_cast<double>(n);
    const auto m = static_cast<double>(g.n_edges);
    g.density = n < 2 ? 0.0 : 2.0 * m / (nn * (nn - 1.0));
    g.mean_degree = n == 0 ? 0.0 : 2.0 * m / nn;
    g.k_max = degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());

    const bool connected = n >= 2 && count_components(adjacency) == 1;
    if (selection.path_length && connected) g.avg_path_length = avg_path_length(adjacency);
    if (selection.clustering && n >= 3) g.clustering = clustering_coefficient(adjacency);

    if (selection.small_world && baseline && connected && n >= 3) {
        const double l = g.avg_path_length ? *g.avg_path_length : avg_path_length(adjacency);
        const double c = g.clustering ? *g.clustering : clustering_coefficient(adjacency);
        const auto base = random_baseline(n, g.n_edges, *baseline, threads);
        g.c_rand = base.c_rand;
        if (std::isfinite(base.l_rand)) g.l_rand = base.l_rand;
        try {
            g.sigma = combine(c, l, base).sigma;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegenerateBaseline) throw;
        }
    }
    if (selection.power_law) {
        try {
            const auto fit = power_law_exponent(degrees);
            g.gamma = fit.gamma;
            g.gamma_r2 = fit.r2;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::InsufficientSupport) throw;
        }
    }
    return g;
}

}  // namespace pvg
