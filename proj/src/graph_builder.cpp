#include "pvg/graph_builder.hpp"

#include "pvg/error.hpp"
#include "pvg/parallel.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace pvg {

namespace {

void check_pair(std::size_t n, std::size_t i, std::size_t j) {
    if (!(i < j && j < n)) {
        throw Error(ErrorCode::IndexOutOfRange, "pair (" + std::to_string(i) + ", " +
                                                    std::to_string(j) + ") invalid for " +
                                                    std::to_string(n) + " nodes");
    }
}

// Height of sample k above the chord from i to j, in index units. The
// sample interval cancels between the chord slope and the time offset.
inline double excess_at(std::span<const double> x, std::size_t i, double slope, std::size_t k) {
    return x[k] - (x[i] + slope * static_cast<double>(k - i));
}

// Row i of the obstruction field: excess for every j > i + 1.
void sweep_row(std::span<const double> x, std::size_t i, SymmetricMatrix& out,
               std::vector<std::size_t>& hull) {
    const std::size_t n = x.size();
    hull.clear();
    for (std::size_t j = i + 2; j < n; ++j) {
        // Append sample j-1 to the upper hull of samples i+1 .. j-1, popping
        // vertices that fall on or below the new supporting segment.
        const std::size_t c = j - 1;
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2];
            const std::size_t b = hull.back();
            const double cross = static_cast<double>(b - a) * (x[c] - x[a]) -
                                 (x[b] - x[a]) * static_cast<double>(c - a);
            if (cross < 0.0) break;
            hull.pop_back();
        }
        hull.push_back(c);

        // Edge slopes decrease along the hull, so the excess is unimodal in
        // the vertex position: the peak is the first vertex whose outgoing
        // edge is no steeper than the chord.
        const double slope = (x[j] - x[i]) / static_cast<double>(j - i);
        std::size_t lo = 0;
        std::size_t hi = hull.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            const std::size_t p = hull[mid];
            const std::size_t q = hull[mid + 1];
            if (x[q] - x[p] <= slope * static_cast<double>(q - p)) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        // Neighbours absorb rounding in the slope comparison.
        double best = excess_at(x, i, slope, hull[lo]);
        if (lo > 0) best = std::max(best, excess_at(x, i, slope, hull[lo - 1]));
        if (lo + 1 < hull.size()) best = std::max(best, excess_at(x, i, slope, hull[lo + 1]));
        out.set(i, j, best);
    }
}

}  // namespace

void PvgParams::validate() const {
    if (!(rho >= 0.0) || !std::isfinite(rho)) {
        throw Error(ErrorCode::InvalidParams, "rho must be finite and >= 0");
    }
    if (!(p0 >= 0.0 && p0 <= 1.0)) throw Error(ErrorCode::InvalidParams, "p0 must lie in [0, 1]");
}

SymmetricMatrix::SymmetricMatrix(std::size_t n, double fill)
    : n_(n), upper_(n < 2 ? 0 : n * (n - 1) / 2, fill) {}

SymmetricMatrix::SymmetricMatrix(std::size_t n, std::vector<double> upper)
    : n_(n), upper_(std::move(upper)) {
    if (upper_.size() != (n < 2 ? 0 : n * (n - 1) / 2)) {
        throw Error(ErrorCode::InvalidParams, "packed triangle size does not match n");
    }
}

ObstructionField compute_obstruction_field(const NormalizedSeries& series, unsigned threads) {
    const auto x = series.values();
    const std::size_t n = x.size();
    SymmetricMatrix excess(n, -std::numeric_limits<double>::infinity());

    // Rows are disjoint slices of the packed triangle.
    parallel_for(n, threads, [&](std::size_t i) {
        thread_local std::vector<std::size_t> hull;
        sweep_row(x, i, excess, hull);
    });
    return ObstructionField(std::move(excess));
}

double obstruction_height_max(const NormalizedSeries& series, std::size_t i, std::size_t j) {
    check_pair(series.size(), i, j);
    const auto x = series.values();
    const double slope = (x[j] - x[i]) / static_cast<double>(j - i);
    double best = 0.0;
    for (std::size_t k = i + 1; k < j; ++k) best = std::max(best, excess_at(x, i, slope, k));
    return best;
}

double interaction_strength(const NormalizedSeries& series, std::size_t i, std::size_t j) {
    check_pair(series.size(), i, j);
    return std::atan(std::abs(series[j] - series[i]) /
                     (static_cast<double>(j - i) * series.dt()));
}

PvgMatrices::PvgMatrices(std::shared_ptr<const ObstructionField> field,
                         const NormalizedSeries& series, PvgParams params)
    : field_(std::move(field)),
      values_(series.values().begin(), series.values().end()),
      dt_(series.dt()),
      params_(params) {
    params_.validate();
    if (!field_ || field_->size() != values_.size()) {
        throw Error(ErrorCode::InvalidParams, "obstruction field does not match the series");
    }
    adjacency_ = threshold_adjacency(*field_, params_);
}

double PvgMatrices::prob(std::size_t i, std::size_t j) const noexcept {
    if (i == j) return 0.0;
    return tunnel_probability(field_->h_max(i, j), params_.rho);
}

double PvgMatrices::strength(std::size_t i, std::size_t j) const noexcept {
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    return std::atan(std::abs(values_[j] - values_[i]) / (static_cast<double>(j - i) * dt_));
}

SymmetricMatrix PvgMatrices::prob_matrix() const {
    SymmetricMatrix m(size());
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = i + 1; j < size(); ++j) m.set(i, j, prob(i, j));
    }
    return m;
}

SymmetricMatrix PvgMatrices::strength_matrix() const {
    SymmetricMatrix m(size());
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = i + 1; j < size(); ++j) m.set(i, j, strength(i, j));
    }
    return m;
}

SymmetricMatrix PvgMatrices::weighted_matrix() const {
    SymmetricMatrix m(size());
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = i + 1; j < size(); ++j) m.set(i, j, weighted(i, j));
    }
    return m;
}

Adjacency threshold_adjacency(const ObstructionField& field, const PvgParams& params) {
    params.validate();
    const std::size_t n = field.size();
    const auto packed = field.excess().upper();
    // exp(-rho h) >= p0 compared in the log domain: at p0 = 1 the budget is
    // exactly 0, so only unobstructed pairs pass whatever rho is, instead of
    // pairs whose tiny rho * h underflows exp to 1.0.
    const double budget = -std::log(params.p0);
    Adjacency adjacency(n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++k) {
            const double h = packed[k] > 0.0 ? packed[k] : 0.0;
            if (params.rho * h <= budget) adjacency.add_edge(i, j);
        }
    }
    return adjacency;
}

PvgMatrices build_pvg(const NormalizedSeries& series, const PvgParams& params, unsigned threads) {
    params.validate();
    auto field = std::make_shared<const ObstructionField>(compute_obstruction_field(series, threads));
    return PvgMatrices(std::move(field), series, params);
}

VgAdjacency build_classical_vg(const ObstructionField& field) {
    const std::size_t n = field.size();
    const auto packed = field.excess().upper();
    VgAdjacency vg{Adjacency(n)};
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++k) {
            if (packed[k] < 0.0) vg.adjacency.add_edge(i, j);
        }
    }
    return vg;
}

VgAdjacency build_classical_vg(const NormalizedSeries& series, unsigned threads) {
    return build_classical_vg(compute_obstruction_field(series, threads));
}

}  // namespace pvg
