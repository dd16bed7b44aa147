#pragma once

#include "pvg/adjacency.hpp"
#include "pvg/series.hpp"

#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace pvg {

/// Decay rate and edge threshold of a probabilistic visibility graph.
struct PvgParams {
    double rho = 1.0;  ///< penalty per unit of (normalized) obstruction height, >= 0
    double p0 = 0.5;   ///< minimum tunnelling probability for an edge, in [0, 1]

    /// Throws Error(InvalidParams).
    void validate() const;
};

/// Dense symmetric matrix with a zero diagonal, stored as the packed strict
/// upper triangle in row-major order: (0,1), (0,2), ..., (0,n-1), (1,2), ...
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(std::size_t n, double fill = 0.0);
    SymmetricMatrix(std::size_t n, std::vector<double> upper);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::span<const double> upper() const noexcept { return upper_; }
    [[nodiscard]] std::span<double> upper() noexcept { return upper_; }

    [[nodiscard]] std::size_t offset(std::size_t i, std::size_t j) const noexcept {
        if (i > j) std::swap(i, j);
        return i * n_ - i * (i + 1) / 2 + (j - i - 1);
    }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept {
        return i == j ? 0.0 : upper_[offset(i, j)];
    }
    void set(std::size_t i, std::size_t j, double v) noexcept { upper_[offset(i, j)] = v; }

    friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> upper_;
};

/// Largest signed excess of the intermediate samples over the chord joining
/// each pair of nodes, for all pairs. Adjacent pairs have no intermediates
/// and store -infinity. This is the only O(N^2)-sized geometric quantity;
/// every (rho, p0) graph and the classical VG are thresholds of it.
class ObstructionField {
public:
    [[nodiscard]] std::size_t size() const noexcept { return excess_.size(); }

    /// Signed maximum over intermediates (negative when all lie below the chord).
    [[nodiscard]] double max_excess(std::size_t i, std::size_t j) const noexcept {
        return excess_(i, j);
    }
    /// Obstruction height clamped at zero.
    [[nodiscard]] double h_max(std::size_t i, std::size_t j) const noexcept {
        const double e = excess_(i, j);
        return e > 0.0 ? e : 0.0;
    }
    [[nodiscard]] const SymmetricMatrix& excess() const noexcept { return excess_; }

private:
    friend ObstructionField compute_obstruction_field(const NormalizedSeries&, unsigned);
    explicit ObstructionField(SymmetricMatrix excess) : excess_(std::move(excess)) {}

    SymmetricMatrix excess_;
};

/// Fast path. For each left endpoint the sweep keeps the upper convex hull
/// of the intermediate samples; the farthest point above a chord is a hull
/// vertex located by binary search on edge slopes. O(N^2 log N) overall,
/// parallel over left endpoints (threads = 0 uses all cores).
[[nodiscard]] ObstructionField compute_obstruction_field(const NormalizedSeries& series,
                                                         unsigned threads = 0);

/// Direct scan of the intermediates of one pair: max(0, max_n h_n).
/// Throws Error(IndexOutOfRange) unless i < j < N.
[[nodiscard]] double obstruction_height_max(const NormalizedSeries& series, std::size_t i,
                                            std::size_t j);

/// exp(-rho * h_max).
[[nodiscard]] inline double tunnel_probability(double h_max, double rho) noexcept {
    return std::exp(-rho * h_max);
}

/// arctan(|x_j - x_i| / (t_j - t_i)) on the normalized series, time in the
/// series' own units. Throws Error(IndexOutOfRange) unless i < j < N.
[[nodiscard]] double interaction_strength(const NormalizedSeries& series, std::size_t i,
                                          std::size_t j);

/// P, W, M and the thresholded adjacency of one PVG.
///
/// P/W/M are evaluated entrywise from the shared obstruction field and the
/// normalized samples, so a graph of N = 5000 costs one packed triangle plus
/// a bit matrix. Use the *_matrix() accessors to materialize them.
class PvgMatrices {
public:
    PvgMatrices(std::shared_ptr<const ObstructionField> field, const NormalizedSeries& series,
                PvgParams params);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] const PvgParams& params() const noexcept { return params_; }
    [[nodiscard]] const ObstructionField& field() const noexcept { return *field_; }

    [[nodiscard]] double prob(std::size_t i, std::size_t j) const noexcept;
    [[nodiscard]] double strength(std::size_t i, std::size_t j) const noexcept;
    [[nodiscard]] double weighted(std::size_t i, std::size_t j) const noexcept {
        return strength(i, j) * prob(i, j);
    }
    [[nodiscard]] const Adjacency& adjacency() const noexcept { return adjacency_; }

    [[nodiscard]] SymmetricMatrix prob_matrix() const;
    [[nodiscard]] SymmetricMatrix strength_matrix() const;
    [[nodiscard]] SymmetricMatrix weighted_matrix() const;

private:
    std::shared_ptr<const ObstructionField> field_;
    std::vector<double> values_;
    double dt_;
    PvgParams params_;
    Adjacency adjacency_;
};

/// Edge (i, j) iff exp(-rho * h_max(i, j)) >= p0, evaluated as
/// rho * h_max <= -ln(p0) so that p0 = 1 admits exactly the pairs with h_max = 0.
[[nodiscard]] Adjacency threshold_adjacency(const ObstructionField& field,
                                            const PvgParams& params);

[[nodiscard]] PvgMatrices build_pvg(const NormalizedSeries& series, const PvgParams& params,
                                    unsigned threads = 0);

/// Classical visibility graph: every intermediate strictly below the chord.
/// A collinear intermediate blocks visibility.
struct VgAdjacency {
    Adjacency adjacency;

    [[nodiscard]] std::size_t size() const noexcept { return adjacency.size(); }
};

[[nodiscard]] VgAdjacency build_classical_vg(const ObstructionField& field);
[[nodiscard]] VgAdjacency build_classical_vg(const NormalizedSeries& series, unsigned threads = 0);

}  // namespace pvg
