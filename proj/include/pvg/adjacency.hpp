#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace pvg {

using Edge = std::pair<std::size_t, std::size_t>;

/// Undirected simple graph stored as a dense symmetric bit matrix. Each row
/// is a bitset over all nodes, so neighbourhood intersections and BFS
/// frontier expansion work a word at a time. Self-loops are rejected.
class Adjacency {
public:
    Adjacency() = default;
    explicit Adjacency(std::size_t n);

    [[nodiscard]] static Adjacency complete(std::size_t n);
    [[nodiscard]] static Adjacency path(std::size_t n);
    /// Throws Error(IndexOutOfRange) on out-of-range endpoints or self-loops.
    [[nodiscard]] static Adjacency from_edges(std::size_t n, std::span<const Edge> edges);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t words_per_row() const noexcept { return words_; }

    [[nodiscard]] bool has_edge(std::size_t i, std::size_t j) const noexcept {
        return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
    }
    void add_edge(std::size_t i, std::size_t j) noexcept {
        bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
        bits_[j * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
    }
    void remove_edge(std::size_t i, std::size_t j) noexcept {
        bits_[i * words_ + j / 64] &= ~(std::uint64_t{1} << (j % 64));
        bits_[j * words_ + i / 64] &= ~(std::uint64_t{1} << (i % 64));
    }

    [[nodiscard]] std::span<const std::uint64_t> row(std::size_t i) const noexcept {
        return {bits_.data() + i * words_, words_};
    }

    [[nodiscard]] std::size_t degree(std::size_t i) const noexcept;
    [[nodiscard]] std::size_t edge_count() const noexcept;
    /// Edges (i, j) with i < j in row-major order.
    [[nodiscard]] std::vector<Edge> edges() const;

    /// Node i of the result is node perm[i] of this graph.
    [[nodiscard]] Adjacency permuted(std::span<const std::size_t> perm) const;
    [[nodiscard]] bool is_subgraph_of(const Adjacency& other) const noexcept;

    friend bool operator==(const Adjacency&, const Adjacency&) = default;

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

[[nodiscard]] std::vector<std::size_t> degree_sequence(const Adjacency& adjacency);

}  // namespace pvg
