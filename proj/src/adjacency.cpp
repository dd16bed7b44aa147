#include "pvg/adjacency.hpp"

#include "pvg/error.hpp"

#include <bit>
#include <string>

namespace pvg {

Adjacency::Adjacency(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

Adjacency Adjacency::complete(std::size_t n) {
    Adjacency a(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) a.add_edge(i, j);
    }
    return a;
}

Adjacency Adjacency::path(std::size_t n) {
    Adjacency a(n);
    for (std::size_t i = 0; i + 1 < n; ++i) a.add_edge(i, i + 1);
    return a;
}

Adjacency Adjacency::from_edges(std::size_t n, std::span<const Edge> edges) {
    Adjacency a(n);
    for (const auto& [i, j] : edges) {
        if (i >= n || j >= n || i == j) {
            throw Error(ErrorCode::IndexOutOfRange, "invalid edge (" + std::to_string(i) + ", " +
                                                        std::to_string(j) + ") for " +
                                                        std::to_string(n) + " nodes");
        }
        a.add_edge(i, j);
    }
    return a;
}

std::size_t Adjacency::degree(std::size_t i) const noexcept {
    std::size_t d = 0;
    for (auto w : row(i)) d += static_cast<std::size_t>(std::popcount(w));
    return d;
}

std::size_t Adjacency::edge_count() const noexcept {
    std::size_t total = 0;
    for (auto w : bits_) total += static_cast<std::size_t>(std::popcount(w));
    return total / 2;
}

std::vector<Edge> Adjacency::edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            if (has_edge(i, j)) out.emplace_back(i, j);
        }
    }
    return out;
}

Adjacency Adjacency::permuted(std::span<const std::size_t> perm) const {
    Adjacency out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            if (has_edge(perm[i], perm[j])) out.add_edge(i, j);
        }
    }
    return out;
}

bool Adjacency::is_subgraph_of(const Adjacency& other) const noexcept {
    if (n_ != other.n_) return false;
    for (std::size_t k = 0; k < bits_.size(); ++k) {
        if (bits_[k] & ~other.bits_[k]) return false;
    }
    return true;
}

std::vector<std::size_t> degree_sequence(const Adjacency& adjacency) {
    std::vector<std::size_t> degrees(adjacency.size());
    for (std::size_t i = 0; i < adjacency.size(); ++i) degrees[i] = adjacency.degree(i);
    return degrees;
}

}  // namespace pvg
