#pragma once

#include "pvg/adjacency.hpp"
#include "pvg/graph_builder.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

namespace pvg {

/// Binary matrix format: the 4 bytes "PVGM", a little-endian u32 node count,
/// then the strict upper triangle as little-endian IEEE-754 float64 in
/// row-major order. The diagonal is implicitly zero.
using EntryFn = std::function<double(std::size_t, std::size_t)>;

void write_pvgm(std::ostream& out, std::size_t n, const EntryFn& entry);
void write_pvgm(std::ostream& out, const SymmetricMatrix& m);
void save_pvgm(const std::filesystem::path& path, std::size_t n, const EntryFn& entry);
[[nodiscard]] SymmetricMatrix read_pvgm(std::istream& in);
[[nodiscard]] SymmetricMatrix load_pvgm(const std::filesystem::path& path);

/// Dense N x N CSV: a header row of column indices, then one row per node.
void write_dense_csv(std::ostream& out, std::size_t n, const EntryFn& entry);
void save_dense_csv(const std::filesystem::path& path, std::size_t n, const EntryFn& entry);

/// `i,j` edge list with i < j under an `i,j` header.
void write_edge_list(std::ostream& out, const Adjacency& adjacency);
void save_edge_list(const std::filesystem::path& path, const Adjacency& adjacency);

/// Reads an edge list (header optional). Without `nodes`, the node count is
/// one past the largest index seen.
[[nodiscard]] Adjacency read_edge_list(std::istream& in, std::optional<std::size_t> nodes,
                                       const std::string& source = "<stream>");
[[nodiscard]] Adjacency load_edge_list(const std::filesystem::path& path,
                                       std::optional<std::size_t> nodes);

}  // namespace pvg
