#include "pvg/matrix_io.hpp"

#include "pvg/error.hpp"
#include "pvg/format.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

namespace pvg {

namespace {

constexpr std::array<char, 4> kMagic = {'P', 'V', 'G', 'M'};

template <typename T>
void put_le(std::ostream& out, T value) {
    static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);
    std::array<char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    out.write(bytes.data(), bytes.size());
}

template <typename T>
bool get_le(std::istream& in, T& value) {
    std::array<char, sizeof(T)> bytes;
    if (!in.read(bytes.data(), bytes.size())) return false;
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    std::memcpy(&value, bytes.data(), sizeof(T));
    return true;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

bool parse_index(std::string_view s, std::size_t& out) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

void write_pvgm(std::ostream& out, std::size_t n, const EntryFn& entry) {
    if (n > std::numeric_limits<std::uint32_t>::max()) {
        throw Error(ErrorCode::InvalidParams, "matrix too large for the PVGM format");
    }
    out.write(kMagic.data(), kMagic.size());
    put_le(out, static_cast<std::uint32_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) put_le(out, entry(i, j));
    }
}

void write_pvgm(std::ostream& out, const SymmetricMatrix& m) {
    write_pvgm(out, m.size(), [&](std::size_t i, std::size_t j) { return m(i, j); });
}

void save_pvgm(const std::filesystem::path& path, std::size_t n, const EntryFn& entry) {
    auto out = open_out(path);
    write_pvgm(out, n, entry);
    finish(out, path);
}

SymmetricMatrix read_pvgm(std::istream& in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
        throw Error(ErrorCode::ParseError, "not a PVGM matrix (bad magic)");
    }
    std::uint32_t n = 0;
    if (!get_le(in, n)) throw Error(ErrorCode::ParseError, "truncated PVGM header");
    const std::size_t count = n < 2 ? 0 : std::size_t{n} * (n - 1) / 2;
    std::vector<double> upper(count);
    for (auto& v : upper) {
        if (!get_le(in, v)) throw Error(ErrorCode::ParseError, "truncated PVGM payload");
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        throw Error(ErrorCode::ParseError, "trailing bytes after PVGM payload");
    }
    return SymmetricMatrix(n, std::move(upper));
}

SymmetricMatrix load_pvgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    return read_pvgm(in);
}

void write_dense_csv(std::ostream& out, std::size_t n, const EntryFn& entry) {
    for (std::size_t j = 0; j < n; ++j) out << (j ? "," : "") << j;
    out << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = i == j ? 0.0 : (i < j ? entry(i, j) : entry(j, i));
            out << (j ? "," : "") << format_double(v);
        }
        out << '\n';
    }
}

void save_dense_csv(const std::filesystem::path& path, std::size_t n, const EntryFn& entry) {
    auto out = open_out(path);
    write_dense_csv(out, n, entry);
    finish(out, path);
}

void write_edge_list(std::ostream& out, const Adjacency& adjacency) {
    out << "i,j\n";
    for (const auto& [i, j] : adjacency.edges()) out << i << ',' << j << '\n';
}

void save_edge_list(const std::filesystem::path& path, const Adjacency& adjacency) {
    auto out = open_out(path);
    write_edge_list(out, adjacency);
    finish(out, path);
}

Adjacency read_edge_list(std::istream& in, std::optional<std::size_t> nodes,
                         const std::string& source) {
    std::vector<Edge> edges;
    std::size_t max_index = 0;
    std::size_t line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto comma = line.find(',');
        std::size_t i = 0;
        std::size_t j = 0;
        const bool ok = comma != std::string::npos &&
                        parse_index(std::string_view(line).substr(0, comma), i) &&
                        parse_index(std::string_view(line).substr(comma + 1), j);
        if (!ok) {
            if (line_no == 1 && edges.empty()) continue;  // header
            throw Error(ErrorCode::ParseError,
                        source + ":" + std::to_string(line_no) + ": expected `i,j`");
        }
        if (i == j) {
            throw Error(ErrorCode::ParseError,
                        source + ":" + std::to_string(line_no) + ": self-loop");
        }
        max_index = std::max({max_index, i, j});
        edges.emplace_back(i, j);
    }
    const std::size_t n = nodes ? *nodes : (edges.empty() ? 0 : max_index + 1);
    if (!edges.empty() && max_index >= n) {
        throw Error(ErrorCode::ParseError, source + ": edge index " + std::to_string(max_index) +
                                               " exceeds node count " + std::to_string(n));
    }
    return Adjacency::from_edges(n, edges);
}

Adjacency load_edge_list(const std::filesystem::path& path, std::optional<std::size_t> nodes) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    return read_edge_list(in, nodes, path.string());
}

}  // namespace pvg
