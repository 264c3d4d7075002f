#pragma once

// Finite subgraphs of the hypercube Q_N with a proper edge coloring.
//
// Vertices are bit vectors of length N <= 64 stored in a machine word; bit 0
// is the least significant position. Text serialization writes N characters,
// most significant bit first, so "001" is the vertex with only bit 0 set.

#include "rainbow/error.hpp"
#include "rainbow/report.hpp"

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rainbow {

using Color = std::uint32_t;
using Coordinate = int;

inline constexpr int kMaxDimension = 64;

struct CubeVertex {
    std::uint64_t bits = 0;

    constexpr auto flip(Coordinate i) const -> CubeVertex { return {bits ^ (std::uint64_t{1} << i)}; }
    constexpr auto test(Coordinate i) const -> bool { return (bits >> i) & 1U; }

    friend constexpr auto operator<=>(const CubeVertex&, const CubeVertex&) = default;
};

struct CubeVertexHash {
    auto operator()(CubeVertex v) const noexcept -> std::size_t { return std::hash<std::uint64_t>{}(v.bits); }
};

/// Index of the single bit in which u and v differ. Throws DifferingBitCount otherwise.
auto edge_coordinate(CubeVertex u, CubeVertex v) -> Coordinate;

auto to_binary(CubeVertex v, int dimension) -> std::string;

/// Parses an MSB-first binary string. Throws ParseError on bad characters or length > 64.
auto parse_binary(std::string_view text) -> CubeVertex;

/// Set of coordinates, all below 64.
class CoordSet {
public:
    constexpr CoordSet() = default;
    constexpr explicit CoordSet(std::uint64_t mask) : mask_(mask) {}

    constexpr void insert(Coordinate c) { mask_ |= std::uint64_t{1} << c; }
    constexpr auto contains(Coordinate c) const -> bool { return (mask_ >> c) & 1U; }
    constexpr auto size() const -> int { return std::popcount(mask_); }
    constexpr auto empty() const -> bool { return mask_ == 0; }
    constexpr auto mask() const -> std::uint64_t { return mask_; }

    constexpr auto operator|(CoordSet o) const -> CoordSet { return CoordSet{mask_ | o.mask_}; }
    constexpr auto operator-(CoordSet o) const -> CoordSet { return CoordSet{mask_ & ~o.mask_}; }
    constexpr auto operator|=(CoordSet o) -> CoordSet& { mask_ |= o.mask_; return *this; }
    friend constexpr auto operator==(CoordSet, CoordSet) -> bool = default;

private:
    std::uint64_t mask_ = 0;
};

/// Small flat set of opaque color ids.
class ColorSet {
public:
    ColorSet() = default;
    ColorSet(std::initializer_list<Color> colors);

    void insert(Color c);
    auto contains(Color c) const -> bool { return std::binary_search(colors_.begin(), colors_.end(), c); }
    auto size() const -> int { return static_cast<int>(colors_.size()); }
    auto empty() const -> bool { return colors_.empty(); }
    auto values() const -> std::span<const Color> { return colors_; }

    /// Number of elements of `other` not already present.
    auto count_new(const ColorSet& other) const -> int;
    void merge(const ColorSet& other);

    friend auto operator==(const ColorSet&, const ColorSet&) -> bool = default;

private:
    std::vector<Color> colors_;
};

struct IncidentEdge {
    Coordinate coordinate = 0;
    Color color = 0;
    CubeVertex neighbor;
};

struct GraphEdge {
    CubeVertex u;
    CubeVertex v;
    Color color = 0;
    Coordinate coordinate = -1;  // -1 when u and v do not differ in exactly one bit
};

/// Edge as given by a caller, before coordinates are computed.
struct RawEdge {
    CubeVertex u;
    CubeVertex v;
    Color color = 0;
};

/// Immutable colored subgraph of Q_N. Construction never throws on invariant
/// violations; `validate` reports them. Queries assume a validated graph.
///
/// A graph is either explicit (vertex and edge lists) or the implicit full
/// Cayley-colored cube, which answers local queries without materializing
/// 2^N vertices.
class ColoredCubeGraph {
public:
    ColoredCubeGraph() = default;

    /// Explicit graph. Endpoints of edges are added to the vertex set unless
    /// `strict_vertices` is set.
    ColoredCubeGraph(int dimension, std::vector<CubeVertex> vertices, const std::vector<RawEdge>& edges,
        bool strict_vertices = false);

    /// Full Q_n with color(e) = coordinate(e), never materialized.
    static auto implicit_cayley(int dimension) -> ColoredCubeGraph;

    auto dimension() const -> int { return dimension_; }
    auto is_implicit() const -> bool { return implicit_; }
    auto num_vertices() const -> std::uint64_t;
    auto num_edges() const -> std::uint64_t;
    auto contains(CubeVertex x) const -> bool;

    /// Minimum degree over all vertices (0 for an empty graph), cached.
    auto min_degree() const -> int { return min_degree_; }
    auto degree(CubeVertex x) const -> int;

    /// Visits valid edges at x in increasing coordinate order.
    template <typename F>
    void for_each_incident(CubeVertex x, F&& f) const
    {
        if (implicit_) {
            for (Coordinate i = 0; i < dimension_; ++i)
                f(IncidentEdge{i, static_cast<Color>(i), x.flip(i)});
            return;
        }
        auto it = index_.find(x);
        if (it == index_.end())
            return;
        for (const auto& e : adjacency_[it->second])
            f(e);
    }

    auto incident(CubeVertex x) const -> std::vector<IncidentEdge>;
    auto edge_color(CubeVertex u, CubeVertex v) const -> std::optional<Color>;

    /// Sorted vertex list. Throws TooLarge for implicit cubes above 2^24 vertices.
    auto vertices() const -> std::vector<CubeVertex>;
    /// All edges with u < v, including malformed ones. Throws TooLarge like `vertices`.
    auto edges() const -> std::vector<GraphEdge>;

    /// Colors that appear on at least one edge, sorted.
    auto palette() const -> std::vector<Color>;

    auto strict_vertices() const -> bool { return strict_; }

private:
    int dimension_ = 0;
    bool implicit_ = false;
    bool strict_ = false;
    int min_degree_ = 0;
    std::vector<CubeVertex> vertices_;
    std::unordered_map<CubeVertex, std::uint32_t, CubeVertexHash> index_;
    std::vector<std::vector<IncidentEdge>> adjacency_;
    std::vector<GraphEdge> edges_;
};

struct DegreeSummary {
    int min_degree = 0;
    std::vector<std::pair<CubeVertex, int>> degrees;  // sorted by vertex
};

/// Full Q_n with color(e) = coordinate(e). Explicit for n <= 20, implicit above.
auto cayley_coloring(int n) -> ColoredCubeGraph;

/// Checks every type invariant; each check carries the first witness found.
auto validate(const ColoredCubeGraph& g) -> VerificationReport;

/// Throws EmptyGraph when g has no vertices.
auto min_degree(const ColoredCubeGraph& g) -> DegreeSummary;

/// Edges at x avoiding the given colors and coordinates, ordered by coordinate.
/// Throws VertexNotInGraph.
auto candidate_edges(const ColoredCubeGraph& g, CubeVertex x, const ColorSet& forbidden_colors,
    CoordSet forbidden_coords) -> std::vector<IncidentEdge>;

}  // namespace rainbow
