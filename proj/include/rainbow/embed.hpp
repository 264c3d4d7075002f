#pragma once

// Constructive rainbow embedding of trees into colored hypercube subgraphs.
//
// The engine builds a doubly distinct map of floor(T/2) (distinct colors and
// distinct coordinates), then extends it edge by edge. Every extension avoids
// a set of colors and a set of coordinates; the counting precondition
//
//     |avoid_colors| + |avoid_coords| - r < min degree
//
// (r = number of witness edges at the attachment vertex whose color and
// coordinate both lie in the avoided sets) guarantees a candidate exists.
// Pruned host subgraphs are GraphView filters carrying a lower bound on their
// minimum degree; the bound drops by one per removed color or coordinate class.

#include "rainbow/hypercube.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/tree.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rainbow {

/// Sound injectivity test for a walk in the cube: true when more than m/2 of the
/// m edges use distinct coordinates, so the endpoints differ. False is inconclusive.
auto endpoints_must_differ(std::span<const Coordinate> coords) -> bool;

/// For every pair k < m of path positions at even distance, the first
/// (m-k)/2 + 1 edges of the subwalk from position k use distinct coordinates.
/// This certifies injectivity of a path image through endpoints_must_differ.
auto sliding_window_sound(std::span<const Coordinate> coords) -> bool;

/// Host graph with some color and coordinate classes removed.
class GraphView {
public:
    explicit GraphView(const ColoredCubeGraph& g);

    /// Removes further classes. The degree bound drops by the number of newly removed classes.
    auto restrict(const ColorSet& colors, CoordSet coords) const -> GraphView;

    auto base() const -> const ColoredCubeGraph& { return *graph_; }
    auto degree_bound() const -> int { return degree_bound_; }
    auto forbidden_colors() const -> const ColorSet& { return colors_; }
    auto forbidden_coords() const -> CoordSet { return coords_; }

    auto allows(const IncidentEdge& e) const -> bool
    {
        return !coords_.contains(e.coordinate) && !colors_.contains(e.color);
    }
    auto has_edge(CubeVertex u, CubeVertex v) const -> bool;

private:
    const ColoredCubeGraph* graph_;
    ColorSet colors_;
    CoordSet coords_;
    int degree_bound_;
};

struct EdgeImage {
    Color color = 0;
    Coordinate coordinate = 0;
};

/// Partial map of tree vertices into the host. Edges are named by their child
/// vertex; an edge is mapped once both endpoints are. Rainbow at all times.
class PartialEmbedding {
public:
    PartialEmbedding(const RootedTree& tree, const ColoredCubeGraph& graph);

    auto tree() const -> const RootedTree& { return *tree_; }
    auto graph() const -> const ColoredCubeGraph& { return *graph_; }

    auto is_mapped(TreeVertex v) const -> bool { return image_[v].has_value(); }
    auto image(TreeVertex v) const -> CubeVertex;
    auto edge(TreeVertex child) const -> const std::optional<EdgeImage>& { return edges_[child]; }
    auto used_colors() const -> const ColorSet& { return used_colors_; }
    auto mapped_edge_count() const -> int { return mapped_edges_; }
    auto is_total() const -> bool;

    /// Maps an isolated starting vertex (no mapped neighbours).
    void map_vertex(TreeVertex v, CubeVertex x);
    /// Maps `child` across host edge `e` at the image of its parent.
    void map_edge(TreeVertex child, const IncidentEdge& e);

    /// Colors and coordinates of the mapped edges among `edges`.
    auto colors_of(std::span<const TreeVertex> edges) const -> ColorSet;
    auto coords_of(std::span<const TreeVertex> edges) const -> CoordSet;
    /// All mapped edges among `edges` carry pairwise distinct colors and coordinates.
    auto doubly_distinct_on(std::span<const TreeVertex> edges) const -> bool;

    /// Images of all vertices; requires a total map.
    auto images() const -> std::vector<CubeVertex>;

private:
    const RootedTree* tree_;
    const ColoredCubeGraph* graph_;
    std::vector<std::optional<CubeVertex>> image_;
    std::vector<std::optional<EdgeImage>> edges_;
    ColorSet used_colors_;
    int mapped_edges_ = 0;
};

struct TraceEntry {
    std::string step;
    TreeVertex parent = -1;  // -1 for the starting vertex
    TreeVertex child = 0;
    CubeVertex from;
    CubeVertex to;
    Color color = 0;
    Coordinate coordinate = -1;
    int avoid_colors = 0;
    int avoid_coords = 0;
    int witnesses = 0;
    int depth = 0;
};

using EmbedTrace = std::vector<TraceEntry>;

/// Rebuilds the vertex map recorded by a trace.
auto replay_trace(const RootedTree& t, const EmbedTrace& trace) -> std::vector<std::optional<CubeVertex>>;

struct EngineOptions {
    /// Randomized tie-breaking among candidates; first-in-order when unset.
    std::optional<std::uint64_t> seed;
    /// Re-check structural invariants (doubly distinct inputs, sliding window,
    /// injectivity, z_bad avoidance) after every phase. Counting preconditions
    /// of single extensions are always checked.
    bool check_invariants = true;
    bool record_trace = true;
    std::optional<CubeVertex> start;
};

/// Mutable state of one embedding run.
struct EmbedContext {
    explicit EmbedContext(EngineOptions opts = {});

    EngineOptions options;
    EmbedTrace trace;
    SplitMix64 rng;
    int depth = 0;
};

struct ExtensionRequest {
    TreeVertex child = 0;  // unmapped; its parent is mapped
    ColorSet avoid_colors;
    CoordSet avoid_coords;
    std::vector<TreeVertex> witnesses;  // mapped edges at the parent
    std::string step = "extend";
};

/// Maps req.child so that its edge avoids the requested classes. Throws
/// PreconditionViolated when the counting hypothesis fails and NoCandidate when
/// the view offers nothing.
void extend_one(const GraphView& view, PartialEmbedding& pe, const ExtensionRequest& req, EmbedContext& ctx);

/// Maps floor(T(r)/2) doubly distinctly, r already mapped, in BFS order.
void embed_half(const GraphView& view, PartialEmbedding& pe, TreeVertex r, EmbedContext& ctx);
auto embed_half(const ColoredCubeGraph& g, const RootedTree& t, CubeVertex start, EmbedContext& ctx)
    -> PartialEmbedding;

/// `path` lists v_0..v_n (a downward path). Its first floor(n/2)+1 edges are
/// mapped doubly distinctly; maps the rest into an injective rainbow path.
void extend_path(const GraphView& view, PartialEmbedding& pe, std::span<const TreeVertex> path, EmbedContext& ctx);

/// Spider with legs[0] = L_1 and legs 2..k even. floor(S/2) (and possibly the
/// first edge of L_1 past its half) is mapped doubly distinctly.
void extend_spider(const GraphView& view, PartialEmbedding& pe, const SpiderShape& spider, EmbedContext& ctx);

/// Extends a doubly distinct map of floor(T(r)/2) to a rainbow embedding of
/// T(r) that avoids z_bad and is path-distinct on ceil(T(r)/2). z_bad is a
/// cube neighbour of the image of r across an edge missing from the view,
/// whose coordinate floor(T(r)/2) does not use.
void extend_tree(const GraphView& view, PartialEmbedding& pe, TreeVertex r, CubeVertex z_bad, EmbedContext& ctx);

struct EmbedResult {
    PartialEmbedding embedding;
    EmbedTrace trace;
    CubeVertex z_bad;
    Coordinate z_bad_coordinate = -1;
    bool raised_dimension = false;  // z_bad lives in the extra coordinate N
};

/// Rainbow copy of t in g. Throws DegreeTooSmall when min degree < e(t).
auto embed_rainbow_tree(const ColoredCubeGraph& g, const RootedTree& t, const EngineOptions& options = {})
    -> EmbedResult;

}  // namespace rainbow
