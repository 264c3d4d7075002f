#include "rainbow/hypercube.hpp"

#include <limits>
#include <map>
#include <set>
#include <tuple>

namespace rainbow {

namespace {

constexpr int kMaxImplicitEnumeration = 24;

auto describe_edge(const GraphEdge& e, int dim) -> std::string
{
    return to_binary(e.u, dim) + " " + to_binary(e.v, dim);
}

auto in_range(CubeVertex v, int dim) -> bool
{
    return dim >= 64 || (v.bits >> dim) == 0;
}

}  // namespace

auto edge_coordinate(CubeVertex u, CubeVertex v) -> Coordinate
{
    auto diff = u.bits ^ v.bits;
    if (std::popcount(diff) != 1)
        throw Error(ErrorCode::DifferingBitCount,
            "vertices differ in " + std::to_string(std::popcount(diff)) + " bits");
    return std::countr_zero(diff);
}

auto to_binary(CubeVertex v, int dimension) -> std::string
{
    std::string out(static_cast<std::size_t>(dimension), '0');
    for (int i = 0; i < dimension; ++i)
        if (v.test(i))
            out[static_cast<std::size_t>(dimension - 1 - i)] = '1';
    return out;
}

auto parse_binary(std::string_view text) -> CubeVertex
{
    if (text.empty() || text.size() > 64)
        throw Error(ErrorCode::ParseError, "bad binary vertex '" + std::string(text) + "'");
    std::uint64_t bits = 0;
    for (char c : text) {
        if (c != '0' && c != '1')
            throw Error(ErrorCode::ParseError, "bad binary vertex '" + std::string(text) + "'");
        bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return {bits};
}

ColorSet::ColorSet(std::initializer_list<Color> colors)
{
    for (auto c : colors)
        insert(c);
}

void ColorSet::insert(Color c)
{
    auto it = std::lower_bound(colors_.begin(), colors_.end(), c);
    if (it == colors_.end() || *it != c)
        colors_.insert(it, c);
}

auto ColorSet::count_new(const ColorSet& other) const -> int
{
    int n = 0;
    for (auto c : other.colors_)
        if (!contains(c))
            ++n;
    return n;
}

void ColorSet::merge(const ColorSet& other)
{
    for (auto c : other.colors_)
        insert(c);
}

ColoredCubeGraph::ColoredCubeGraph(int dimension, std::vector<CubeVertex> vertices,
    const std::vector<RawEdge>& edges, bool strict_vertices) :
    dimension_(dimension),
    strict_(strict_vertices)
{
    if (dimension < 1 || dimension > kMaxDimension)
        throw Error(ErrorCode::InvalidGraph, "dimension must be in [1, 64], got " + std::to_string(dimension));

    std::set<CubeVertex> vset(vertices.begin(), vertices.end());
    if (!strict_vertices)
        for (const auto& e : edges) {
            vset.insert(e.u);
            vset.insert(e.v);
        }
    vertices_.assign(vset.begin(), vset.end());
    index_.reserve(vertices_.size());
    for (std::uint32_t i = 0; i < vertices_.size(); ++i)
        index_.emplace(vertices_[i], i);
    adjacency_.resize(vertices_.size());

    std::set<std::pair<CubeVertex, CubeVertex>> seen;
    edges_.reserve(edges.size());
    for (const auto& raw : edges) {
        GraphEdge e{std::min(raw.u, raw.v), std::max(raw.u, raw.v), raw.color, -1};
        auto diff = e.u.bits ^ e.v.bits;
        if (std::popcount(diff) == 1)
            e.coordinate = std::countr_zero(diff);
        edges_.push_back(e);
        if (e.coordinate < 0 || !seen.emplace(e.u, e.v).second)
            continue;
        auto iu = index_.find(e.u);
        auto iv = index_.find(e.v);
        if (iu != index_.end())
            adjacency_[iu->second].push_back({e.coordinate, e.color, e.v});
        if (iv != index_.end())
            adjacency_[iv->second].push_back({e.coordinate, e.color, e.u});
    }
    std::sort(edges_.begin(), edges_.end(), [](const GraphEdge& a, const GraphEdge& b) {
        return std::tie(a.u, a.v, a.color) < std::tie(b.u, b.v, b.color);
    });

    min_degree_ = vertices_.empty() ? 0 : std::numeric_limits<int>::max();
    for (auto& adj : adjacency_) {
        std::sort(adj.begin(), adj.end(),
            [](const IncidentEdge& a, const IncidentEdge& b) { return a.coordinate < b.coordinate; });
        min_degree_ = std::min(min_degree_, static_cast<int>(adj.size()));
    }
}

auto ColoredCubeGraph::implicit_cayley(int dimension) -> ColoredCubeGraph
{
    if (dimension < 1 || dimension > kMaxDimension)
        throw Error(ErrorCode::InvalidGraph, "dimension must be in [1, 64], got " + std::to_string(dimension));
    ColoredCubeGraph g;
    g.dimension_ = dimension;
    g.implicit_ = true;
    g.min_degree_ = dimension;
    return g;
}

auto ColoredCubeGraph::num_vertices() const -> std::uint64_t
{
    if (implicit_)
        return dimension_ >= 64 ? std::numeric_limits<std::uint64_t>::max() : std::uint64_t{1} << dimension_;
    return vertices_.size();
}

auto ColoredCubeGraph::num_edges() const -> std::uint64_t
{
    if (implicit_)
        return dimension_ >= 64 ? std::numeric_limits<std::uint64_t>::max()
                                : (std::uint64_t{1} << (dimension_ - 1)) * static_cast<std::uint64_t>(dimension_);
    return edges_.size();
}

auto ColoredCubeGraph::contains(CubeVertex x) const -> bool
{
    if (implicit_)
        return in_range(x, dimension_);
    return index_.contains(x);
}

auto ColoredCubeGraph::degree(CubeVertex x) const -> int
{
    if (implicit_)
        return contains(x) ? dimension_ : 0;
    auto it = index_.find(x);
    return it == index_.end() ? 0 : static_cast<int>(adjacency_[it->second].size());
}

auto ColoredCubeGraph::incident(CubeVertex x) const -> std::vector<IncidentEdge>
{
    std::vector<IncidentEdge> out;
    for_each_incident(x, [&](const IncidentEdge& e) { out.push_back(e); });
    return out;
}

auto ColoredCubeGraph::edge_color(CubeVertex u, CubeVertex v) const -> std::optional<Color>
{
    auto diff = u.bits ^ v.bits;
    if (std::popcount(diff) != 1 || !contains(u))
        return std::nullopt;
    auto coord = std::countr_zero(diff);
    std::optional<Color> out;
    for_each_incident(u, [&](const IncidentEdge& e) {
        if (e.coordinate == coord)
            out = e.color;
    });
    return out;
}

auto ColoredCubeGraph::vertices() const -> std::vector<CubeVertex>
{
    if (!implicit_)
        return vertices_;
    if (dimension_ > kMaxImplicitEnumeration)
        throw Error(ErrorCode::TooLarge, "refusing to enumerate Q_" + std::to_string(dimension_));
    std::vector<CubeVertex> out(std::size_t{1} << dimension_);
    for (std::uint64_t i = 0; i < out.size(); ++i)
        out[i] = CubeVertex{i};
    return out;
}

auto ColoredCubeGraph::edges() const -> std::vector<GraphEdge>
{
    if (!implicit_)
        return edges_;
    std::vector<GraphEdge> out;
    for (auto u : vertices())
        for (Coordinate i = 0; i < dimension_; ++i)
            if (!u.test(i))
                out.push_back({u, u.flip(i), static_cast<Color>(i), i});
    return out;
}

auto ColoredCubeGraph::palette() const -> std::vector<Color>
{
    std::vector<Color> out;
    if (implicit_) {
        for (int i = 0; i < dimension_; ++i)
            out.push_back(static_cast<Color>(i));
        return out;
    }
    std::set<Color> s;
    for (const auto& e : edges_)
        s.insert(e.color);
    return {s.begin(), s.end()};
}

auto cayley_coloring(int n) -> ColoredCubeGraph
{
    if (n < 1 || n > kMaxDimension)
        throw Error(ErrorCode::InvalidGraph, "cayley_coloring needs 1 <= n <= 64");
    if (n > 20)
        return ColoredCubeGraph::implicit_cayley(n);
    std::vector<CubeVertex> vertices(std::size_t{1} << n);
    std::vector<RawEdge> edges;
    edges.reserve((vertices.size() / 2) * static_cast<std::size_t>(n));
    for (std::uint64_t x = 0; x < vertices.size(); ++x) {
        vertices[x] = CubeVertex{x};
        for (Coordinate i = 0; i < n; ++i)
            if (!CubeVertex{x}.test(i))
                edges.push_back({CubeVertex{x}, CubeVertex{x}.flip(i), static_cast<Color>(i)});
    }
    return ColoredCubeGraph(n, std::move(vertices), edges);
}

auto validate(const ColoredCubeGraph& g) -> VerificationReport
{
    VerificationReport report;
    const int dim = g.dimension();
    if (g.is_implicit()) {
        // Implicit cubes are correct by construction.
        for (auto name : {"vertex range", "edge coordinate", "edge endpoints", "duplicate edge", "proper coloring"})
            report.add(name, true);
        return report;
    }

    const auto vertices = g.vertices();
    std::string witness;
    for (auto v : vertices)
        if (!in_range(v, dim)) {
            witness = "vertex " + to_binary(v, 64);
            break;
        }
    report.add("vertex range", witness.empty(), witness);

    const auto edges = g.edges();
    witness.clear();
    for (const auto& e : edges)
        if (e.coordinate < 0 || e.coordinate >= dim) {
            witness = "edge " + describe_edge(e, dim);
            break;
        }
    report.add("edge coordinate", witness.empty(), witness);

    witness.clear();
    for (const auto& e : edges)
        if (!g.contains(e.u) || !g.contains(e.v)) {
            witness = "edge " + describe_edge(e, dim);
            break;
        }
    report.add("edge endpoints", witness.empty(), witness);

    witness.clear();
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
            witness = "edge " + describe_edge(edges[i], dim);
            break;
        }
    report.add("duplicate edge", witness.empty(), witness);

    // Color clashes at a vertex, over well-formed edges.
    witness.clear();
    std::map<std::pair<CubeVertex, Color>, int> at_vertex;
    for (const auto& e : edges) {
        if (e.coordinate < 0)
            continue;
        for (auto x : {e.u, e.v})
            if (++at_vertex[{x, e.color}] == 2 && witness.empty())
                witness = "vertex " + to_binary(x, dim) + " color " + std::to_string(e.color);
    }
    report.add("proper coloring", witness.empty(), witness);
    return report;
}

auto min_degree(const ColoredCubeGraph& g) -> DegreeSummary
{
    if (g.num_vertices() == 0)
        throw Error(ErrorCode::EmptyGraph, "graph has no vertices");
    DegreeSummary out;
    out.min_degree = std::numeric_limits<int>::max();
    for (auto v : g.vertices()) {
        auto d = g.degree(v);
        out.degrees.emplace_back(v, d);
        out.min_degree = std::min(out.min_degree, d);
    }
    return out;
}

auto candidate_edges(const ColoredCubeGraph& g, CubeVertex x, const ColorSet& forbidden_colors,
    CoordSet forbidden_coords) -> std::vector<IncidentEdge>
{
    if (!g.contains(x))
        throw Error(ErrorCode::VertexNotInGraph, "vertex " + to_binary(x, g.dimension()) + " not in graph");
    std::vector<IncidentEdge> out;
    g.for_each_incident(x, [&](const IncidentEdge& e) {
        if (!forbidden_colors.contains(e.color) && !forbidden_coords.contains(e.coordinate))
            out.push_back(e);
    });
    return out;
}

}  // namespace rainbow
