#include "rainbow/verify.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace rainbow {

namespace {

auto edge_text(const RootedTree& t, TreeVertex child) -> std::string
{
    return std::to_string(t.parent(child)) + "-" + std::to_string(child);
}

auto image_coordinate(std::span<const CubeVertex> images, const RootedTree& t, TreeVertex child) -> Coordinate
{
    auto diff = images[static_cast<std::size_t>(t.parent(child))].bits ^ images[static_cast<std::size_t>(child)].bits;
    return std::popcount(diff) == 1 ? std::countr_zero(diff) : -1;
}

auto bfs_order(const RootedTree& t) -> std::vector<TreeVertex>
{
    std::vector<TreeVertex> order{0};
    for (std::size_t i = 0; i < order.size(); ++i)
        for (auto c : t.children(order[i]))
            order.push_back(c);
    return order;
}

// Dense color ids so cycle search can track used colors in a flat array.
auto dense_palette(const ColoredCubeGraph& g) -> std::map<Color, int>
{
    std::map<Color, int> out;
    for (auto c : g.palette())
        out.emplace(c, static_cast<int>(out.size()));
    return out;
}

struct CycleSearch {
    const ColoredCubeGraph& g;
    int max_len;
    std::map<Color, int> palette;

    // A rainbow cycle whose smallest vertex is `start`.
    auto from(CubeVertex start) const -> bool
    {
        std::vector<char> used_color(palette.size(), 0);
        std::set<CubeVertex> on_path{start};
        return walk(start, start, 0, used_color, on_path);
    }

    auto walk(CubeVertex start, CubeVertex x, int len, std::vector<char>& used_color, std::set<CubeVertex>& on_path) const
        -> bool
    {
        bool hit = false;
        g.for_each_incident(x, [&](const IncidentEdge& e) {
            if (hit)
                return;
            auto c = static_cast<std::size_t>(palette.at(e.color));
            if (used_color[c])
                return;
            if (e.neighbor == start) {
                hit = len + 1 >= 4 && len + 1 <= max_len;
                return;
            }
            if (e.neighbor < start || on_path.contains(e.neighbor) || len + 1 >= max_len)
                return;
            used_color[c] = 1;
            on_path.insert(e.neighbor);
            hit = walk(start, e.neighbor, len + 1, used_color, on_path);
            on_path.erase(e.neighbor);
            used_color[c] = 0;
        });
        return hit;
    }
};

auto prepare_cycle_search(const ColoredCubeGraph& g, int max_len) -> CycleSearch
{
    if (g.num_vertices() > kMaxCycleSearchVertices)
        throw Error(ErrorCode::LimitExceeded, "cycle search supports at most 32 vertices");
    if (max_len % 2 != 0)
        throw Error(ErrorCode::PreconditionViolated, "max_len must be even in a bipartite host");
    return {g, max_len, dense_palette(g)};
}

}  // namespace

auto verify(const ColoredCubeGraph& g, const RootedTree& t, std::span<const CubeVertex> images,
    const VerifyOptions& options) -> VerificationReport
{
    VerificationReport report;
    if (images.size() != static_cast<std::size_t>(t.size())) {
        report.add("homomorphism", false,
            std::to_string(images.size()) + " images for " + std::to_string(t.size()) + " vertices");
        return report;
    }
    const int dim = g.dimension() + 1;  // room for a raised z_bad coordinate in witnesses
    auto bin = [&](CubeVertex x) { return to_binary(x, std::min(dim, 64)); };

    std::string witness;
    for (auto v : t.subtree(0))
        if (!g.contains(images[static_cast<std::size_t>(v)])) {
            witness = "vertex " + std::to_string(v) + " -> " + bin(images[static_cast<std::size_t>(v)]);
            break;
        }
    if (witness.empty())
        for (TreeVertex c = 1; c < t.size(); ++c) {
            auto u = images[static_cast<std::size_t>(t.parent(c))];
            auto v = images[static_cast<std::size_t>(c)];
            if (image_coordinate(images, t, c) < 0 || !g.edge_color(u, v)) {
                witness = "edge " + edge_text(t, c) + " -> " + bin(u) + " " + bin(v);
                break;
            }
        }
    report.add("homomorphism", witness.empty(), witness);
    const bool homomorphic = witness.empty();

    witness.clear();
    std::map<CubeVertex, TreeVertex> owner;
    for (TreeVertex v = 0; v < t.size(); ++v) {
        auto [it, fresh] = owner.emplace(images[static_cast<std::size_t>(v)], v);
        if (!fresh) {
            witness = "vertices " + std::to_string(it->second) + " " + std::to_string(v) + " -> " + bin(it->first);
            break;
        }
    }
    report.add("injective", witness.empty(), witness);

    witness.clear();
    if (homomorphic) {
        std::map<Color, TreeVertex> color_owner;
        for (TreeVertex c = 1; c < t.size(); ++c) {
            auto color = *g.edge_color(images[static_cast<std::size_t>(t.parent(c))], images[static_cast<std::size_t>(c)]);
            auto [it, fresh] = color_owner.emplace(color, c);
            if (!fresh) {
                witness = "edges " + edge_text(t, it->second) + " " + edge_text(t, c) + " color " + std::to_string(color);
                break;
            }
        }
    } else {
        witness = "not a homomorphism";
    }
    report.add("rainbow", witness.empty(), witness);

    if (options.require_path_distinct) {
        witness.clear();
        for (auto v : half_ceil(t, 0)) {
            std::map<Coordinate, TreeVertex> seen;
            for (auto x = v; x != 0 && witness.empty(); x = t.parent(x)) {
                auto q = image_coordinate(images, t, x);
                auto [it, fresh] = seen.emplace(q, x);
                if (!fresh || q < 0)
                    witness = "path to " + std::to_string(v) + " repeats coordinate " + std::to_string(q) + " on edges "
                        + edge_text(t, it->second) + " " + edge_text(t, x);
            }
            if (!witness.empty())
                break;
        }
        report.add("path_distinct_ceil_half", witness.empty(), witness);
    }

    for (const auto& [name, edges] : options.distinctly_directed) {
        witness.clear();
        std::map<Coordinate, TreeVertex> seen;
        for (auto e : edges) {
            if (e <= 0 || e >= t.size()) {
                witness = "no edge " + std::to_string(e);
                break;
            }
            auto q = image_coordinate(images, t, e);
            auto [it, fresh] = seen.emplace(q, e);
            if (!fresh || q < 0) {
                witness = "edges " + edge_text(t, it->second) + " " + edge_text(t, e) + " coordinate " + std::to_string(q);
                break;
            }
        }
        report.add("distinctly_directed_on(" + name + ")", witness.empty(), witness);
    }

    if (options.z_bad) {
        witness.clear();
        auto it = owner.find(*options.z_bad);
        if (it != owner.end())
            witness = "vertex " + std::to_string(it->second);
        report.add("avoids_vertex(" + bin(*options.z_bad) + ")", witness.empty(), witness);
    }
    return report;
}

auto disjointness_conditions_hold(const RootedTree& t1, std::span<const CubeVertex> images1, const RootedTree& t2,
    std::span<const CubeVertex> images2) -> bool
{
    if (images1.size() != static_cast<std::size_t>(t1.size()) || images2.size() != static_cast<std::size_t>(t2.size()))
        return false;
    auto root_diff = images1[0].bits ^ images2[0].bits;
    if (std::popcount(root_diff) != 1)
        return false;

    // Coordinates of the ceil half, or nullopt if the map is not path-distinct there.
    auto ceil_coords = [](const RootedTree& t, std::span<const CubeVertex> images) -> std::optional<CoordSet> {
        for (TreeVertex c = 1; c < t.size(); ++c)
            if (image_coordinate(images, t, c) < 0)
                return std::nullopt;
        CoordSet all;
        for (auto v : half_ceil(t, 0)) {
            CoordSet path;
            for (auto x = v; x != 0; x = t.parent(x)) {
                auto q = image_coordinate(images, t, x);
                if (path.contains(q))
                    return std::nullopt;
                path.insert(q);
            }
            all |= path;
        }
        return all;
    };
    auto a = ceil_coords(t1, images1);
    auto b = ceil_coords(t2, images2);
    if (!a || !b || (a->mask() & b->mask()) != 0)
        return false;
    auto q = std::countr_zero(root_diff);
    return !a->contains(q) && !b->contains(q);
}

auto color_preserving_translations(const ColoredCubeGraph& g) -> std::vector<std::uint64_t>
{
    if (g.is_implicit() && g.dimension() > 20)
        throw Error(ErrorCode::TooLarge, "translation search needs an explicit or small graph");
    const auto vertices = g.vertices();
    const auto edges = g.edges();
    std::vector<std::uint64_t> out;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << g.dimension()); ++a) {
        bool ok = std::all_of(vertices.begin(), vertices.end(), [&](CubeVertex x) { return g.contains({x.bits ^ a}); });
        for (std::size_t i = 0; ok && i < edges.size(); ++i) {
            const auto& e = edges[i];
            auto c = g.edge_color({e.u.bits ^ a}, {e.v.bits ^ a});
            ok = e.coordinate >= 0 && c && *c == e.color;
        }
        if (ok)
            out.push_back(a);
    }
    return out;
}

auto oracle_find(const ColoredCubeGraph& g, const RootedTree& t, const OracleOptions& options) -> OracleResult
{
    OracleResult result;
    if (g.num_vertices() == 0)
        return {false, {}, 0, true};

    auto roots = g.vertices();
    if (options.root_orbits) {
        const auto shifts = color_preserving_translations(g);
        std::set<CubeVertex> covered;
        std::vector<CubeVertex> reps;
        for (auto x : roots) {
            if (covered.contains(x))
                continue;
            reps.push_back(x);
            for (auto a : shifts)
                covered.insert({x.bits ^ a});
        }
        roots = std::move(reps);
    }

    const auto order = bfs_order(t);
    std::vector<CubeVertex> image(static_cast<std::size_t>(t.size()));
    std::set<CubeVertex> used_vertices;
    std::set<Color> used_colors;
    bool out_of_budget = false;

    // Assign order[i..] given order[0..i).
    auto search = [&](auto&& self, std::size_t i) -> bool {
        if (i == order.size())
            return true;
        const auto v = order[i];
        const auto x = image[static_cast<std::size_t>(t.parent(v))];
        bool done = false;
        g.for_each_incident(x, [&](const IncidentEdge& e) {
            if (done || out_of_budget || used_vertices.contains(e.neighbor) || used_colors.contains(e.color))
                return;
            if (++result.nodes_explored > options.budget) {
                out_of_budget = true;
                return;
            }
            image[static_cast<std::size_t>(v)] = e.neighbor;
            used_vertices.insert(e.neighbor);
            used_colors.insert(e.color);
            done = self(self, i + 1);
            if (!done) {
                used_vertices.erase(e.neighbor);
                used_colors.erase(e.color);
            }
        });
        return done;
    };

    for (auto root : roots) {
        if (++result.nodes_explored > options.budget) {
            out_of_budget = true;
            break;
        }
        image[0] = root;
        used_vertices = {root};
        used_colors.clear();
        if (search(search, 1)) {
            result.found = true;
            result.embedding = image;
            result.exhausted = true;
            return result;
        }
        if (out_of_budget)
            break;
    }
    if (out_of_budget && options.strict_budget)
        throw Error(ErrorCode::BudgetExceeded,
            "oracle stopped after " + std::to_string(result.nodes_explored - 1) + " nodes");
    if (out_of_budget)
        result.nodes_explored = options.budget;
    result.exhausted = !out_of_budget;
    return result;
}

auto oracle_no_rainbow_cycle_serial(const ColoredCubeGraph& g, int max_len) -> bool
{
    const auto search = prepare_cycle_search(g, max_len);
    for (auto start : g.vertices())
        if (search.from(start))
            return false;
    return true;
}

auto oracle_no_rainbow_cycle(const ColoredCubeGraph& g, int max_len) -> bool
{
    const auto search = prepare_cycle_search(g, max_len);
    const auto starts = g.vertices();
    const auto count = static_cast<long>(starts.size());
    int found = 0;
#pragma omp parallel for schedule(dynamic) reduction(| : found)
    for (long i = 0; i < count; ++i)
        found |= search.from(starts[static_cast<std::size_t>(i)]) ? 1 : 0;
    return found == 0;
}

}  // namespace rainbow
