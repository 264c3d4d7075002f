#include "rainbow/embed.hpp"

#include <algorithm>
#include <deque>
#include <iterator>
#include <set>

namespace rainbow {

namespace {

constexpr int kMaxRecursionDepth = 4096;

void require(bool cond, ErrorCode code, const std::string& what)
{
    if (!cond)
        throw Error(code, what);
}

void invariant(bool cond, const std::string& what)
{
    require(cond, ErrorCode::PreconditionViolated, what);
}

auto edge_name(TreeVertex child) -> std::string
{
    return "tree edge " + std::to_string(child);
}

// Edges of T(r), i.e. every vertex of the subtree except r.
auto subtree_edges(const RootedTree& t, TreeVertex r) -> TreeEdgeSet
{
    auto span = t.subtree(r).subspan(1);
    TreeEdgeSet out(span.begin(), span.end());
    std::sort(out.begin(), out.end());
    return out;
}

auto mapped_among(const PartialEmbedding& pe, std::span<const TreeVertex> edges) -> TreeEdgeSet
{
    TreeEdgeSet out;
    for (auto e : edges)
        if (pe.edge(e))
            out.push_back(e);
    return out;
}

auto set_union(TreeEdgeSet a, std::span<const TreeVertex> b) -> TreeEdgeSet
{
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

auto contains_edge(const TreeEdgeSet& s, TreeVertex e) -> bool
{
    return std::binary_search(s.begin(), s.end(), e);
}

// Colors of mapped edges in T(r) outside T(inner); the edge into `inner` counts as outside.
auto colors_outside(const PartialEmbedding& pe, TreeVertex r, TreeVertex inner) -> ColorSet
{
    const auto& t = pe.tree();
    ColorSet out;
    for (auto v : t.subtree(r).subspan(1))
        if (pe.edge(v) && (v == inner || !t.is_descendant(v, inner)))
            out.insert(pe.edge(v)->color);
    return out;
}

// Images of T(r) are pairwise distinct.
auto injective_on(const PartialEmbedding& pe, TreeVertex r) -> bool
{
    std::set<CubeVertex> seen;
    for (auto v : pe.tree().subtree(r))
        if (pe.is_mapped(v) && !seen.insert(pe.image(v)).second)
            return false;
    return true;
}

// Every downward path inside ceil(T(r)/2) uses distinct coordinates.
auto path_distinct_on_ceil(const PartialEmbedding& pe, TreeVertex r) -> bool
{
    const auto& t = pe.tree();
    for (auto v : half_ceil(t, r)) {
        CoordSet seen;
        for (auto x = v; x != r; x = t.parent(x)) {
            auto c = pe.edge(x)->coordinate;
            if (seen.contains(c))
                return false;
            seen.insert(c);
        }
    }
    return true;
}

struct DepthGuard {
    explicit DepthGuard(EmbedContext& ctx) : ctx_(ctx)
    {
        if (++ctx_.depth > kMaxRecursionDepth)
            throw Error(ErrorCode::RecursionDepthExceeded, "embedding recursion too deep");
    }
    ~DepthGuard() { --ctx_.depth; }
    DepthGuard(const DepthGuard&) = delete;
    auto operator=(const DepthGuard&) -> DepthGuard& = delete;

private:
    EmbedContext& ctx_;
};

auto request(TreeVertex child, ColorSet colors, CoordSet coords, std::vector<TreeVertex> witnesses, std::string step)
    -> ExtensionRequest
{
    return {child, std::move(colors), coords, std::move(witnesses), std::move(step)};
}

}  // namespace

auto endpoints_must_differ(std::span<const Coordinate> coords) -> bool
{
    CoordSet distinct;
    for (auto c : coords)
        distinct.insert(c);
    return 2 * distinct.size() > static_cast<int>(coords.size());
}

auto sliding_window_sound(std::span<const Coordinate> coords) -> bool
{
    const int n = static_cast<int>(coords.size());
    for (int k = 0; k < n; ++k)
        for (int m = k + 2; m <= n; m += 2) {
            CoordSet seen;
            for (int j = k; j < k + (m - k) / 2 + 1; ++j) {
                if (seen.contains(coords[static_cast<std::size_t>(j)]))
                    return false;
                seen.insert(coords[static_cast<std::size_t>(j)]);
            }
        }
    return true;
}

GraphView::GraphView(const ColoredCubeGraph& g) : graph_(&g), degree_bound_(g.min_degree()) {}

auto GraphView::restrict(const ColorSet& colors, CoordSet coords) const -> GraphView
{
    GraphView out = *this;
    out.degree_bound_ -= colors_.count_new(colors) + (coords - coords_).size();
    out.colors_.merge(colors);
    out.coords_ |= coords;
    return out;
}

auto GraphView::has_edge(CubeVertex u, CubeVertex v) const -> bool
{
    auto diff = u.bits ^ v.bits;
    if (std::popcount(diff) != 1)
        return false;
    auto color = graph_->edge_color(u, v);
    return color && allows({std::countr_zero(diff), *color, v});
}

PartialEmbedding::PartialEmbedding(const RootedTree& tree, const ColoredCubeGraph& graph) :
    tree_(&tree),
    graph_(&graph),
    image_(static_cast<std::size_t>(tree.size())),
    edges_(static_cast<std::size_t>(tree.size()))
{
}

auto PartialEmbedding::image(TreeVertex v) const -> CubeVertex
{
    if (!image_[v])
        throw Error(ErrorCode::PreconditionViolated, "vertex " + std::to_string(v) + " is not mapped");
    return *image_[v];
}

auto PartialEmbedding::is_total() const -> bool
{
    return std::all_of(image_.begin(), image_.end(), [](const auto& x) { return x.has_value(); });
}

void PartialEmbedding::map_vertex(TreeVertex v, CubeVertex x)
{
    invariant(!image_[v], "vertex " + std::to_string(v) + " mapped twice");
    require(graph_->contains(x), ErrorCode::VertexNotInGraph, "start vertex not in graph");
    image_[v] = x;
}

void PartialEmbedding::map_edge(TreeVertex child, const IncidentEdge& e)
{
    invariant(child > 0 && child < tree_->size(), "no such tree edge");
    auto p = tree_->parent(child);
    invariant(image_[p].has_value(), "parent of " + edge_name(child) + " is unmapped");
    invariant(!image_[child], edge_name(child) + " mapped twice");
    invariant(image_[p]->flip(e.coordinate) == e.neighbor, "host edge does not leave the parent image");
    invariant(!used_colors_.contains(e.color), "color " + std::to_string(e.color) + " used twice");
    image_[child] = e.neighbor;
    edges_[child] = EdgeImage{e.color, e.coordinate};
    used_colors_.insert(e.color);
    ++mapped_edges_;
}

auto PartialEmbedding::colors_of(std::span<const TreeVertex> edges) const -> ColorSet
{
    ColorSet out;
    for (auto e : edges)
        if (edges_[e])
            out.insert(edges_[e]->color);
    return out;
}

auto PartialEmbedding::coords_of(std::span<const TreeVertex> edges) const -> CoordSet
{
    CoordSet out;
    for (auto e : edges)
        if (edges_[e])
            out.insert(edges_[e]->coordinate);
    return out;
}

auto PartialEmbedding::doubly_distinct_on(std::span<const TreeVertex> edges) const -> bool
{
    auto mapped = mapped_among(*this, edges);
    return colors_of(mapped).size() == static_cast<int>(mapped.size())
        && coords_of(mapped).size() == static_cast<int>(mapped.size());
}

auto PartialEmbedding::images() const -> std::vector<CubeVertex>
{
    std::vector<CubeVertex> out;
    out.reserve(image_.size());
    for (TreeVertex v = 0; v < tree_->size(); ++v)
        out.push_back(image(v));
    return out;
}

auto replay_trace(const RootedTree& t, const EmbedTrace& trace) -> std::vector<std::optional<CubeVertex>>
{
    std::vector<std::optional<CubeVertex>> out(static_cast<std::size_t>(t.size()));
    for (const auto& e : trace) {
        if (e.child < 0 || e.child >= t.size())
            throw Error(ErrorCode::IndexOutOfRange, "trace names unknown vertex " + std::to_string(e.child));
        if (e.parent >= 0) {
            if (t.parent(e.child) != e.parent || !out[e.parent] || *out[e.parent] != e.from)
                throw Error(ErrorCode::PreconditionViolated, "trace step for " + edge_name(e.child) + " is out of order");
        }
        out[e.child] = e.to;
    }
    return out;
}

EmbedContext::EmbedContext(EngineOptions opts) : options(std::move(opts)), rng(options.seed.value_or(0)) {}

void extend_one(const GraphView& view, PartialEmbedding& pe, const ExtensionRequest& req, EmbedContext& ctx)
{
    const auto& t = pe.tree();
    invariant(req.child > 0 && req.child < t.size(), "no such tree edge");
    const auto v = t.parent(req.child);
    invariant(pe.is_mapped(v), "parent of " + edge_name(req.child) + " is unmapped");
    invariant(!pe.is_mapped(req.child), edge_name(req.child) + " is already mapped");
    const auto x = pe.image(v);

    // Witnesses are distinct mapped edges at v, present in the view, inside both avoided classes.
    std::set<TreeVertex> distinct(req.witnesses.begin(), req.witnesses.end());
    invariant(distinct.size() == req.witnesses.size(), "repeated witness for " + edge_name(req.child));
    for (auto w : req.witnesses) {
        invariant(w > 0 && w < t.size() && (w == v || t.parent(w) == v) && pe.edge(w),
            "witness " + edge_name(w) + " is not a mapped edge at the attachment vertex");
        const auto& img = *pe.edge(w);
        invariant(req.avoid_colors.contains(img.color) && req.avoid_coords.contains(img.coordinate),
            "witness " + edge_name(w) + " lies outside the avoided classes");
        auto other = w == v ? pe.image(t.parent(v)) : pe.image(w);
        invariant(view.allows({img.coordinate, img.color, other}), "witness " + edge_name(w) + " is not in the view");
    }
    const int r = static_cast<int>(req.witnesses.size());
    const int load = req.avoid_colors.size() + req.avoid_coords.size() - r;
    if (load >= view.degree_bound())
        throw Error(ErrorCode::PreconditionViolated,
            req.step + ": " + std::to_string(req.avoid_colors.size()) + " colors + "
                + std::to_string(req.avoid_coords.size()) + " coordinates - " + std::to_string(r)
                + " witnesses >= degree bound " + std::to_string(view.degree_bound()));

    std::vector<IncidentEdge> candidates;
    view.base().for_each_incident(x, [&](const IncidentEdge& e) {
        if (view.allows(e) && !req.avoid_colors.contains(e.color) && !req.avoid_coords.contains(e.coordinate))
            candidates.push_back(e);
    });
    if (candidates.empty())
        throw Error(ErrorCode::NoCandidate, req.step + ": no admissible edge for " + edge_name(req.child));

    std::size_t pick = 0;
    if (ctx.options.seed)
        pick = static_cast<std::size_t>(ctx.rng.below(candidates.size()));
    const auto& chosen = candidates[pick];
    invariant(!pe.used_colors().contains(chosen.color),
        req.step + ": avoided colors miss color " + std::to_string(chosen.color) + " already in use");
    pe.map_edge(req.child, chosen);

    if (ctx.options.record_trace)
        ctx.trace.push_back({req.step, v, req.child, x, chosen.neighbor, chosen.color, chosen.coordinate,
            req.avoid_colors.size(), req.avoid_coords.size(), r, ctx.depth});
}

void embed_half(const GraphView& view, PartialEmbedding& pe, TreeVertex r, EmbedContext& ctx)
{
    const auto& t = pe.tree();
    invariant(pe.is_mapped(r), "half-tree root is unmapped");
    std::deque<TreeVertex> queue{r};
    TreeEdgeSet done;
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (auto c : t.children(v)) {
            if (!in_floor_half(t, r, c))
                continue;
            if (!pe.is_mapped(c))
                extend_one(view, pe, request(c, pe.colors_of(done), pe.coords_of(done), {}, "half"), ctx);
            done.push_back(c);
            std::sort(done.begin(), done.end());
            queue.push_back(c);
        }
    }
    if (ctx.options.check_invariants)
        invariant(pe.doubly_distinct_on(done), "half-tree image is not doubly distinct");
}

auto embed_half(const ColoredCubeGraph& g, const RootedTree& t, CubeVertex start, EmbedContext& ctx)
    -> PartialEmbedding
{
    if (g.min_degree() < t.edge_count())
        throw Error(ErrorCode::DegreeTooSmall, "min degree " + std::to_string(g.min_degree()) + " < "
            + std::to_string(t.edge_count()) + " tree edges");
    PartialEmbedding pe(t, g);
    pe.map_vertex(0, start);
    if (ctx.options.record_trace)
        ctx.trace.push_back({"start", -1, 0, start, start, 0, -1, 0, 0, 0, ctx.depth});
    embed_half(GraphView(g), pe, 0, ctx);
    return pe;
}

void extend_path(const GraphView& view, PartialEmbedding& pe, std::span<const TreeVertex> path, EmbedContext& ctx)
{
    const auto& t = pe.tree();
    const int n = static_cast<int>(path.size()) - 1;
    invariant(n >= 1, "path needs an edge");
    for (int i = 1; i <= n; ++i)
        invariant(t.parent(path[static_cast<std::size_t>(i)]) == path[static_cast<std::size_t>(i) - 1],
            "path is not a downward chain");
    invariant(view.degree_bound() >= n, "path longer than the degree bound");

    // edge(i) is the i-th path edge, 1-based.
    auto edge = [&](int i) { return path[static_cast<std::size_t>(i)]; };
    const int prefix = std::min(n / 2 + 1, n);
    std::vector<TreeVertex> head;
    for (int i = 1; i <= prefix; ++i) {
        invariant(pe.edge(edge(i)).has_value(), "path prefix edge " + std::to_string(i) + " is unmapped");
        head.push_back(edge(i));
    }
    for (int i = prefix + 1; i <= n; ++i)
        invariant(!pe.is_mapped(edge(i)), "path edge " + std::to_string(i) + " is already mapped");
    if (ctx.options.check_invariants)
        invariant(pe.doubly_distinct_on(head), "path prefix is not doubly distinct");

    for (int i = prefix + 1; i <= n; ++i) {
        std::vector<TreeVertex> earlier;
        for (int j = 1; j < i; ++j)
            earlier.push_back(edge(j));
        std::vector<TreeVertex> window;
        for (int j = std::max(1, 2 * i - n - 1); j < i; ++j)
            window.push_back(edge(j));
        extend_one(view, pe, request(edge(i), pe.colors_of(earlier), pe.coords_of(window), {edge(i - 1)}, "path"), ctx);
    }

    if (ctx.options.check_invariants) {
        std::vector<Coordinate> coords;
        for (int i = 1; i <= n; ++i)
            coords.push_back(pe.edge(edge(i))->coordinate);
        invariant(sliding_window_sound(coords), "path coordinates break the sliding window");
        std::set<CubeVertex> seen;
        for (auto v : path)
            invariant(seen.insert(pe.image(v)).second, "path image revisits a vertex");
    }
}

void extend_spider(const GraphView& view, PartialEmbedding& pe, const SpiderShape& spider, EmbedContext& ctx)
{
    DepthGuard guard(ctx);
    const auto& t = pe.tree();
    const int k = static_cast<int>(spider.legs.size());
    invariant(k >= 1, "spider without legs");
    for (int i = 1; i < k; ++i)
        invariant(spider.leg_lengths[static_cast<std::size_t>(i)] % 2 == 0, "spider leg past the first is odd");
    invariant(view.degree_bound() >= spider.edge_count(), "spider larger than the degree bound");

    const auto& first = spider.legs.front();
    const int l1 = spider.leg_lengths.front();
    const auto e1 = first[static_cast<std::size_t>(l1 / 2 + 1)];

    auto floor_of = [&](int from) {
        TreeEdgeSet out;
        for (int i = from; i < k; ++i) {
            const auto& leg = spider.legs[static_cast<std::size_t>(i)];
            for (int j = 1; j <= spider.leg_lengths[static_cast<std::size_t>(i)] / 2; ++j)
                out.push_back(leg[static_cast<std::size_t>(j)]);
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    const auto half = floor_of(0);
    for (auto e : half)
        invariant(pe.edge(e).has_value(), "spider half edge " + std::to_string(e) + " is unmapped");
    if (ctx.options.check_invariants)
        invariant(pe.doubly_distinct_on(set_union(half, std::span(&e1, 1))), "spider half is not doubly distinct");

    if (!pe.is_mapped(e1)) {
        std::vector<TreeVertex> witnesses;
        auto upper = t.parent(e1);
        if (upper != spider.root)
            witnesses.push_back(upper);
        else if (k > 1)
            witnesses.push_back(spider.legs[1][1]);
        extend_one(view, pe, request(e1, pe.colors_of(half), pe.coords_of(half), witnesses, "spider.first"), ctx);
    }

    if (k == 1) {
        extend_path(view, pe, first, ctx);
        return;
    }

    const auto rest_half = floor_of(1);
    auto first_view = view.restrict(pe.colors_of(rest_half), pe.coords_of(rest_half));
    invariant(first_view.degree_bound() >= l1, "first leg exceeds its degree bound");
    extend_path(first_view, pe, first, ctx);

    SpiderShape rest;
    rest.root = spider.root;
    rest.legs.assign(spider.legs.begin() + 1, spider.legs.end());
    rest.leg_lengths.assign(spider.leg_lengths.begin() + 1, spider.leg_lengths.end());
    auto first_edges = TreeEdgeSet(first.begin() + 1, first.end());
    std::sort(first_edges.begin(), first_edges.end());
    auto rest_view = view.restrict(pe.colors_of(first_edges), {});
    auto sub = pe;
    extend_spider(rest_view, sub, rest, ctx);
    pe = std::move(sub);

    if (ctx.options.check_invariants)
        invariant(injective_on(pe, spider.root), "spider image is not injective");
}

void extend_tree(const GraphView& view, PartialEmbedding& pe, TreeVertex r, CubeVertex z_bad, EmbedContext& ctx)
{
    DepthGuard guard(ctx);
    const auto& t = pe.tree();
    const int size = t.subtree_edge_count(r);
    if (size == 0)
        return;
    invariant(view.degree_bound() >= size, "subtree of " + std::to_string(r) + " exceeds its degree bound");
    invariant(pe.is_mapped(r), "subtree root is unmapped");

    const auto root_image = pe.image(r);
    const auto q = edge_coordinate(root_image, z_bad);
    invariant(!view.has_edge(root_image, z_bad), "z_bad edge is still present");

    const auto all_edges = subtree_edges(t, r);
    const auto floor_t = half_floor(t, r);
    invariant(mapped_among(pe, all_edges) == floor_t, "mapped part of the subtree is not its floor half");
    invariant(!pe.coords_of(floor_t).contains(q), "floor half uses the z_bad coordinate");
    if (ctx.options.check_invariants)
        invariant(pe.doubly_distinct_on(floor_t), "floor half is not doubly distinct");

    const auto cls = classify_children(t, r);
    const int k = static_cast<int>(cls.spiders.size());
    const int l = static_cast<int>(cls.leaves.size());
    const int m = static_cast<int>(cls.rest.size());

    // A_i: root edge, floor half of S_i without e_i. B_j: root edge and floor half of T_j.
    std::vector<TreeEdgeSet> a_sets;
    std::vector<TreeEdgeSet> b_sets;
    TreeEdgeSet ab;
    for (const auto& s : cls.spiders) {
        TreeEdgeSet a{s.vertex};
        for (auto e : half_floor(t, s.vertex))
            if (e != s.e_edge)
                a.push_back(e);
        std::sort(a.begin(), a.end());
        ab = set_union(ab, a);
        a_sets.push_back(std::move(a));
    }
    for (auto tj : cls.rest) {
        auto b = set_union(half_floor(t, tj), std::span(&tj, 1));
        ab = set_union(ab, b);
        b_sets.push_back(std::move(b));
    }
    invariant(2 * static_cast<int>(ab.size()) + k + l <= size, "A and B are too large for the subtree");

    auto used_here = [&] { return mapped_among(pe, all_edges); };
    auto with_q = [&](CoordSet s) {
        s.insert(q);
        return s;
    };

    // Step 1: the rest of A and B, in BFS order from r.
    {
        std::deque<TreeVertex> queue{r};
        while (!queue.empty()) {
            auto v = queue.front();
            queue.pop_front();
            for (auto c : t.children(v)) {
                if (!contains_edge(ab, c))
                    continue;
                if (!pe.is_mapped(c)) {
                    auto used = used_here();
                    extend_one(view, pe, request(c, pe.colors_of(used), with_q(pe.coords_of(used)), {}, "tree.ab"), ctx);
                }
                queue.push_back(c);
            }
        }
    }

    // Steps 2 and 3: the middle edges e_i of the spiders.
    TreeEdgeSet es;
    for (int i = 0; i < k; ++i) {
        const auto& s = cls.spiders[static_cast<std::size_t>(i)];
        auto color_set = set_union(ab, es);
        auto coord_set = i == 0 ? ab : set_union(ab, std::span(&es.front(), 1));
        auto coords = pe.coords_of(coord_set);
        if (i == 0)
            coords.insert(q);
        extend_one(view, pe, request(s.e_edge, pe.colors_of(color_set), coords, {t.parent(s.e_edge)},
            i == 0 ? "tree.e1" : "tree.e"), ctx);
        es.push_back(s.e_edge);
    }
    std::sort(es.begin(), es.end());

    // Step 4: the leaf edges at r.
    TreeEdgeSet us;
    for (auto u : cls.leaves) {
        auto edges = set_union(set_union(ab, es), us);
        std::vector<TreeVertex> witnesses;
        for (const auto& s : cls.spiders)
            witnesses.push_back(s.vertex);
        witnesses.insert(witnesses.end(), us.begin(), us.end());
        extend_one(view, pe, request(u, pe.colors_of(edges), pe.coords_of(edges), witnesses, "tree.leaf"), ctx);
        us.push_back(u);
    }

    // Step 5: the edges f_i below e_i, from the second spider on.
    for (int i = 1; i < k; ++i) {
        const auto& s = cls.spiders[static_cast<std::size_t>(i)];
        TreeEdgeSet coord_set{s.e_edge};
        for (int j = i; j < k; ++j)
            coord_set = set_union(coord_set, a_sets[static_cast<std::size_t>(j)]);
        for (const auto& b : b_sets)
            coord_set = set_union(coord_set, b);
        extend_one(view, pe, request(s.f_edge, pe.colors_of(used_here()), pe.coords_of(coord_set), {s.e_edge},
            "tree.f"), ctx);
    }

    // Step 6: finish each spider inside the colors it may still use.
    for (const auto& s : cls.spiders) {
        auto shape = as_spider(t, s.vertex);
        invariant(shape.has_value(), "spider child lost its shape");
        auto sub_view = view.restrict(colors_outside(pe, r, s.vertex), {});
        auto sub = pe;
        extend_spider(sub_view, sub, *shape, ctx);
        pe = std::move(sub);
    }

    // Step 7: every other child except the last, by increasing deficiency.
    for (int j = 0; j + 1 < m; ++j) {
        const auto tj = cls.rest[static_cast<std::size_t>(j)];
        const auto floor_j = half_floor(t, tj);
        const auto ceil_j = half_ceil(t, tj);
        const auto def = deficiency(t, tj);
        auto sub = pe;
        if (ceil_j == floor_j) {
            auto sub_view = view.restrict(colors_outside(pe, r, tj), {});
            extend_tree(sub_view, sub, tj, root_image, ctx);
        } else if (def == 1) {
            TreeEdgeSet extra;
            std::set_difference(ceil_j.begin(), ceil_j.end(), floor_j.begin(), floor_j.end(), std::back_inserter(extra));
            invariant(extra.size() == 1, "deficiency-one child has several ceil-only edges");
            const auto fj = extra.front();
            TreeEdgeSet coord_set;
            for (int i = j; i < m; ++i)
                coord_set = set_union(coord_set, b_sets[static_cast<std::size_t>(i)]);
            extend_one(view, sub, request(fj, sub.colors_of(used_here()), sub.coords_of(coord_set), {t.parent(fj)},
                "tree.odd"), ctx);
            auto shape = as_spider(t, tj);
            invariant(shape && shape->odd_leg_count() == 1, "deficiency-one child is not a spider with one odd leg");
            auto odd = static_cast<std::size_t>(std::find_if(shape->leg_lengths.begin(), shape->leg_lengths.end(),
                                                    [](int len) { return len % 2 == 1; })
                - shape->leg_lengths.begin());
            std::rotate(shape->legs.begin(), shape->legs.begin() + static_cast<std::ptrdiff_t>(odd),
                shape->legs.begin() + static_cast<std::ptrdiff_t>(odd) + 1);
            std::rotate(shape->leg_lengths.begin(), shape->leg_lengths.begin() + static_cast<std::ptrdiff_t>(odd),
                shape->leg_lengths.begin() + static_cast<std::ptrdiff_t>(odd) + 1);
            invariant(sub.edge(shape->legs.front()[static_cast<std::size_t>(shape->leg_lengths.front() / 2 + 1)])
                          .has_value(),
                "ceil-only edge is not on the odd leg");
            auto sub_view = view.restrict(colors_outside(sub, r, tj), {});
            extend_spider(sub_view, sub, *shape, ctx);
        } else {
            TreeEdgeSet later{tj};
            for (int i = j + 1; i < m; ++i)
                later = set_union(later, b_sets[static_cast<std::size_t>(i)]);
            auto sub_view = view.restrict(colors_outside(pe, r, tj), pe.coords_of(later));
            extend_tree(sub_view, sub, tj, root_image, ctx);
        }
        pe = std::move(sub);
    }

    // Step 8: the last child.
    if (m > 0) {
        const auto tm = cls.rest.back();
        auto sub_view = view.restrict(colors_outside(pe, r, tm), {});
        auto sub = pe;
        extend_tree(sub_view, sub, tm, root_image, ctx);
        pe = std::move(sub);
    }

    invariant(static_cast<int>(mapped_among(pe, all_edges).size()) == size, "subtree left partially mapped");
    if (ctx.options.check_invariants) {
        invariant(injective_on(pe, r), "subtree image is not injective");
        invariant(path_distinct_on_ceil(pe, r), "ceil half is not path-distinct");
        for (auto v : t.subtree(r))
            invariant(pe.image(v) != z_bad, "subtree image hits z_bad");
    }
}

auto embed_rainbow_tree(const ColoredCubeGraph& g, const RootedTree& t, const EngineOptions& options)
    -> EmbedResult
{
    if (g.num_vertices() == 0)
        throw Error(ErrorCode::EmptyGraph, "graph has no vertices");
    if (g.min_degree() < t.edge_count())
        throw Error(ErrorCode::DegreeTooSmall, "min degree " + std::to_string(g.min_degree()) + " < "
            + std::to_string(t.edge_count()) + " tree edges");

    EmbedContext ctx(options);
    const auto start = options.start ? *options.start : (g.is_implicit() ? CubeVertex{0} : g.vertices().front());
    auto pe = embed_half(g, t, start, ctx);

    // z_bad: a cube neighbour of the start across an edge absent from g, in a
    // coordinate the floor half avoids. Falls back to the extra coordinate N.
    const auto used = pe.coords_of(half_floor(t, 0));
    Coordinate q = -1;
    for (Coordinate i = 0; i < g.dimension(); ++i)
        if (!used.contains(i) && !g.edge_color(start, start.flip(i))) {
            q = i;
            break;
        }
    bool raised = false;
    if (q < 0) {
        require(g.dimension() < kMaxDimension, ErrorCode::TooLarge, "no spare coordinate for z_bad in Q_64");
        q = g.dimension();
        raised = true;
    }
    const auto z_bad = start.flip(q);

    extend_tree(GraphView(g), pe, 0, z_bad, ctx);
    return {std::move(pe), std::move(ctx.trace), z_bad, q, raised};
}

}  // namespace rainbow
