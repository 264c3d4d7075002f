#include "fixtures.hpp"

#include "rainbow/embed.hpp"
#include "rainbow/gen.hpp"
#include "rainbow/io.hpp"
#include "rainbow/verify.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace rainbow;

namespace {

auto error_code(auto&& f) -> std::optional<ErrorCode>
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

auto coord_set(std::initializer_list<int> cs) -> CoordSet
{
    CoordSet out;
    for (auto c : cs)
        out.insert(c);
    return out;
}

// Walk from 0 along `coords`; every vertex it visits.
auto walk(std::span<const Coordinate> coords) -> std::vector<CubeVertex>
{
    std::vector<CubeVertex> out{CubeVertex{0}};
    for (auto c : coords)
        out.push_back(out.back().flip(c));
    return out;
}

// Every coordinate sequence over {0..alphabet-1} of length <= max_len.
void for_each_sequence(int alphabet, int max_len, const std::function<void(std::span<const Coordinate>)>& f)
{
    std::vector<Coordinate> seq;
    std::function<void()> rec = [&] {
        f(seq);
        if (static_cast<int>(seq.size()) == max_len)
            return;
        for (int c = 0; c < alphabet; ++c) {
            seq.push_back(c);
            rec();
            seq.pop_back();
        }
    };
    rec();
}

auto with_seed(std::uint64_t s) -> EngineOptions
{
    EngineOptions o;
    o.seed = s;
    return o;
}

auto full_check(const ColoredCubeGraph& g, const RootedTree& t, const EmbedResult& r) -> VerificationReport
{
    VerifyOptions opts;
    opts.require_path_distinct = true;
    opts.z_bad = r.z_bad;
    return verify(g, t, r.embedding.images(), opts);
}

}  // namespace

TEST(Injectivity, EndpointsMustDiffer)
{
    EXPECT_TRUE(endpoints_must_differ(std::vector<Coordinate>{1, 2}));
    EXPECT_FALSE(endpoints_must_differ(std::vector<Coordinate>{1, 1}));
    EXPECT_TRUE(endpoints_must_differ(std::vector<Coordinate>{0, 1, 2, 1, 0}));

    // Soundness against the walk itself: a "true" answer means the endpoints differ.
    for_each_sequence(4, 7, [](std::span<const Coordinate> coords) {
        auto w = walk(coords);
        if (endpoints_must_differ(coords)) {
            EXPECT_NE(w.front(), w.back());
        }
    });
}

TEST(Injectivity, SlidingWindowImpliesInjectiveWalk)
{
    int sound = 0;
    for_each_sequence(5, 7, [&](std::span<const Coordinate> coords) {
        if (!sliding_window_sound(coords))
            return;
        ++sound;
        auto w = walk(coords);
        EXPECT_EQ(std::set<CubeVertex>(w.begin(), w.end()).size(), w.size());
    });
    EXPECT_GT(sound, 1000);
    EXPECT_FALSE(sliding_window_sound(std::vector<Coordinate>{0, 1, 0, 1}));
}

TEST(ExtendOne, CountingGuard)
{
    auto g = cayley_coloring(3);
    auto t = fixtures::star(3);
    GraphView view(g);

    PartialEmbedding pe(t, g);
    EmbedContext ctx;
    pe.map_vertex(0, CubeVertex{0});
    extend_one(view, pe, {1, {}, {}, {}, "t"}, ctx);
    EXPECT_EQ(pe.edge(1)->coordinate, 0);
    extend_one(view, pe, {2, {0}, coord_set({0}), {1}, "t"}, ctx);
    EXPECT_EQ(pe.edge(2)->coordinate, 1);

    // Two colors plus two coordinates minus one witness is 3, not below the degree 3.
    auto guarded = pe;
    EXPECT_EQ(error_code([&] { extend_one(view, guarded, {3, {0, 1}, coord_set({0, 1}), {1}, "t"}, ctx); }),
        ErrorCode::PreconditionViolated);
    // With both witnesses the load drops to 2 and the coordinate-2 edge is taken.
    extend_one(view, pe, {3, {0, 1}, coord_set({0, 1}), {1, 2}, "t"}, ctx);
    EXPECT_EQ(pe.edge(3)->coordinate, 2);
    EXPECT_TRUE(pe.is_total());

    PartialEmbedding full(t, g);
    full.map_vertex(0, CubeVertex{0});
    EXPECT_EQ(error_code([&] { extend_one(view, full, {1, {0, 1}, coord_set({2}), {}, "t"}, ctx); }),
        ErrorCode::PreconditionViolated);
}

TEST(ExtendOne, RejectsBadRequests)
{
    auto g = cayley_coloring(3);
    auto t = fixtures::path(2);
    GraphView view(g);
    EmbedContext ctx;
    PartialEmbedding pe(t, g);
    pe.map_vertex(0, CubeVertex{0});
    EXPECT_EQ(error_code([&] { extend_one(view, pe, {2, {}, {}, {}, "t"}, ctx); }), ErrorCode::PreconditionViolated);
    extend_one(view, pe, {1, {}, {}, {}, "t"}, ctx);
    EXPECT_EQ(error_code([&] { extend_one(view, pe, {1, {}, {}, {}, "t"}, ctx); }), ErrorCode::PreconditionViolated);
    // A witness must lie in both avoided classes.
    EXPECT_EQ(error_code([&] { extend_one(view, pe, {2, {0}, {}, {1}, "t"}, ctx); }),
        ErrorCode::PreconditionViolated);
    EXPECT_EQ(error_code([&] { pe.map_vertex(2, CubeVertex{99}); }), ErrorCode::VertexNotInGraph);
}

TEST(ExtendOne, Monotone)
{
    auto g = refined_cayley(5, 4, 2);
    auto t = random_tree(5, 11);
    GraphView view(g);
    EngineOptions seeded;
    seeded.seed = 3;
    EmbedContext ctx(seeded);
    PartialEmbedding pe(t, g);
    pe.map_vertex(0, g.vertices()[7]);
    for (TreeVertex c = 1; c < t.size(); ++c) {
        auto before_colors = pe.used_colors().size();
        auto before_edges = pe.mapped_edge_count();
        extend_one(view, pe, {c, pe.used_colors(), {}, {}, "t"}, ctx);
        EXPECT_EQ(pe.used_colors().size(), before_colors + 1);
        EXPECT_EQ(pe.mapped_edge_count(), before_edges + 1);
        EXPECT_TRUE(pe.edge(c).has_value());
    }
}

TEST(EmbedHalf, Examples)
{
    EmbedContext ctx;
    auto star = fixtures::star(4);
    auto g4 = cayley_coloring(4);
    EXPECT_EQ(embed_half(g4, star, CubeVertex{0}, ctx).mapped_edge_count(), 0);

    auto p4 = fixtures::path(4);
    auto pe = embed_half(g4, p4, CubeVertex{0}, ctx);
    EXPECT_EQ(pe.mapped_edge_count(), 2);
    auto half = half_floor(p4);
    EXPECT_EQ(pe.colors_of(half).size(), 2);
    EXPECT_EQ(pe.coords_of(half).size(), 2);
}

TEST(EmbedHalf, DoublyDistinctOnEnumeratedTrees)
{
    auto g = cayley_coloring(5);
    for (const auto& t : enumerate_trees(5)) {
        EmbedContext ctx;
        auto pe = embed_half(g, t, CubeVertex{0}, ctx);
        auto half = half_floor(t);
        EXPECT_TRUE(pe.doubly_distinct_on(half)) << canonical_form(t);
        EXPECT_EQ(pe.mapped_edge_count(), static_cast<int>(half.size()));
    }
}

TEST(ExtendPath, FromMappedPrefix)
{
    auto g = cayley_coloring(4);
    auto t = fixtures::path(4);
    PartialEmbedding pe(t, g);
    pe.map_vertex(0, CubeVertex{0});
    auto x = CubeVertex{0};
    for (int i = 1; i <= 3; ++i) {
        x = x.flip(i - 1);
        pe.map_edge(i, {i - 1, static_cast<Color>(i - 1), x});
    }
    EmbedContext ctx;
    std::vector<TreeVertex> path{0, 1, 2, 3, 4};
    extend_path(GraphView(g), pe, path, ctx);
    ASSERT_TRUE(pe.is_total());
    EXPECT_TRUE(verify(g, t, pe.images()).passed());
    EXPECT_EQ(pe.used_colors().size(), 4);
}

TEST(ExtendPath, CompleteInputUnchanged)
{
    auto g = cayley_coloring(3);
    auto t = fixtures::path(2);
    PartialEmbedding pe(t, g);
    pe.map_vertex(0, CubeVertex{0});
    pe.map_edge(1, {0, 0, CubeVertex{1}});
    pe.map_edge(2, {1, 1, CubeVertex{3}});
    auto before = pe.images();
    EmbedContext ctx;
    std::vector<TreeVertex> path{0, 1, 2};
    extend_path(GraphView(g), pe, path, ctx);
    EXPECT_EQ(pe.images(), before);
    EXPECT_TRUE(ctx.trace.empty());
}

TEST(ExtendSpider, Examples)
{
    for (auto [legs, n] : std::vector<std::pair<std::vector<int>, int>>{{{2, 2}, 4}, {{3, 2, 2}, 7}, {{5, 4, 4, 2, 2}, 17}}) {
        auto g = cayley_coloring(n);
        auto t = random_spider(legs);
        EmbedContext ctx;
        auto pe = embed_half(g, t, CubeVertex{0}, ctx);
        extend_spider(GraphView(g), pe, *as_spider(t), ctx);
        ASSERT_TRUE(pe.is_total());
        VerifyOptions opts;
        opts.require_path_distinct = true;
        EXPECT_TRUE(verify(g, t, pe.images(), opts).passed()) << verify(g, t, pe.images(), opts).to_text();
    }
    // The oracle agrees that the (2,2) spider fits in Q_4.
    EXPECT_TRUE(oracle_find(cayley_coloring(4), random_spider({2, 2})).found);
}

TEST(ExtendSpider, SingleLegIsAPath)
{
    auto g = cayley_coloring(4);
    auto t = fixtures::path(4);
    EmbedContext ctx;
    auto pe = embed_half(g, t, CubeVertex{0}, ctx);
    extend_spider(GraphView(g), pe, *as_spider(t), ctx);
    ASSERT_TRUE(pe.is_total());
    // Floor half covers vertices 0..2; one spider.first step, then plain path steps.
    for (const auto& e : ctx.trace)
        if (e.child > 2) {
            EXPECT_EQ(e.step, e.child == 3 ? "spider.first" : "path");
        }
}

TEST(Embed, Examples)
{
    auto q3 = cayley_coloring(3);
    auto r = embed_rainbow_tree(q3, fixtures::path(3));
    EXPECT_TRUE(full_check(q3, fixtures::path(3), r).passed());
    EXPECT_EQ(error_code([&] { embed_rainbow_tree(q3, fixtures::path(4)); }), ErrorCode::DegreeTooSmall);
    EXPECT_FALSE(oracle_find(q3, fixtures::path(4)).found);
    EXPECT_EQ(error_code([] { embed_rainbow_tree(ColoredCubeGraph(3, {}, {}), fixtures::path(1)); }),
        ErrorCode::EmptyGraph);

    // A single edge lands on the first edge of the first vertex.
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto g = subgraph_min_degree(4, 1, seed);
        auto single = embed_rainbow_tree(g, fixtures::path(1));
        auto start = g.vertices().front();
        EXPECT_EQ(single.embedding.image(0), start);
        EXPECT_EQ(single.embedding.image(1), g.incident(start).front().neighbor);
    }
}

TEST(Embed, StarUsesDistinctColors)
{
    for (int d = 1; d <= 6; ++d) {
        auto g = refined_cayley(6, static_cast<std::uint64_t>(d), 3);
        auto t = fixtures::star(d);
        auto r = embed_rainbow_tree(g, t);
        EXPECT_TRUE(full_check(g, t, r).passed());
        EXPECT_EQ(r.embedding.used_colors().size(), d);
    }
}

TEST(Embed, SmallTreesAvoidEveryLegalZBad)
{
    // Q_5 with one coordinate class removed: z_bad may be the start flipped in
    // that coordinate, for every choice of the removed class.
    auto g = cayley_coloring(5);
    for (const auto& t : enumerate_trees(4)) {
        if (t.edge_count() == 0)
            continue;
        for (Coordinate q = 0; q < 5; ++q) {
            auto view = GraphView(g).restrict({}, coord_set({q}));
            CubeVertex start{0b10110};
            EmbedContext ctx;
            PartialEmbedding pe(t, g);
            pe.map_vertex(0, start);
            embed_half(view, pe, 0, ctx);
            extend_tree(view, pe, 0, start.flip(q), ctx);
            VerifyOptions opts;
            opts.require_path_distinct = true;
            opts.z_bad = start.flip(q);
            auto report = verify(g, t, pe.images(), opts);
            EXPECT_TRUE(report.passed()) << canonical_form(t) << " q=" << q << "\n" << report.to_text();
        }
    }
}

TEST(Embed, AllSmallTreesInCayleyQ4)
{
    auto g = cayley_coloring(4);
    for (const auto& t : enumerate_trees(4)) {
        auto r = embed_rainbow_tree(g, t);
        EXPECT_TRUE(r.raised_dimension);
        EXPECT_TRUE(full_check(g, t, r).passed()) << canonical_form(t);
    }
}

TEST(Embed, Figure3InQ48)
{
    auto [t, id] = fixtures::figure3();
    auto g = cayley_coloring(48);
    ASSERT_TRUE(g.is_implicit());
    auto r = embed_rainbow_tree(g, t);
    EXPECT_TRUE(r.raised_dimension);
    EXPECT_EQ(r.z_bad_coordinate, 48);
    auto report = full_check(g, t, r);
    EXPECT_TRUE(report.passed()) << report.to_text();

    std::set<std::string> steps;
    for (const auto& e : r.trace)
        steps.insert(e.step);
    for (auto s : {"start", "half", "tree.ab", "tree.e1", "tree.e", "tree.leaf", "tree.f", "tree.odd", "spider.first",
             "path"})
        EXPECT_TRUE(steps.contains(s)) << s;
}

TEST(Embed, TraceReplaysToTheEmbedding)
{
    auto [t, id] = fixtures::figure3();
    auto r = embed_rainbow_tree(cayley_coloring(48), t);
    ASSERT_EQ(static_cast<int>(r.trace.size()), t.size());
    auto replayed = replay_trace(t, r.trace);
    auto images = r.embedding.images();
    for (TreeVertex v = 0; v < t.size(); ++v) {
        EXPECT_EQ(replayed[v], images[v]);
    }
}

TEST(Embed, Deterministic)
{
    auto g = refined_cayley(6, 21, 2);
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto t = random_tree(6, s);
        auto a = embed_rainbow_tree(g, t);
        auto b = embed_rainbow_tree(g, t);
        EXPECT_EQ(format_embedding(g, t, a.embedding.images(), &a.trace),
            format_embedding(g, t, b.embedding.images(), &b.trace));
        auto c = embed_rainbow_tree(g, t, with_seed(s));
        auto d = embed_rainbow_tree(g, t, with_seed(s));
        EXPECT_EQ(c.embedding.images(), d.embedding.images());
    }
}

TEST(Embed, SeedsDiversify)
{
    auto g = cayley_coloring(7);
    auto t = random_tree(7, 5);
    std::set<std::vector<CubeVertex>> seen;
    for (std::uint64_t s = 1; s <= 20; ++s) {
        auto r = embed_rainbow_tree(g, t, with_seed(s));
        EXPECT_TRUE(full_check(g, t, r).passed());
        seen.insert(r.embedding.images());
    }
    EXPECT_GT(seen.size(), 1U);
}

TEST(Embed, TightRandomHosts)
{
    for (std::uint64_t s = 0; s < 150; ++s) {
        int n = 5 + static_cast<int>(s % 3);
        int d = 2 + static_cast<int>(s % (n - 1));
        auto g = subgraph_min_degree(n, d, s);
        auto t = random_tree(g.min_degree(), s + 7);
        auto r = embed_rainbow_tree(g, t, with_seed(s));
        auto report = full_check(g, t, r);
        EXPECT_TRUE(report.passed()) << "seed " << s << "\n" << report.to_text();
    }
}

// Random pairs of maps built to satisfy the hypotheses of the disjoint-images
// lemma; their images must never meet.
TEST(DisjointImages, ConditionsForceDisjointness)
{
    constexpr int kCoords = 24;
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
        SplitMix64 rng(seed);
        auto t1 = random_tree(static_cast<int>(rng.below(9)), rng.next());
        auto t2 = random_tree(static_cast<int>(rng.below(9)), rng.next());
        const Coordinate link = static_cast<Coordinate>(rng.below(kCoords));
        std::vector<int> owner(kCoords);
        for (auto& o : owner)
            o = static_cast<int>(rng.below(2));

        // Ceil-half edges draw from the tree's own pool, avoiding their root path;
        // everything else is an arbitrary coordinate, `link` included.
        auto map_tree = [&](const RootedTree& t, CubeVertex root, int pool) {
            std::vector<CubeVertex> images(static_cast<std::size_t>(t.size()));
            std::vector<CoordSet> path(static_cast<std::size_t>(t.size()));
            images[0] = root;
            for (auto v : t.subtree(0)) {
                if (v == 0)
                    continue;
                auto p = t.parent(v);
                Coordinate c;
                if (in_ceil_half(t, 0, v)) {
                    std::vector<Coordinate> allowed;
                    for (Coordinate q = 0; q < kCoords; ++q)
                        if (q != link && owner[q] == pool && !path[p].contains(q))
                            allowed.push_back(q);
                    if (allowed.empty())
                        return std::optional<std::vector<CubeVertex>>{};
                    c = allowed[rng.below(allowed.size())];
                } else {
                    c = static_cast<Coordinate>(rng.below(kCoords));
                }
                images[v] = images[p].flip(c);
                path[v] = path[p] | coord_set({c});
            }
            return std::optional{images};
        };
        CubeVertex x{rng.below(1U << kCoords)};
        auto a = map_tree(t1, x, 0);
        auto b = map_tree(t2, x.flip(link), 1);
        if (!a || !b)
            continue;
        ASSERT_TRUE(disjointness_conditions_hold(t1, *a, t2, *b)) << "seed " << seed;
        std::set<CubeVertex> left(a->begin(), a->end());
        for (auto y : *b) {
            EXPECT_FALSE(left.contains(y)) << "seed " << seed;
        }
        ++checked;
    }
    EXPECT_GT(checked, 1500);
}

TEST(DisjointImages, ConditionsAreNeeded)
{
    // T' is one edge in the link coordinate, so it lands on the other root.
    auto t1 = fixtures::path(1);
    auto t2 = RootedTree::build(std::vector<int>{});
    std::vector<CubeVertex> a{CubeVertex{0}, CubeVertex{1}};
    std::vector<CubeVertex> b{CubeVertex{1}};
    EXPECT_FALSE(disjointness_conditions_hold(t1, a, t2, b));

    // Shared ceil coordinates break (b).
    std::vector<CubeVertex> c{CubeVertex{0}, CubeVertex{2}};
    std::vector<CubeVertex> d{CubeVertex{1}, CubeVertex{3}};
    EXPECT_FALSE(disjointness_conditions_hold(t1, c, t1, d));

    std::vector<CubeVertex> e{CubeVertex{1}, CubeVertex{5}};
    EXPECT_TRUE(disjointness_conditions_hold(t1, c, t1, e));
}
