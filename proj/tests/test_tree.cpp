#include "fixtures.hpp"

#include "rainbow/gen.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/tree.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
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

// Rooted trees with n vertices: a(n+1) = (1/n) sum_k (sum_{d|k} d a(d)) a(n-k+1).
auto rooted_tree_counts(int max_vertices) -> std::vector<long>
{
    std::vector<long> a(static_cast<std::size_t>(max_vertices) + 1, 0);
    a[1] = 1;
    for (int n = 1; n < max_vertices; ++n) {
        long sum = 0;
        for (int k = 1; k <= n; ++k) {
            long s = 0;
            for (int d = 1; d <= k; ++d)
                if (k % d == 0)
                    s += d * a[d];
            sum += s * a[n - k + 1];
        }
        a[n + 1] = sum / n;
    }
    return a;
}

// Local AHU encoding, independent of the library's.
auto ahu(const std::vector<std::vector<int>>& kids, int v) -> std::string
{
    std::vector<std::string> parts;
    for (int c : kids[v])
        parts.push_back(ahu(kids, c));
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (auto& p : parts)
        out += p;
    return out + ")";
}

// Distinct shapes among all parent arrays with parent[i] < i.
auto brute_force_shapes(int edges) -> std::set<std::string>
{
    std::set<std::string> shapes;
    std::vector<int> parents(static_cast<std::size_t>(edges), 0);
    while (true) {
        std::vector<std::vector<int>> kids(static_cast<std::size_t>(edges) + 1);
        for (int i = 0; i < edges; ++i)
            kids[parents[i]].push_back(i + 1);
        shapes.insert(ahu(kids, 0));
        int i = edges - 1;
        while (i >= 0 && parents[i] == i)
            parents[i--] = 0;
        if (i < 0)
            break;
        ++parents[i];
    }
    return shapes;
}

auto relabel(const RootedTree& t, std::uint64_t seed) -> RootedTree
{
    std::vector<int> perm(static_cast<std::size_t>(t.size()));
    std::iota(perm.begin(), perm.end(), 0);
    SplitMix64 rng(seed);
    for (std::size_t i = perm.size() - 1; i > 1; --i)
        std::swap(perm[i], perm[1 + rng.below(i)]);
    std::vector<int> parents(perm.size() - 1);
    for (TreeVertex v = 1; v < t.size(); ++v)
        parents[perm[v] - 1] = perm[t.parent(v)];
    return RootedTree::build(parents);
}

}  // namespace

TEST(Build, Examples)
{
    auto single = RootedTree::build(std::vector<int>{});
    EXPECT_EQ(single.size(), 1);
    EXPECT_EQ(single.level(0), 0);

    auto p = RootedTree::build({0, 1});
    EXPECT_EQ(p.level_max(0), 2);
    EXPECT_EQ(p.level(2), 2);
    EXPECT_EQ(p.parents(), (std::vector<int>{0, 1}));

    EXPECT_EQ(error_code([] { RootedTree::build({3, 0, 1}); }), ErrorCode::CycleDetected);
    EXPECT_EQ(error_code([] { RootedTree::build({0, 5}); }), ErrorCode::IndexOutOfRange);
    EXPECT_EQ(error_code([] { RootedTree::build({0, -1}); }), ErrorCode::DisconnectedInput);
}

TEST(Halves, Examples)
{
    auto p2 = fixtures::path(2);
    EXPECT_EQ(half_floor(p2), (TreeEdgeSet{1}));
    EXPECT_EQ(half_ceil(p2), (TreeEdgeSet{1}));
    EXPECT_TRUE(half_floor(fixtures::star(5)).empty());
    EXPECT_EQ(half_ceil(fixtures::star(5)).size(), 5U);
}

TEST(Halves, Figure1ByDefinition)
{
    // x10 sits at level 3 with level_max 4 below the root, outside both halves.
    auto t = fixtures::figure1();
    EXPECT_EQ(t.size(), 14);
    EXPECT_EQ(half_floor(t), (TreeEdgeSet{1, 2, 5, 9}));
    EXPECT_EQ(half_ceil(t), (TreeEdgeSet{1, 2, 5, 6, 9}));
    EXPECT_FALSE(in_ceil_half(t, 0, 10));
    EXPECT_EQ(t.level_max(0), 7);
    EXPECT_EQ(t.level(10), 3);
    EXPECT_EQ(t.level_max(10), 4);
}

TEST(Deficiency, Examples)
{
    EXPECT_EQ(deficiency(random_spider({2, 2, 4})), 0);
    EXPECT_EQ(deficiency(random_spider({5, 4, 4, 2, 2})), 1);
    EXPECT_EQ(deficiency(fixtures::path(1)), 1);
}

TEST(Spider, Examples)
{
    auto p4 = as_spider(fixtures::path(4));
    ASSERT_TRUE(p4);
    EXPECT_EQ(p4->leg_lengths, (std::vector<int>{4}));
    EXPECT_TRUE(p4->is_even());

    auto fig2 = as_spider(random_spider({5, 4, 4, 2, 2}));
    ASSERT_TRUE(fig2);
    EXPECT_EQ(fig2->leg_lengths, (std::vector<int>{5, 4, 4, 2, 2}));
    EXPECT_FALSE(fig2->is_even());
    EXPECT_EQ(fig2->odd_leg_count(), 1);
    EXPECT_EQ(fig2->edge_count(), 17);

    EXPECT_FALSE(as_spider(fixtures::figure1()));
    EXPECT_EQ(error_code([] { as_spider(RootedTree::build(std::vector<int>{})); }), ErrorCode::EmptyTree);
}

TEST(Classify, Examples)
{
    auto star = classify_children(fixtures::star(3));
    EXPECT_EQ(star.leaves.size(), 3U);
    EXPECT_TRUE(star.spiders.empty());
    EXPECT_TRUE(star.rest.empty());

    auto one = classify_children(RootedTree::build({0, 1, 2}));
    EXPECT_TRUE(one.leaves.empty());
    ASSERT_EQ(one.spiders.size(), 1U);
    EXPECT_EQ(one.spiders[0].half_length, 1);
    EXPECT_EQ(one.spiders[0].leg, (std::vector<TreeVertex>{1, 2, 3}));
    EXPECT_EQ(one.spiders[0].e_edge, 2);
    EXPECT_EQ(one.spiders[0].f_edge, 3);
    EXPECT_TRUE(one.rest.empty());

    EXPECT_EQ(error_code([] { classify_children(RootedTree::build(std::vector<int>{})); }), ErrorCode::EmptyTree);
}

TEST(Classify, Figure3)
{
    auto [t, id] = fixtures::figure3();
    EXPECT_EQ(t.edge_count(), 48);
    auto c = classify_children(t);
    EXPECT_EQ(c.leaves, (std::vector<TreeVertex>{id["u1"], id["u2"], id["u3"]}));
    ASSERT_EQ(c.spiders.size(), 2U);
    EXPECT_EQ(c.spiders[0].vertex, id["s1"]);
    EXPECT_EQ(c.spiders[0].half_length, 2);
    EXPECT_EQ(c.spiders[0].leg.front(), id["s1"]);
    EXPECT_EQ(c.spiders[0].leg.back(), id["s1a4"]);
    EXPECT_EQ(c.spiders[1].vertex, id["s2"]);
    EXPECT_EQ(c.rest, (std::vector<TreeVertex>{id["t1"], id["t2"], id["t3"], id["t4"]}));
    EXPECT_EQ(deficiency(t, id["t1"]), 1);
    EXPECT_EQ(deficiency(t, id["t2"]), 1);
    EXPECT_EQ(deficiency(t, id["t3"]), 2);
    EXPECT_EQ(deficiency(t, id["t4"]), 3);
    EXPECT_NE(half_floor(t, id["t1"]), half_ceil(t, id["t1"]));
    EXPECT_EQ(half_floor(t, id["t2"]), half_ceil(t, id["t2"]));
}

TEST(Iota, PathReflection)
{
    auto m = iota_injection(fixtures::path(4));
    ASSERT_EQ(m.size(), 2U);
    EXPECT_EQ(m[0], std::make_pair(1, 4));
    EXPECT_EQ(m[1], std::make_pair(2, 3));
    EXPECT_TRUE(iota_injection(fixtures::star(4)).empty());
    EXPECT_EQ(error_code([] { iota_reverse(fixtures::path(4), 1); }), ErrorCode::PreconditionViolated);
}

TEST(DegreeSum, Examples)
{
    EXPECT_EQ(degree_sum_identity(random_spider({3, 1, 2})), std::make_pair(0, 0));
    EXPECT_EQ(degree_sum_identity(fixtures::path(1)), std::make_pair(0, 0));
    EXPECT_TRUE(root_nonleaf_edges(fixtures::path(1)).empty());
    EXPECT_TRUE(leaf_nonroot_edges(fixtures::path(1)).empty());

    // Figure 1 by hand: E_1 = {x0x1}, E_2 ends at x4, x8, x11, x13; x1 and x2 carry the excess.
    auto t = fixtures::figure1();
    EXPECT_EQ(root_nonleaf_edges(t), (TreeEdgeSet{1}));
    EXPECT_EQ(leaf_nonroot_edges(t), (TreeEdgeSet{4, 8, 11, 13}));
    EXPECT_EQ(degree_sum_identity(t), std::make_pair(3, 3));
}

TEST(Enumerate, CountsMatchRecurrence)
{
    auto a = rooted_tree_counts(kMaxEnumerationEdges + 1);
    EXPECT_EQ(a[1], 1);
    EXPECT_EQ(a[4], 4);
    auto trees = enumerate_trees(kMaxEnumerationEdges);
    std::vector<long> per_size(kMaxEnumerationEdges + 1, 0);
    std::set<std::string> forms;
    for (const auto& t : trees) {
        ++per_size[t.edge_count()];
        forms.insert(canonical_form(t));
    }
    EXPECT_EQ(forms.size(), trees.size());
    for (int e = 0; e <= kMaxEnumerationEdges; ++e) {
        EXPECT_EQ(per_size[e], a[e + 1]) << e << " edges";
    }
    EXPECT_EQ(enumerate_trees(1).size(), 2U);
    EXPECT_EQ(error_code([] { enumerate_trees(kMaxEnumerationEdges + 1); }), ErrorCode::LimitExceeded);
}

TEST(Enumerate, MatchesBruteForceShapes)
{
    for (int e = 0; e <= 6; ++e) {
        std::set<std::string> ours;
        for (const auto& t : enumerate_trees(e))
            if (t.edge_count() == e) {
                std::vector<std::vector<int>> kids(static_cast<std::size_t>(t.size()));
                for (TreeVertex v = 1; v < t.size(); ++v)
                    kids[t.parent(v)].push_back(v);
                ours.insert(ahu(kids, 0));
            }
        EXPECT_EQ(ours, brute_force_shapes(e)) << e << " edges";
    }
}

TEST(Canonical, RoundTripAndRelabeling)
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto t = random_tree(static_cast<int>(seed % 15), seed);
        auto form = canonical_form(t);
        EXPECT_EQ(canonical_form(tree_from_canonical(form)), form);
        EXPECT_EQ(canonical_form(relabel(t, seed)), form);
    }
}

// Structural identities over random trees.
class TreeProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(TreeProperties, Identities)
{
    auto seed = GetParam();
    for (int i = 0; i < 50; ++i) {
        auto t = random_tree(1 + static_cast<int>((seed * 50 + i) % 14), seed * 1000 + i);
        auto floor = half_floor(t);
        auto ceil = half_ceil(t);
        auto d = deficiency(t);
        ASSERT_GE(t.edge_count(), 2 * static_cast<int>(floor.size()));
        EXPECT_EQ(d, t.edge_count() - 2 * static_cast<int>(floor.size()));
        EXPECT_TRUE(std::includes(ceil.begin(), ceil.end(), floor.begin(), floor.end()));

        auto spider = as_spider(t);
        if (d == 0) {
            EXPECT_TRUE(spider && spider->is_even());
        }
        if (spider) {
            EXPECT_EQ(d, spider->odd_leg_count());
        }
        if (d == 1) {
            EXPECT_TRUE(floor == ceil || (spider && spider->odd_leg_count() == 1));
        }

        auto iota = iota_injection(t);
        ASSERT_EQ(iota.size(), floor.size());
        std::set<TreeVertex> images;
        for (auto [e, img] : iota) {
            EXPECT_TRUE(std::binary_search(floor.begin(), floor.end(), e));
            EXPECT_FALSE(std::binary_search(ceil.begin(), ceil.end(), img));
            EXPECT_TRUE(images.insert(img).second);
            EXPECT_EQ(iota_reverse(t, img), e);
        }

        auto [lhs, rhs] = degree_sum_identity(t);
        EXPECT_EQ(lhs, rhs);
        auto e1 = static_cast<int>(root_nonleaf_edges(t).size());
        auto e2 = static_cast<int>(leaf_nonroot_edges(t).size());
        EXPECT_EQ(lhs, e2 - e1);
        EXPECT_GE(t.edge_count() - static_cast<int>(ceil.size()) - e2, static_cast<int>(floor.size()) - e1);

        if (t.edge_count() > 0) {
            auto c = classify_children(t);
            for (auto r : c.rest) {
                EXPECT_GE(deficiency(t, r), 1);
            }
            for (const auto& s : c.spiders) {
                EXPECT_EQ(deficiency(t, s.vertex), 0);
                EXPECT_EQ(static_cast<int>(s.leg.size()), 2 * s.half_length + 1);
            }
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, TreeProperties, ::testing::Range<std::uint64_t>(0, 20));
