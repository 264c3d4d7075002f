#include "rainbow/tree.hpp"

#include <algorithm>
#include <set>

namespace rainbow {

auto RootedTree::build(std::initializer_list<int> parents) -> RootedTree
{
    return build(std::span<const int>(parents.begin(), parents.size()));
}

auto RootedTree::build(std::span<const int> parents) -> RootedTree
{
    const int n = static_cast<int>(parents.size()) + 1;
    RootedTree t;
    t.parent_.assign(static_cast<std::size_t>(n), -1);
    for (int v = 1; v < n; ++v) {
        int p = parents[static_cast<std::size_t>(v - 1)];
        if (p < 0)
            throw Error(ErrorCode::DisconnectedInput, "vertex " + std::to_string(v) + " has no parent");
        if (p >= n)
            throw Error(ErrorCode::IndexOutOfRange,
                "parent " + std::to_string(p) + " of vertex " + std::to_string(v) + " out of range");
        t.parent_[v] = p;
    }

    // Every parent chain must reach the root.
    std::vector<char> state(static_cast<std::size_t>(n), 0);  // 0 unseen, 1 on stack, 2 reaches root
    state[0] = 2;
    std::vector<TreeVertex> chain;
    for (int v = 1; v < n; ++v) {
        chain.clear();
        int x = v;
        while (state[x] == 0) {
            state[x] = 1;
            chain.push_back(x);
            x = t.parent_[x];
        }
        if (state[x] == 1)
            throw Error(ErrorCode::CycleDetected, "parent chain of vertex " + std::to_string(v) + " loops");
        for (auto y : chain)
            state[y] = 2;
    }

    t.children_.assign(static_cast<std::size_t>(n), {});
    for (int v = 1; v < n; ++v)
        t.children_[t.parent_[v]].push_back(v);

    t.level_.assign(static_cast<std::size_t>(n), 0);
    t.pre_index_.assign(static_cast<std::size_t>(n), 0);
    t.preorder_.reserve(static_cast<std::size_t>(n));
    std::vector<TreeVertex> stack{0};
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        t.pre_index_[v] = static_cast<int>(t.preorder_.size());
        t.preorder_.push_back(v);
        const auto& ch = t.children_[v];
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) {
            t.level_[*it] = t.level_[v] + 1;
            stack.push_back(*it);
        }
    }

    t.level_max_ = t.level_;
    t.subtree_size_.assign(static_cast<std::size_t>(n), 1);
    for (auto it = t.preorder_.rbegin(); it != t.preorder_.rend(); ++it) {
        auto v = *it;
        if (v == 0)
            continue;
        auto p = t.parent_[v];
        t.level_max_[p] = std::max(t.level_max_[p], t.level_max_[v]);
        t.subtree_size_[p] += t.subtree_size_[v];
    }
    return t;
}

auto RootedTree::degree(TreeVertex v) const -> int
{
    return static_cast<int>(children_[v].size()) + (v == 0 ? 0 : 1);
}

auto RootedTree::is_leaf(TreeVertex v) const -> bool
{
    return children_[v].empty() && (v != 0 || size() == 1);
}

auto RootedTree::subtree(TreeVertex r) const -> std::span<const TreeVertex>
{
    return std::span<const TreeVertex>(preorder_).subspan(static_cast<std::size_t>(pre_index_[r]),
        static_cast<std::size_t>(subtree_size_[r]));
}

auto RootedTree::is_descendant(TreeVertex v, TreeVertex r) const -> bool
{
    return pre_index_[v] >= pre_index_[r] && pre_index_[v] < pre_index_[r] + subtree_size_[r];
}

auto RootedTree::ancestor_at_level(TreeVertex v, int lvl) const -> TreeVertex
{
    if (lvl < 0 || lvl > level_[v])
        throw Error(ErrorCode::IndexOutOfRange, "no ancestor at level " + std::to_string(lvl));
    while (level_[v] > lvl)
        v = parent_[v];
    return v;
}

auto RootedTree::parents() const -> std::vector<int>
{
    return {parent_.begin() + 1, parent_.end()};
}

auto in_floor_half(const RootedTree& t, TreeVertex r, TreeVertex v) -> bool
{
    auto base = t.level(r);
    return t.level(v) - base <= (t.level_max(v) - base) / 2;
}

auto in_ceil_half(const RootedTree& t, TreeVertex r, TreeVertex v) -> bool
{
    auto base = t.level(r);
    return t.level(v) - base <= (t.level_max(v) - base + 1) / 2;
}

namespace {

auto collect_half(const RootedTree& t, TreeVertex r, bool ceil) -> TreeEdgeSet
{
    TreeEdgeSet out;
    for (auto v : t.subtree(r).subspan(1))
        if (ceil ? in_ceil_half(t, r, v) : in_floor_half(t, r, v))
            out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

auto follow_leg(const RootedTree& t, TreeVertex from) -> std::vector<TreeVertex>
{
    std::vector<TreeVertex> leg{from};
    while (!t.children(leg.back()).empty())
        leg.push_back(t.children(leg.back()).front());
    return leg;
}

auto build_canonical(const RootedTree& t, TreeVertex v, std::string& out) -> void
{
    std::vector<std::string> parts;
    for (auto c : t.children(v)) {
        std::string s;
        build_canonical(t, c, s);
        parts.push_back(std::move(s));
    }
    std::sort(parts.begin(), parts.end());
    out += '(';
    for (const auto& p : parts)
        out += p;
    out += ')';
}

}  // namespace

auto half_floor(const RootedTree& t, TreeVertex r) -> TreeEdgeSet
{
    return collect_half(t, r, false);
}

auto half_ceil(const RootedTree& t, TreeVertex r) -> TreeEdgeSet
{
    return collect_half(t, r, true);
}

auto deficiency(const RootedTree& t, TreeVertex r) -> int
{
    return t.subtree_edge_count(r) - 2 * static_cast<int>(half_floor(t, r).size());
}

auto SpiderShape::is_even() const -> bool
{
    return odd_leg_count() == 0;
}

auto SpiderShape::odd_leg_count() const -> int
{
    return static_cast<int>(std::count_if(leg_lengths.begin(), leg_lengths.end(), [](int l) { return l % 2 == 1; }));
}

auto SpiderShape::edge_count() const -> int
{
    int n = 0;
    for (auto l : leg_lengths)
        n += l;
    return n;
}

auto as_spider(const RootedTree& t, TreeVertex r) -> std::optional<SpiderShape>
{
    if (t.subtree_edge_count(r) == 0)
        throw Error(ErrorCode::EmptyTree, "spider needs at least one edge");
    for (auto v : t.subtree(r).subspan(1))
        if (t.children(v).size() > 1)
            return std::nullopt;
    SpiderShape s;
    s.root = r;
    for (auto c : t.children(r)) {
        auto leg = follow_leg(t, c);
        leg.insert(leg.begin(), r);
        s.leg_lengths.push_back(static_cast<int>(leg.size()) - 1);
        s.legs.push_back(std::move(leg));
    }
    return s;
}

auto classify_children(const RootedTree& t, TreeVertex r) -> ChildClassification
{
    if (t.children(r).empty())
        throw Error(ErrorCode::EmptyTree, "root has no children");
    ChildClassification out;
    std::vector<std::pair<int, TreeVertex>> rest;
    for (auto c : t.children(r)) {
        if (t.children(c).empty()) {
            out.leaves.push_back(c);
            continue;
        }
        auto spider = as_spider(t, c);
        if (spider && spider->is_even()) {
            SpiderChild sc;
            sc.vertex = c;
            sc.leg = follow_leg(t, c);
            sc.half_length = (static_cast<int>(sc.leg.size()) - 1) / 2;
            sc.e_edge = sc.leg[static_cast<std::size_t>(sc.half_length)];
            sc.f_edge = sc.leg[static_cast<std::size_t>(sc.half_length) + 1];
            out.spiders.push_back(std::move(sc));
            continue;
        }
        rest.emplace_back(deficiency(t, c), c);
    }
    std::sort(rest.begin(), rest.end());
    for (auto [d, c] : rest)
        out.rest.push_back(c);
    return out;
}

auto iota_injection(const RootedTree& t) -> std::vector<std::pair<TreeVertex, TreeVertex>>
{
    std::vector<std::pair<TreeVertex, TreeVertex>> out;
    for (auto w : half_floor(t, 0)) {
        const int d = t.level(w);
        const int l = t.level_max(w);
        TreeVertex deepest = w;
        for (auto x : t.subtree(w))
            if (t.level(x) == l) {
                deepest = x;
                break;
            }
        out.emplace_back(w, t.ancestor_at_level(deepest, l - d + 1));
    }
    return out;
}

auto iota_reverse(const RootedTree& t, TreeVertex edge) -> TreeVertex
{
    if (edge <= 0 || edge >= t.size() || in_ceil_half(t, 0, edge))
        throw Error(ErrorCode::PreconditionViolated, "edge " + std::to_string(edge) + " lies in ceil(T/2)");
    const int l = t.level_max(edge);
    const int d = l - t.level(t.parent(edge));
    return t.ancestor_at_level(edge, d);
}

auto root_nonleaf_edges(const RootedTree& t) -> TreeEdgeSet
{
    TreeEdgeSet out;
    for (auto c : t.children(0))
        if (!t.is_leaf(c))
            out.push_back(c);
    return out;
}

auto leaf_nonroot_edges(const RootedTree& t) -> TreeEdgeSet
{
    TreeEdgeSet out;
    for (TreeVertex v = 1; v < t.size(); ++v)
        if (t.is_leaf(v) && t.parent(v) != 0)
            out.push_back(v);
    return out;
}

auto degree_sum_identity(const RootedTree& t) -> std::pair<int, int>
{
    int lhs = static_cast<int>(leaf_nonroot_edges(t).size()) - static_cast<int>(root_nonleaf_edges(t).size());
    int rhs = 0;
    for (TreeVertex v = 1; v < t.size(); ++v)
        rhs += std::max(t.degree(v) - 2, 0);
    return {lhs, rhs};
}

auto canonical_form(const RootedTree& t, TreeVertex r) -> std::string
{
    std::string out;
    build_canonical(t, r, out);
    return out;
}

auto tree_from_canonical(const std::string& form) -> RootedTree
{
    std::vector<int> parents;
    std::vector<int> stack;
    int next = 0;
    for (char c : form) {
        if (c == '(') {
            int v = next++;
            if (v > 0) {
                if (stack.empty())
                    throw Error(ErrorCode::ParseError, "canonical form has several roots");
                parents.push_back(stack.back());
            }
            stack.push_back(v);
        } else if (c == ')') {
            if (stack.empty())
                throw Error(ErrorCode::ParseError, "unbalanced canonical form");
            stack.pop_back();
        } else {
            throw Error(ErrorCode::ParseError, "bad character in canonical form");
        }
    }
    if (!stack.empty() || next == 0)
        throw Error(ErrorCode::ParseError, "unbalanced canonical form");
    return RootedTree::build(parents);
}

auto enumerate_trees(int max_edges) -> std::vector<RootedTree>
{
    if (max_edges > kMaxEnumerationEdges)
        throw Error(ErrorCode::LimitExceeded, "enumerate_trees supports at most 8 edges");
    std::vector<RootedTree> out;
    if (max_edges < 0)
        return out;

    // Level n+1 comes from attaching a leaf anywhere in a level-n tree; every
    // tree with an edge has a non-root leaf, so this reaches all shapes.
    std::set<std::string> level{"()"};
    for (int edges = 0;; ++edges) {
        for (const auto& form : level)
            out.push_back(tree_from_canonical(form));
        if (edges == max_edges)
            break;
        std::set<std::string> next;
        for (const auto& form : level) {
            auto t = tree_from_canonical(form);
            auto parents = t.parents();
            parents.push_back(0);
            for (TreeVertex v = 0; v < t.size(); ++v) {
                parents.back() = v;
                next.insert(canonical_form(RootedTree::build(parents)));
            }
        }
        level = std::move(next);
    }
    return out;
}

}  // namespace rainbow
