#pragma once

// Rooted trees, their half-trees, and spider recognition.
//
// Every vertex except the root 0 has a unique parent, so a tree edge is named
// by its lower endpoint (the child). Edge sets are sorted vectors of child ids.
//
// Most operations take a subtree root `r`: they then act on T(r), the subtree
// of descendants of r, rooted at r. Levels are measured from r.

#include "rainbow/error.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rainbow {

using TreeVertex = int;
using TreeEdgeSet = std::vector<TreeVertex>;  // sorted child ids

class RootedTree {
public:
    /// `parents[i]` is the parent of vertex i + 1. Throws IndexOutOfRange,
    /// DisconnectedInput (negative parent, i.e. a second root) or CycleDetected.
    static auto build(std::span<const int> parents) -> RootedTree;
    static auto build(std::initializer_list<int> parents) -> RootedTree;

    auto size() const -> int { return static_cast<int>(parent_.size()); }
    auto edge_count() const -> int { return size() - 1; }
    static constexpr auto root() -> TreeVertex { return 0; }

    auto parent(TreeVertex v) const -> TreeVertex { return parent_[v]; }
    auto children(TreeVertex v) const -> std::span<const TreeVertex> { return children_[v]; }
    auto level(TreeVertex v) const -> int { return level_[v]; }
    auto level_max(TreeVertex v) const -> int { return level_max_[v]; }
    auto degree(TreeVertex v) const -> int;

    /// Leaf of the whole tree: no children, and not the root unless the tree is a single vertex.
    auto is_leaf(TreeVertex v) const -> bool;

    /// Preorder of T(r), children visited in id order; r first.
    auto subtree(TreeVertex r) const -> std::span<const TreeVertex>;
    auto subtree_edge_count(TreeVertex r) const -> int { return subtree_size_[r] - 1; }
    auto is_descendant(TreeVertex v, TreeVertex r) const -> bool;
    auto ancestor_at_level(TreeVertex v, int level) const -> TreeVertex;

    /// Parent list (vertex 1..n-1), the inverse of build.
    auto parents() const -> std::vector<int>;

private:
    std::vector<TreeVertex> parent_;  // parent_[0] == -1
    std::vector<std::vector<TreeVertex>> children_;
    std::vector<int> level_;
    std::vector<int> level_max_;
    std::vector<TreeVertex> preorder_;
    std::vector<int> pre_index_;
    std::vector<int> subtree_size_;
};

/// Membership of v in the floor/ceil half of T(r). v must lie in T(r).
auto in_floor_half(const RootedTree& t, TreeVertex r, TreeVertex v) -> bool;
auto in_ceil_half(const RootedTree& t, TreeVertex r, TreeVertex v) -> bool;

auto half_floor(const RootedTree& t, TreeVertex r = 0) -> TreeEdgeSet;
auto half_ceil(const RootedTree& t, TreeVertex r = 0) -> TreeEdgeSet;

/// e(T(r)) - 2 e(floor(T(r)/2)), never negative.
auto deficiency(const RootedTree& t, TreeVertex r = 0) -> int;

struct SpiderShape {
    TreeVertex root = 0;
    std::vector<std::vector<TreeVertex>> legs;  // each starts at root, ends at a leaf
    std::vector<int> leg_lengths;

    auto is_even() const -> bool;
    auto odd_leg_count() const -> int;
    auto edge_count() const -> int;
};

/// Leg decomposition of T(r) in child-id order, or nullopt when some non-root
/// vertex has degree >= 3. Throws EmptyTree when T(r) has no edge.
auto as_spider(const RootedTree& t, TreeVertex r = 0) -> std::optional<SpiderShape>;

/// A child s of the root whose subtree is a nonempty even spider, with the
/// designated leg L (the leg through s's smallest child chain) cut at its middle.
struct SpiderChild {
    TreeVertex vertex = 0;
    std::vector<TreeVertex> leg;  // s, s_1, ..., s_{2 lambda}
    int half_length = 0;          // lambda
    TreeVertex e_edge = 0;        // child id of s_{lambda-1} s_lambda
    TreeVertex f_edge = 0;        // child id of s_lambda s_{lambda+1}
};

struct ChildClassification {
    std::vector<TreeVertex> leaves;
    std::vector<SpiderChild> spiders;
    std::vector<TreeVertex> rest;  // by (deficiency of subtree, id)
};

/// Partition of r's children. Throws EmptyTree when r has no children.
auto classify_children(const RootedTree& t, TreeVertex r = 0) -> ChildClassification;

/// The reflection injection from E(floor(T/2)) into E(T) \ E(ceil(T/2)), as
/// (edge, image) pairs in edge order. The deepest descendant used by the
/// reflection is the first one in preorder.
auto iota_injection(const RootedTree& t) -> std::vector<std::pair<TreeVertex, TreeVertex>>;

/// Reverse of the reflection for an edge outside ceil(T/2). Throws
/// PreconditionViolated for edges inside ceil(T/2).
auto iota_reverse(const RootedTree& t, TreeVertex edge) -> TreeVertex;

/// Root edges not ending at a leaf (E_1) and leaf edges away from the root (E_2).
auto root_nonleaf_edges(const RootedTree& t) -> TreeEdgeSet;
auto leaf_nonroot_edges(const RootedTree& t) -> TreeEdgeSet;

/// (|E_2| - |E_1|, sum over non-root v of max(deg(v) - 2, 0)); the two agree on every tree.
auto degree_sum_identity(const RootedTree& t) -> std::pair<int, int>;

/// AHU canonical string of T(r): "(" + sorted child strings + ")".
auto canonical_form(const RootedTree& t, TreeVertex r = 0) -> std::string;

/// Builds the tree described by an AHU string, numbering vertices in preorder.
auto tree_from_canonical(const std::string& form) -> RootedTree;

inline constexpr int kMaxEnumerationEdges = 8;

/// Every rooted tree with at most `max_edges` edges exactly once up to rooted
/// isomorphism, ordered by edge count then canonical form. Throws LimitExceeded above 8.
auto enumerate_trees(int max_edges) -> std::vector<RootedTree>;

}  // namespace rainbow
