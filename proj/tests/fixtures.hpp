#pragma once

// Hand-encoded trees shared by unit tests and the acceptance binary.

#include "rainbow/tree.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace rainbow::fixtures {

struct NamedTree {
    RootedTree tree;
    std::map<std::string, TreeVertex> id;
};

/// Builds a tree from (parent, child) name pairs; the first parent is the root.
/// Ids follow first appearance, so listing children in order fixes child order.
inline auto named_tree(const std::vector<std::pair<std::string, std::string>>& edges) -> NamedTree
{
    std::map<std::string, TreeVertex> id;
    std::vector<int> parents;
    id.emplace(edges.front().first, 0);
    for (const auto& [p, c] : edges) {
        auto [it, fresh] = id.emplace(c, static_cast<TreeVertex>(id.size()));
        if (!fresh)
            throw Error(ErrorCode::PreconditionViolated, "vertex listed twice: " + c);
        parents.push_back(id.at(p));
    }
    return {RootedTree::build(parents), id};
}

/// 14 vertices x0..x13; the vertex x2 has degree 4.
inline auto figure1() -> RootedTree
{
    return RootedTree::build({0, 1, 2, 3, 2, 5, 6, 2, 1, 9, 10, 7, 12});
}

inline auto path(int edges) -> RootedTree
{
    std::vector<int> parents;
    for (int i = 0; i < edges; ++i)
        parents.push_back(i);
    return RootedTree::build(parents);
}

inline auto star(int leaves) -> RootedTree
{
    return RootedTree::build(std::vector<int>(static_cast<std::size_t>(leaves), 0));
}

/// Root with three leaves, two even spiders and four subtrees of positive deficiency.
inline auto figure3() -> NamedTree
{
    return named_tree({
        {"v0", "u1"}, {"v0", "u2"}, {"v0", "u3"}, {"v0", "s1"}, {"v0", "s2"},
        {"v0", "t1"}, {"v0", "t2"}, {"v0", "t3"}, {"v0", "t4"},
        {"s1", "s1a1"}, {"s1a1", "s1a2"}, {"s1a2", "s1a3"}, {"s1a3", "s1a4"},
        {"s1", "s1b1"}, {"s1b1", "s1b2"}, {"s1b2", "s1b3"}, {"s1b3", "s1b4"},
        {"s1", "s1c1"}, {"s1c1", "s1c2"},
        {"s2", "s2a1"}, {"s2a1", "s2a2"},
        {"s2", "s2b1"}, {"s2b1", "s2b2"},
        {"s2", "s2c1"}, {"s2c1", "s2c2"},
        {"t1", "t1a1"},
        {"t1", "t1b1"}, {"t1b1", "t1b2"},
        {"t1", "t1c1"}, {"t1c1", "t1c2"},
        {"t2", "t2a1"}, {"t2a1", "t2a2"},
        {"t2", "t2b"}, {"t2b", "t2ba"}, {"t2b", "t2bb"},
        {"t3", "t3a1"}, {"t3a1", "t3a2"}, {"t3a2", "t3a3"},
        {"t3", "t3b1"}, {"t3b1", "t3b2"}, {"t3b2", "t3b3"},
        {"t4", "t4a1"}, {"t4a1", "t4a2"},
        {"t4", "t4b"}, {"t4b", "t4ba"}, {"t4ba", "t4baa"}, {"t4ba", "t4bab"}, {"t4b", "t4bb"},
    });
}

}  // namespace rainbow::fixtures
