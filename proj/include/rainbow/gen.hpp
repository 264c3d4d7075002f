#pragma once

// Seeded instance generators. Output depends only on the arguments; all
// randomness comes from SplitMix64, so corpora replay bit-exactly anywhere.

#include "rainbow/hypercube.hpp"
#include "rainbow/tree.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rainbow {

enum class GenKind { Cayley, RefinedCayley, GreedyProper, RandomTree, RandomSpider, SubgraphMinDegree };

auto to_string(GenKind kind) -> std::string_view;
auto parse_gen_kind(std::string_view text) -> GenKind;  // ParseError on unknown names

/// Everything needed to regenerate one instance.
struct GenSpec {
    GenKind kind = GenKind::Cayley;
    std::uint64_t seed = 0;
    int n = 0;            // cube dimension, or edge count for random_tree
    int splits = 1;       // refined_cayley, subgraph_min_degree
    int palette = 0;      // greedy_proper; 0 means unbounded
    int min_degree = 0;   // subgraph_min_degree
    std::vector<int> legs;

    /// Canonical one-line form, e.g. "genspec kind=refined_cayley seed=7 n=4 splits=2".
    auto to_line() const -> std::string;
    static auto parse(std::string_view line) -> GenSpec;

    auto is_graph() const -> bool { return kind != GenKind::RandomTree && kind != GenKind::RandomSpider; }
};

/// Largest dimension the explicit generators accept.
inline constexpr int kMaxGeneratedDimension = 16;

/// Cayley coloring with each coordinate class split at random into at most
/// `splits` classes with fresh colors. splits = 1 reproduces cayley_coloring(n).
auto refined_cayley(int n, std::uint64_t seed, int splits) -> ColoredCubeGraph;

/// Proper coloring of Q_n built edge by edge in random order: each edge takes a
/// random color from [0, palette) free at both ends, or the smallest free color
/// above the palette when none is. palette = 0 means smallest-free greedy.
auto greedy_proper(int n, std::uint64_t seed, int palette) -> ColoredCubeGraph;

/// Random spanning subgraph of refined_cayley(n, seed, splits) with min degree >= d:
/// each edge is dropped with probability 1/2, then dropped edges are restored
/// at deficient vertices in vertex order.
auto subgraph_min_degree(int n, int d, std::uint64_t seed, int splits = 2) -> ColoredCubeGraph;

/// Random attachment: vertex i picks a uniform parent in [0, i). Uniform over
/// increasing labelings, not over shapes.
auto random_tree(int edges, std::uint64_t seed) -> RootedTree;

/// Spider with the given leg lengths, legs in argument order.
auto random_spider(const std::vector<int>& leg_lengths) -> RootedTree;

/// Dispatch on spec.kind; throws PreconditionViolated on a kind of the other sort.
auto generate_graph(const GenSpec& spec) -> ColoredCubeGraph;
auto generate_tree(const GenSpec& spec) -> RootedTree;

}  // namespace rainbow
