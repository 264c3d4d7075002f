#pragma once

// Engine-independent certification. Everything here consumes plain data
// (graph, tree, vertex images) and recomputes coordinates from the bits.

#include "rainbow/hypercube.hpp"
#include "rainbow/report.hpp"
#include "rainbow/tree.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rainbow {

struct VerifyOptions {
    bool require_path_distinct = false;
    std::optional<CubeVertex> z_bad;
    /// Extra "distinctly_directed_on(name)" checks over named edge sets.
    std::vector<std::pair<std::string, TreeEdgeSet>> distinctly_directed;
};

/// Check names: homomorphism, injective, rainbow, then the optional
/// path_distinct_ceil_half, distinctly_directed_on(<name>), avoids_vertex(<binary>).
auto verify(const ColoredCubeGraph& g, const RootedTree& t, std::span<const CubeVertex> images,
    const VerifyOptions& options = {}) -> VerificationReport;

/// Hypotheses of the disjoint-images lemma for homomorphisms of two trees into
/// the cube: root images adjacent, each map path-distinct on its ceil half,
/// ceil-half coordinates of the two maps disjoint, and the coordinate of the
/// root-to-root edge unused by either ceil half. When they hold, the images are disjoint.
auto disjointness_conditions_hold(const RootedTree& t1, std::span<const CubeVertex> images1, const RootedTree& t2,
    std::span<const CubeVertex> images2) -> bool;

struct OracleOptions {
    std::uint64_t budget = 50'000'000;  // node limit
    /// Root image restricted to one vertex per orbit of the color-preserving
    /// translations of g. Off by default.
    bool root_orbits = false;
    /// Throw BudgetExceeded instead of returning exhausted = false.
    bool strict_budget = false;
};

struct OracleResult {
    bool found = false;
    std::vector<CubeVertex> embedding;  // vertex images when found
    std::uint64_t nodes_explored = 0;
    bool exhausted = false;  // every candidate map was considered
};

/// Backtracking search for a rainbow embedding of t into g, vertices in BFS order.
auto oracle_find(const ColoredCubeGraph& g, const RootedTree& t, const OracleOptions& options = {}) -> OracleResult;

/// Translations x -> x ^ a that map g onto itself preserving colors, as masks `a`.
auto color_preserving_translations(const ColoredCubeGraph& g) -> std::vector<std::uint64_t>;

inline constexpr std::uint64_t kMaxCycleSearchVertices = 32;

/// True iff g has no rainbow cycle of length <= max_len. Throws LimitExceeded
/// above 32 vertices and PreconditionViolated for odd max_len. Parallel over
/// start vertices; the serial version is the reference.
auto oracle_no_rainbow_cycle(const ColoredCubeGraph& g, int max_len) -> bool;
auto oracle_no_rainbow_cycle_serial(const ColoredCubeGraph& g, int max_len) -> bool;

}  // namespace rainbow
