#pragma once

// Line-oriented text formats. Blank lines and '#' comments are ignored.
//
//   graph:      cube N | cayley | strict-vertices | vertex <bin> | edge <bin> <bin> <color>
//   tree:       tree <vertex count>
//               parents <p_1> ... <p_{n-1}>
//   embedding:  embedding <tree edges> <graph dimension>
//               map <tree vertex> <bin>
//               edge <tree parent> <tree child> <color> <coordinate>
//               trace
//               step <label> <parent> <child> <from> <to> <color> <coord> <avoid col> <avoid coord> <r> <depth>
//
// A graph file with a `cayley` line denotes the full Cayley-colored cube.

#include "rainbow/embed.hpp"
#include "rainbow/hypercube.hpp"
#include "rainbow/tree.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rainbow {

auto format_graph(const ColoredCubeGraph& g) -> std::string;
auto parse_graph(std::string_view text) -> ColoredCubeGraph;

auto format_tree(const RootedTree& t) -> std::string;
auto parse_tree(std::string_view text) -> RootedTree;

struct EmbeddingFile {
    int tree_edges = 0;
    int dimension = 0;
    std::vector<std::optional<CubeVertex>> images;
    EmbedTrace trace;

    /// All images, or ParseError when some vertex has no map line.
    auto total_images() const -> std::vector<CubeVertex>;
};

/// `trace` may be null. Colors and coordinates come from the graph and the bits.
auto format_embedding(const ColoredCubeGraph& g, const RootedTree& t, std::span<const CubeVertex> images,
    const EmbedTrace* trace = nullptr) -> std::string;
auto parse_embedding(std::string_view text) -> EmbeddingFile;

auto format_trace(const EmbedTrace& trace, int dimension) -> std::string;

/// Whole file as a string; ParseError when it cannot be read.
auto read_text_file(const std::filesystem::path& path) -> std::string;
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Counterexample directory with graph.txt, tree.txt and, when given,
/// embedding.txt and trace.txt. `note` goes to note.txt.
void write_bundle(const std::filesystem::path& dir, const ColoredCubeGraph& g, const RootedTree& t,
    const std::string& embedding_text, const std::string& trace_text, const std::string& note);

}  // namespace rainbow
