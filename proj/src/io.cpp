#include "rainbow/io.hpp"

#include <fstream>
#include <sstream>

namespace rainbow {

namespace {

struct Line {
    int number = 0;
    std::vector<std::string> words;
};

auto tokenize(std::string_view text) -> std::vector<Line>
{
    std::vector<Line> out;
    std::istringstream in{std::string(text)};
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        std::istringstream words(raw);
        Line line{number, {}};
        std::string w;
        while (words >> w)
            line.words.push_back(w);
        if (!line.words.empty())
            out.push_back(std::move(line));
    }
    return out;
}

[[noreturn]] void fail(const Line& line, const std::string& what)
{
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line.number) + ": " + what);
}

void expect_words(const Line& line, std::size_t count)
{
    if (line.words.size() != count)
        fail(line, "'" + line.words[0] + "' takes " + std::to_string(count - 1) + " arguments");
}

auto to_int(const Line& line, const std::string& word) -> long long
{
    try {
        std::size_t used = 0;
        auto v = std::stoll(word, &used);
        if (used == word.size())
            return v;
    } catch (const std::exception&) {
    }
    fail(line, "expected an integer, got '" + word + "'");
}

auto to_vertex(const Line& line, const std::string& word) -> CubeVertex
{
    try {
        return parse_binary(word);
    } catch (const Error& e) {
        fail(line, e.what());
    }
}

}  // namespace

auto format_graph(const ColoredCubeGraph& g) -> std::string
{
    std::ostringstream out;
    out << "cube " << g.dimension() << '\n';
    if (g.is_implicit()) {
        out << "cayley\n";
        return out.str();
    }
    if (g.strict_vertices())
        out << "strict-vertices\n";
    const int dim = g.dimension();
    for (auto v : g.vertices())
        out << "vertex " << to_binary(v, dim) << '\n';
    for (const auto& e : g.edges())
        out << "edge " << to_binary(e.u, dim) << ' ' << to_binary(e.v, dim) << ' ' << e.color << '\n';
    return out.str();
}

auto parse_graph(std::string_view text) -> ColoredCubeGraph
{
    const auto lines = tokenize(text);
    if (lines.empty() || lines[0].words[0] != "cube")
        throw Error(ErrorCode::ParseError, "graph file must start with 'cube N'");
    expect_words(lines[0], 2);
    const auto dim = to_int(lines[0], lines[0].words[1]);
    if (dim < 1 || dim > kMaxDimension)
        fail(lines[0], "dimension out of range");

    bool cayley = false;
    bool strict = false;
    std::vector<CubeVertex> vertices;
    std::vector<RawEdge> edges;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        const auto& key = line.words[0];
        if (key == "cayley") {
            expect_words(line, 1);
            cayley = true;
        } else if (key == "strict-vertices") {
            expect_words(line, 1);
            strict = true;
        } else if (key == "vertex") {
            expect_words(line, 2);
            vertices.push_back(to_vertex(line, line.words[1]));
        } else if (key == "edge") {
            expect_words(line, 4);
            auto color = to_int(line, line.words[3]);
            if (color < 0 || color > static_cast<long long>(UINT32_MAX))
                fail(line, "color out of range");
            edges.push_back({to_vertex(line, line.words[1]), to_vertex(line, line.words[2]), static_cast<Color>(color)});
        } else {
            fail(line, "unknown keyword '" + key + "'");
        }
    }
    if (cayley) {
        if (!vertices.empty() || !edges.empty() || strict)
            throw Error(ErrorCode::ParseError, "a cayley graph file lists no vertices or edges");
        return ColoredCubeGraph::implicit_cayley(static_cast<int>(dim));
    }
    return ColoredCubeGraph(static_cast<int>(dim), std::move(vertices), edges, strict);
}

auto format_tree(const RootedTree& t) -> std::string
{
    std::ostringstream out;
    out << "tree " << t.size() << '\n' << "parents";
    for (auto p : t.parents())
        out << ' ' << p;
    out << '\n';
    return out.str();
}

auto parse_tree(std::string_view text) -> RootedTree
{
    const auto lines = tokenize(text);
    if (lines.empty() || lines[0].words[0] != "tree")
        throw Error(ErrorCode::ParseError, "tree file must start with 'tree <vertex count>'");
    expect_words(lines[0], 2);
    const auto n = to_int(lines[0], lines[0].words[1]);
    if (n < 1)
        fail(lines[0], "a tree has at least one vertex");
    std::vector<int> parents;
    bool seen = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        if (line.words[0] != "parents" || seen)
            fail(line, "expected a single 'parents' line");
        seen = true;
        for (std::size_t j = 1; j < line.words.size(); ++j)
            parents.push_back(static_cast<int>(to_int(line, line.words[j])));
    }
    if (static_cast<long long>(parents.size()) != n - 1)
        throw Error(ErrorCode::ParseError,
            "tree of " + std::to_string(n) + " vertices needs " + std::to_string(n - 1) + " parents");
    return RootedTree::build(parents);
}

auto EmbeddingFile::total_images() const -> std::vector<CubeVertex>
{
    std::vector<CubeVertex> out;
    for (std::size_t v = 0; v < images.size(); ++v) {
        if (!images[v])
            throw Error(ErrorCode::ParseError, "embedding has no map line for vertex " + std::to_string(v));
        out.push_back(*images[v]);
    }
    return out;
}

auto format_trace(const EmbedTrace& trace, int dimension) -> std::string
{
    std::ostringstream out;
    out << "trace\n";
    for (const auto& s : trace)
        out << "step " << s.step << ' ' << s.parent << ' ' << s.child << ' ' << to_binary(s.from, dimension) << ' '
            << to_binary(s.to, dimension) << ' ' << s.color << ' ' << s.coordinate << ' ' << s.avoid_colors << ' '
            << s.avoid_coords << ' ' << s.witnesses << ' ' << s.depth << '\n';
    return out.str();
}

auto format_embedding(const ColoredCubeGraph& g, const RootedTree& t, std::span<const CubeVertex> images,
    const EmbedTrace* trace) -> std::string
{
    const int dim = g.dimension();
    std::ostringstream out;
    out << "embedding " << t.edge_count() << ' ' << dim << '\n';
    for (TreeVertex v = 0; v < t.size(); ++v)
        out << "map " << v << ' ' << to_binary(images[static_cast<std::size_t>(v)], dim) << '\n';
    for (TreeVertex c = 1; c < t.size(); ++c) {
        auto u = images[static_cast<std::size_t>(t.parent(c))];
        auto v = images[static_cast<std::size_t>(c)];
        auto color = g.edge_color(u, v);
        auto diff = u.bits ^ v.bits;
        out << "edge " << t.parent(c) << ' ' << c << ' ' << (color ? std::to_string(*color) : "-") << ' '
            << (std::popcount(diff) == 1 ? std::countr_zero(diff) : -1) << '\n';
    }
    if (trace)
        out << format_trace(*trace, dim);
    return out.str();
}

auto parse_embedding(std::string_view text) -> EmbeddingFile
{
    const auto lines = tokenize(text);
    if (lines.empty() || lines[0].words[0] != "embedding")
        throw Error(ErrorCode::ParseError, "embedding file must start with 'embedding <edges> <dim>'");
    expect_words(lines[0], 3);
    EmbeddingFile out;
    out.tree_edges = static_cast<int>(to_int(lines[0], lines[0].words[1]));
    out.dimension = static_cast<int>(to_int(lines[0], lines[0].words[2]));
    if (out.tree_edges < 0)
        fail(lines[0], "negative edge count");
    out.images.resize(static_cast<std::size_t>(out.tree_edges) + 1);

    bool in_trace = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        const auto& key = line.words[0];
        if (key == "trace") {
            in_trace = true;
        } else if (key == "map" && !in_trace) {
            expect_words(line, 3);
            auto v = to_int(line, line.words[1]);
            if (v < 0 || v > out.tree_edges)
                fail(line, "tree vertex out of range");
            if (out.images[static_cast<std::size_t>(v)])
                fail(line, "vertex mapped twice");
            out.images[static_cast<std::size_t>(v)] = to_vertex(line, line.words[2]);
        } else if (key == "edge" && !in_trace) {
            expect_words(line, 5);  // informational; verify recomputes from the bits
        } else if (key == "step" && in_trace) {
            expect_words(line, 12);
            TraceEntry s;
            s.step = line.words[1];
            s.parent = static_cast<TreeVertex>(to_int(line, line.words[2]));
            s.child = static_cast<TreeVertex>(to_int(line, line.words[3]));
            s.from = to_vertex(line, line.words[4]);
            s.to = to_vertex(line, line.words[5]);
            s.color = static_cast<Color>(to_int(line, line.words[6]));
            s.coordinate = static_cast<Coordinate>(to_int(line, line.words[7]));
            s.avoid_colors = static_cast<int>(to_int(line, line.words[8]));
            s.avoid_coords = static_cast<int>(to_int(line, line.words[9]));
            s.witnesses = static_cast<int>(to_int(line, line.words[10]));
            s.depth = static_cast<int>(to_int(line, line.words[11]));
            out.trace.push_back(std::move(s));
        } else {
            fail(line, "unexpected '" + key + "'");
        }
    }
    return out;
}

auto read_text_file(const std::filesystem::path& path) -> std::string
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::ParseError, "cannot write " + path.string());
    out << text;
}

void write_bundle(const std::filesystem::path& dir, const ColoredCubeGraph& g, const RootedTree& t,
    const std::string& embedding_text, const std::string& trace_text, const std::string& note)
{
    std::filesystem::create_directories(dir);
    write_text_file(dir / "graph.txt", format_graph(g));
    write_text_file(dir / "tree.txt", format_tree(t));
    if (!embedding_text.empty())
        write_text_file(dir / "embedding.txt", embedding_text);
    if (!trace_text.empty())
        write_text_file(dir / "trace.txt", trace_text);
    if (!note.empty())
        write_text_file(dir / "note.txt", note + "\n");
}

}  // namespace rainbow
