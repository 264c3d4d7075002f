#include "rainbow/gen.hpp"

#include "rainbow/rng.hpp"

#include <array>
#include <sstream>

namespace rainbow {

namespace {

constexpr std::array kKindNames{"cayley", "refined_cayley", "greedy_proper", "random_tree", "random_spider",
    "subgraph_min_degree"};

void check_dimension(int n)
{
    if (n < 1 || n > kMaxGeneratedDimension)
        throw Error(ErrorCode::TooLarge, "generators support 1 <= n <= 16, got " + std::to_string(n));
}

// Cube edges with u < v, ordered by (u, coordinate).
auto cube_edges(int n) -> std::vector<RawEdge>
{
    std::vector<RawEdge> out;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
        for (Coordinate i = 0; i < n; ++i)
            if (!CubeVertex{x}.test(i))
                out.push_back({CubeVertex{x}, CubeVertex{x}.flip(i), static_cast<Color>(i)});
    return out;
}

auto all_vertices(int n) -> std::vector<CubeVertex>
{
    std::vector<CubeVertex> out(std::size_t{1} << n);
    for (std::uint64_t x = 0; x < out.size(); ++x)
        out[x] = CubeVertex{x};
    return out;
}

template <typename T>
void shuffle(std::vector<T>& items, SplitMix64& rng)
{
    for (std::size_t i = items.size(); i > 1; --i)
        std::swap(items[i - 1], items[static_cast<std::size_t>(rng.below(i))]);
}

auto parse_int(std::string_view key, std::string_view value) -> long long
{
    try {
        std::size_t used = 0;
        auto v = std::stoll(std::string(value), &used);
        if (used != value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad value for " + std::string(key) + ": '" + std::string(value) + "'");
    }
}

}  // namespace

auto to_string(GenKind kind) -> std::string_view
{
    return kKindNames[static_cast<std::size_t>(kind)];
}

auto parse_gen_kind(std::string_view text) -> GenKind
{
    for (std::size_t i = 0; i < kKindNames.size(); ++i)
        if (text == kKindNames[i])
            return static_cast<GenKind>(i);
    throw Error(ErrorCode::ParseError, "unknown generator '" + std::string(text) + "'");
}

auto GenSpec::to_line() const -> std::string
{
    std::ostringstream out;
    out << "genspec kind=" << to_string(kind) << " seed=" << seed;
    switch (kind) {
        case GenKind::Cayley:
        case GenKind::RandomTree: out << " n=" << n; break;
        case GenKind::RefinedCayley: out << " n=" << n << " splits=" << splits; break;
        case GenKind::GreedyProper: out << " n=" << n << " palette=" << palette; break;
        case GenKind::SubgraphMinDegree: out << " n=" << n << " d=" << min_degree << " splits=" << splits; break;
        case GenKind::RandomSpider:
            out << " legs=";
            for (std::size_t i = 0; i < legs.size(); ++i)
                out << (i ? "," : "") << legs[i];
            break;
    }
    return out.str();
}

auto GenSpec::parse(std::string_view line) -> GenSpec
{
    std::istringstream in{std::string(line)};
    std::string word;
    if (!(in >> word) || word != "genspec")
        throw Error(ErrorCode::ParseError, "genspec line must start with 'genspec'");
    GenSpec spec;
    bool have_kind = false;
    while (in >> word) {
        auto eq = word.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::ParseError, "expected key=value, got '" + word + "'");
        auto key = std::string_view(word).substr(0, eq);
        auto value = std::string_view(word).substr(eq + 1);
        if (key == "kind") {
            spec.kind = parse_gen_kind(value);
            have_kind = true;
        } else if (key == "seed") {
            try {
                spec.seed = std::stoull(std::string(value));
            } catch (const std::exception&) {
                throw Error(ErrorCode::ParseError, "bad seed '" + std::string(value) + "'");
            }
        } else if (key == "n") {
            spec.n = static_cast<int>(parse_int(key, value));
        } else if (key == "splits") {
            spec.splits = static_cast<int>(parse_int(key, value));
        } else if (key == "palette") {
            spec.palette = static_cast<int>(parse_int(key, value));
        } else if (key == "d") {
            spec.min_degree = static_cast<int>(parse_int(key, value));
        } else if (key == "legs") {
            std::string item;
            std::istringstream legs{std::string(value)};
            while (std::getline(legs, item, ','))
                spec.legs.push_back(static_cast<int>(parse_int(key, item)));
        } else {
            throw Error(ErrorCode::ParseError, "unknown genspec key '" + std::string(key) + "'");
        }
    }
    if (!have_kind)
        throw Error(ErrorCode::ParseError, "genspec without kind");
    return spec;
}

auto refined_cayley(int n, std::uint64_t seed, int splits) -> ColoredCubeGraph
{
    check_dimension(n);
    if (splits < 1)
        throw Error(ErrorCode::PreconditionViolated, "splits must be positive");
    auto rng = SplitMix64::derive(seed, 1);
    auto edges = cube_edges(n);
    // Class i splits into colors i*splits + sub. With splits = 1 this is the Cayley coloring.
    for (auto& e : edges) {
        auto sub = static_cast<Color>(rng.below(static_cast<std::uint64_t>(splits)));
        e.color = e.color * static_cast<Color>(splits) + sub;
    }
    return ColoredCubeGraph(n, all_vertices(n), edges);
}

auto greedy_proper(int n, std::uint64_t seed, int palette) -> ColoredCubeGraph
{
    check_dimension(n);
    if (palette < 0)
        throw Error(ErrorCode::PreconditionViolated, "palette must be nonnegative");
    auto rng = SplitMix64::derive(seed, 2);
    auto edges = cube_edges(n);
    shuffle(edges, rng);

    std::vector<std::vector<Color>> at(std::size_t{1} << n);
    auto free_at = [&](Color c, const RawEdge& e) {
        for (auto x : {e.u, e.v})
            for (auto used : at[x.bits])
                if (used == c)
                    return false;
        return true;
    };
    for (auto& e : edges) {
        std::vector<Color> options;
        for (Color c = 0; c < static_cast<Color>(palette); ++c)
            if (free_at(c, e))
                options.push_back(c);
        if (!options.empty()) {
            e.color = options[static_cast<std::size_t>(rng.below(options.size()))];
        } else {
            Color c = static_cast<Color>(palette);
            while (!free_at(c, e))
                ++c;
            e.color = c;
        }
        at[e.u.bits].push_back(e.color);
        at[e.v.bits].push_back(e.color);
    }
    return ColoredCubeGraph(n, all_vertices(n), edges);
}

auto subgraph_min_degree(int n, int d, std::uint64_t seed, int splits) -> ColoredCubeGraph
{
    check_dimension(n);
    if (d < 1 || d > n)
        throw Error(ErrorCode::PreconditionViolated, "need 1 <= d <= n");
    auto full = refined_cayley(n, seed, splits).edges();
    auto rng = SplitMix64::derive(seed, 3);

    std::vector<char> kept(full.size());
    std::vector<int> degree(std::size_t{1} << n, 0);
    std::vector<std::vector<std::size_t>> dropped(std::size_t{1} << n);
    for (std::size_t i = 0; i < full.size(); ++i) {
        kept[i] = rng.chance(1, 2) ? 1 : 0;
        if (kept[i]) {
            ++degree[full[i].u.bits];
            ++degree[full[i].v.bits];
        } else {
            dropped[full[i].u.bits].push_back(i);
            dropped[full[i].v.bits].push_back(i);
        }
    }
    // Restoring edges only raises degrees, so one pass in vertex order suffices.
    for (std::uint64_t x = 0; x < degree.size(); ++x) {
        auto& pool = dropped[x];
        shuffle(pool, rng);
        for (auto i : pool) {
            if (degree[x] >= d)
                break;
            if (kept[i])
                continue;
            kept[i] = 1;
            ++degree[full[i].u.bits];
            ++degree[full[i].v.bits];
        }
    }

    std::vector<RawEdge> edges;
    for (std::size_t i = 0; i < full.size(); ++i)
        if (kept[i])
            edges.push_back({full[i].u, full[i].v, full[i].color});
    return ColoredCubeGraph(n, all_vertices(n), edges);
}

auto random_tree(int edges, std::uint64_t seed) -> RootedTree
{
    if (edges < 0)
        throw Error(ErrorCode::PreconditionViolated, "edge count must be nonnegative");
    auto rng = SplitMix64::derive(seed, 4);
    std::vector<int> parents;
    parents.reserve(static_cast<std::size_t>(edges));
    for (int i = 1; i <= edges; ++i)
        parents.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(i))));
    return RootedTree::build(parents);
}

auto random_spider(const std::vector<int>& leg_lengths) -> RootedTree
{
    std::vector<int> parents;
    int next = 1;
    for (auto len : leg_lengths) {
        if (len < 1)
            throw Error(ErrorCode::PreconditionViolated, "leg lengths must be positive");
        int prev = 0;
        for (int j = 0; j < len; ++j) {
            parents.push_back(prev);
            prev = next++;
        }
    }
    return RootedTree::build(parents);
}

auto generate_graph(const GenSpec& spec) -> ColoredCubeGraph
{
    switch (spec.kind) {
        case GenKind::Cayley: return cayley_coloring(spec.n);
        case GenKind::RefinedCayley: return refined_cayley(spec.n, spec.seed, spec.splits);
        case GenKind::GreedyProper: return greedy_proper(spec.n, spec.seed, spec.palette);
        case GenKind::SubgraphMinDegree: return subgraph_min_degree(spec.n, spec.min_degree, spec.seed, spec.splits);
        default: break;
    }
    throw Error(ErrorCode::PreconditionViolated, std::string(to_string(spec.kind)) + " does not produce a graph");
}

auto generate_tree(const GenSpec& spec) -> RootedTree
{
    switch (spec.kind) {
        case GenKind::RandomTree: return random_tree(spec.n, spec.seed);
        case GenKind::RandomSpider: return random_spider(spec.legs);
        default: break;
    }
    throw Error(ErrorCode::PreconditionViolated, std::string(to_string(spec.kind)) + " does not produce a tree");
}

}  // namespace rainbow
