#include "rainbow/cli.hpp"

#include "rainbow/cross_check.hpp"
#include "rainbow/embed.hpp"
#include "rainbow/gen.hpp"
#include "rainbow/io.hpp"
#include "rainbow/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

namespace rainbow {

namespace {

auto join(std::span<const TreeVertex> items) -> std::string
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i)
        out += (i ? "," : "") + std::to_string(items[i]);
    return out;
}

// RAINBOW_SEED wins over --seed.
auto effective_seed(std::uint64_t flag) -> std::uint64_t
{
    if (const char* env = std::getenv("RAINBOW_SEED"); env && *env) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, std::string("bad RAINBOW_SEED '") + env + "'");
        }
    }
    return flag;
}

auto exit_code_for(const Error& e) -> int
{
    switch (e.code()) {
        case ErrorCode::ParseError:
        case ErrorCode::DifferingBitCount:
        case ErrorCode::InvalidGraph:
        case ErrorCode::CycleDetected:
        case ErrorCode::DisconnectedInput:
        case ErrorCode::IndexOutOfRange:
        case ErrorCode::VertexNotInGraph:
        case ErrorCode::EmptyGraph:
        case ErrorCode::TooLarge:
        case ErrorCode::LimitExceeded: return kExitInput;
        case ErrorCode::DegreeTooSmall: return kExitDegreeTooSmall;
        default: return kExitInternal;
    }
}

auto load_graph(const std::string& path) -> ColoredCubeGraph
{
    auto g = parse_graph(read_text_file(path));
    if (auto bad = validate(g).first_failure())
        throw Error(ErrorCode::InvalidGraph, path + ": " + bad->name + " (" + bad->witness + ")");
    return g;
}

void emit(std::ostream& out, const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-")
        out << text;
    else
        write_text_file(path, text);
}

struct EmbedArgs {
    std::string graph;
    std::string tree;
    std::string out;
    std::string start;
    std::string bundle_dir = "rainbow-bundle";
    std::uint64_t seed = 0;
    bool seeded = false;
    bool trace = false;
    bool verify = false;
};

auto cmd_embed(const EmbedArgs& a, std::ostream& out, std::ostream& err) -> int
{
    const auto g = load_graph(a.graph);
    const auto t = parse_tree(read_text_file(a.tree));
    EngineOptions options;
    if (a.seeded || std::getenv("RAINBOW_SEED"))
        options.seed = effective_seed(a.seed);
    if (!a.start.empty())
        options.start = parse_binary(a.start);

    try {
        auto result = embed_rainbow_tree(g, t, options);
        const auto images = result.embedding.images();
        if (a.verify) {
            VerifyOptions vo;
            vo.require_path_distinct = true;
            vo.z_bad = result.z_bad;
            auto report = verify(g, t, images, vo);
            if (!report.passed()) {
                err << report.to_text();
                write_bundle(a.bundle_dir, g, t, format_embedding(g, t, images),
                    format_trace(result.trace, g.dimension()), "engine output failed verification");
                return kExitInternal;
            }
        }
        emit(out, a.out, format_embedding(g, t, images, a.trace ? &result.trace : nullptr));
        return kExitOk;
    } catch (const Error& e) {
        if (exit_code_for(e) != kExitInternal)
            throw;
        write_bundle(a.bundle_dir, g, t, "", "", e.what());
        err << e.what() << "\nbundle written to " << a.bundle_dir << '\n';
        return kExitInternal;
    }
}

struct VerifyArgs {
    std::string graph;
    std::string tree;
    std::string embedding;
    std::string z_bad;
    bool path_distinct = false;
};

auto cmd_verify(const VerifyArgs& a, std::ostream& out) -> int
{
    const auto g = load_graph(a.graph);
    const auto t = parse_tree(read_text_file(a.tree));
    const auto file = parse_embedding(read_text_file(a.embedding));
    if (file.tree_edges != t.edge_count())
        throw Error(ErrorCode::ParseError, "embedding is for a tree with " + std::to_string(file.tree_edges) + " edges");
    VerifyOptions vo;
    vo.require_path_distinct = a.path_distinct;
    if (!a.z_bad.empty())
        vo.z_bad = parse_binary(a.z_bad);
    auto report = verify(g, t, file.total_images(), vo);
    out << report.to_text();
    return report.passed() ? kExitOk : kExitMismatch;
}

struct OracleArgs {
    std::string graph;
    std::string tree;
    std::string out;
    std::uint64_t budget = OracleOptions{}.budget;
    bool orbits = false;
    int cycles = 0;
};

auto cmd_oracle(const OracleArgs& a, std::ostream& out) -> int
{
    const auto g = load_graph(a.graph);
    if (a.cycles > 0) {
        out << "no_rainbow_cycle=" << (oracle_no_rainbow_cycle(g, a.cycles) ? "true" : "false") << '\n';
        return kExitOk;
    }
    if (a.tree.empty())
        throw Error(ErrorCode::ParseError, "oracle needs --tree unless --cycles is given");
    const auto t = parse_tree(read_text_file(a.tree));
    OracleOptions options;
    options.budget = a.budget;
    options.root_orbits = a.orbits;
    auto result = oracle_find(g, t, options);
    out << "found=" << (result.found ? "true" : "false") << '\n'
        << "exhausted=" << (result.exhausted ? "true" : "false") << '\n'
        << "nodes_explored=" << result.nodes_explored << '\n';
    if (result.found && !a.out.empty())
        write_text_file(a.out, format_embedding(g, t, result.embedding));
    return kExitOk;
}

struct FuzzArgs {
    int n = 4;
    int trials = 100;
    int jobs = 0;
    int max_edges = -1;  // defaults to the host's min degree
    std::uint64_t seed = 0;
    bool exhaustive = false;
    bool oracle = false;
    std::string bundle_dir = "fuzz-bundles";
};

// Random instances: host kind, then a tree no larger than the host allows.
auto fuzz_batch(const FuzzArgs& a, std::uint64_t seed) -> std::vector<Instance>
{
    std::vector<Instance> batch;
    if (a.exhaustive) {
        const auto trees = enumerate_trees(std::min(a.n, kMaxEnumerationEdges));
        std::vector<std::pair<std::string, std::shared_ptr<const ColoredCubeGraph>>> hosts;
        hosts.emplace_back("cayley", std::make_shared<const ColoredCubeGraph>(cayley_coloring(a.n)));
        for (int i = 0; i < 20; ++i) {
            GenSpec spec;
            spec.kind = GenKind::RefinedCayley;
            spec.seed = seed + static_cast<std::uint64_t>(i);
            spec.n = a.n;
            spec.splits = 2;
            hosts.emplace_back(spec.to_line(), std::make_shared<const ColoredCubeGraph>(generate_graph(spec)));
        }
        for (const auto& [name, g] : hosts)
            for (const auto& t : trees)
                batch.push_back({g, t, name + " tree " + canonical_form(t), std::nullopt});
        return batch;
    }
    for (int i = 0; i < a.trials; ++i) {
        auto rng = SplitMix64::derive(seed, static_cast<std::uint64_t>(i));
        const auto host_seed = rng.next();
        GenSpec spec;
        spec.seed = host_seed;
        spec.n = a.n;
        switch (rng.below(4)) {
            case 0: spec.kind = GenKind::Cayley; break;
            case 1:
                spec.kind = GenKind::RefinedCayley;
                spec.splits = 1 + static_cast<int>(rng.below(3));
                break;
            case 2: spec.kind = GenKind::GreedyProper; break;
            default:
                spec.kind = GenKind::SubgraphMinDegree;
                spec.min_degree = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(a.n)));
                spec.splits = 2;
                break;
        }
        auto g = std::make_shared<const ColoredCubeGraph>(generate_graph(spec));
        int cap = a.max_edges >= 0 ? a.max_edges : g->min_degree();
        int m = static_cast<int>(rng.below(static_cast<std::uint64_t>(cap) + 1));
        auto tree_seed = rng.next();
        std::optional<std::uint64_t> engine_seed;
        if (rng.chance(1, 2))
            engine_seed = rng.next();
        batch.push_back({g, random_tree(m, tree_seed), spec.to_line() + " tree_seed=" + std::to_string(tree_seed)
            + " m=" + std::to_string(m), engine_seed});
    }
    return batch;
}

auto cmd_fuzz(const FuzzArgs& a, std::ostream& out) -> int
{
    const auto seed = effective_seed(a.seed);
    const auto batch = fuzz_batch(a, seed);
    CrossCheckOptions options;
    options.run_oracle = a.oracle || a.exhaustive;
    const auto outcomes = run_cross_check_parallel(batch, options, a.jobs);
    const auto summary = summarize(outcomes);
    out << "format=1\nseed=" << seed << '\n' << summary.to_text();
    for (auto i : summary.mismatch_indices) {
        const auto dir = std::filesystem::path(a.bundle_dir) / ("case-" + std::to_string(i));
        const auto& o = outcomes[i];
        write_bundle(dir, *batch[i].graph, batch[i].tree, o.embedding_text, o.trace_text, o.label + "\n" + o.reason);
        out << "bundle=" << dir.string() << '\n';
    }
    return summary.mismatches == 0 ? kExitOk : kExitMismatch;
}

struct GenArgs {
    std::string kind;
    std::uint64_t seed = 0;
    int n = 3;
    int splits = 1;
    int palette = 0;
    int d = 1;
    std::vector<int> legs;
    std::string out;
    bool emit_spec = false;
};

auto cmd_gen(const GenArgs& a, std::ostream& out) -> int
{
    GenSpec spec;
    spec.kind = parse_gen_kind(a.kind);
    spec.seed = effective_seed(a.seed);
    spec.n = a.n;
    spec.splits = a.splits;
    spec.palette = a.palette;
    spec.min_degree = a.d;
    spec.legs = a.legs;
    if (a.emit_spec) {
        out << spec.to_line() << '\n';
        return kExitOk;
    }
    emit(out, a.out, spec.is_graph() ? format_graph(generate_graph(spec)) : format_tree(generate_tree(spec)));
    return kExitOk;
}

struct BenchArgs {
    int n = 5;
    int trials = 400;
    int jobs = 0;
    std::uint64_t seed = 1;
};

auto cmd_bench(const BenchArgs& a, std::ostream& out) -> int
{
    FuzzArgs fa;
    fa.n = a.n;
    fa.trials = a.trials;
    const auto batch = fuzz_batch(fa, effective_seed(a.seed));
    CrossCheckOptions options;
    options.run_oracle = false;
    auto time = [](auto&& f) {
        auto t0 = std::chrono::steady_clock::now();
        auto r = f();
        return std::pair{std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), r};
    };
    auto [serial_s, serial] = time([&] { return run_cross_check_serial(batch, options); });
    auto [parallel_s, parallel] = time([&] { return run_cross_check_parallel(batch, options, a.jobs); });
    out << "format=1\ninstances=" << batch.size() << '\n'
        << "serial_seconds=" << serial_s << '\n'
        << "parallel_seconds=" << parallel_s << '\n'
        << "identical=" << (serial == parallel ? "true" : "false") << '\n';
    return serial == parallel ? kExitOk : kExitMismatch;
}

}  // namespace

auto check_tree_report(const RootedTree& t) -> TreeReport
{
    TreeReport r;
    std::ostringstream out;
    auto fail = [&](const std::string& what) {
        r.identities_hold = false;
        out << "identity_failure=" << what << '\n';
    };

    const auto floor = half_floor(t);
    const auto ceil = half_ceil(t);
    const auto def = deficiency(t);
    out << "format=1\n"
        << "vertices=" << t.size() << '\n'
        << "edges=" << t.edge_count() << '\n'
        << "floor_edges=" << floor.size() << '\n'
        << "ceil_edges=" << ceil.size() << '\n'
        << "floor_set=" << join(floor) << '\n'
        << "ceil_set=" << join(ceil) << '\n'
        << "deficiency=" << def << '\n';
    if (def < 0)
        fail("negative deficiency");
    if (!std::includes(ceil.begin(), ceil.end(), floor.begin(), floor.end()))
        fail("floor half not inside ceil half");

    std::optional<SpiderShape> spider;
    if (t.edge_count() > 0)
        spider = as_spider(t);
    out << "spider=" << (spider ? "yes" : "no") << '\n';
    if (spider) {
        out << "legs=" << spider->legs.size() << '\n'
            << "leg_lengths=" << join(spider->leg_lengths) << '\n'
            << "odd_legs=" << spider->odd_leg_count() << '\n';
        if (spider->odd_leg_count() != def)
            fail("spider deficiency differs from its odd leg count");
    }
    if (def == 0 && t.edge_count() > 0 && !(spider && spider->is_even()))
        fail("deficiency zero without an even spider");
    if (def == 1 && floor != ceil && !(spider && spider->odd_leg_count() == 1))
        fail("deficiency one with distinct halves is not a one-odd-leg spider");

    if (t.edge_count() > 0) {
        const auto cls = classify_children(t);
        std::vector<TreeVertex> spiders;
        for (const auto& s : cls.spiders)
            spiders.push_back(s.vertex);
        out << "root_leaves=" << join(cls.leaves) << '\n'
            << "root_even_spiders=" << join(spiders) << '\n'
            << "root_other=" << join(cls.rest) << '\n';
    }

    const auto iota = iota_injection(t);
    std::string pairs;
    std::set<TreeVertex> images;
    for (const auto& [e, img] : iota) {
        pairs += (pairs.empty() ? "" : ",") + std::to_string(e) + ":" + std::to_string(img);
        images.insert(img);
        if (std::binary_search(ceil.begin(), ceil.end(), img))
            fail("reflection of edge " + std::to_string(e) + " lands in the ceil half");
        else if (iota_reverse(t, img) != e)
            fail("reflection of edge " + std::to_string(e) + " is not reversed");
    }
    if (images.size() != iota.size())
        fail("reflection is not injective");
    out << "iota=" << pairs << '\n';

    const auto [lhs, rhs] = degree_sum_identity(t);
    out << "root_nonleaf_edges=" << join(root_nonleaf_edges(t)) << '\n'
        << "leaf_nonroot_edges=" << join(leaf_nonroot_edges(t)) << '\n'
        << "degree_sum_lhs=" << lhs << '\n'
        << "degree_sum_rhs=" << rhs << '\n';
    if (lhs != rhs)
        fail("degree-sum identity");
    out << "identities=" << (r.identities_hold ? "ok" : "failed") << '\n';
    r.text = out.str();
    return r;
}

auto run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) -> int
{
    CLI::App app{"Rainbow tree embeddings in edge-colored hypercubes", "rainbow"};
    app.require_subcommand(1);

    EmbedArgs embed;
    auto* sub_embed = app.add_subcommand("embed", "Embed a tree into a colored cube subgraph");
    sub_embed->add_option("--graph", embed.graph, "Graph file")->required();
    sub_embed->add_option("--tree", embed.tree, "Tree file")->required();
    sub_embed->add_option("--out,-o", embed.out, "Embedding output file (default stdout)");
    sub_embed->add_option("--start", embed.start, "Image of the root, binary");
    sub_embed->add_option("--bundle-dir", embed.bundle_dir, "Where to dump a failing instance");
    auto* seed_opt = sub_embed->add_option("--seed", embed.seed, "Randomized tie-breaking seed");
    sub_embed->add_flag("--trace", embed.trace, "Append the construction trace");
    sub_embed->add_flag("--verify", embed.verify, "Verify before writing");

    VerifyArgs ver;
    auto* sub_verify = app.add_subcommand("verify", "Check an embedding file");
    sub_verify->add_option("--graph", ver.graph, "Graph file")->required();
    sub_verify->add_option("--tree", ver.tree, "Tree file")->required();
    sub_verify->add_option("--embedding", ver.embedding, "Embedding file")->required();
    sub_verify->add_option("--z-bad", ver.z_bad, "Vertex that must be avoided, binary");
    sub_verify->add_flag("--require-path-distinct", ver.path_distinct, "Check path-distinctness on the ceil half");

    OracleArgs orc;
    auto* sub_oracle = app.add_subcommand("oracle", "Exhaustive search for small instances");
    sub_oracle->add_option("--graph", orc.graph, "Graph file")->required();
    sub_oracle->add_option("--tree", orc.tree, "Tree file");
    sub_oracle->add_option("--out,-o", orc.out, "Write the embedding found");
    sub_oracle->add_option("--budget", orc.budget, "Search node limit");
    sub_oracle->add_flag("--orbits", orc.orbits, "Restrict the root to translation orbit representatives");
    sub_oracle->add_option("--cycles", orc.cycles, "Instead search for rainbow cycles up to this length");

    FuzzArgs fuzz;
    auto* sub_fuzz = app.add_subcommand("fuzz", "Cross-check the engine on generated instances");
    sub_fuzz->add_option("--n", fuzz.n, "Cube dimension")->check(CLI::Range(1, kMaxGeneratedDimension));
    sub_fuzz->add_option("--trials", fuzz.trials, "Number of random instances")->check(CLI::NonNegativeNumber);
    sub_fuzz->add_option("--seed", fuzz.seed, "Master seed");
    sub_fuzz->add_option("--jobs,-j", fuzz.jobs, "Worker threads (0 = runtime default)");
    sub_fuzz->add_option("--max-edges", fuzz.max_edges, "Largest random tree");
    sub_fuzz->add_option("--bundle-dir", fuzz.bundle_dir, "Where to write counterexample bundles");
    sub_fuzz->add_flag("--exhaustive", fuzz.exhaustive, "All trees with at most n edges on 21 hosts");
    sub_fuzz->add_flag("--oracle", fuzz.oracle, "Also run the exhaustive oracle");

    GenArgs gen;
    auto* sub_gen = app.add_subcommand("gen", "Generate a graph or tree");
    sub_gen->add_option("kind", gen.kind, "cayley|refined_cayley|greedy_proper|subgraph_min_degree|random_tree|random_spider")
        ->required();
    sub_gen->add_option("--seed", gen.seed, "Seed");
    sub_gen->add_option("--n", gen.n, "Dimension, or edge count for random_tree");
    sub_gen->add_option("--splits", gen.splits, "Classes per coordinate (refined_cayley)");
    sub_gen->add_option("--palette", gen.palette, "Palette bound (greedy_proper)");
    sub_gen->add_option("--d", gen.d, "Minimum degree (subgraph_min_degree)");
    sub_gen->add_option("--legs", gen.legs, "Leg lengths (random_spider)")->delimiter(',');
    sub_gen->add_option("--out,-o", gen.out, "Output file (default stdout)");
    sub_gen->add_flag("--emit-spec", gen.emit_spec, "Print the genspec line instead");

    std::string tree_file;
    auto* sub_check = app.add_subcommand("check-tree", "Report the structure of a tree");
    sub_check->add_option("tree", tree_file, "Tree file")->required();

    BenchArgs bench;
    auto* sub_bench = app.add_subcommand("bench", "Time the serial and parallel cross-check kernels");
    sub_bench->add_option("--n", bench.n, "Cube dimension")->check(CLI::Range(1, kMaxGeneratedDimension));
    sub_bench->add_option("--trials", bench.trials, "Instances")->check(CLI::NonNegativeNumber);
    sub_bench->add_option("--jobs,-j", bench.jobs, "Worker threads");
    sub_bench->add_option("--seed", bench.seed, "Seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInput;
    }

    try {
        if (*sub_embed) {
            embed.seeded = seed_opt->count() > 0;
            return cmd_embed(embed, out, err);
        }
        if (*sub_verify)
            return cmd_verify(ver, out);
        if (*sub_oracle)
            return cmd_oracle(orc, out);
        if (*sub_fuzz)
            return cmd_fuzz(fuzz, out);
        if (*sub_gen)
            return cmd_gen(gen, out);
        if (*sub_check) {
            auto report = check_tree_report(parse_tree(read_text_file(tree_file)));
            out << report.text;
            return report.identities_hold ? kExitOk : kExitInternal;
        }
        if (*sub_bench)
            return cmd_bench(bench, out);
    } catch (const Error& e) {
        err << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}

}  // namespace rainbow
