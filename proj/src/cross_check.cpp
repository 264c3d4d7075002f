#include "rainbow/cross_check.hpp"

#include "rainbow/io.hpp"

#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rainbow {

auto cross_check_instance(const Instance& instance, const CrossCheckOptions& options) -> CrossCheckOutcome
{
    const auto& g = *instance.graph;
    const auto& t = instance.tree;
    CrossCheckOutcome out;
    out.label = instance.label;
    out.legal = g.min_degree() >= t.edge_count();
    auto flag = [&](const std::string& why) {
        if (!out.mismatch) {
            out.mismatch = true;
            out.reason = why;
        }
    };

    try {
        EngineOptions engine;
        engine.seed = instance.seed;
        engine.check_invariants = options.check_invariants;
        engine.record_trace = options.keep_trace;
        auto result = embed_rainbow_tree(g, t, engine);
        out.engine_ok = true;
        const auto images = result.embedding.images();
        VerifyOptions vo;
        vo.require_path_distinct = true;
        vo.z_bad = result.z_bad;
        const auto report = verify(g, t, images, vo);
        out.verify_ok = report.passed();
        out.embedding_text = format_embedding(g, t, images);
        if (options.keep_trace)
            out.trace_text = format_trace(result.trace, g.dimension());
        if (!out.verify_ok)
            flag("engine output fails verification: " + report.first_failure()->name);
    } catch (const Error& e) {
        out.engine_error = e.what();
        if (e.code() != ErrorCode::DegreeTooSmall || out.legal)
            flag(std::string("engine error on a legal instance: ") + e.what());
    } catch (const std::exception& e) {
        out.engine_error = e.what();
        flag(std::string("engine crashed: ") + e.what());
    }

    if (options.run_oracle) {
        try {
            auto oracle = oracle_find(g, t, options.oracle);
            out.oracle_ran = true;
            out.oracle_found = oracle.found;
            out.oracle_exhausted = oracle.exhausted;
            if (oracle.found && !verify(g, t, oracle.embedding).passed())
                flag("oracle output fails verification");
            if (!oracle.found && oracle.exhausted && (out.legal || out.engine_ok))
                flag("oracle exhausted the search without an embedding");
        } catch (const std::exception& e) {
            flag(std::string("oracle error: ") + e.what());
        }
    }
    return out;
}

auto run_cross_check_serial(std::span<const Instance> instances, const CrossCheckOptions& options)
    -> std::vector<CrossCheckOutcome>
{
    std::vector<CrossCheckOutcome> out;
    out.reserve(instances.size());
    for (const auto& inst : instances)
        out.push_back(cross_check_instance(inst, options));
    return out;
}

auto run_cross_check_parallel(std::span<const Instance> instances, const CrossCheckOptions& options, int jobs)
    -> std::vector<CrossCheckOutcome>
{
    std::vector<CrossCheckOutcome> out(instances.size());
    const auto count = static_cast<long>(instances.size());
#ifdef _OPENMP
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#else
    (void)jobs;
#endif
    // cross_check_instance never throws, so nothing escapes the parallel region.
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] = cross_check_instance(instances[static_cast<std::size_t>(i)], options);
    return out;
}

auto CrossCheckSummary::to_text() const -> std::string
{
    std::ostringstream out;
    out << "trials=" << trials << '\n'
        << "legal=" << legal << '\n'
        << "engine_successes=" << engine_successes << '\n'
        << "oracle_runs=" << oracle_runs << '\n'
        << "oracle_found=" << oracle_found << '\n'
        << "mismatches=" << mismatches << '\n';
    return out.str();
}

auto summarize(std::span<const CrossCheckOutcome> outcomes) -> CrossCheckSummary
{
    CrossCheckSummary s;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto& o = outcomes[i];
        ++s.trials;
        s.legal += o.legal ? 1 : 0;
        s.engine_successes += o.engine_ok ? 1 : 0;
        s.oracle_runs += o.oracle_ran ? 1 : 0;
        s.oracle_found += o.oracle_found ? 1 : 0;
        if (o.mismatch) {
            ++s.mismatches;
            s.mismatch_indices.push_back(i);
        }
    }
    return s;
}

auto cross_check(const ColoredCubeGraph& g, const RootedTree& t, int trials, const CrossCheckOptions& options)
    -> CrossCheckSummary
{
    auto shared = std::make_shared<const ColoredCubeGraph>(g);
    std::vector<Instance> batch;
    for (int i = 0; i < trials; ++i) {
        std::optional<std::uint64_t> seed;
        if (i > 0)
            seed = static_cast<std::uint64_t>(i);
        batch.push_back({shared, t, "trial " + std::to_string(i), seed});
    }
    auto outcomes = run_cross_check_serial(batch, options);
    return summarize(outcomes);
}

}  // namespace rainbow
