// Serial reference vs OpenMP kernels on identical inputs.

#include "rainbow/cross_check.hpp"
#include "rainbow/gen.hpp"

#include <benchmark/benchmark.h>

using namespace rainbow;

namespace {

auto make_batch(int n, int count) -> std::vector<Instance>
{
    std::vector<Instance> out;
    for (int i = 0; i < count; ++i) {
        auto seed = static_cast<std::uint64_t>(i);
        auto g = std::make_shared<const ColoredCubeGraph>(refined_cayley(n, seed, 2));
        out.push_back({g, random_tree(n, seed), "bench " + std::to_string(i), seed});
    }
    return out;
}

void BM_CrossCheckSerial(benchmark::State& state)
{
    auto batch = make_batch(static_cast<int>(state.range(0)), 64);
    for (auto _ : state)
        benchmark::DoNotOptimize(run_cross_check_serial(batch));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch.size()));
}

void BM_CrossCheckParallel(benchmark::State& state)
{
    auto batch = make_batch(static_cast<int>(state.range(0)), 64);
    for (auto _ : state)
        benchmark::DoNotOptimize(run_cross_check_parallel(batch));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch.size()));
}

void BM_RainbowCycleSerial(benchmark::State& state)
{
    auto g = greedy_proper(static_cast<int>(state.range(0)), 1, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle_no_rainbow_cycle_serial(g, 8));
}

void BM_RainbowCycleParallel(benchmark::State& state)
{
    auto g = greedy_proper(static_cast<int>(state.range(0)), 1, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle_no_rainbow_cycle(g, 8));
}

}  // namespace

BENCHMARK(BM_CrossCheckSerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrossCheckParallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RainbowCycleSerial)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RainbowCycleParallel)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
