#include <benchmark/benchmark.h>

#include "blockbound/attack.hpp"

using namespace blockbound;

namespace {

void BM_SplitMix64(benchmark::State& state) {
    SplitMix64 rng(42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rng.next());
    }
}
BENCHMARK(BM_SplitMix64);

void BM_MakePermutation(benchmark::State& state) {
    const auto m = static_cast<unsigned>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(make_permutation(m, seed++));
    }
}
BENCHMARK(BM_MakePermutation)->Arg(8)->Arg(16)->Arg(20);

void BM_BuildCodebook(benchmark::State& state) {
    const unsigned m = 16;
    const auto table = make_permutation(m, 7);
    const auto dict = static_cast<std::uint64_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_codebook(table, m, dict, seed++));
    }
}
BENCHMARK(BM_BuildCodebook)->Arg(256)->Arg(1024)->Arg(4096);

void BM_RunTrials(benchmark::State& state) {
    AttackConfig config;
    config.m = static_cast<unsigned>(state.range(0));
    config.trials = 10;
    config.seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_trials(config));
    }
}
BENCHMARK(BM_RunTrials)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
