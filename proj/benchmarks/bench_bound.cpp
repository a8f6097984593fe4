#include <benchmark/benchmark.h>

#include "blockbound/bound.hpp"

using namespace blockbound;

namespace {

BoundParams params_for(BoundMode mode, std::uint64_t B) {
    BoundParams p;
    p.mode = mode;
    p.B = B;
    if (mode == BoundMode::affix_refined) p.lambda = 26.0;
    return p;
}

void BM_BoundPaper(benchmark::State& state) {
    const BoundParams p = params_for(BoundMode::paper_stirling, 16);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bound_total(p));
    }
}
BENCHMARK(BM_BoundPaper);

void BM_BoundExactSum(benchmark::State& state) {
    const BoundParams p =
        params_for(BoundMode::exact_sum, static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(bound_total(p));
    }
}
BENCHMARK(BM_BoundExactSum)->Arg(16)->Arg(32)->Arg(64)->Arg(128);

void BM_BoundAffix(benchmark::State& state) {
    const BoundParams p = params_for(BoundMode::affix_refined, 16);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bound_total(p));
    }
}
BENCHMARK(BM_BoundAffix);

void BM_TermExactSingle(benchmark::State& state) {
    const BoundParams p = params_for(BoundMode::exact_sum, 16);
    for (auto _ : state) {
        benchmark::DoNotOptimize(term_exact(1, static_cast<std::uint64_t>(state.range(0)), p));
    }
}
BENCHMARK(BM_TermExactSingle)->Arg(1)->Arg(4)->Arg(8);

} // namespace

BENCHMARK_MAIN();
