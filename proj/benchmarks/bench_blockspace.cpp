#include <set>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "blockbound/blockspace.hpp"
#include "blockbound/vocab.hpp"

using namespace blockbound;

namespace {

// A small but non-trivial vocabulary: enough affix sharing to make the
// segment sets interesting without blowing up the brute-force space.
Vocabulary bench_vocabulary() {
    return Vocabulary(std::set<std::string>{
        "a", "an", "at", "and", "are", "be", "but", "by", "can", "do",
        "for", "from", "had", "has", "have", "he", "her", "his", "in", "is",
        "it", "not", "of", "on", "or", "she", "that", "the", "this", "to",
        "was", "we", "with", "you",
    });
}

void BM_SegmentSets(benchmark::State& state) {
    const Vocabulary voc = bench_vocabulary();
    const auto B = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_segment_sets(voc, B));
    }
}
BENCHMARK(BM_SegmentSets)->Arg(4)->Arg(8)->Arg(16);

void BM_DpCount(benchmark::State& state) {
    const Vocabulary voc = bench_vocabulary();
    const auto B = static_cast<std::uint64_t>(state.range(0));
    const VocabStats stats = compute_stats(voc, B);
    BlockGrammar g;
    g.B = B;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dp_count(stats, g));
    }
}
BENCHMARK(BM_DpCount)->Arg(4)->Arg(8)->Arg(16)->Arg(64);

void BM_BruteForce(benchmark::State& state) {
    const Vocabulary voc = bench_vocabulary();
    BlockGrammar g;
    g.B = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(brute_force_enumerate(voc, g, 50'000'000));
    }
}
BENCHMARK(BM_BruteForce)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Recognize(benchmark::State& state) {
    const Vocabulary voc = bench_vocabulary();
    BlockGrammar g;
    g.B = 8;
    const SegmentSets sets = build_segment_sets(voc, g.B);
    const std::vector<std::string> probes = {
        "the and ", "The and ", ", he is ", "at the d", "xx the d",
        "the  and", "the, and", "THE AND ",
    };
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(recognize(probes[i], sets, g));
        i = (i + 1) % probes.size();
    }
}
BENCHMARK(BM_Recognize);

void BM_CheckDomination(benchmark::State& state) {
    const Vocabulary voc = bench_vocabulary();
    BlockGrammar g;
    g.B = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_domination(voc, g));
    }
}
BENCHMARK(BM_CheckDomination)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
