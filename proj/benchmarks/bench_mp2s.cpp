#include <benchmark/benchmark.h>

#include "mp2s/builders.hpp"
#include "mp2s/disjointness.hpp"
#include "mp2s/engine.hpp"
#include "mp2s/foolbox.hpp"
#include "mp2s/sweep.hpp"

using namespace mp2s;

namespace {

void BM_RunSqrt(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Automaton a = build_sqrt(n);
  const IndexSet none(n, 0);
  const auto inst = build_instance(none, none.complement(), n, Layout::reversed());
  for (auto _ : state) benchmark::DoNotOptimize(run(a, inst.s, inst.t).steps);
}
BENCHMARK(BM_RunSqrt)->Arg(16)->Arg(36)->Arg(64);

void BM_RunTrivialTraced(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Automaton a = build_trivial(n);
  const IndexSet none(n, 0);
  const auto inst = build_instance(none, none.complement(), n, Layout::reversed());
  for (auto _ : state) benchmark::DoNotOptimize(run(a, inst.s, inst.t, true).trace->size());
}
BENCHMARK(BM_RunTrivialTraced)->Arg(8)->Arg(16)->Arg(31);

void BM_SweepAllPairsTrivial3(benchmark::State& state) {
  const Automaton a = build_trivial(3);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_all_pairs(a, 3).agree);
}
BENCHMARK(BM_SweepAllPairsTrivial3)->Unit(benchmark::kMillisecond);

void BM_FoolingSearchCrippled(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Automaton a = build_crippled(n, IndexSet(n, 0).complement().minus(IndexSet(n, 1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fooling_search(a, n, FoolLayout::reversed, Enumeration::exhaustive()).stats.buckets);
  }
}
BENCHMARK(BM_FoolingSearchCrippled)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
