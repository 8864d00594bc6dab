#include <benchmark/benchmark.h>

#include "eqdist/blocks.hpp"
#include "eqdist/counting.hpp"
#include "eqdist/distribution.hpp"

namespace {

using namespace eqdist;

ResidueMultiset units_of(const RingContext& ctx) {
  ResidueMultiset a(ctx.n);
  for (std::uint64_t u : ctx.units) a.add(u);
  return a;
}

void BM_SubsetSumDistribution(benchmark::State& state) {
  const RingContext ctx = build_context(static_cast<std::uint64_t>(state.range(0)));
  const ResidueMultiset a = units_of(ctx);
  for (auto _ : state) {
    benchmark::DoNotOptimize(subset_sum_distribution(a));
  }
  state.SetLabel("k=" + std::to_string(a.cardinality()));
}
BENCHMARK(BM_SubsetSumDistribution)->Arg(23)->Arg(63)->Arg(105)->Arg(255);

void BM_PolyIdentity(benchmark::State& state) {
  const RingContext ctx = build_context(static_cast<std::uint64_t>(state.range(0)));
  const ResidueMultiset a = units_of(ctx);
  for (auto _ : state) {
    benchmark::DoNotOptimize(poly_identity_check(a));
  }
}
BENCHMARK(BM_PolyIdentity)->Arg(105)->Arg(255);

void BM_Census(benchmark::State& state) {
  const RingContext ctx = build_context(static_cast<std::uint64_t>(state.range(0)));
  const int jobs = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_census(ctx, std::uint64_t{1} << 22, jobs));
  }
}
BENCHMARK(BM_Census)->Args({13, 1})->Args({17, 1})->Args({17, 4})->Args({19, 4})
    ->Unit(benchmark::kMillisecond);

void BM_CensusUnpruned(benchmark::State& state) {
  const RingContext ctx = build_context(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_census(ctx, std::uint64_t{1} << 22, 1, false));
  }
}
BENCHMARK(BM_CensusUnpruned)->Arg(13)->Unit(benchmark::kMillisecond);

void BM_EnumerateByConstruction(benchmark::State& state) {
  const RingContext ctx = build_context(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_by_construction(ctx));
  }
}
BENCHMARK(BM_EnumerateByConstruction)->Arg(17)->Arg(23);

void BM_Decompose(benchmark::State& state) {
  const RingContext ctx = build_context(static_cast<std::uint64_t>(state.range(0)));
  const ResidueMultiset a = units_of(ctx);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(a, ctx));
  }
}
BENCHMARK(BM_Decompose)->Arg(23)->Arg(199);

}  // namespace

BENCHMARK_MAIN();
