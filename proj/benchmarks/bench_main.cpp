#include <benchmark/benchmark.h>

#include "stabreg/convolution.hpp"
#include "stabreg/random.hpp"
#include "stabreg/regularity.hpp"
#include "stabreg/repr.hpp"
#include "stabreg/stability.hpp"

using namespace stabreg;

namespace {

const char* const kGroups[] = {"sym:4", "dihedral:12", "alt:5", "sym:5"};

void BM_DecomposeRegular(benchmark::State& state) {
  const auto g = build_group(kGroups[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_regular(g));
  state.SetLabel(g->descriptor());
}
BENCHMARK(BM_DecomposeRegular)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_LadderIndexConvolution(benchmark::State& state) {
  const auto g = build_group("zmod:" + std::to_string(state.range(0)));
  Rng rng(1);
  const auto a = random_subset(g, 0.5, rng), b = random_subset(g, 0.5, rng);
  const auto f = convolve(GroupFunction::indicator(a), GroupFunction::indicator(b));
  for (auto _ : state) benchmark::DoNotOptimize(ladder_index(f, 0.1, 1000));
}
BENCHMARK(BM_LadderIndexConvolution)->Arg(12)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_LadderIndexNoise(benchmark::State& state) {
  const auto g = build_group("zmod:" + std::to_string(state.range(0)));
  Rng rng(2);
  const auto f = noise_function(g, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ladder_index(f, 0.5, 1000));
}
BENCHMARK(BM_LadderIndexNoise)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_ConvolveDirect(benchmark::State& state) {
  const auto g = build_group("zmod:" + std::to_string(state.range(0)));
  Rng rng(3);
  const auto f = random_function(g, rng), h = random_function(g, rng);
  for (auto _ : state) benchmark::DoNotOptimize(convolve(f, h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConvolveDirect)->RangeMultiplier(4)->Range(64, 1024)->Complexity();

void BM_ConvolveFFT(benchmark::State& state) {
  const auto g = build_group("zmod:" + std::to_string(state.range(0)));
  Rng rng(3);
  const auto f = random_function(g, rng), h = random_function(g, rng);
  for (auto _ : state) benchmark::DoNotOptimize(convolve_fft_cyclic(f, h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConvolveFFT)->RangeMultiplier(4)->Range(64, 1024)->Complexity();

void BM_SearchRegularBohr(benchmark::State& state) {
  const auto g = build_group("zmod:101");
  Subset a(g);
  for (Element x = 0; x <= 50; ++x) a.insert(x);
  const auto f = overlap_function(a);
  const auto irr = compute_irreps(g);
  RegularityBudget budget;
  budget.eps = 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(search_regular_bohr(f, irr, budget));
}
BENCHMARK(BM_SearchRegularBohr)->Unit(benchmark::kMillisecond);

void BM_SearchRegularBohrNoise(benchmark::State& state) {
  const auto g = build_group("zmod:101");
  Rng rng(11);
  const auto f = noise_function(g, rng);
  const auto irr = compute_irreps(g);
  RegularityBudget budget;
  budget.eps = 0.1;
  budget.enumeration.exclude_singleton = true;
  budget.enumeration.max_candidates = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search_regular_bohr(f, irr, budget));
}
BENCHMARK(BM_SearchRegularBohrNoise)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
