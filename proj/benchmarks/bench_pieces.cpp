#include <benchmark/benchmark.h>

#include "randgroup/pieces.hpp"
#include "randgroup/presentation.hpp"
#include "randgroup/rng.hpp"

namespace {

using namespace randgroup;

void BM_PieceSpectrum(benchmark::State& state) {
  Rng rng(1);
  Presentation p = sample_presentation(
      2, static_cast<int>(state.range(1)), 0.0, rng,
      std::optional<std::int64_t>{state.range(0)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(piece_spectrum(p).max.length);
  }
  state.SetComplexityN(state.range(0));
}

void BM_FindSharingPair(benchmark::State& state) {
  Presentation p = sample_presentation(2, 40, 0.25, std::uint64_t{7});
  const int target = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_sharing_pair(p, target));
  }
}

void BM_SamplePresentation(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sample_presentation(2, 40, 0.25, seed++).size());
  }
}

}  // namespace

BENCHMARK(BM_PieceSpectrum)->Args({16, 16})->Args({64, 24})->Args({256, 60});
BENCHMARK(BM_FindSharingPair)->Arg(18)->Arg(14);
BENCHMARK(BM_SamplePresentation)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
