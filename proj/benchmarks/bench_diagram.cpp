#include <benchmark/benchmark.h>

#include "randgroup/constructions.hpp"
#include "randgroup/experiments.hpp"
#include "randgroup/presentation.hpp"
#include "randgroup/rng.hpp"

namespace {

using namespace randgroup;

void BM_GrowDiagram(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state) {
    Rng rng(seed++);
    Presentation p = sample_presentation(2, 60, 0.10, rng);
    benchmark::DoNotOptimize(
        grow_random_diagram(p, static_cast<int>(state.range(0)), rng).diagram
            .boundary_length());
  }
}

void BM_BuildCounterexample(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state) {
    Presentation p = sample_presentation(2, 40, 0.25, seed++);
    benchmark::DoNotOptimize(build_counterexample(p, 0.05).has_value());
  }
}

void BM_Validate(benchmark::State& state) {
  Rng rng(11);
  Presentation p = sample_presentation(2, 60, 0.10, rng);
  Diagram d = grow_random_diagram(p, 8, rng).diagram;
  for (auto _ : state) {
    benchmark::DoNotOptimize(validate(d, p).valid);
  }
}

}  // namespace

BENCHMARK(BM_GrowDiagram)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildCounterexample)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Validate)->Unit(benchmark::kMicrosecond);
