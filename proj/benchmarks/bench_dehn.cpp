#include <benchmark/benchmark.h>

#include "randgroup/dehn.hpp"
#include "randgroup/presentation.hpp"
#include "randgroup/rng.hpp"

namespace {

using namespace randgroup;

void BM_DehnReduce(benchmark::State& state) {
  Rng rng(3);
  Presentation p = sample_presentation(2, 60, 0.03, rng);
  std::vector<Word> words;
  for (int i = 0; i < 32; ++i) {
    words.push_back(random_trivial_word(p, static_cast<int>(state.range(0)), rng));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dehn_reduce(words[i++ % words.size()], p).final.size());
  }
}

void BM_DehnStep(benchmark::State& state) {
  Rng rng(5);
  Presentation p = sample_presentation(2, 60, 0.05, rng);
  Word w = random_trivial_word(p, 3, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dehn_step(w, p));
  }
}

}  // namespace

BENCHMARK(BM_DehnReduce)->Arg(1)->Arg(3)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DehnStep)->Unit(benchmark::kMicrosecond);
