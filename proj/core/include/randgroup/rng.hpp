#pragma once

#include <cstdint>
#include <random>

namespace randgroup {

// One splitmix64 mixing step. Used for seed derivation only, never as the
// main stream.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed schedule for experiment trials: three chained splitmix64 mixes of
// (master, group, item). Every trial owns an isolated stream, so results do
// not depend on worker count or scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t group,
                                 std::uint64_t item) {
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ (0x9e3779b97f4a7c15ULL * (group + 1)));
  s = splitmix64(s ^ (0xc2b2ae3d27d4eb4fULL * (item + 1)));
  return s;
}

// Deterministic random source. mt19937_64 has a fully specified sequence;
// bounded draws use rejection sampling so that results never depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform integer in [0, n), unbiased. n >= 1.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) {
      return 0;
    }
    const std::uint64_t limit = (~std::uint64_t{0} / n) * n;
    std::uint64_t r = gen_();
    while (r >= limit) {
      r = gen_();
    }
    return r % n;
  }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace randgroup
