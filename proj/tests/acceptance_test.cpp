// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code = number of failed
// criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracle_dehn.hpp"
#include "oracle_pieces.hpp"
#include "randgroup/bounds.hpp"
#include "randgroup/constructions.hpp"
#include "randgroup/dehn.hpp"
#include "randgroup/diagram.hpp"
#include "randgroup/experiments.hpp"
#include "randgroup/pieces.hpp"
#include "randgroup/presentation.hpp"

using namespace randgroup;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// 1. piece_spectrum fast path equals the brute-force oracle on 500 random
//    presentations (m=2, ell<=16, <=20 relators); runtime < 60 s
Outcome criterion_oracle_equivalence() {
  auto start = std::chrono::steady_clock::now();
  Rng rng(20260809);
  for (int trial = 0; trial < 500; ++trial) {
    const int ell = 4 + static_cast<int>(rng.below(13));       // 4..16
    const int count = 1 + static_cast<int>(rng.below(20));     // 1..20
    Presentation p =
        sample_presentation(2, ell, 0.0, rng, std::optional<std::int64_t>{count});
    PieceSpectrum fast = piece_spectrum(p);
    test::OracleSpectrum oracle = test::oracle_spectrum(p);
    if (fast.max.length != oracle.max || fast.histogram != oracle.histogram) {
      return {false, "mismatch at trial " + std::to_string(trial)};
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 60.0) {
    return {false, "too slow: " + std::to_string(elapsed) + " s"};
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "500 presentations, %.1f s", elapsed);
  return {true, buf};
}

// 2. exact combinatorial-map identities on 1000 grown diagrams
Outcome criterion_map_identities() {
  int diagrams = 0;
  for (std::uint64_t seed = 1; diagrams < 1000; ++seed) {
    Rng rng(seed);
    const int ell = 12 + static_cast<int>(rng.below(3)) * 6;  // 12, 18, 24
    const double d = 0.08 + 0.04 * static_cast<double>(rng.below(3));
    Presentation p = sample_presentation(2, ell, d, rng);
    const int target = 2 + static_cast<int>(rng.below(5));
    GrowthResult grown = grow_random_diagram(p, target, rng);
    const Diagram& diagram = grown.diagram;
    ++diagrams;

    if (static_cast<std::int64_t>(diagram.face_count()) * diagram.ell() !=
        2 * diagram.interior_edge_count() + diagram.boundary_length()) {
      return {false, "edge identity failed at seed " + std::to_string(seed)};
    }
    if (diagram.euler_characteristic() != 1 || !diagram.is_disc()) {
      return {false, "Euler characteristic failed at seed " + std::to_string(seed)};
    }
    const auto stats = face_boundary_stats(diagram);
    for (int f = 0; f < diagram.face_count(); ++f) {
      std::int64_t total = 0;
      for (const Diagram& c : remove_face(diagram, f)) {
        total += c.boundary_length();
      }
      if (total != diagram.boundary_length() + diagram.ell() -
                       2 * stats[static_cast<std::size_t>(f)].total) {
        return {false, "remove_face identity failed at seed " + std::to_string(seed)};
      }
    }
  }
  return {true, "1000 diagrams, all identities exact"};
}

// shared sampling for criteria 3-5
const int kSharpEll = 40;
const double kSharpDensity = 0.25;
const double kSharpEps = 0.05;

// 3. build_two_face: |dD| = 2 ell - 2t exactly, within +-2 of the paper value
Outcome criterion_two_face() {
  const int t = static_cast<int>(std::ceil((2 * kSharpDensity - kSharpEps) * kSharpEll));
  int successes = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Presentation p = sample_presentation(2, kSharpEll, kSharpDensity, seed);
    auto built = build_two_face(p, kSharpEps);
    if (!built) {
      continue;
    }
    ++successes;
    if (built->boundary_length() != 2 * kSharpEll - 2 * t) {
      return {false, "boundary != 2 ell - 2t at seed " + std::to_string(seed)};
    }
    const double paper = 2.0 * (1.0 - 2.0 * kSharpDensity + kSharpEps) * kSharpEll;
    if (std::abs(static_cast<double>(built->boundary_length()) - paper) > 2.0) {
      return {false, "outside +-2 of the paper value at seed " + std::to_string(seed)};
    }
  }
  if (successes < 90) {
    return {false, "only " + std::to_string(successes) + "/100 seeds built"};
  }
  return {true, std::to_string(successes) + "/100 builds, boundary exact"};
}

// 4. three-face construction numbers within the stated rounding slack
Outcome criterion_three_face() {
  const double d = kSharpDensity;
  const double eps = kSharpEps;
  int successes = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Presentation p = sample_presentation(2, kSharpEll, d, seed);
    auto built = build_three_face(p, eps);
    if (!built) {
      continue;
    }
    ++successes;
    const double boundary = static_cast<double>(built->diagram.boundary_length());
    if (std::abs(boundary - (3.0 - 6.0 * d + 4.0 * eps) * kSharpEll) > 3.0) {
      return {false, "boundary outside +-3 at seed " + std::to_string(seed)};
    }
    for (int share : built->retained) {
      if (std::abs(share - (1.0 - 2.5 * d + 1.5 * eps) * kSharpEll) > 2.0) {
        return {false, "retained share outside +-2 at seed " + std::to_string(seed)};
      }
    }
  }
  if (successes == 0) {
    return {false, "search never succeeded"};
  }
  return {true, std::to_string(successes) + "/100 builds verified"};
}

// 5. counterexample: every successful build defeats the Dehn property
Outcome criterion_counterexample() {
  const double d = kSharpDensity;
  const double eps = kSharpEps;
  int successes = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Presentation p = sample_presentation(2, kSharpEll, d, seed);
    auto built = build_counterexample(p, eps);
    if (!built) {
      continue;
    }
    ++successes;
    if (!verify_no_dehn_face(built->diagram)) {
      return {false, "a face has > ell/2 consecutive edges at seed " +
                         std::to_string(seed)};
    }
    if (greendlinger_check(built->diagram, d, eps).holds) {
      return {false, "greendlinger unexpectedly holds at seed " + std::to_string(seed)};
    }
    const double boundary = static_cast<double>(built->diagram.boundary_length());
    const double paper = 2.0 * (3.0 - 6.0 * d + 4.0 * eps) * kSharpEll - 2.0;
    if (std::abs(boundary - paper) > 6.0) {
      return {false, "boundary outside +-6 at seed " + std::to_string(seed)};
    }
  }
  if (successes == 0) {
    return {false, "search never succeeded"};
  }
  return {true, std::to_string(successes) + "/100 builds, all defeat Dehn"};
}

// 6. Greendlinger positive phase at (m=2, ell=60, d=0.10, eps=0.05)
Outcome criterion_greendlinger_positive() {
  int passes = 0;
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    Presentation p = sample_presentation(2, 60, 0.10, rng);
    GrowthResult grown = grow_random_diagram(p, 4, rng, 0.05);
    if (grown.diagram.face_count() < 2) {
      continue;
    }
    ++checked;
    if (greendlinger_check(grown.diagram, 0.10, 0.05).holds) {
      ++passes;
    }
  }
  if (passes < 90) {
    return {false, std::to_string(passes) + "/100 passed (need 90)"};
  }
  return {true, std::to_string(passes) + "/" + std::to_string(checked) + " passed"};
}

// 7. isoperimetry: zero violations across the d grid, faces <= 8, 100 trials
Outcome criterion_isoperimetry() {
  auto start = std::chrono::steady_clock::now();
  IsoperimetryExperimentConfig cfg;
  cfg.m = 2;
  cfg.ell = 60;
  cfg.densities = {0.05, 0.10, 0.15};
  cfg.faces_grid = {2, 4, 8};
  cfg.trials = 100;
  cfg.eps = 0.05;
  cfg.master_seed = 424242;
  std::string csv = run_isoperimetry_experiment(cfg, 4);
  // count violations from the summary rows
  std::istringstream lines(csv);
  std::string line;
  long violations = -1;
  long total_violations = 0;
  int summaries = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("summary,", 0) == 0) {
      ++summaries;
      auto comma = line.rfind(',');
      violations = std::stol(line.substr(comma + 1));
      total_violations += violations;
    }
  }
  const double elapsed = seconds_since(start);
  if (summaries != 9) {
    return {false, "unexpected summary count"};
  }
  if (total_violations != 0) {
    return {false, std::to_string(total_violations) + " violations"};
  }
  if (elapsed >= 600.0) {
    return {false, "too slow: " + std::to_string(elapsed) + " s"};
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "900 diagrams, zero violations, %.1f s", elapsed);
  return {true, buf};
}

// 8. Dehn algorithm on verified C'(1/6) presentations: 100/100 trivial words
//    empty, traces replay exactly, every step > ell/2 and shrinks
Outcome criterion_dehn() {
  std::vector<Presentation> verified;
  for (std::uint64_t seed = 1; seed <= 400 && verified.size() < 5; ++seed) {
    Presentation p = sample_presentation(2, 60, 0.03, seed);
    if (small_cancellation_check(p, 1, 6).holds) {
      verified.push_back(std::move(p));
    }
  }
  if (verified.size() < 5) {
    return {false, "could not collect 5 verified C'(1/6) presentations"};
  }
  int emptied = 0;
  Rng rng(31415);
  for (int i = 0; i < 100; ++i) {
    const Presentation& p = verified[static_cast<std::size_t>(i) % verified.size()];
    const int k = 1 + i % 3;
    Word w = random_trivial_word(p, k, rng);
    DehnTrace trace = dehn_reduce(w, p);
    if (!trace.final.empty()) {
      return {false, "word " + std::to_string(i) + " did not reduce to empty"};
    }
    // independent replay, threshold and strict shrinking checked inside
    try {
      if (!(test::oracle_replay(w, trace, p) == trace.final)) {
        return {false, "replay mismatch at word " + std::to_string(i)};
      }
    } catch (const std::exception& e) {
      return {false, std::string("replay rejected a step: ") + e.what()};
    }
    ++emptied;
  }
  return {true, "100/100 trivial words emptied over " +
                    std::to_string(verified.size()) + " verified presentations"};
}

// 9. exact numerics of the bounds module
Outcome criterion_bounds() {
  if (alpha(1.0 - 1.0 / std::exp(1.0)) != 1.0) {
    return {false, "alpha(1 - 1/e) != 1"};
  }
  const double deficit = 1.0 / (1.0 - std::sqrt(6.0 / 7.0));
  if (std::abs(deficit - 13.4807407) > 1e-6) {
    return {false, "geometric deficit off"};
  }
  for (double A : {10.0, 100.0, 1000.0, 10000.0, 100000.0, 1000000.0}) {
    BootstrapResult r = bootstrap_beta(0.62, A, 600);
    if (!r.lemma_bound_holds) {
      return {false, "bootstrap infimum below beta - 14/sqrt(A) at A = " +
                         std::to_string(A)};
    }
  }
  if (delta_bound(100, 0.25, 0.0) != 4800.0) {
    return {false, "delta_bound(100, 0.25, 0) != 4800"};
  }
  for (int i = 1; i <= 20; ++i) {
    const double C = std::min(1.0, i * 0.05);
    if (!side_conditions(C, min_A(C)).hold) {
      return {false, "side conditions fail at C = " + std::to_string(C)};
    }
  }
  return {true, "all exact values verified"};
}

// 10. byte-identical experiment CSVs for 1, 4 and 16 workers
Outcome criterion_determinism() {
  PieceExperimentConfig pieces;
  pieces.m = 2;
  pieces.ell = 30;
  pieces.densities = {0.05, 0.10};
  pieces.trials = 8;
  pieces.master_seed = 1001;

  IsoperimetryExperimentConfig iso;
  iso.m = 2;
  iso.ell = 30;
  iso.densities = {0.08, 0.12};
  iso.faces_grid = {3, 5};
  iso.trials = 6;
  iso.master_seed = 2002;

  GreendlingerExperimentConfig gl;
  gl.m = 2;
  gl.ell = 30;
  gl.densities = {0.10};
  gl.faces = 4;
  gl.trials = 6;
  gl.master_seed = 3003;

  const std::string p1 = run_piece_experiment(pieces, 1);
  const std::string i1 = run_isoperimetry_experiment(iso, 1);
  const std::string g1 = run_greendlinger_experiment(gl, 1);
  for (int workers : {4, 16}) {
    if (run_piece_experiment(pieces, workers) != p1 ||
        run_isoperimetry_experiment(iso, workers) != i1 ||
        run_greendlinger_experiment(gl, workers) != g1) {
      return {false, "output differs at " + std::to_string(workers) + " workers"};
    }
  }
  return {true, "identical CSVs for 1, 4, 16 workers"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"1. oracle equivalence (piece spectrum)", criterion_oracle_equivalence},
      {"2. combinatorial-map identities", criterion_map_identities},
      {"3. sharp two-face construction", criterion_two_face},
      {"4. three-face construction", criterion_three_face},
      {"5. six-face counterexample", criterion_counterexample},
      {"6. Greendlinger positive phase", criterion_greendlinger_positive},
      {"7. isoperimetry experiment", criterion_isoperimetry},
      {"8. Dehn algorithm (conditional oracle)", criterion_dehn},
      {"9. bounds numerics", criterion_bounds},
      {"10. experiment determinism", criterion_determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << c.name;
    if (!outcome.detail.empty()) {
      std::cout << " — " << outcome.detail;
    }
    std::cout << std::endl;
    failures += outcome.pass ? 0 : 1;
  }
  return failures;
}
