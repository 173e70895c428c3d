#pragma once

#include <array>
#include <optional>

#include "randgroup/diagram.hpp"
#include "randgroup/pieces.hpp"
#include "randgroup/presentation.hpp"

namespace randgroup {

// The sharp 2-face witness: two relators glued along a piece of exactly
// ceil((2d - eps) ell) letters, giving boundary 2 ell - 2 t. Absent when no
// pair shares enough.
std::optional<Diagram> build_two_face(const Presentation& p, double eps);

struct ThreeFaceResult {
  Diagram diagram;
  std::array<int, 3> relators;   // r1, r2, r3 indices
  int w_length = 0;              // r1/r2 gluing length
  int x_half = 0;                // edges of x on each side of the w-gluing
  std::array<int, 2> retained;   // boundary edges kept by r1 and r2
};

// The 3-face block of the d > 1/5 construction: r1 and r2 glued along w, a
// third relator glued over a boundary subword x straddling the w-gluing with
// ceil((d - eps) ell / 2) edges on each side. Requires d < 2/5.
std::optional<ThreeFaceResult> build_three_face(const Presentation& p, double eps);

struct CounterexampleResult {
  Diagram diagram;
  std::array<int, 6> relators;
};

// Two disjoint 3-face blocks joined at a single shared letter inside the
// floor(ell/5) region of r3/r3' opposite their x-gluing: six faces, boundary
// 2(3 - 6d + 4 eps) ell - 2 up to rounding. Absent when two independent
// triples or the joining letter cannot be found.
std::optional<CounterexampleResult> build_counterexample(const Presentation& p,
                                                         double eps);

// True iff no face carries more than ell/2 consecutive boundary edges.
bool verify_no_dehn_face(const Diagram& d);

}  // namespace randgroup
