#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "randgroup/constructions.hpp"
#include "randgroup/dehn.hpp"
#include "support.hpp"

using namespace randgroup;

TEST_CASE("three-face boundary algebra") {
  // 2(1 - 5d/2 + 3e/2) + (1 - d + e) = 3 - 6d + 4e
  for (double d = 0.0; d <= 0.4; d += 0.01) {
    for (double e = 0.0; e <= 0.2; e += 0.01) {
      double lhs = 2.0 * (1.0 - 2.5 * d + 1.5 * e) + (1.0 - d + e);
      double rhs = 3.0 - 6.0 * d + 4.0 * e;
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("build_two_face at d = 0.25") {
  const int ell = 40;
  const double d = 0.25;
  const double eps = 0.05;
  const int t = static_cast<int>(std::ceil((2 * d - eps) * ell));
  Presentation p = sample_presentation(2, ell, d, std::uint64_t{11});
  auto built = build_two_face(p, eps);
  REQUIRE(built.has_value());
  CHECK(built->boundary_length() == 2 * ell - 2 * t);
  CHECK(validate(*built, p).valid);
  CHECK(is_reduced_diagram(*built));
  // the paper's 2(1-2d+eps) ell within rounding
  CHECK(std::abs(static_cast<double>(built->boundary_length()) -
                 2.0 * (1.0 - 2.0 * d + eps) * ell) <= 2.0);
}

TEST_CASE("build_two_face absent without a sharing pair") {
  Presentation p = sample_presentation(2, 30, 0.0, std::uint64_t{5});
  CHECK(p.size() == 1);
  CHECK_FALSE(build_two_face(p, 0.05).has_value());
}

TEST_CASE("build_three_face matches the construction numbers") {
  const int ell = 40;
  const double d = 0.25;
  const double eps = 0.05;
  Presentation p = sample_presentation(2, ell, d, std::uint64_t{11});
  auto built = build_three_face(p, eps);
  REQUIRE(built.has_value());
  const Diagram& diagram = built->diagram;
  CHECK(validate(diagram, p).valid);
  CHECK(is_reduced_diagram(diagram));
  CHECK(diagram.face_count() == 3);

  const int t = static_cast<int>(std::ceil((2 * d - eps) * ell));
  const int h = static_cast<int>(std::ceil((d - eps) * ell / 2.0));
  CHECK(built->w_length == t);
  CHECK(built->x_half == h);
  CHECK(built->retained[0] == ell - t - h);
  CHECK(built->retained[1] == ell - t - h);

  // paper formulas up to rounding
  CHECK(std::abs(static_cast<double>(diagram.boundary_length()) -
                 (3.0 - 6.0 * d + 4.0 * eps) * ell) <= 3.0);
  CHECK(std::abs(built->retained[0] - (1.0 - 2.5 * d + 1.5 * eps) * ell) <= 2.0);

  // the smallest boundary compatible with the isoperimetric theorem
  CHECK(isoperimetric_check(diagram, d, eps).holds);

  CHECK_THROWS_AS(build_three_face(sample_presentation(2, 10, 0.45, std::uint64_t{1},
                                                       std::optional<std::int64_t>{20}),
                                   eps),
                  std::invalid_argument);
}

TEST_CASE("build_counterexample at d = 0.25") {
  const int ell = 40;
  const double d = 0.25;
  const double eps = 0.05;
  Presentation p = sample_presentation(2, ell, d, std::uint64_t{11});
  auto built = build_counterexample(p, eps);
  REQUIRE(built.has_value());
  const Diagram& diagram = built->diagram;
  CHECK(diagram.face_count() == 6);
  CHECK(validate(diagram, p).valid);
  CHECK(is_reduced_diagram(diagram));

  // six pairwise distinct relators
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      CHECK(built->relators[static_cast<std::size_t>(i)] !=
            built->relators[static_cast<std::size_t>(j)]);
    }
  }

  CHECK(std::abs(static_cast<double>(diagram.boundary_length()) -
                 (2.0 * (3.0 - 6.0 * d + 4.0 * eps) * ell - 2.0)) <= 6.0);

  // no face has more than ell/2 consecutive boundary edges, and the
  // Greendlinger check fails beyond the 1/5 phase
  CHECK(verify_no_dehn_face(diagram));
  CHECK_FALSE(greendlinger_check(diagram, d, eps).holds);

  // the two joining faces are bad: their runs are split by the shared letter
  auto decomposition = bad_face_decomposition(diagram);
  auto stats = face_boundary_stats(diagram);
  CHECK(decomposition.face_class[2] == FaceClass::bad);
  CHECK(decomposition.face_class[5] == FaceClass::bad);
  CHECK(stats[2].runs == 2);
  CHECK(stats[5].runs == 2);
  // but they carry more than ell/2 boundary edges in total
  CHECK(2 * stats[2].total > ell);
  CHECK(2 * stats[5].total > ell);
}

TEST_CASE("verify_no_dehn_face basics") {
  Presentation p = sample_presentation(2, 40, 0.25, std::uint64_t{11});
  Diagram single = Diagram::single_face(p, 0);
  CHECK_FALSE(verify_no_dehn_face(single));  // run = ell > ell/2

  auto two = build_two_face(p, 0.05);
  REQUIRE(two.has_value());
  // runs are (1-2d+eps) ell > ell/2 when d < 1/4
  CHECK_FALSE(verify_no_dehn_face(*two));
}
