#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "randgroup/bounds.hpp"
#include "randgroup/rng.hpp"

using namespace randgroup;
using Real50 = boost::multiprecision::cpp_bin_float_50;

namespace {

double rel_err(double value, const Real50& reference) {
  Real50 diff = Real50(value) - reference;
  if (reference == 0) {
    return std::abs(static_cast<double>(diff));
  }
  return std::abs(static_cast<double>(diff / reference));
}

Real50 alpha50(const Real50& C) { return 1 / log(1 / (1 - C)); }

}  // namespace

TEST_CASE("alpha against the 50-digit reference") {
  CHECK(alpha(1.0 - 1.0 / std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rel_err(alpha(0.5), alpha50(Real50("0.5"))) < 1e-12);
  CHECK(alpha(0.5) == doctest::Approx(1.4426950408889634).epsilon(1e-12));

  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    double C = 1e-3 + 0.998 * rng.unit();
    double a = alpha(C);
    CHECK(a <= 1.0 / C + 1e-12);
    CHECK(rel_err(a, alpha50(Real50(C))) < 1e-12);
  }
  CHECK_THROWS_AS(alpha(1.0), std::invalid_argument);
  CHECK_THROWS_AS(alpha(0.0), std::invalid_argument);
}

TEST_CASE("min_K and min_A") {
  CHECK(min_K(1.0) == 3000.0);
  CHECK(min_A(1.0) == 3000.0);
  CHECK(min_K(0.5) == doctest::Approx(96000.0).epsilon(1e-14));
  CHECK(rel_err(min_K(0.3), Real50(3000) / pow(Real50("0.3"), 5)) < 1e-12);
  CHECK(rel_err(min_A(0.3), Real50(3000) / pow(Real50("0.3"), 4)) < 1e-12);
}

TEST_CASE("side conditions hold at A = 3000/C^4 across the C grid") {
  for (int i = 1; i <= 20; ++i) {
    const double C = std::min(1.0, i * 0.05);
    auto report = side_conditions(C, min_A(C));
    CHECK(report.hold);
  }
}

TEST_CASE("bootstrap recursion") {
  // geometric deficit 1/(1 - sqrt(6/7)) = 13.4807... < 14
  const Real50 deficit50 = 1 / (1 - sqrt(Real50(6) / 7));
  CHECK(static_cast<double>(deficit50) == doctest::Approx(13.4807407).epsilon(1e-6));
  CHECK(static_cast<double>(deficit50) < 14.0);

  for (double A : {10.0, 100.0, 1000.0, 10000.0, 100000.0, 1000000.0}) {
    BootstrapResult r = bootstrap_beta(0.5, A, 400);
    // computed infimum vs the analytic limit deficit
    CHECK(std::abs((0.5 - 1.0 / std::sqrt(A) -
                    (r.analytic_deficit - 1.0 / std::sqrt(A))) -
                   r.inf_lemma) < 1e-9);
    CHECK(r.lemma_bound_holds);
    CHECK(r.inf_lemma >= 0.5 - 14.0 / std::sqrt(A));
    // the paper-display indexing overshoots 14/sqrt(A): the documented
    // discrepancy, reported rather than silently resolved
    CHECK(r.inf_paper < 0.5 - 14.0 / std::sqrt(A));
    CHECK(rel_err(r.analytic_deficit,
                  deficit50 / sqrt(Real50(A))) < 1e-12);
  }

  // deficit vanishes as A grows
  CHECK(bootstrap_beta(0.5, 1e12, 100).analytic_deficit < 2e-5);
}

TEST_CASE("delta_bound") {
  CHECK(delta_bound(100, 0.25, 0.0) == doctest::Approx(4800.0).epsilon(1e-14));
  CHECK(delta_bound(100, 0.0, 0.0) == doctest::Approx(1200.0).epsilon(1e-14));
  CHECK(rel_err(delta_bound(73, 0.21, 0.03),
                Real50(12 * 73) / pow(1 - 2 * Real50("0.21") - Real50("0.03"), 2)) <
        1e-12);
  // monotone increasing in d below the phase line
  double prev = 0.0;
  for (double d = 0.0; d < 0.45; d += 0.01) {
    double v = delta_bound(100, d, 0.0);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(delta_bound(100, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("greendlinger thresholds") {
  CHECK(greendlinger_threshold(100, 0.2, 0.0).consecutive == doctest::Approx(50.0));
  CHECK(greendlinger_threshold(100, 0.1, 0.0).consecutive == doctest::Approx(75.0));
  for (double d = 0.0; d <= 0.4; d += 0.05) {
    auto t = greendlinger_threshold(60, d, 0.0);
    // ell/2 + (ell/2)(1-5d) = ell(1-5d/2) exactly
    CHECK(t.consecutive == doctest::Approx(t.total).epsilon(1e-14));
  }
}

TEST_CASE("counterexample margin") {
  auto margin = counterexample_margin(1000, 0.25, 0.001, 0.001);
  CHECK(margin.contradiction);
  CHECK(margin.six_face_boundary == doctest::Approx(6 * 0.5 * 1000 + 8 - 2));
  CHECK(margin.required == doctest::Approx(7 * 0.499 * 1000));

  // as the slacks vanish the margin approaches (1-2d) ell + 2
  for (double d : {0.1, 0.25, 0.35, 0.45}) {
    auto m = counterexample_margin(1000, d, 1e-9, 1e-9);
    CHECK(m.margin == doctest::Approx((1 - 2 * d) * 1000 + 2).epsilon(1e-5));
    CHECK(m.contradiction);
  }

  // eps_star is the sign change: evaluating there gives margin ~ 0
  auto at_star = counterexample_margin(1000, 0.25, margin.eps_star, 0.001);
  CHECK(std::abs(at_star.margin) < 1e-6);
  auto above = counterexample_margin(1000, 0.25, margin.eps_star + 0.01, 0.001);
  CHECK_FALSE(above.contradiction);
}
