#pragma once

#include <vector>

namespace randgroup {

// alpha = 1/log(1/(1-C)) of the narrowness lemma; satisfies alpha <= 1/C.
// Defined for 0 < C < 1.
double alpha(double C);

// Face budget 3000/C^5 of the local-global proposition.
double min_K(double C);

// Size scale 3000/C^4 of the local-global step lemma.
double min_A(double C);

struct SideConditionReport {
  double A = 0.0;
  double log_term = 0.0;  // log(7A/6C)
  bool narrow_ok = false;  // 2 alpha log(7A/6C) <= A/8
  bool sqrt_ok = false;    // 4 alpha log(7A/6C) <= sqrt(A)
  bool hold = false;
};

// Checks the step lemma's side conditions at the given A (typically min_A(C)).
SideConditionReport side_conditions(double C, double A);

struct BootstrapResult {
  // paper indexing: beta_0 = beta - 1/sqrt(A), beta_{k+1} = beta_k - 1/sqrt(A (7/6)^k)
  std::vector<double> beta_paper;
  // lemma-scale indexing: the k-th step pays 1/sqrt(A (7/6)^k), the initial
  // 1/sqrt(A) being the k = 0 step
  std::vector<double> beta_lemma;
  double inf_paper = 0.0;
  double inf_lemma = 0.0;
  // limit deficit sum_{j>=0} (6/7)^{j/2} / sqrt(A) = (1/(1-sqrt(6/7))) / sqrt(A)
  double analytic_deficit = 0.0;
  // inf_lemma >= beta - 14/sqrt(A)
  bool lemma_bound_holds = false;
};

// The isoperimetric-constant bootstrap recursion, computed under both
// indexings (the paper's display sums to ~14.48/sqrt(A), the lemma-scale one
// to ~13.48/sqrt(A), which is the reading that makes the stated 14/sqrt(A)
// bound true).
BootstrapResult bootstrap_beta(double beta, double A, int k_max);

// Hyperbolicity constant bound 12 ell / (1 - 2d - eps)^2; requires
// 1 - 2d - eps > 0.
double delta_bound(int ell, double d, double eps);

struct GreendlingerThresholds {
  double consecutive = 0.0;  // ell/2 + (ell/2)(1 - 5d - eps)
  double total = 0.0;        // ell (1 - 5d/2 - eps)
};

GreendlingerThresholds greendlinger_threshold(int ell, double d, double eps);

struct CounterexampleMargin {
  double six_face_boundary = 0.0;  // 6(1-2d) ell + 8 eps ell - 2
  double required = 0.0;           // 7(1-2d-eps') ell
  double margin = 0.0;             // required - six_face_boundary
  bool contradiction = false;      // margin > 0: the r4 extension is impossible
  double eps_star = 0.0;           // eps with margin exactly 0 at fixed d, eps'
};

// The numeric contradiction closing the d > 1/5 counterexample: a 7-face
// extension would need boundary below the 6-face diagram's but at least
// 7(1-2d-eps') ell.
CounterexampleMargin counterexample_margin(int ell, double d, double eps,
                                           double eps_prime);

}  // namespace randgroup
