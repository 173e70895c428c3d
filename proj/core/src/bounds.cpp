#include "randgroup/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace randgroup {

double alpha(double C) {
  if (C <= 0.0 || C >= 1.0) {
    throw std::invalid_argument("alpha: defined for 0 < C < 1");
  }
  const double a = 1.0 / std::log(1.0 / (1.0 - C));
  if (a > 1.0 / C + 1e-12) {
    throw std::logic_error("alpha: bound alpha <= 1/C violated");
  }
  return a;
}

double min_K(double C) {
  if (C <= 0.0 || C > 1.0) {
    throw std::invalid_argument("min_K: C must lie in (0, 1]");
  }
  return 3000.0 / std::pow(C, 5);
}

double min_A(double C) {
  if (C <= 0.0 || C > 1.0) {
    throw std::invalid_argument("min_A: C must lie in (0, 1]");
  }
  return 3000.0 / std::pow(C, 4);
}

SideConditionReport side_conditions(double C, double A) {
  if (C <= 0.0 || C > 1.0) {
    throw std::invalid_argument("side_conditions: C must lie in (0, 1]");
  }
  if (A <= 0.0) {
    throw std::invalid_argument("side_conditions: A must be positive");
  }
  const double a = C == 1.0 ? 0.0 : alpha(C);
  SideConditionReport report;
  report.A = A;
  report.log_term = std::log(7.0 * A / (6.0 * C));
  report.narrow_ok = 2.0 * a * report.log_term <= A / 8.0;
  report.sqrt_ok = 4.0 * a * report.log_term <= std::sqrt(A);
  report.hold = report.narrow_ok && report.sqrt_ok;
  return report;
}

BootstrapResult bootstrap_beta(double beta, double A, int k_max) {
  if (A <= 0.0) {
    throw std::invalid_argument("bootstrap_beta: A must be positive");
  }
  if (k_max < 0) {
    throw std::invalid_argument("bootstrap_beta: k_max must be >= 0");
  }
  BootstrapResult out;
  out.beta_paper.reserve(static_cast<std::size_t>(k_max) + 1);
  out.beta_lemma.reserve(static_cast<std::size_t>(k_max) + 1);
  double paper = beta - 1.0 / std::sqrt(A);
  double lemma = beta - 1.0 / std::sqrt(A);
  out.beta_paper.push_back(paper);
  out.beta_lemma.push_back(lemma);
  for (int k = 0; k < k_max; ++k) {
    paper -= 1.0 / std::sqrt(A * std::pow(7.0 / 6.0, k));
    lemma -= 1.0 / std::sqrt(A * std::pow(7.0 / 6.0, k + 1));
    out.beta_paper.push_back(paper);
    out.beta_lemma.push_back(lemma);
  }
  out.inf_paper = *std::min_element(out.beta_paper.begin(), out.beta_paper.end());
  out.inf_lemma = *std::min_element(out.beta_lemma.begin(), out.beta_lemma.end());
  out.analytic_deficit = (1.0 / (1.0 - std::sqrt(6.0 / 7.0))) / std::sqrt(A);
  out.lemma_bound_holds = out.inf_lemma >= beta - 14.0 / std::sqrt(A);
  return out;
}

double delta_bound(int ell, double d, double eps) {
  const double denom = 1.0 - 2.0 * d - eps;
  if (denom <= 0.0) {
    throw std::invalid_argument("delta_bound: requires 1 - 2d - eps > 0");
  }
  return 12.0 * static_cast<double>(ell) / (denom * denom);
}

GreendlingerThresholds greendlinger_threshold(int ell, double d, double eps) {
  GreendlingerThresholds t;
  const double l = static_cast<double>(ell);
  t.consecutive = l / 2.0 + (l / 2.0) * (1.0 - 5.0 * d - eps);
  t.total = l * (1.0 - 2.5 * d - eps);
  return t;
}

CounterexampleMargin counterexample_margin(int ell, double d, double eps,
                                           double eps_prime) {
  if (d <= 0.0) {
    throw std::invalid_argument("counterexample_margin: d must be positive");
  }
  CounterexampleMargin out;
  const double l = static_cast<double>(ell);
  out.six_face_boundary = 6.0 * (1.0 - 2.0 * d) * l + 8.0 * eps * l - 2.0;
  out.required = 7.0 * (1.0 - 2.0 * d - eps_prime) * l;
  out.margin = out.required - out.six_face_boundary;
  out.contradiction = out.margin > 0.0;
  // margin = 0 at 8 eps* l = 7(1-2d-eps') l - 6(1-2d) l + 2
  out.eps_star = ((1.0 - 2.0 * d) - 7.0 * eps_prime + 2.0 / l) / 8.0;
  return out;
}

}  // namespace randgroup
