#pragma once

namespace bayesev {

double log_gamma(double x);
double log_beta(double a, double b);
double log_factorial(double k);

/// Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0.
///
/// Series for x < a + 1, Lentz continued fraction for Q otherwise, both to a
/// 1e-15 relative target. Returns exactly 1 once x > a + 40 sqrt(a) + 100.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// log P(a, x), accurate when P underflows.
double log_gamma_p(double a, double x);

/// log Q(a, x), accurate when Q underflows.
double log_gamma_q(double a, double x);

}  // namespace bayesev
