#include "bayesev/special.hpp"

#include <cmath>
#include <limits>

#include "bayesev/core.hpp"

namespace bayesev {

namespace {

constexpr double kEps = 1e-15;
constexpr int kMaxTerms = 10000;
constexpr double kTiny = 1e-300;

bool saturated(double a, double x) { return x > a + 40.0 * std::sqrt(a) + 100.0; }

// log of the series sum in P(a,x) = exp(-x + a log x - lgamma(a)) * sum.
double log_series(double a, double x) {
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int n = 0; n < kMaxTerms; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * kEps) {
      return std::log(sum);
    }
  }
  throw NumericalError("incomplete gamma series did not converge");
}

// log of the continued fraction h in Q(a,x) = exp(-x + a log x - lgamma(a)) * h.
double log_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) {
      d = kTiny;
    }
    c = b + an / c;
    if (std::abs(c) < kTiny) {
      c = kTiny;
    }
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) {
      return std::log(h);
    }
  }
  throw NumericalError("incomplete gamma continued fraction did not converge");
}

void check_args(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) {
    throw UsageError("incomplete gamma needs a > 0 and x >= 0");
  }
}

double log_prefactor(double a, double x) { return -x + a * std::log(x) - std::lgamma(a); }

}  // namespace

double log_gamma(double x) { return std::lgamma(x); }

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw UsageError("log_beta needs positive arguments");
  }
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double log_factorial(double k) {
  if (!(k >= 0.0)) {
    throw UsageError("log_factorial needs k >= 0");
  }
  return std::lgamma(k + 1.0);
}

double log_gamma_p(double a, double x) {
  check_args(a, x);
  if (x == 0.0) {
    return kNegInf;
  }
  if (saturated(a, x)) {
    return 0.0;
  }
  if (x < a + 1.0) {
    return log_prefactor(a, x) + log_series(a, x);
  }
  const double q = std::exp(log_prefactor(a, x) + log_continued_fraction(a, x));
  return std::log1p(-q);
}

double log_gamma_q(double a, double x) {
  check_args(a, x);
  if (x == 0.0) {
    return 0.0;
  }
  if (x < a + 1.0) {
    const double p = std::exp(log_prefactor(a, x) + log_series(a, x));
    return std::log1p(-p);
  }
  return log_prefactor(a, x) + log_continued_fraction(a, x);
}

double gamma_p(double a, double x) { return std::exp(log_gamma_p(a, x)); }

double gamma_q(double a, double x) {
  check_args(a, x);
  if (saturated(a, x)) {
    return 0.0;
  }
  return std::exp(log_gamma_q(a, x));
}

}  // namespace bayesev
