#include "bayesev/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace bayesev {

double check_not_nan(double value, const char* what) {
  if (std::isnan(value)) {
    throw NumericalError(std::string("NaN produced by ") + what);
  }
  return value;
}

ParamSpace ParamSpace::box(std::vector<Interval> bounds) {
  ParamSpace space;
  space.support = bounds;
  space.window = std::move(bounds);
  space.validate();
  return space;
}

ParamSpace ParamSpace::truncated(std::vector<Interval> support, std::vector<Interval> window,
                                 std::string note) {
  ParamSpace space{std::move(support), std::move(window), std::move(note)};
  space.validate();
  return space;
}

void ParamSpace::validate() const {
  if (support.empty()) {
    throw UsageError("parameter space needs at least one dimension");
  }
  if (window.size() != support.size()) {
    throw UsageError("integration window must have one interval per dimension");
  }
  for (std::size_t d = 0; d < support.size(); ++d) {
    if (!(support[d].lower < support[d].upper)) {
      throw UsageError("support lower bound must be below upper bound in dimension " +
                       std::to_string(d));
    }
    if (!window[d].is_finite() || !(window[d].lower < window[d].upper)) {
      throw UsageError("integration window must be finite and non-empty in dimension " +
                       std::to_string(d));
    }
    if (!support[d].contains(window[d])) {
      throw UsageError("integration window leaves the support in dimension " +
                       std::to_string(d));
    }
  }
}

double BayesModel::log_like(std::span<const double> theta) const {
  double total = 0.0;
  for (std::size_t i = 0; i < n_data; ++i) {
    const double v = check_not_nan(point_log_like(theta, i), "log-likelihood");
    if (v == kNegInf) {
      return kNegInf;
    }
    total += v;
  }
  return total;
}

double BayesModel::log_like(std::span<const double> theta,
                            std::span<const std::size_t> indices) const {
  if (!conditionally_independent && indices.size() != n_data) {
    throw UsageError("data-subset likelihood requires a conditionally independent model");
  }
  double total = 0.0;
  for (const std::size_t i : indices) {
    if (i >= n_data) {
      throw UsageError("data index out of range");
    }
    const double v = check_not_nan(point_log_like(theta, i), "log-likelihood");
    if (v == kNegInf) {
      return kNegInf;
    }
    total += v;
  }
  return total;
}

double BayesModel::log_prior_at(std::span<const double> theta) const {
  if (!log_prior) {
    return 0.0;
  }
  return check_not_nan(log_prior(theta), "log-prior");
}

std::string to_string(EvidenceMethod method) {
  switch (method) {
    case EvidenceMethod::closed_form:
      return "closed_form";
    case EvidenceMethod::grid:
      return "grid";
    case EvidenceMethod::hierarchical:
      return "hierarchical";
    case EvidenceMethod::fractional:
      return "fractional";
    case EvidenceMethod::partial:
      return "partial";
  }
  return "unknown";
}

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) {
    throw UsageError("log_sum_exp of an empty sequence");
  }
  double max = kNegInf;
  for (const double v : values) {
    check_not_nan(v, "log_sum_exp input");
    max = std::max(max, v);
  }
  if (max == kNegInf || max == kInf) {
    return max;
  }
  double sum = 0.0;
  double comp = 0.0;
  for (const double v : values) {
    const double t = std::exp(v - max);
    const double s = sum + t;
    comp += (std::abs(sum) >= std::abs(t)) ? (sum - s) + t : (t - s) + sum;
    sum = s;
  }
  return max + std::log(sum + comp);
}

double log_add_exp(double a, double b) {
  check_not_nan(a, "log_add_exp input");
  check_not_nan(b, "log_add_exp input");
  if (a < b) {
    std::swap(a, b);
  }
  if (b == kNegInf || a == kInf) {
    return a;
  }
  return a + std::log1p(std::exp(b - a));
}

void LogSumAccumulator::add(double value) {
  check_not_nan(value, "log-sum accumulator input");
  ++count_;
  if (value == kNegInf) {
    return;
  }
  if (value > max_) {
    if (value == kInf) {
      max_ = kInf;
      return;
    }
    const double scale = (max_ == kNegInf) ? 0.0 : std::exp(max_ - value);
    sum_ *= scale;
    comp_ *= scale;
    max_ = value;
    const double s = sum_ + 1.0;
    comp_ += (std::abs(sum_) >= 1.0) ? (sum_ - s) + 1.0 : (1.0 - s) + sum_;
    sum_ = s;
    return;
  }
  if (max_ == kInf) {
    return;
  }
  const double t = std::exp(value - max_);
  const double s = sum_ + t;
  comp_ += (std::abs(sum_) >= std::abs(t)) ? (sum_ - s) + t : (t - s) + sum_;
  sum_ = s;
}

void LogSumAccumulator::merge(const LogSumAccumulator& other) {
  if (other.max_ == kNegInf) {
    count_ += other.count_;
    return;
  }
  const std::size_t n = count_ + other.count_;
  if (other.max_ > max_) {
    LogSumAccumulator merged = other;
    merged.merge(*this);
    *this = merged;
    count_ = n;
    return;
  }
  if (max_ == kInf) {
    count_ = n;
    return;
  }
  const double scale = std::exp(other.max_ - max_);
  const double t = (other.sum_ + other.comp_) * scale;
  const double s = sum_ + t;
  comp_ += (std::abs(sum_) >= std::abs(t)) ? (sum_ - s) + t : (t - s) + sum_;
  sum_ = s;
  count_ = n;
}

double LogSumAccumulator::value() const {
  if (max_ == kNegInf || max_ == kInf) {
    return max_;
  }
  return max_ + std::log(sum_ + comp_);
}

std::vector<double> posterior_model_probs(std::span<const double> log_zs,
                                          std::span<const double> model_priors) {
  if (log_zs.empty()) {
    throw UsageError("posterior_model_probs needs at least one model");
  }
  if (log_zs.size() != model_priors.size()) {
    throw UsageError("log-evidences and model priors differ in length");
  }
  double prior_total = 0.0;
  for (const double p : model_priors) {
    if (!(p >= 0.0)) {
      throw UsageError("model prior probabilities must be non-negative");
    }
    prior_total += p;
  }
  if (std::abs(prior_total - 1.0) > 1e-12) {
    throw UsageError("model prior probabilities must sum to 1");
  }
  std::vector<double> weighted(log_zs.size());
  for (std::size_t m = 0; m < log_zs.size(); ++m) {
    check_not_nan(log_zs[m], "posterior_model_probs log-evidence");
    weighted[m] = (model_priors[m] == 0.0) ? kNegInf : std::log(model_priors[m]) + log_zs[m];
  }
  const double norm = log_sum_exp(weighted);
  if (!std::isfinite(norm)) {
    throw NumericalError("posterior model probabilities are undefined (all evidences zero)");
  }
  std::vector<double> probs(weighted.size());
  std::transform(weighted.begin(), weighted.end(), probs.begin(),
                 [norm](double w) { return std::exp(w - norm); });
  return probs;
}

BayesFactorReport bayes_factor(const EvidenceResult& num, const EvidenceResult& den,
                               std::string recipe) {
  if (!std::isfinite(num.log_z) || !std::isfinite(den.log_z)) {
    throw NumericalError("Bayes factor needs finite log-evidences");
  }
  return {num.log_z, den.log_z, num.log_z - den.log_z, std::move(recipe)};
}

}  // namespace bayesev
