#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bayesev {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kLogTwoPi = 1.8378770664093454835606594728112;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke a precondition (bad shapes, out-of-range parameters, empty input).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A computation produced NaN, diverged, or otherwise cannot return a number.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Throws NumericalError if `value` is NaN. -inf is the zero-density sentinel and passes.
double check_not_nan(double value, const char* what);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  [[nodiscard]] double width() const { return upper - lower; }
  [[nodiscard]] bool is_finite() const { return std::isfinite(lower) && std::isfinite(upper); }
  [[nodiscard]] bool contains(const Interval& other) const {
    return other.lower >= lower && other.upper <= upper;
  }
};

/// Parameter space: declared support per dimension plus a finite integration window.
///
/// Infinite support is legal; integration always happens over `window`, and
/// `truncation_note` records why the mass outside the window is negligible.
struct ParamSpace {
  std::vector<Interval> support;
  std::vector<Interval> window;
  std::string truncation_note;

  /// Finite box used both as support and as integration window.
  static ParamSpace box(std::vector<Interval> bounds);
  static ParamSpace truncated(std::vector<Interval> support, std::vector<Interval> window,
                              std::string note);

  [[nodiscard]] std::size_t dims() const { return support.size(); }
  void validate() const;
};

using LogDensity = std::function<double(std::span<const double> theta)>;
using PointLogLike = std::function<double(std::span<const double> theta, std::size_t index)>;

/// Likelihood plus prior over a parameter space.
///
/// The likelihood is stored per datum: `point_log_like(theta, i)` is log l(y_i | theta)
/// and the full log-likelihood is the sum over i. Models whose data are not
/// conditionally independent given theta set `conditionally_independent = false`,
/// which disables every data-subset operation.
struct BayesModel {
  ParamSpace space;
  std::size_t n_data = 0;
  PointLogLike point_log_like;
  LogDensity log_prior;  // empty means flat (log 0)
  bool prior_is_proper = false;
  bool prior_log_norm_known = false;
  bool conditionally_independent = true;

  [[nodiscard]] double log_like(std::span<const double> theta) const;
  [[nodiscard]] double log_like(std::span<const double> theta,
                                std::span<const std::size_t> indices) const;
  [[nodiscard]] double log_prior_at(std::span<const double> theta) const;
};

enum class EvidenceMethod { closed_form, grid, hierarchical, fractional, partial };

std::string to_string(EvidenceMethod method);

struct EvidenceResult {
  double log_z = kNegInf;
  EvidenceMethod method = EvidenceMethod::closed_form;
  std::optional<std::size_t> grid_points_per_dim;
  std::string truncation_note;
  // Likelihood extrema over the evaluated nodes, when the method visits a grid.
  std::optional<double> log_like_min;
  std::optional<double> log_like_max;
};

struct BayesFactorReport {
  double log_z_num = 0.0;
  double log_z_den = 0.0;
  double log_bf = 0.0;
  std::string recipe;
};

/// log(sum(exp(values))) with max-shift. -inf iff every input is -inf.
double log_sum_exp(std::span<const double> values);
double log_add_exp(double a, double b);

/// Streaming log-sum-exp with a fixed, insertion-ordered reduction and
/// compensated summation. Used by the grid integrators so that millions of
/// nodes never need to be stored.
class LogSumAccumulator {
 public:
  void add(double value);
  void merge(const LogSumAccumulator& other);
  [[nodiscard]] double value() const;
  [[nodiscard]] std::size_t count() const { return count_; }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;   // sum of exp(v - max_)
  double comp_ = 0.0;  // Neumaier compensation
  std::size_t count_ = 0;
};

/// Posterior model probabilities p(M_m | y) from log-evidences and prior model probabilities.
std::vector<double> posterior_model_probs(std::span<const double> log_zs,
                                          std::span<const double> model_priors);

BayesFactorReport bayes_factor(const EvidenceResult& num, const EvidenceResult& den,
                               std::string recipe);

}  // namespace bayesev
