#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "bayesev/core.hpp"
#include "bayesev/quadrature.hpp"

namespace bayesev {

/// Baseline prior g_base = exp(shape(theta) + log_constant), possibly improper.
///
/// The constant is carried separately from the shape so that ratios of integrals
/// cancel it by exact subtraction of equal numbers.
struct BaselinePrior {
  LogDensity shape;  // empty means flat
  double log_constant = 0.0;

  static BaselinePrior flat(double log_constant = 0.0);
  /// The model's own prior (flat if the model has none).
  static BaselinePrior from_model(const BayesModel& model);

  [[nodiscard]] double log_shape(std::span<const double> theta) const;
};

/// log of an integral split as shape + log_constant.
struct LogIntegral {
  double shape = kNegInf;
  double log_constant = 0.0;

  [[nodiscard]] double value() const { return shape + log_constant; }
};

/// log(num / den). The shape and constant parts are differenced separately.
double log_ratio(const LogIntegral& num, const LogIntegral& den);

/// Evaluates weighted likelihood integrals
///   log of the integral of prod_i l(y_i | theta)^{w_i} g_base(theta) dtheta
/// for a conditionally independent model. A zero weight drops the datum.
class LikelihoodIntegrator {
 public:
  virtual ~LikelihoodIntegrator() = default;

  [[nodiscard]] virtual LogIntegral log_integral(std::span<const double> weights) const = 0;
  [[nodiscard]] virtual std::size_t n_data() const = 0;
  [[nodiscard]] virtual const BaselinePrior& baseline() const = 0;
  /// Pointwise log l(y_i | theta) summed over `indices`, for prior-density evaluation.
  [[nodiscard]] virtual double log_like(std::span<const double> theta,
                                        std::span<const std::size_t> indices) const = 0;
  [[nodiscard]] virtual std::optional<std::size_t> grid_points_per_dim() const {
    return std::nullopt;
  }
  [[nodiscard]] virtual std::string truncation_note() const { return {}; }
};

/// Grid backend over any BayesModel. Caches the node-by-datum log-likelihood
/// table when it fits in `cache_limit` doubles.
class GridIntegrator final : public LikelihoodIntegrator {
 public:
  GridIntegrator(BayesModel model, GridSpec grid, BaselinePrior baseline = BaselinePrior::flat(),
                 std::size_t cache_limit = 20'000'000);

  [[nodiscard]] LogIntegral log_integral(std::span<const double> weights) const override;
  [[nodiscard]] std::size_t n_data() const override { return model_.n_data; }
  [[nodiscard]] const BaselinePrior& baseline() const override { return baseline_; }
  [[nodiscard]] double log_like(std::span<const double> theta,
                                std::span<const std::size_t> indices) const override;
  [[nodiscard]] std::optional<std::size_t> grid_points_per_dim() const override;
  [[nodiscard]] std::string truncation_note() const override {
    return model_.space.truncation_note;
  }

  [[nodiscard]] const BayesModel& model() const { return model_; }
  [[nodiscard]] const GridSpec& grid() const { return grid_; }

 private:
  BayesModel model_;
  GridSpec grid_;
  BaselinePrior baseline_;
  std::vector<double> node_log_base_;  // log weight + baseline shape per node
  std::vector<double> table_;          // node-major log l(y_i | theta_node), empty if not cached
};

std::vector<double> uniform_weights(std::size_t n, double w);
/// Weight w on `indices`, 0 elsewhere.
std::vector<double> index_weights(std::size_t n, std::span<const std::size_t> indices, double w);

struct DataPartition {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;

  /// train = given indices, test = the rest of 0..n-1.
  static DataPartition from_train(std::size_t n, std::vector<std::size_t> train);
  void validate(std::size_t n) const;
};

struct TemperedPriorSpec {
  double beta = 1.0;
  BaselinePrior base = BaselinePrior::flat();

  void validate() const;
};

struct HyperPriorSpec {
  std::vector<double> grid;                 // strictly increasing
  std::function<double(double)> log_prior;  // empty means flat over the grid window
};

/// Z = int l^2 / int l.
EvidenceResult idea1_evidence(const LikelihoodIntegrator& integ);

/// Z = int l^(beta+1) / int l^beta. beta defaults to 1/D_y.
EvidenceResult tempered_evidence(const LikelihoodIntegrator& integ,
                                 std::optional<double> beta = std::nullopt);

/// Z = int l(y) l(y_prior) / int l(y_prior): the full likelihood under a prior
/// built from the observations in `prior_indices`. All indices gives idea1.
EvidenceResult likelihood_prior_evidence(const LikelihoodIntegrator& integ,
                                         std::span<const std::size_t> prior_indices);

/// Z = S / S_train.
EvidenceResult subset_prior_evidence(const LikelihoodIntegrator& integ,
                                     const DataPartition& partition);

/// Same quantity through the explicit route int l(test) l(train) / S_train.
EvidenceResult subset_prior_evidence_explicit(const LikelihoodIntegrator& integ,
                                              const DataPartition& partition);

/// Mean over partitions of S / S_train, averaged in linear space.
EvidenceResult averaged_subset_evidence(const LikelihoodIntegrator& integ,
                                        std::span<const DataPartition> partitions);

BayesFactorReport partial_bf(const LikelihoodIntegrator& integ1,
                             const LikelihoodIntegrator& integ2,
                             std::span<const std::size_t> train);

/// Z = int l g_base / int l^beta g_base. beta defaults to 1/D_y.
EvidenceResult fractional_evidence(const LikelihoodIntegrator& integ,
                                   std::optional<double> beta = std::nullopt);

BayesFactorReport fractional_bf(const LikelihoodIntegrator& integ1,
                                const LikelihoodIntegrator& integ2,
                                std::optional<double> beta = std::nullopt);

/// Unnormalized beta * log l(y* | theta) + base(theta); `sim` holds y*.
double power_prior_log(std::span<const double> theta, const LikelihoodIntegrator& sim,
                       double beta);

/// log of the mean over draws of the normalized power prior at theta.
/// Each draw is an integrator holding one simulated dataset y*.
double expected_posterior_prior_log(std::span<const double> theta,
                                    std::span<const LikelihoodIntegrator* const> draws,
                                    double beta);

/// log p(y_eval | y_cond) = log int l(y_eval) l(y_cond) g / int l(y_cond) g.
double posterior_predictive_log(const LikelihoodIntegrator& integ,
                                std::span<const std::size_t> cond,
                                std::span<const std::size_t> eval);

struct EmpiricalBayesResult {
  double nu_star = 0.0;
  std::size_t index = 0;
  EvidenceResult evidence;
};

/// Grid argmax of Z(nu). Ties go to the smallest grid index.
EmpiricalBayesResult empirical_bayes(std::span<const double> nu_grid,
                                     const std::function<EvidenceResult(double)>& evidence_of);

/// log int Z(nu) g_h(nu) dnu by the trapezoid rule over the hyper grid, with the
/// hyperprior renormalized over the same nodes. A single node acts as a point mass.
EvidenceResult hierarchical_evidence(const HyperPriorSpec& hyper,
                                     const std::function<EvidenceResult(double)>& evidence_of);

/// Same, from precomputed log Z(nu_k) on the hyper grid.
EvidenceResult hierarchical_evidence(const HyperPriorSpec& hyper, std::span<const double> log_zs);

}  // namespace bayesev
