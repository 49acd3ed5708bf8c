#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "bayesev/core.hpp"
#include "bayesev/rng.hpp"

namespace bayesev {

double gaussian_log_pdf(double x, double mean, double sd);

/// y_i ~ N(theta, sigma_like^2) iid, theta ~ N(mu0, sigma0^2).
struct GaussianMeanModel {
  double sigma_like = 1.0;
  double mu0 = 0.0;
  double sigma0 = 1.0;

  void validate() const;
};

struct GaussianPosterior {
  double mean = 0.0;
  double sd = 0.0;
};

GaussianPosterior gaussian_mean_posterior(const GaussianMeanModel& model,
                                          std::span<const double> y);

/// Closed-form log Z. Uses the biased (1/D_y) sample variance.
EvidenceResult gaussian_mean_log_evidence(const GaussianMeanModel& model,
                                          std::span<const double> y);

/// Per-datum likelihood and Gaussian prior over theta, with integration window
/// mu0 +/- window_sds * sigma0 widened to cover the likelihood mass.
BayesModel gaussian_mean_bayes_model(const GaussianMeanModel& model, std::vector<double> y,
                                     double window_sds = 10.0);

/// y = X beta + eps, eps ~ N(0, sigma_like^2 I), beta ~ N(prior_mean, prior_cov).
struct LinRegModel {
  Eigen::MatrixXd design;
  double sigma_like = 1.0;
  Eigen::VectorXd prior_mean;
  Eigen::MatrixXd prior_cov;

  /// Independent coefficients with the given prior standard deviations and zero mean.
  static LinRegModel with_prior_sd(Eigen::MatrixXd design, double sigma_like,
                                   const Eigen::VectorXd& prior_sd);

  [[nodiscard]] Eigen::Index n_obs() const { return design.rows(); }
  [[nodiscard]] Eigen::Index n_params() const { return design.cols(); }
  void validate() const;
};

/// Exact log Z from the prior-predictive law y ~ N(X m, sigma^2 I + X S Xᵀ).
EvidenceResult linreg_log_evidence(const LinRegModel& model,
                                   const Eigen::Ref<const Eigen::VectorXd>& y);

/// Grid-ready BayesModel for at most three coefficients (quadrature oracle).
BayesModel linreg_bayes_model(const LinRegModel& model, const Eigen::VectorXd& y,
                              double window_sds = 10.0);

/// Prior expectation of w = betaᵀXᵀX beta / (D_y sigma_like^2):
/// tr(XᵀX S) / (D_y sigma^2) + mᵀXᵀX m / (D_y sigma^2).
double prior_expected_snr(const LinRegModel& model);

/// Seeded Monte Carlo mean of R^2 = (1 + 1/w)^-1 under the prior. Always in [0, 1].
double prior_expected_r2(const LinRegModel& model, std::size_t n_samples, Rng rng);

struct GaussianPrior {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

/// Unit-information prior N(mu, D_y sigma^2 (XᵀX)^-1).
GaussianPrior uip_prior(const LinRegModel& model, const Eigen::VectorXd& mu);

/// Unit-information prior for the Gaussian mean: N(mu, sigma_like^2).
GaussianMeanModel uip_prior(const GaussianMeanModel& model, double mu);

LinRegModel with_prior(LinRegModel model, const GaussianPrior& prior);

}  // namespace bayesev
