#include "bayesev/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <fmt/format.h>

namespace bayesev {

double gaussian_log_pdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return -0.5 * kLogTwoPi - std::log(sd) - 0.5 * z * z;
}

void GaussianMeanModel::validate() const {
  if (!(sigma_like > 0.0) || !(sigma0 > 0.0)) {
    throw UsageError("Gaussian mean model needs sigma_like > 0 and sigma0 > 0");
  }
}

namespace {

struct SampleMoments {
  double mean = 0.0;
  double var = 0.0;  // biased, 1/D_y
};

SampleMoments moments(std::span<const double> y) {
  if (y.empty()) {
    throw UsageError("Gaussian mean model needs at least one observation");
  }
  const double n = static_cast<double>(y.size());
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double ss = 0.0;
  for (const double v : y) {
    ss += (v - mean) * (v - mean);
  }
  return {mean, ss / n};
}

}  // namespace

GaussianPosterior gaussian_mean_posterior(const GaussianMeanModel& model,
                                          std::span<const double> y) {
  model.validate();
  const SampleMoments m = moments(y);
  const double n = static_cast<double>(y.size());
  const double s2 = model.sigma_like * model.sigma_like;
  const double s02 = model.sigma0 * model.sigma0;
  const double precision = 1.0 / s02 + n / s2;
  return {(model.mu0 / s02 + n * m.mean / s2) / precision, std::sqrt(1.0 / precision)};
}

EvidenceResult gaussian_mean_log_evidence(const GaussianMeanModel& model,
                                          std::span<const double> y) {
  model.validate();
  const SampleMoments m = moments(y);
  const double n = static_cast<double>(y.size());
  const double s2 = model.sigma_like * model.sigma_like;
  const double sn2 = s2 / n;
  // Z = (2 pi sigma^2)^(-n/2) exp(-n v / (2 sigma^2)) sqrt(2 pi sigma_n^2) N(ybar | mu0, sigma_n^2 + sigma0^2)
  EvidenceResult result;
  result.log_z = -0.5 * n * (kLogTwoPi + std::log(s2)) - 0.5 * n * m.var / s2 +
                 0.5 * (kLogTwoPi + std::log(sn2)) +
                 gaussian_log_pdf(m.mean, model.mu0,
                                  std::sqrt(sn2 + model.sigma0 * model.sigma0));
  result.method = EvidenceMethod::closed_form;
  return result;
}

BayesModel gaussian_mean_bayes_model(const GaussianMeanModel& model, std::vector<double> y,
                                     double window_sds) {
  model.validate();
  const SampleMoments m = moments(y);
  const double like_sd = model.sigma_like / std::sqrt(static_cast<double>(y.size()));
  const double lo = std::min(model.mu0 - window_sds * model.sigma0, m.mean - 12.0 * like_sd);
  const double hi = std::max(model.mu0 + window_sds * model.sigma0, m.mean + 12.0 * like_sd);
  BayesModel bm;
  bm.space = ParamSpace::truncated(
      {{kNegInf, kInf}}, {{lo, hi}},
      fmt::format("prior window mu0 +/- {} sigma0, widened to +/- 12 likelihood sds", window_sds));
  bm.n_data = y.size();
  bm.point_log_like = [y = std::move(y), s = model.sigma_like](std::span<const double> theta,
                                                               std::size_t i) {
    return gaussian_log_pdf(y[i], theta[0], s);
  };
  bm.log_prior = [mu0 = model.mu0, s0 = model.sigma0](std::span<const double> theta) {
    return gaussian_log_pdf(theta[0], mu0, s0);
  };
  bm.prior_is_proper = true;
  bm.prior_log_norm_known = true;
  return bm;
}

LinRegModel LinRegModel::with_prior_sd(Eigen::MatrixXd design, double sigma_like,
                                       const Eigen::VectorXd& prior_sd) {
  LinRegModel model;
  model.prior_mean = Eigen::VectorXd::Zero(design.cols());
  model.prior_cov = prior_sd.array().square().matrix().asDiagonal();
  model.design = std::move(design);
  model.sigma_like = sigma_like;
  model.validate();
  return model;
}

void LinRegModel::validate() const {
  if (design.rows() < 1 || design.cols() < 1) {
    throw UsageError("linear regression needs at least one observation and one coefficient");
  }
  if (!(sigma_like > 0.0)) {
    throw UsageError("linear regression needs sigma_like > 0");
  }
  if (prior_mean.size() != design.cols() || prior_cov.rows() != design.cols() ||
      prior_cov.cols() != design.cols()) {
    throw UsageError("prior mean/covariance shape does not match the design matrix");
  }
}

EvidenceResult linreg_log_evidence(const LinRegModel& model,
                                   const Eigen::Ref<const Eigen::VectorXd>& y) {
  model.validate();
  if (y.size() != model.n_obs()) {
    throw UsageError("observation vector length does not match the design matrix");
  }
  const auto n = model.n_obs();
  Eigen::MatrixXd cov = model.design * model.prior_cov * model.design.transpose();
  cov.diagonal().array() += model.sigma_like * model.sigma_like;
  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw NumericalError(fmt::format(
        "prior-predictive covariance is not positive definite (sigma_like = {}, largest prior "
        "variance = {})",
        model.sigma_like, model.prior_cov.diagonal().maxCoeff()));
  }
  const Eigen::VectorXd resid = y - model.design * model.prior_mean;
  const Eigen::VectorXd white = llt.matrixL().solve(resid);
  const double log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  EvidenceResult result;
  result.log_z = -0.5 * (static_cast<double>(n) * kLogTwoPi + log_det + white.squaredNorm());
  result.method = EvidenceMethod::closed_form;
  return result;
}

BayesModel linreg_bayes_model(const LinRegModel& model, const Eigen::VectorXd& y,
                              double window_sds) {
  model.validate();
  const auto p = model.n_params();
  if (p > 3) {
    throw UsageError("grid models support at most three coefficients");
  }
  const Eigen::LLT<Eigen::MatrixXd> prior_llt(model.prior_cov);
  if (prior_llt.info() != Eigen::Success) {
    throw NumericalError("prior covariance is not positive definite");
  }
  std::vector<Interval> window;
  for (Eigen::Index j = 0; j < p; ++j) {
    const double half = window_sds * std::sqrt(model.prior_cov(j, j));
    window.push_back({model.prior_mean(j) - half, model.prior_mean(j) + half});
  }
  BayesModel bm;
  bm.space = ParamSpace::truncated(std::vector<Interval>(p, {kNegInf, kInf}), window,
                                   fmt::format("prior mean +/- {} prior sds", window_sds));
  bm.n_data = static_cast<std::size_t>(model.n_obs());
  bm.point_log_like = [X = model.design, y, s = model.sigma_like](std::span<const double> theta,
                                                                  std::size_t i) {
    const auto row = static_cast<Eigen::Index>(i);
    const Eigen::Map<const Eigen::VectorXd> beta(theta.data(), X.cols());
    return gaussian_log_pdf(y(row), X.row(row).dot(beta), s);
  };
  const Eigen::MatrixXd L = prior_llt.matrixL();
  const double log_det = 2.0 * L.diagonal().array().log().sum();
  bm.log_prior = [m = model.prior_mean, L, log_det](std::span<const double> theta) {
    const Eigen::Map<const Eigen::VectorXd> beta(theta.data(), m.size());
    const Eigen::VectorXd z = L.triangularView<Eigen::Lower>().solve(beta - m);
    return -0.5 * (static_cast<double>(m.size()) * kLogTwoPi + log_det + z.squaredNorm());
  };
  bm.prior_is_proper = true;
  bm.prior_log_norm_known = true;
  return bm;
}

double prior_expected_snr(const LinRegModel& model) {
  model.validate();
  const Eigen::MatrixXd gram = model.design.transpose() * model.design;
  const double scale =
      static_cast<double>(model.n_obs()) * model.sigma_like * model.sigma_like;
  const double trace_term = (gram * model.prior_cov).trace();
  const double mean_term = model.prior_mean.dot(gram * model.prior_mean);
  return (trace_term + mean_term) / scale;
}

double prior_expected_r2(const LinRegModel& model, std::size_t n_samples, Rng rng) {
  model.validate();
  if (n_samples < 1) {
    throw UsageError("prior_expected_r2 needs at least one sample");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(model.prior_cov);
  const Eigen::MatrixXd root =
      eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  const Eigen::MatrixXd gram = model.design.transpose() * model.design;
  const double scale =
      static_cast<double>(model.n_obs()) * model.sigma_like * model.sigma_like;
  Eigen::VectorXd z(model.n_params());
  double total = 0.0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (Eigen::Index j = 0; j < z.size(); ++j) {
      z(j) = rng.normal();
    }
    const Eigen::VectorXd beta = model.prior_mean + root * z;
    const double w = beta.dot(gram * beta) / scale;
    total += (w > 0.0) ? w / (1.0 + w) : 0.0;
  }
  return total / static_cast<double>(n_samples);
}

GaussianPrior uip_prior(const LinRegModel& model, const Eigen::VectorXd& mu) {
  model.validate();
  if (mu.size() != model.n_params()) {
    throw UsageError("UIP prior mean has the wrong length");
  }
  const Eigen::MatrixXd gram = model.design.transpose() * model.design;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.vectorD().minCoeff() <= 1e-14 * ldlt.vectorD().maxCoeff()) {
    throw NumericalError("UIP prior needs a full-column-rank design matrix");
  }
  const double scale =
      static_cast<double>(model.n_obs()) * model.sigma_like * model.sigma_like;
  const Eigen::MatrixXd inv =
      ldlt.solve(Eigen::MatrixXd::Identity(model.n_params(), model.n_params()));
  return {mu, scale * inv};
}

GaussianMeanModel uip_prior(const GaussianMeanModel& model, double mu) {
  model.validate();
  return {model.sigma_like, mu, model.sigma_like};
}

LinRegModel with_prior(LinRegModel model, const GaussianPrior& prior) {
  model.prior_mean = prior.mean;
  model.prior_cov = prior.cov;
  model.validate();
  return model;
}

}  // namespace bayesev
