#include "bayesev/criteria.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "bayesev/core.hpp"

namespace bayesev {

double occam_factor(double log_z, double log_like_max) {
  check_not_nan(log_z, "log evidence");
  check_not_nan(log_like_max, "maximum log-likelihood");
  if (!std::isfinite(log_like_max)) {
    throw UsageError("maximum log-likelihood must be finite");
  }
  if (log_z > log_like_max + 1e-9) {
    throw NumericalError(fmt::format(
        "evidence exceeds the maximum likelihood (log Z = {}, log l_max = {})", log_z,
        log_like_max));
  }
  return std::exp(std::min(log_z - log_like_max, 0.0));
}

std::string to_string(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::bic:
      return "BIC";
    case CriterionKind::aic:
      return "AIC";
    case CriterionKind::hqic:
      return "HQIC";
  }
  return "?";
}

double criterion_eta(std::size_t d_y, CriterionKind kind) {
  switch (kind) {
    case CriterionKind::bic:
      if (d_y < 1) {
        throw UsageError("BIC needs D_y >= 1");
      }
      return 0.5 * std::log(static_cast<double>(d_y));
    case CriterionKind::aic:
      if (d_y < 1) {
        throw UsageError("AIC needs D_y >= 1");
      }
      return 1.0;
    case CriterionKind::hqic:
      if (d_y < 2) {
        throw UsageError("HQIC needs D_y >= 2");
      }
      return std::log(std::log(static_cast<double>(d_y)));
  }
  throw UsageError("unknown information criterion");
}

double info_criterion(double log_like_max, std::size_t d_theta, std::size_t d_y,
                      CriterionKind kind) {
  if (d_theta < 1) {
    throw UsageError("information criteria need D_theta >= 1");
  }
  return -2.0 * log_like_max + 2.0 * criterion_eta(d_y, kind) * static_cast<double>(d_theta);
}

bool bounds_check(double log_z, double log_like_min, double log_like_max) {
  return log_z >= log_like_min - 1e-9 && log_z <= log_like_max + 1e-9;
}

BoxPenalty box_penalty_decomposition(double delta, std::size_t d_theta,
                                     double log_int_like_over_box) {
  if (!(delta > 0.0)) {
    throw UsageError("box side must be > 0");
  }
  BoxPenalty b;
  b.fitting = log_int_like_over_box;
  b.penalty = -static_cast<double>(d_theta) * std::log(delta);
  b.log_z = b.fitting + b.penalty;
  return b;
}

}  // namespace bayesev
