#pragma once

#include <cstddef>
#include <string>

namespace bayesev {

/// W = exp(log_z - log_like_max), in (0, 1]. Throws if log_z exceeds the maximum
/// likelihood by more than 1e-9, which means the evidence itself is wrong.
double occam_factor(double log_z, double log_like_max);

enum class CriterionKind { bic, aic, hqic };

std::string to_string(CriterionKind kind);

/// Penalty weight eta(D_y): BIC 0.5 log D_y, AIC 1, HQIC log log D_y.
double criterion_eta(std::size_t d_y, CriterionKind kind);

/// C = -2 log l_max + 2 eta(D_y) D_theta. Lower is better.
double info_criterion(double log_like_max, std::size_t d_theta, std::size_t d_y,
                      CriterionKind kind);

/// l_min <= Z <= l_max with 1e-9 slack in log space. The extrema are taken over
/// the evaluated grid, not over the whole parameter space.
bool bounds_check(double log_z, double log_like_min, double log_like_max);

struct BoxPenalty {
  double fitting = 0.0;  // log of the likelihood integral over the box
  double penalty = 0.0;  // -D_theta log delta
  double log_z = 0.0;    // fitting + penalty
};

/// Evidence of a uniform prior on a box of side delta in D_theta dimensions.
BoxPenalty box_penalty_decomposition(double delta, std::size_t d_theta,
                                     double log_int_like_over_box);

}  // namespace bayesev
