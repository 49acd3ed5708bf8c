#include "bayesev/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "bayesev/special.hpp"
#include "parallel.hpp"

namespace bayesev {

PoissonPrior PoissonPrior::uniform(double upper) {
  PoissonPrior p{Kind::uniform, upper};
  p.validate();
  return p;
}

PoissonPrior PoissonPrior::improper() { return {Kind::improper_flat, 0.0}; }

void PoissonPrior::validate() const {
  if (kind == Kind::uniform && !(upper > 0.0 && std::isfinite(upper))) {
    throw UsageError("uniform Poisson prior needs a finite L > 0");
  }
}

namespace {

void check_counts(std::span<const std::int64_t> y) {
  for (const auto v : y) {
    if (v < 0) {
      throw UsageError(fmt::format("count data must be non-negative (got {})", v));
    }
  }
}

void check_weights(std::span<const double> w, std::size_t n) {
  if (w.size() != n) {
    throw UsageError("one weight per datum is required");
  }
  for (const double c : w) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw UsageError("likelihood weights must be finite and non-negative");
    }
  }
}

}  // namespace

PoissonIntegrator::PoissonIntegrator(Counts y, PoissonPrior prior)
    : y_(std::move(y)), prior_(prior) {
  check_counts(y_);
  prior_.validate();
  baseline_ = BaselinePrior::flat(
      prior_.kind == PoissonPrior::Kind::uniform ? -std::log(prior_.upper) : 0.0);
  if (prior_.kind == PoissonPrior::Kind::uniform) {
    const double upper = prior_.upper;
    baseline_.shape = [upper](std::span<const double> theta) {
      return (theta[0] >= 0.0 && theta[0] <= upper) ? 0.0 : kNegInf;
    };
  } else {
    baseline_.shape = [](std::span<const double> theta) {
      return theta[0] >= 0.0 ? 0.0 : kNegInf;
    };
  }
}

LogIntegral PoissonIntegrator::log_integral(std::span<const double> weights) const {
  check_weights(weights, y_.size());
  // int theta^a exp(-b theta) dtheta / prod (y_i!)^c_i with a = sum c_i y_i, b = sum c_i.
  double a = 0.0;
  double b = 0.0;
  double log_fact = 0.0;
  for (std::size_t i = 0; i < y_.size(); ++i) {
    if (weights[i] == 0.0) {
      continue;
    }
    const double yi = static_cast<double>(y_[i]);
    a += weights[i] * yi;
    b += weights[i];
    log_fact += weights[i] * log_factorial(yi);
  }
  double shape = 0.0;
  if (prior_.kind == PoissonPrior::Kind::improper_flat) {
    shape = (b == 0.0) ? kInf : log_gamma(a + 1.0) - (a + 1.0) * std::log(b) - log_fact;
  } else if (b == 0.0) {
    shape = (a + 1.0) * std::log(prior_.upper) - std::log(a + 1.0) - log_fact;
  } else {
    shape = log_gamma(a + 1.0) - (a + 1.0) * std::log(b) +
            log_gamma_p(a + 1.0, b * prior_.upper) - log_fact;
  }
  return {shape, baseline_.log_constant};
}

double PoissonIntegrator::log_like(std::span<const double> theta,
                                   std::span<const std::size_t> indices) const {
  const double t = theta[0];
  if (t < 0.0) {
    return kNegInf;
  }
  double sum = 0.0;
  for (const std::size_t i : indices) {
    const double yi = static_cast<double>(y_.at(i));
    if (t == 0.0) {
      if (yi > 0.0) {
        return kNegInf;
      }
      continue;
    }
    sum += yi * std::log(t) - t - log_factorial(yi);
  }
  return sum;
}

GeometricIntegrator::GeometricIntegrator(Counts y) : y_(std::move(y)) {
  check_counts(y_);
  baseline_.shape = [](std::span<const double> phi) {
    return (phi[0] >= 0.0 && phi[0] <= 1.0) ? 0.0 : kNegInf;
  };
}

LogIntegral GeometricIntegrator::log_integral(std::span<const double> weights) const {
  check_weights(weights, y_.size());
  // int phi^b (1 - phi)^a dphi = B(b + 1, a + 1).
  double a = 0.0;
  double b = 0.0;
  for (std::size_t i = 0; i < y_.size(); ++i) {
    a += weights[i] * static_cast<double>(y_[i]);
    b += weights[i];
  }
  return {log_beta(b + 1.0, a + 1.0), 0.0};
}

double GeometricIntegrator::log_like(std::span<const double> theta,
                                     std::span<const std::size_t> indices) const {
  const double phi = theta[0];
  if (phi < 0.0 || phi > 1.0) {
    return kNegInf;
  }
  double sum = 0.0;
  for (const std::size_t i : indices) {
    const double yi = static_cast<double>(y_.at(i));
    if (phi == 0.0) {
      return kNegInf;
    }
    sum += std::log(phi) + (yi > 0.0 ? yi * std::log1p(-phi) : 0.0);
  }
  return sum;
}

double poisson_log_evidence(std::span<const std::int64_t> y, const PoissonPrior& prior) {
  const PoissonIntegrator integ(Counts(y.begin(), y.end()), prior);
  return integ.log_integral(uniform_weights(y.size(), 1.0)).value();
}

double geometric_log_evidence(std::span<const std::int64_t> y) {
  const GeometricIntegrator integ(Counts(y.begin(), y.end()));
  return integ.log_integral(uniform_weights(y.size(), 1.0)).value();
}

std::int64_t sample_poisson(double theta, Rng& rng) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw UsageError("Poisson sampler needs a finite theta > 0");
  }
  const double u = rng.uniform();
  if (theta < 30.0) {
    std::int64_t k = 0;
    double p = std::exp(-theta);
    double cdf = p;
    while (u >= cdf && p > 0.0) {
      ++k;
      p *= theta / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }
  // Large rate: the pmf at 0 underflows, so search the CDF P(X <= k) = Q(k + 1, theta)
  // outward from the mode.
  auto cdf = [theta](std::int64_t k) { return gamma_q(static_cast<double>(k) + 1.0, theta); };
  auto k = static_cast<std::int64_t>(std::floor(theta));
  if (cdf(k) > u) {
    while (k > 0 && cdf(k - 1) > u) {
      --k;
    }
  } else {
    while (cdf(k) <= u) {
      ++k;
    }
  }
  return k;
}

std::int64_t sample_geometric(double phi, Rng& rng) {
  if (!(phi > 0.0 && phi <= 1.0)) {
    throw UsageError("geometric sampler needs phi in (0, 1]");
  }
  if (phi == 1.0) {
    return 0;
  }
  const double u = 1.0 - rng.uniform();  // (0, 1]
  return static_cast<std::int64_t>(std::floor(std::log(u) / std::log1p(-phi)));
}

Counts sample_poisson_data(double theta, std::size_t n, Rng& rng) {
  Counts y(n);
  for (auto& v : y) {
    v = sample_poisson(theta, rng);
  }
  return y;
}

Counts sample_geometric_data(double phi, std::size_t n, Rng& rng) {
  Counts y(n);
  for (auto& v : y) {
    v = sample_geometric(phi, rng);
  }
  return y;
}

std::string to_string(IbfMode mode) {
  return mode == IbfMode::one_sided ? "one_sided" : "symmetric";
}

double log_intrinsic_bf(const LikelihoodIntegrator& m1, const LikelihoodIntegrator& m2,
                        IbfMode mode) {
  const std::size_t n = m1.n_data();
  if (n < 2 || m2.n_data() != n) {
    throw UsageError("intrinsic Bayes factor needs two models on the same data with D_y >= 2");
  }
  const std::vector<double> all = uniform_weights(n, 1.0);
  const LogIntegral z1 = m1.log_integral(all);
  const LogIntegral z2 = m2.log_integral(all);
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t idx[] = {i};
    const std::vector<double> single = index_weights(n, idx, 1.0);
    const LogIntegral z1_i = m1.log_integral(single);
    if (!std::isfinite(z1_i.shape)) {
      throw NumericalError(fmt::format("training evidence of datum {} is not finite", i));
    }
    double t = log_ratio(z1, z1_i);
    if (mode == IbfMode::one_sided) {
      t -= z2.value();
    } else {
      const LogIntegral z2_i = m2.log_integral(single);
      t -= log_ratio(z2, z2_i);
    }
    terms[i] = check_not_nan(t, "intrinsic Bayes factor summand");
  }
  return log_sum_exp(terms) - std::log(static_cast<double>(n));
}

double log_ibf12(std::span<const std::int64_t> y, IbfMode mode) {
  const Counts data(y.begin(), y.end());
  return log_intrinsic_bf(PoissonIntegrator(data, PoissonPrior::improper()),
                          GeometricIntegrator(data), mode);
}

namespace {

SweepRow summarize(double param, std::size_t dy, std::span<const double> log_bfs,
                   std::uint64_t seed, bool error_below_one) {
  SweepRow row;
  row.param = param;
  row.dy = dy;
  row.runs = log_bfs.size();
  row.seed = seed;
  const auto [lo, hi] = std::minmax_element(log_bfs.begin(), log_bfs.end());
  row.min_bf = std::exp(*lo);
  row.max_bf = std::exp(*hi);
  for (const double v : log_bfs) {
    if (error_below_one ? v < 0.0 : v > 0.0) {
      ++row.errors;
    }
  }
  return row;
}

void check_runs(std::size_t n_runs, std::size_t dy) {
  if (n_runs < 1) {
    throw UsageError("n_runs must be at least 1");
  }
  if (dy < 1) {
    throw UsageError("D_y must be at least 1");
  }
}

}  // namespace

SweepResult lindley_sweep(double theta_true, std::size_t dy, std::span<const double> l_values,
                          std::size_t n_runs, std::uint64_t seed, unsigned threads) {
  check_runs(n_runs, dy);
  for (const double l : l_values) {
    PoissonPrior::uniform(l);
  }
  // log BF12 per (L, run); datasets depend only on the run index.
  std::vector<std::vector<double>> log_bf(l_values.size(), std::vector<double>(n_runs));
  detail::parallel_for(n_runs, threads, [&](std::size_t r) {
    Rng rng = Rng::stream(seed, r);
    const Counts y = sample_poisson_data(theta_true, dy, rng);
    const double z2 = geometric_log_evidence(y);
    for (std::size_t j = 0; j < l_values.size(); ++j) {
      log_bf[j][r] = poisson_log_evidence(y, PoissonPrior::uniform(l_values[j])) - z2;
    }
  });
  SweepResult result;
  for (std::size_t j = 0; j < l_values.size(); ++j) {
    result.rows.push_back(summarize(l_values[j], dy, log_bf[j], seed, true));
  }
  return result;
}

SweepRow ibf_experiment(TrueModel truth, double true_param, std::size_t dy, std::size_t n_runs,
                        std::uint64_t seed, IbfMode mode, unsigned threads) {
  check_runs(n_runs, dy);
  std::vector<double> log_ibf(n_runs);
  detail::parallel_for(n_runs, threads, [&](std::size_t r) {
    Rng rng = Rng::stream(seed, r);
    const Counts y = truth == TrueModel::poisson ? sample_poisson_data(true_param, dy, rng)
                                                 : sample_geometric_data(true_param, dy, rng);
    log_ibf[r] = log_ibf12(y, mode);
  });
  return summarize(true_param, dy, log_ibf, seed, truth == TrueModel::poisson);
}

}  // namespace bayesev
