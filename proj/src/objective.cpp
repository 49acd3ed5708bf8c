#include "bayesev/objective.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <fmt/format.h>

namespace bayesev {

BaselinePrior BaselinePrior::flat(double log_constant) { return {LogDensity{}, log_constant}; }

BaselinePrior BaselinePrior::from_model(const BayesModel& model) {
  return {model.log_prior, 0.0};
}

double BaselinePrior::log_shape(std::span<const double> theta) const {
  return shape ? check_not_nan(shape(theta), "baseline prior") : 0.0;
}

double log_ratio(const LogIntegral& num, const LogIntegral& den) {
  if (!std::isfinite(den.shape)) {
    throw NumericalError("denominator integral is zero or infinite");
  }
  if (num.shape == kNegInf) {
    return kNegInf;
  }
  return (num.shape - den.shape) + (num.log_constant - den.log_constant);
}

GridIntegrator::GridIntegrator(BayesModel model, GridSpec grid, BaselinePrior baseline,
                               std::size_t cache_limit)
    : model_(std::move(model)), grid_(std::move(grid)), baseline_(std::move(baseline)) {
  model_.space.validate();
  if (grid_.dims() != model_.space.dims()) {
    throw UsageError("grid dimension does not match the model parameter space");
  }
  if (!model_.conditionally_independent) {
    throw UsageError(
        "weighted likelihood integrals need conditionally independent data; supply a "
        "conditional likelihood evaluator instead");
  }
  const std::size_t total = grid_.total_points();
  const bool cache = total * std::max<std::size_t>(model_.n_data, 1) <= cache_limit;
  node_log_base_.reserve(total);
  if (cache) {
    table_.reserve(total * model_.n_data);
  }
  for_each_grid_node(grid_, [&](std::span<const double> theta, double log_w) {
    const double b = baseline_.log_shape(theta);
    node_log_base_.push_back(b == kNegInf ? kNegInf : b + log_w);
    if (cache) {
      for (std::size_t i = 0; i < model_.n_data; ++i) {
        table_.push_back(check_not_nan(model_.point_log_like(theta, i), "log-likelihood"));
      }
    }
  });
}

LogIntegral GridIntegrator::log_integral(std::span<const double> weights) const {
  if (weights.size() != model_.n_data) {
    throw UsageError("one weight per datum is required");
  }
  for (const double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw UsageError("likelihood weights must be finite and non-negative");
    }
  }
  const std::size_t n = model_.n_data;
  LogSumAccumulator acc;
  std::size_t node = 0;
  auto reduce = [&](std::span<const double> theta) {
    const double base = node_log_base_[node];
    double v = base;
    for (std::size_t i = 0; i < n && v != kNegInf; ++i) {
      if (weights[i] == 0.0) {
        continue;
      }
      const double ll = table_.empty()
                            ? check_not_nan(model_.point_log_like(theta, i), "log-likelihood")
                            : table_[node * n + i];
      v = (ll == kNegInf) ? kNegInf : v + weights[i] * ll;
    }
    acc.add(v);
    ++node;
  };
  if (table_.empty()) {
    for_each_grid_node(grid_, [&](std::span<const double> theta, double) { reduce(theta); });
  } else {
    for (std::size_t k = 0; k < node_log_base_.size(); ++k) {
      reduce({});
    }
  }
  return {acc.value(), baseline_.log_constant};
}

double GridIntegrator::log_like(std::span<const double> theta,
                                std::span<const std::size_t> indices) const {
  return model_.log_like(theta, indices);
}

std::optional<std::size_t> GridIntegrator::grid_points_per_dim() const {
  const auto [lo, hi] =
      std::minmax_element(grid_.points_per_dim.begin(), grid_.points_per_dim.end());
  if (*lo == *hi) {
    return *lo;
  }
  return std::nullopt;
}

std::vector<double> uniform_weights(std::size_t n, double w) { return std::vector<double>(n, w); }

std::vector<double> index_weights(std::size_t n, std::span<const std::size_t> indices, double w) {
  std::vector<double> out(n, 0.0);
  for (const std::size_t i : indices) {
    if (i >= n) {
      throw UsageError(fmt::format("data index {} out of range (n = {})", i, n));
    }
    out[i] = w;
  }
  return out;
}

DataPartition DataPartition::from_train(std::size_t n, std::vector<std::size_t> train) {
  DataPartition p;
  std::vector<bool> in_train(n, false);
  for (const std::size_t i : train) {
    if (i >= n) {
      throw UsageError(fmt::format("training index {} out of range (n = {})", i, n));
    }
    in_train[i] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!in_train[i]) {
      p.test.push_back(i);
    }
  }
  p.train = std::move(train);
  p.validate(n);
  return p;
}

void DataPartition::validate(std::size_t n) const {
  if (train.empty()) {
    throw UsageError("training set must be nonempty");
  }
  std::vector<int> seen(n, 0);
  for (const auto* part : {&train, &test}) {
    for (const std::size_t i : *part) {
      if (i >= n) {
        throw UsageError(fmt::format("partition index {} out of range (n = {})", i, n));
      }
      if (++seen[i] > 1) {
        throw UsageError(fmt::format("partition index {} appears twice", i));
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw UsageError("partition does not cover every datum");
  }
}

void TemperedPriorSpec::validate() const {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw UsageError("tempering exponent must lie in (0, 1]");
  }
}

namespace {

double default_beta(const LikelihoodIntegrator& integ, std::optional<double> beta) {
  if (beta) {
    return *beta;
  }
  if (integ.n_data() == 0) {
    throw UsageError("default beta = 1/D_y needs at least one datum");
  }
  return 1.0 / static_cast<double>(integ.n_data());
}

EvidenceResult ratio_result(const LikelihoodIntegrator& integ, std::span<const double> num,
                            std::span<const double> den, EvidenceMethod method) {
  const LogIntegral d = integ.log_integral(den);
  if (d.shape == kNegInf) {
    throw NumericalError("denominator likelihood integral is zero");
  }
  EvidenceResult r;
  r.log_z = log_ratio(integ.log_integral(num), d);
  r.method = method;
  r.grid_points_per_dim = integ.grid_points_per_dim();
  r.truncation_note = integ.truncation_note();
  return r;
}

BayesFactorReport report(const EvidenceResult& a, const EvidenceResult& b, std::string recipe) {
  BayesFactorReport rep;
  rep.log_z_num = a.log_z;
  rep.log_z_den = b.log_z;
  rep.log_bf = a.log_z - b.log_z;
  rep.recipe = std::move(recipe);
  return rep;
}

}  // namespace

EvidenceResult idea1_evidence(const LikelihoodIntegrator& integ) {
  const std::size_t n = integ.n_data();
  return ratio_result(integ, uniform_weights(n, 2.0), uniform_weights(n, 1.0),
                      EvidenceMethod::fractional);
}

EvidenceResult tempered_evidence(const LikelihoodIntegrator& integ, std::optional<double> beta) {
  const double b = default_beta(integ, beta);
  TemperedPriorSpec{b}.validate();
  const std::size_t n = integ.n_data();
  return ratio_result(integ, uniform_weights(n, b + 1.0), uniform_weights(n, b),
                      EvidenceMethod::fractional);
}

EvidenceResult likelihood_prior_evidence(const LikelihoodIntegrator& integ,
                                         std::span<const std::size_t> prior_indices) {
  if (prior_indices.empty()) {
    throw UsageError("likelihood-based prior needs at least one datum");
  }
  const std::size_t n = integ.n_data();
  const std::vector<double> den = index_weights(n, prior_indices, 1.0);
  std::vector<double> num = den;
  for (double& w : num) {
    w += 1.0;
  }
  return ratio_result(integ, num, den, EvidenceMethod::partial);
}

EvidenceResult subset_prior_evidence(const LikelihoodIntegrator& integ,
                                     const DataPartition& partition) {
  const std::size_t n = integ.n_data();
  partition.validate(n);
  return ratio_result(integ, uniform_weights(n, 1.0), index_weights(n, partition.train, 1.0),
                      EvidenceMethod::partial);
}

EvidenceResult subset_prior_evidence_explicit(const LikelihoodIntegrator& integ,
                                              const DataPartition& partition) {
  const std::size_t n = integ.n_data();
  partition.validate(n);
  // int l(test | theta) l(train | theta) g(theta) dtheta over S_train, with the
  // numerator weights assembled from the two index sets.
  std::vector<double> num = index_weights(n, partition.test, 1.0);
  for (const std::size_t i : partition.train) {
    num[i] += 1.0;
  }
  const LogIntegral s_train = integ.log_integral(index_weights(n, partition.train, 1.0));
  if (s_train.shape == kNegInf) {
    throw NumericalError("training likelihood integral is zero");
  }
  const LogIntegral joint = integ.log_integral(num);
  EvidenceResult r;
  r.log_z = log_ratio(joint, s_train);
  r.method = EvidenceMethod::partial;
  r.grid_points_per_dim = integ.grid_points_per_dim();
  r.truncation_note = integ.truncation_note();
  return r;
}

EvidenceResult averaged_subset_evidence(const LikelihoodIntegrator& integ,
                                        std::span<const DataPartition> partitions) {
  if (partitions.empty()) {
    throw UsageError("averaged subset evidence needs at least one partition");
  }
  const std::size_t n = integ.n_data();
  const LogIntegral s = integ.log_integral(uniform_weights(n, 1.0));
  std::vector<double> terms;
  terms.reserve(partitions.size());
  for (const DataPartition& p : partitions) {
    p.validate(n);
    const LogIntegral s_train = integ.log_integral(index_weights(n, p.train, 1.0));
    if (s_train.shape == kNegInf) {
      throw NumericalError("a training likelihood integral is zero");
    }
    terms.push_back(log_ratio(s, s_train));
  }
  EvidenceResult r;
  r.log_z = log_sum_exp(terms) - std::log(static_cast<double>(partitions.size()));
  r.method = EvidenceMethod::partial;
  r.grid_points_per_dim = integ.grid_points_per_dim();
  r.truncation_note = integ.truncation_note();
  return r;
}

BayesFactorReport partial_bf(const LikelihoodIntegrator& integ1,
                             const LikelihoodIntegrator& integ2,
                             std::span<const std::size_t> train) {
  if (integ1.n_data() != integ2.n_data()) {
    throw UsageError("both models must see the same data");
  }
  const std::size_t n = integ1.n_data();
  std::vector<std::size_t> tr(train.begin(), train.end());
  const DataPartition p = DataPartition::from_train(n, std::move(tr));
  return report(subset_prior_evidence(integ1, p), subset_prior_evidence(integ2, p), "PBF");
}

EvidenceResult fractional_evidence(const LikelihoodIntegrator& integ,
                                   std::optional<double> beta) {
  const double b = default_beta(integ, beta);
  TemperedPriorSpec{b}.validate();
  const std::size_t n = integ.n_data();
  return ratio_result(integ, uniform_weights(n, 1.0), uniform_weights(n, b),
                      EvidenceMethod::fractional);
}

BayesFactorReport fractional_bf(const LikelihoodIntegrator& integ1,
                                const LikelihoodIntegrator& integ2, std::optional<double> beta) {
  if (integ1.n_data() != integ2.n_data()) {
    throw UsageError("both models must see the same data");
  }
  const double b = default_beta(integ1, beta);
  return report(fractional_evidence(integ1, b), fractional_evidence(integ2, b),
                fmt::format("FBF:beta={}", b));
}

double power_prior_log(std::span<const double> theta, const LikelihoodIntegrator& sim,
                       double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw UsageError("power prior needs 0 < beta < 1");
  }
  const double base = sim.baseline().log_shape(theta) + sim.baseline().log_constant;
  if (sim.n_data() == 0 || base == kNegInf) {
    return base;
  }
  std::vector<std::size_t> all(sim.n_data());
  std::iota(all.begin(), all.end(), std::size_t{0});
  const double ll = sim.log_like(theta, all);
  return ll == kNegInf ? kNegInf : beta * ll + base;
}

double expected_posterior_prior_log(std::span<const double> theta,
                                    std::span<const LikelihoodIntegrator* const> draws,
                                    double beta) {
  if (draws.empty()) {
    throw UsageError("expected posterior prior needs at least one simulated dataset");
  }
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw UsageError("expected posterior prior needs 0 < beta <= 1");
  }
  std::vector<double> terms;
  terms.reserve(draws.size());
  for (const LikelihoodIntegrator* d : draws) {
    const LogIntegral norm = d->log_integral(uniform_weights(d->n_data(), beta));
    if (!std::isfinite(norm.shape)) {
      throw NumericalError("a simulated dataset gives a non-normalizable power prior");
    }
    const double shape = d->baseline().log_shape(theta);
    std::vector<std::size_t> all(d->n_data());
    std::iota(all.begin(), all.end(), std::size_t{0});
    const double ll = (shape == kNegInf || all.empty()) ? 0.0 : d->log_like(theta, all);
    if (shape == kNegInf || ll == kNegInf) {
      terms.push_back(kNegInf);
    } else {
      // The baseline constant cancels against the one inside the normalizer.
      terms.push_back(beta * ll + shape - norm.shape);
    }
  }
  return log_sum_exp(terms) - std::log(static_cast<double>(draws.size()));
}

double posterior_predictive_log(const LikelihoodIntegrator& integ,
                                std::span<const std::size_t> cond,
                                std::span<const std::size_t> eval) {
  const std::size_t n = integ.n_data();
  const std::vector<double> den = index_weights(n, cond, 1.0);
  std::vector<double> num = den;
  for (const std::size_t i : eval) {
    if (i >= n) {
      throw UsageError(fmt::format("data index {} out of range (n = {})", i, n));
    }
    num[i] += 1.0;
  }
  const LogIntegral z = integ.log_integral(den);
  if (z.shape == kNegInf) {
    throw NumericalError("posterior predictive needs a nonzero evidence");
  }
  return log_ratio(integ.log_integral(num), z);
}

EmpiricalBayesResult empirical_bayes(std::span<const double> nu_grid,
                                     const std::function<EvidenceResult(double)>& evidence_of) {
  if (nu_grid.empty()) {
    throw UsageError("empirical Bayes needs a nonempty hyperparameter grid");
  }
  EmpiricalBayesResult best;
  bool found = false;
  for (std::size_t k = 0; k < nu_grid.size(); ++k) {
    EvidenceResult z = evidence_of(nu_grid[k]);
    check_not_nan(z.log_z, "evidence");
    if (z.log_z == kNegInf) {
      continue;
    }
    if (!found || z.log_z > best.evidence.log_z) {
      best = {nu_grid[k], k, std::move(z)};
      found = true;
    }
  }
  if (!found) {
    throw NumericalError("every evidence on the hyperparameter grid is zero");
  }
  return best;
}

EvidenceResult hierarchical_evidence(const HyperPriorSpec& hyper, std::span<const double> log_zs) {
  const std::vector<double>& g = hyper.grid;
  if (g.empty()) {
    throw UsageError("hierarchical evidence needs a nonempty hyper grid");
  }
  if (log_zs.size() != g.size()) {
    throw UsageError("one evidence per hyper grid node is required");
  }
  for (std::size_t k = 1; k < g.size(); ++k) {
    if (!(g[k] > g[k - 1])) {
      throw UsageError("hyper grid must be strictly increasing");
    }
  }
  EvidenceResult r;
  r.method = EvidenceMethod::hierarchical;
  if (g.size() == 1) {
    r.log_z = check_not_nan(log_zs[0], "evidence");
    return r;
  }
  std::vector<double> weighted;
  std::vector<double> mass;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double left = k > 0 ? g[k] - g[k - 1] : 0.0;
    const double right = k + 1 < g.size() ? g[k + 1] - g[k] : 0.0;
    const double lh = hyper.log_prior ? check_not_nan(hyper.log_prior(g[k]), "hyperprior") : 0.0;
    const double lw = std::log(0.5 * (left + right)) + lh;
    mass.push_back(lw);
    const double lz = check_not_nan(log_zs[k], "evidence");
    weighted.push_back((lw == kNegInf || lz == kNegInf) ? kNegInf : lw + lz);
  }
  const double norm = log_sum_exp(mass);
  if (norm == kNegInf) {
    throw UsageError("hyperprior has no mass on the hyper grid");
  }
  r.log_z = log_sum_exp(weighted) - norm;
  return r;
}

EvidenceResult hierarchical_evidence(const HyperPriorSpec& hyper,
                                     const std::function<EvidenceResult(double)>& evidence_of) {
  std::vector<double> log_zs;
  log_zs.reserve(hyper.grid.size());
  for (const double nu : hyper.grid) {
    log_zs.push_back(evidence_of(nu).log_z);
  }
  return hierarchical_evidence(hyper, log_zs);
}

}  // namespace bayesev
