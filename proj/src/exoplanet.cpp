#include "bayesev/exoplanet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "bayesev/rng.hpp"
#include "parallel.hpp"

namespace bayesev {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Terms more than e^40 below the peak of a V0 row are below double resolution of the sum.
constexpr double kTailCut = 40.0;

double normal_log_pdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return -0.5 * kLogTwoPi - std::log(sd) - 0.5 * z * z;
}

// Number of period steps in p when p sits on the step lattice with at least
// `min_points` nodes; 0 otherwise.
std::size_t lattice_count(double p, double step, std::size_t min_points) {
  const double k = std::round(p / step);
  if (k < 1.0 || std::abs(k * step - p) > 1e-9 * std::max(1.0, p)) {
    return 0;
  }
  const auto n = static_cast<std::size_t>(k);
  return n >= min_points ? n : 0;
}

}  // namespace

void Planet::validate() const {
  if (!(k >= 0.0) || !std::isfinite(k)) {
    throw UsageError("planet amplitude K must be finite and >= 0");
  }
  if (!(e >= 0.0 && e < 1.0)) {
    throw UsageError(fmt::format("eccentricity must lie in [0, 1) (got {})", e));
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw UsageError("orbital period must be finite and > 0");
  }
  if (!std::isfinite(omega) || !std::isfinite(tau)) {
    throw UsageError("omega and tau must be finite");
  }
}

void RvParams::validate() const {
  if (!std::isfinite(v0)) {
    throw UsageError("V0 must be finite");
  }
  for (const Planet& p : planets) {
    p.validate();
  }
}

void RvDataset::validate() const {
  if (times.size() != values.size()) {
    throw UsageError("RV dataset needs one value per epoch");
  }
  if (times.empty()) {
    throw UsageError("RV dataset is empty");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw UsageError("RV epochs must be strictly increasing");
    }
  }
  if (!(sigma_e > 0.0) || !std::isfinite(sigma_e)) {
    throw UsageError("RV noise sd must be finite and > 0");
  }
}

KeplerSolution solve_kepler(double M, double e, double tol, int max_iter) {
  if (!(e >= 0.0 && e < 1.0)) {
    throw UsageError(fmt::format("eccentricity must lie in [0, 1) (got {})", e));
  }
  if (!std::isfinite(M)) {
    throw UsageError("mean anomaly must be finite");
  }
  const double turns = std::floor(M / kTwoPi);
  double m = M - turns * kTwoPi;
  if (m >= kTwoPi) {
    m -= kTwoPi;
  }
  double E = (e < 0.8) ? m : std::numbers::pi;
  KeplerSolution sol;
  for (int it = 1; it <= max_iter; ++it) {
    const double f = E - e * std::sin(E) - m;
    sol.iterations = it;
    sol.residual = std::abs(f);
    if (sol.residual < tol) {
      sol.E = E + turns * kTwoPi;
      return sol;
    }
    E -= f / (1.0 - e * std::cos(E));
  }
  throw NumericalError(fmt::format(
      "Kepler solver did not converge: M = {}, e = {}, last residual = {:.3e} after {} "
      "iterations",
      M, e, sol.residual, max_iter));
}

double true_anomaly(double E, double e) {
  if (!(e >= 0.0 && e < 1.0)) {
    throw UsageError(fmt::format("eccentricity must lie in [0, 1) (got {})", e));
  }
  return 2.0 * std::atan2(std::sqrt(1.0 + e) * std::sin(0.5 * E),
                          std::sqrt(1.0 - e) * std::cos(0.5 * E));
}

double planet_signal(const Planet& planet, double t) {
  const double M = kTwoPi * (t - planet.tau) / planet.period;
  const double u = true_anomaly(solve_kepler(M, planet.e).E, planet.e);
  return planet.k * (std::cos(u + planet.omega) + planet.e * std::cos(planet.omega));
}

double rv_model(const RvParams& params, double t) {
  double v = params.v0;
  for (const Planet& p : params.planets) {
    v += planet_signal(p, t);
  }
  return v;
}

double rv_log_likelihood(const RvParams& params, const RvDataset& data) {
  params.validate();
  data.validate();
  double sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    sum += normal_log_pdf(data.values[i], rv_model(params, data.times[i]), data.sigma_e);
  }
  return sum;
}

RvDataset simulate_rv(const RvParams& truth, std::vector<double> times, double sigma_e,
                      std::uint64_t seed) {
  truth.validate();
  if (!(sigma_e >= 0.0) || !std::isfinite(sigma_e)) {
    throw UsageError("simulation noise sd must be finite and >= 0");
  }
  Rng rng(seed);
  RvDataset data;
  data.sigma_e = sigma_e;
  data.values.reserve(times.size());
  for (const double t : times) {
    data.values.push_back(rv_model(truth, t) + sigma_e * rng.normal());
  }
  data.times = std::move(times);
  return data;
}

std::vector<double> default_times(std::size_t n, double t_end) {
  if (n < 2) {
    throw UsageError("need at least two epochs");
  }
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = t_end * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return t;
}

void RvGridConfig::validate() const {
  if (!v0_bounds.is_finite() || !(v0_bounds.lower < v0_bounds.upper)) {
    throw UsageError("V0 bounds must be finite with lower < upper");
  }
  if (v0_points < 2 || min_period_points < 2) {
    throw UsageError("RV grids need at least 2 points per dimension");
  }
  if (!(period_step > 0.0) || !std::isfinite(period_step)) {
    throw UsageError("period step must be finite and > 0");
  }
}

RvIntegrator::RvIntegrator(RvDataset data, const RvGridConfig& cfg)
    : data_(std::move(data)), cfg_(cfg) {
  data_.validate();
  cfg_.validate();
  tabulate();
}

RvIntegrator::RvIntegrator(RvDataset data, const Planet& fixed, double p_max,
                           const RvGridConfig& cfg)
    : data_(std::move(data)), cfg_(cfg), planet_(fixed), p_max_(p_max) {
  data_.validate();
  cfg_.validate();
  if (!(p_max > 0.0) || !std::isfinite(p_max)) {
    throw UsageError("P_max must be finite and > 0");
  }
  Planet check = fixed;
  check.period = p_max;
  check.validate();
  tabulate();
}

void RvIntegrator::tabulate() {
  const Interval& vb = cfg_.v0_bounds;
  const double dv = vb.width() / static_cast<double>(cfg_.v0_points);
  log_dv_ = std::log(dv);
  v0_nodes_.resize(cfg_.v0_points);
  for (std::size_t k = 0; k < cfg_.v0_points; ++k) {
    v0_nodes_[k] = vb.lower + (static_cast<double>(k) + 0.5) * dv;
  }
  double log_volume = std::log(vb.width());
  const std::size_t T = data_.size();
  if (!planet_) {
    n_period_ = 1;
    resid_ = data_.values;
  } else {
    if (const std::size_t k = lattice_count(p_max_, cfg_.period_step, cfg_.min_period_points)) {
      n_period_ = k;
      step_ = cfg_.period_step;
    } else {
      n_period_ = std::max<std::size_t>(
          cfg_.min_period_points, static_cast<std::size_t>(std::ceil(p_max_ / cfg_.period_step)));
      step_ = p_max_ / static_cast<double>(n_period_);
    }
    log_volume += std::log(p_max_);
    resid_.assign(n_period_ * T, 0.0);
    detail::parallel_for(n_period_, cfg_.threads, [&](std::size_t j) {
      Planet p = *planet_;
      p.period = (static_cast<double>(j) + 0.5) * step_;
      for (std::size_t i = 0; i < T; ++i) {
        resid_[j * T + i] = data_.values[i] - planet_signal(p, data_.times[i]);
      }
    });
  }
  const std::size_t dims = planet_ ? 2 : 1;
  const Interval window{0.0, p_max_};
  baseline_ = BaselinePrior::flat(-log_volume);
  baseline_.shape = [vb, window, dims](std::span<const double> theta) {
    if (theta[0] < vb.lower || theta[0] > vb.upper) {
      return kNegInf;
    }
    if (dims == 2 && (theta[1] < window.lower || theta[1] > window.upper)) {
      return kNegInf;
    }
    return 0.0;
  };
}

RvIntegrator::NodeStats RvIntegrator::node_integral(std::size_t node,
                                                    std::span<const double> weights,
                                                    bool track) const {
  const std::size_t T = data_.size();
  const double* r = resid_.data() + node * T;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  for (std::size_t i = 0; i < T; ++i) {
    const double w = weights[i];
    if (w == 0.0) {
      continue;
    }
    a += w;
    b += w * r[i];
    c += w * r[i] * r[i];
  }
  const double s2 = data_.sigma_e * data_.sigma_e;
  const double norm = -0.5 * a * (kLogTwoPi + std::log(s2));
  auto ll = [&](double v) { return norm - (c - 2.0 * b * v + a * v * v) / (2.0 * s2); };
  const std::size_t n = v0_nodes_.size();
  std::size_t peak = 0;
  if (a > 0.0) {
    const double pos = (b / a - v0_nodes_.front()) / (v0_nodes_[1] - v0_nodes_[0]);
    peak = static_cast<std::size_t>(std::clamp(std::round(pos), 0.0, static_cast<double>(n - 1)));
  }
  const double top = ll(v0_nodes_[peak]);
  double sum = 1.0;
  for (std::size_t k = peak; k-- > 0;) {
    const double d = ll(v0_nodes_[k]) - top;
    if (d < -kTailCut) {
      break;
    }
    sum += std::exp(d);
  }
  for (std::size_t k = peak + 1; k < n; ++k) {
    const double d = ll(v0_nodes_[k]) - top;
    if (d < -kTailCut) {
      break;
    }
    sum += std::exp(d);
  }
  NodeStats s{top + std::log(sum) + log_dv_, top, top};
  if (track) {
    s.ll_min = std::min(ll(v0_nodes_.front()), ll(v0_nodes_.back()));
  }
  return s;
}

std::vector<RvIntegrator::NodeStats> RvIntegrator::all_nodes(std::span<const double> weights,
                                                             bool track) const {
  if (weights.size() != data_.size()) {
    throw UsageError("one weight per datum is required");
  }
  for (const double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw UsageError("likelihood weights must be finite and non-negative");
    }
  }
  std::vector<NodeStats> out(n_period_);
  detail::parallel_for(n_period_, cfg_.threads,
                       [&](std::size_t j) { out[j] = node_integral(j, weights, track); });
  return out;
}

LogIntegral RvIntegrator::log_integral(std::span<const double> weights) const {
  LogSumAccumulator acc;
  for (const NodeStats& s : all_nodes(weights, false)) {
    acc.add(s.log_value);
  }
  const double shape = planet_ ? acc.value() + std::log(step_) : acc.value();
  return {shape, baseline_.log_constant};
}

double RvIntegrator::log_like(std::span<const double> theta,
                              std::span<const std::size_t> indices) const {
  double sum = 0.0;
  Planet p = planet_.value_or(Planet{});
  if (planet_) {
    if (!(theta[1] > 0.0)) {
      return kNegInf;
    }
    p.period = theta[1];
  }
  for (const std::size_t i : indices) {
    const double signal = planet_ ? planet_signal(p, data_.times.at(i)) : 0.0;
    sum += normal_log_pdf(data_.values.at(i), theta[0] + signal, data_.sigma_e);
  }
  return sum;
}

std::optional<std::size_t> RvIntegrator::grid_points_per_dim() const {
  if (!planet_ || n_period_ == v0_nodes_.size()) {
    return v0_nodes_.size();
  }
  return std::nullopt;
}

EvidenceResult RvIntegrator::evidence() const {
  const std::vector<double> ones(data_.size(), 1.0);
  LogSumAccumulator acc;
  double ll_min = kInf;
  double ll_max = kNegInf;
  for (const NodeStats& s : all_nodes(ones, true)) {
    acc.add(s.log_value);
    ll_min = std::min(ll_min, s.ll_min);
    ll_max = std::max(ll_max, s.ll_max);
  }
  const double shape = planet_ ? acc.value() + std::log(step_) : acc.value();
  EvidenceResult r;
  r.log_z = shape + baseline_.log_constant;
  r.method = EvidenceMethod::grid;
  r.grid_points_per_dim = grid_points_per_dim();
  r.truncation_note = "uniform prior box, integrated in full";
  r.log_like_min = ll_min;
  r.log_like_max = ll_max;
  return r;
}

bool RvIntegrator::on_period_lattice(double p) const {
  if (!planet_ || step_ != cfg_.period_step) {
    return false;
  }
  const std::size_t k = lattice_count(p, step_, cfg_.min_period_points);
  return k > 0 && k <= n_period_;
}

std::vector<double> RvIntegrator::prefix_log_evidence(std::span<const double> p_maxes) const {
  std::vector<std::size_t> counts;
  for (const double p : p_maxes) {
    if (!on_period_lattice(p)) {
      throw UsageError(fmt::format("P_max = {} is not on this integrator's period lattice", p));
    }
    counts.push_back(lattice_count(p, step_, cfg_.min_period_points));
  }
  const std::size_t needed = counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
  const std::vector<double> ones(data_.size(), 1.0);
  // Running log-sum after each node; a fresh integrator over [0, p] adds the
  // same values in the same order, so the prefixes match it bit for bit.
  std::vector<double> running(needed);
  LogSumAccumulator acc;
  const std::vector<NodeStats> nodes = all_nodes(ones, false);
  for (std::size_t j = 0; j < needed; ++j) {
    acc.add(nodes[j].log_value);
    running[j] = acc.value();
  }
  const double log_step = std::log(step_);
  const double log_v0 = std::log(cfg_.v0_bounds.width());
  std::vector<double> out;
  out.reserve(p_maxes.size());
  for (std::size_t q = 0; q < p_maxes.size(); ++q) {
    const double shape = running[counts[q] - 1] + log_step;
    const double constant = -(log_v0 + std::log(p_maxes[q]));
    out.push_back(shape + constant);
  }
  return out;
}

EvidenceResult evidence_zero_planet(const RvDataset& data, const RvGridConfig& cfg) {
  return RvIntegrator(data, cfg).evidence();
}

EvidenceResult evidence_one_planet(const RvDataset& data, const Planet& fixed, double p_max,
                                   const RvGridConfig& cfg) {
  return RvIntegrator(data, fixed, p_max, cfg).evidence();
}

std::vector<double> one_planet_log_evidences(const RvDataset& data, const Planet& fixed,
                                             std::span<const double> p_maxes,
                                             const RvGridConfig& cfg) {
  cfg.validate();
  double span = 0.0;
  for (const double p : p_maxes) {
    if (lattice_count(p, cfg.period_step, cfg.min_period_points) > 0) {
      span = std::max(span, p);
    }
  }
  std::vector<double> out(p_maxes.size());
  std::vector<double> lattice_p;
  std::vector<std::size_t> lattice_at;
  for (std::size_t q = 0; q < p_maxes.size(); ++q) {
    if (span > 0.0 && lattice_count(p_maxes[q], cfg.period_step, cfg.min_period_points) > 0) {
      lattice_p.push_back(p_maxes[q]);
      lattice_at.push_back(q);
    } else {
      out[q] = evidence_one_planet(data, fixed, p_maxes[q], cfg).log_z;
    }
  }
  if (!lattice_p.empty()) {
    const RvIntegrator master(data, fixed, span, cfg);
    const std::vector<double> z = master.prefix_log_evidence(lattice_p);
    for (std::size_t k = 0; k < z.size(); ++k) {
      out[lattice_at[k]] = z[k];
    }
  }
  return out;
}

std::vector<PmaxPoint> bf10_vs_pmax(const RvDataset& data, const Planet& fixed,
                                    std::span<const double> p_maxes, const RvGridConfig& cfg) {
  const double z0 = evidence_zero_planet(data, cfg).log_z;
  const std::vector<double> z1 = one_planet_log_evidences(data, fixed, p_maxes, cfg);
  std::vector<PmaxPoint> out;
  for (std::size_t q = 0; q < p_maxes.size(); ++q) {
    out.push_back({p_maxes[q], z1[q], z0, z1[q] - z0});
  }
  return out;
}

EvidenceResult hierarchical_pmax_evidence(const RvDataset& data, const Planet& fixed,
                                          const Interval& window, double hyper_step,
                                          const RvGridConfig& cfg) {
  if (!(window.lower > 0.0) || !(window.upper >= window.lower) || !window.is_finite()) {
    throw UsageError("P_max hyper window must satisfy 0 < lower <= upper < inf");
  }
  if (!(hyper_step > 0.0)) {
    throw UsageError("hyper grid step must be > 0");
  }
  HyperPriorSpec hyper;
  const double width = window.width();
  const auto n = static_cast<std::size_t>(std::max(0.0, std::round(width / hyper_step)));
  if (n == 0) {
    hyper.grid = {window.lower};
  } else {
    const double h = width / static_cast<double>(n);
    for (std::size_t k = 0; k <= n; ++k) {
      hyper.grid.push_back(k == n ? window.upper : window.lower + static_cast<double>(k) * h);
    }
  }
  const std::vector<double> log_zs = one_planet_log_evidences(data, fixed, hyper.grid, cfg);
  EvidenceResult r = hierarchical_evidence(hyper, log_zs);
  r.truncation_note = fmt::format("uniform hyperprior on [{}, {}] over {} nodes", window.lower,
                                  window.upper, hyper.grid.size());
  return r;
}

std::vector<IdeaPoint> rv_likelihood_prior_bf(const RvDataset& data, const Planet& fixed,
                                              LikelihoodPriorIdea idea, double p_window,
                                              std::span<const std::size_t> n_values,
                                              const RvGridConfig& cfg) {
  const RvIntegrator m1(data, fixed, p_window, cfg);
  const RvIntegrator m0(data, cfg);
  const std::size_t T = data.size();
  if (idea == LikelihoodPriorIdea::idea1) {
    return {{T, idea1_evidence(m1).log_z - idea1_evidence(m0).log_z}};
  }
  const std::size_t n_hi = idea == LikelihoodPriorIdea::idea2 ? T : T - 1;
  std::vector<std::size_t> ns(n_values.begin(), n_values.end());
  if (ns.empty()) {
    ns.resize(n_hi);
    std::iota(ns.begin(), ns.end(), std::size_t{1});
  }
  std::vector<IdeaPoint> out;
  for (const std::size_t n : ns) {
    if (n < 1 || n > n_hi) {
      throw UsageError(fmt::format("prior data count {} outside 1..{}", n, n_hi));
    }
    std::vector<std::size_t> prefix(n);
    std::iota(prefix.begin(), prefix.end(), std::size_t{0});
    double lbf = 0.0;
    if (idea == LikelihoodPriorIdea::idea2) {
      lbf = likelihood_prior_evidence(m1, prefix).log_z - likelihood_prior_evidence(m0, prefix).log_z;
    } else {
      const DataPartition part = DataPartition::from_train(T, prefix);
      lbf = subset_prior_evidence(m1, part).log_z - subset_prior_evidence(m0, part).log_z;
    }
    out.push_back({n, lbf});
  }
  return out;
}

}  // namespace bayesev
