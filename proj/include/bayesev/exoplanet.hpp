#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bayesev/core.hpp"
#include "bayesev/objective.hpp"

namespace bayesev {

/// Keplerian orbit elements of one companion. Times and periods in days.
struct Planet {
  double k = 0.0;       // semi-amplitude (m/s), >= 0
  double omega = 0.0;   // longitude of periastron (rad)
  double e = 0.0;       // eccentricity in [0, 1)
  double period = 1.0;  // days, > 0
  double tau = 0.0;     // time of periastron passage (days)

  void validate() const;
};

struct RvParams {
  double v0 = 0.0;
  std::vector<Planet> planets;

  void validate() const;
};

struct RvDataset {
  std::vector<double> times;
  std::vector<double> values;
  double sigma_e = 1.0;

  [[nodiscard]] std::size_t size() const { return times.size(); }
  /// Strictly increasing times, equal lengths, sigma_e > 0.
  void validate() const;
};

struct KeplerSolution {
  double E = 0.0;
  double residual = 0.0;  // |E - e sin E - M| at the reduced M
  int iterations = 0;     // residual evaluations
};

/// Newton iteration on E - e sin E = M. M is reduced to [0, 2 pi) and the
/// result shifted back, so E(M + 2 pi) = E(M) + 2 pi. Starts from M when
/// e < 0.8 and from pi otherwise. Throws NumericalError on non-convergence.
KeplerSolution solve_kepler(double M, double e, double tol = 1e-12, int max_iter = 50);

/// u = 2 atan2(sqrt(1+e) sin(E/2), sqrt(1-e) cos(E/2)), in (-pi, pi].
double true_anomaly(double E, double e);

/// K [cos(u + omega) + e cos omega] at time t.
double planet_signal(const Planet& planet, double t);

/// V0 plus the signal of every planet.
double rv_model(const RvParams& params, double t);

double rv_log_likelihood(const RvParams& params, const RvDataset& data);

/// Noise is drawn from Rng(seed); sigma_e = 0 gives the noiseless curve.
RvDataset simulate_rv(const RvParams& truth, std::vector<double> times, double sigma_e,
                      std::uint64_t seed);

/// n epochs evenly spaced on [0, t_end], endpoints included.
std::vector<double> default_times(std::size_t n = 25, double t_end = 60.0);

struct RvGridConfig {
  Interval v0_bounds{-20.0, 20.0};
  std::size_t v0_points = 400;
  double period_step = 0.005;  // days between period nodes
  std::size_t min_period_points = 400;
  unsigned threads = 1;

  void validate() const;
};

/// Weighted likelihood integrals of the RV model over a uniform box prior.
///
/// Zero planets: integrates V0 over cfg.v0_bounds. One planet: integrates
/// (V0, P) over v0_bounds x [0, p_max] with K, omega, e, tau fixed. Both axes use
/// the midpoint rule. Residuals y_t - signal_t(P) are tabulated once per period
/// node; the V0 integrand then depends only on three weighted residual moments.
/// The uniform prior's normalizer is the baseline constant.
class RvIntegrator final : public LikelihoodIntegrator {
 public:
  RvIntegrator(RvDataset data, const RvGridConfig& cfg);
  RvIntegrator(RvDataset data, const Planet& fixed, double p_max, const RvGridConfig& cfg);

  [[nodiscard]] LogIntegral log_integral(std::span<const double> weights) const override;
  [[nodiscard]] std::size_t n_data() const override { return data_.size(); }
  [[nodiscard]] const BaselinePrior& baseline() const override { return baseline_; }
  /// theta = [V0] or [V0, P].
  [[nodiscard]] double log_like(std::span<const double> theta,
                                std::span<const std::size_t> indices) const override;
  [[nodiscard]] std::optional<std::size_t> grid_points_per_dim() const override;

  [[nodiscard]] bool has_planet() const { return planet_.has_value(); }
  [[nodiscard]] std::size_t period_points() const { return n_period_; }
  [[nodiscard]] double period_step() const { return step_; }

  /// Evidence under the uniform prior over the full box.
  [[nodiscard]] EvidenceResult evidence() const;

  /// log Z1 for the prior U[0, p] on P, for each p a multiple of the period step
  /// inside the box, from one pass over the period nodes.
  [[nodiscard]] std::vector<double> prefix_log_evidence(std::span<const double> p_maxes) const;

  /// True if p is a whole number of period steps within the box.
  [[nodiscard]] bool on_period_lattice(double p) const;

 private:
  struct NodeStats {
    double log_value;
    double ll_min;
    double ll_max;
  };
  [[nodiscard]] NodeStats node_integral(std::size_t node, std::span<const double> weights,
                                        bool track) const;
  [[nodiscard]] std::vector<NodeStats> all_nodes(std::span<const double> weights,
                                                 bool track) const;
  void tabulate();

  RvDataset data_;
  RvGridConfig cfg_;
  std::optional<Planet> planet_;
  double p_max_ = 0.0;
  double step_ = 0.0;
  std::size_t n_period_ = 1;
  std::vector<double> resid_;  // period-node-major y_t - signal_t(P)
  std::vector<double> v0_nodes_;
  double log_dv_ = 0.0;
  BaselinePrior baseline_;
};

EvidenceResult evidence_zero_planet(const RvDataset& data, const RvGridConfig& cfg = {});

/// V0 ~ U(v0_bounds), P ~ U[0, p_max]; K, omega, e, tau held at `fixed`.
EvidenceResult evidence_one_planet(const RvDataset& data, const Planet& fixed, double p_max,
                                   const RvGridConfig& cfg = {});

struct PmaxPoint {
  double p_max = 0.0;
  double log_z1 = 0.0;
  double log_z0 = 0.0;
  double log_bf10 = 0.0;
};

/// log Z1 for each p_max. Values on the period lattice share one master profile;
/// the rest get their own grid.
std::vector<double> one_planet_log_evidences(const RvDataset& data, const Planet& fixed,
                                             std::span<const double> p_maxes,
                                             const RvGridConfig& cfg = {});

std::vector<PmaxPoint> bf10_vs_pmax(const RvDataset& data, const Planet& fixed,
                                    std::span<const double> p_maxes,
                                    const RvGridConfig& cfg = {});

/// Z_new,1 = int Z1(P_max) g_h(P_max) dP_max with g_h uniform on `window`,
/// integrated over hyper nodes spaced `hyper_step` apart.
EvidenceResult hierarchical_pmax_evidence(const RvDataset& data, const Planet& fixed,
                                          const Interval& window, double hyper_step = 1.0,
                                          const RvGridConfig& cfg = {});

enum class LikelihoodPriorIdea { idea1, idea2, idea3 };

struct IdeaPoint {
  std::size_t n = 0;
  double log_bf10 = 0.0;
};

/// Sequential likelihood-based-prior log BF10 with the first n observations
/// building the prior of both models, P ~ U[0, p_window]. idea1 gives one point at
/// n = D_y. Empty `n_values` means every valid n (1..D_y for idea2, 1..D_y-1 for idea3).
std::vector<IdeaPoint> rv_likelihood_prior_bf(const RvDataset& data, const Planet& fixed,
                                              LikelihoodPriorIdea idea, double p_window,
                                              std::span<const std::size_t> n_values = {},
                                              const RvGridConfig& cfg = {});

}  // namespace bayesev
