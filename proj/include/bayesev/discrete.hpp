#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bayesev/objective.hpp"
#include "bayesev/rng.hpp"

namespace bayesev {

using Counts = std::vector<std::int64_t>;

/// Prior on the Poisson rate: uniform on [0, L] or improper flat on [0, inf).
struct PoissonPrior {
  enum class Kind { uniform, improper_flat };
  Kind kind = Kind::improper_flat;
  double upper = 0.0;

  static PoissonPrior uniform(double upper);
  static PoissonPrior improper();
  void validate() const;
};

/// Closed-form log evidence of y_i ~ Poisson(theta). The improper case integrates
/// the bare likelihood over [0, inf).
double poisson_log_evidence(std::span<const std::int64_t> y, const PoissonPrior& prior);

/// Closed-form log evidence of y_i ~ phi (1 - phi)^y_i with phi ~ U[0, 1].
double geometric_log_evidence(std::span<const std::int64_t> y);

/// Poisson likelihood integrals in closed form (Gamma integral, incomplete
/// gamma when bounded). The uniform prior's 1/L enters as the baseline constant.
class PoissonIntegrator final : public LikelihoodIntegrator {
 public:
  PoissonIntegrator(Counts y, PoissonPrior prior);

  [[nodiscard]] LogIntegral log_integral(std::span<const double> weights) const override;
  [[nodiscard]] std::size_t n_data() const override { return y_.size(); }
  [[nodiscard]] const BaselinePrior& baseline() const override { return baseline_; }
  [[nodiscard]] double log_like(std::span<const double> theta,
                                std::span<const std::size_t> indices) const override;

 private:
  Counts y_;
  PoissonPrior prior_;
  BaselinePrior baseline_;
};

/// Geometric likelihood integrals in closed form (Beta integral), flat prior on [0, 1].
class GeometricIntegrator final : public LikelihoodIntegrator {
 public:
  explicit GeometricIntegrator(Counts y);

  [[nodiscard]] LogIntegral log_integral(std::span<const double> weights) const override;
  [[nodiscard]] std::size_t n_data() const override { return y_.size(); }
  [[nodiscard]] const BaselinePrior& baseline() const override { return baseline_; }
  [[nodiscard]] double log_like(std::span<const double> theta,
                                std::span<const std::size_t> indices) const override;

 private:
  Counts y_;
  BaselinePrior baseline_;
};

/// Exact inversion sampling.
std::int64_t sample_poisson(double theta, Rng& rng);
/// Number of failures before the first success.
std::int64_t sample_geometric(double phi, Rng& rng);

Counts sample_poisson_data(double theta, std::size_t n, Rng& rng);
Counts sample_geometric_data(double phi, std::size_t n, Rng& rng);

enum class IbfMode { one_sided, symmetric };
std::string to_string(IbfMode mode);

/// log IBF12 averaged over all single-datum training sets.
/// one_sided: mean_i Z1(y)/Z1(y_i) / Z2(y).
/// symmetric: mean_i [Z1(y)/Z1(y_i)] / [Z2(y)/Z2(y_i)].
double log_intrinsic_bf(const LikelihoodIntegrator& m1, const LikelihoodIntegrator& m2,
                        IbfMode mode);

/// Poisson (improper flat) against geometric.
double log_ibf12(std::span<const std::int64_t> y, IbfMode mode);

/// One sweep cell: min/max BF12 and error counts over seeded runs.
struct SweepRow {
  double param = 0.0;
  std::size_t dy = 0;
  double min_bf = 0.0;
  double max_bf = 0.0;
  std::size_t errors = 0;
  std::size_t runs = 0;
  std::uint64_t seed = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// BF12 = Z1(L) / Z2 on Poisson(theta_true) data. A run is an error when BF12 < 1.
/// Run r uses Rng::stream(seed, r) for every L, so cells share their datasets.
SweepResult lindley_sweep(double theta_true, std::size_t dy, std::span<const double> l_values,
                          std::size_t n_runs, std::uint64_t seed, unsigned threads = 1);

enum class TrueModel { poisson, geometric };

/// IBF12 over seeded runs. Errors: IBF12 < 1 when the Poisson model is true,
/// IBF12 > 1 when the geometric model is true. A tie counts as no error.
SweepRow ibf_experiment(TrueModel truth, double true_param, std::size_t dy, std::size_t n_runs,
                        std::uint64_t seed, IbfMode mode, unsigned threads = 1);

}  // namespace bayesev
