// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "bayesev/conjugate.hpp"
#include "bayesev/config.hpp"
#include "bayesev/criteria.hpp"
#include "bayesev/csv.hpp"
#include "bayesev/discrete.hpp"
#include "bayesev/exoplanet.hpp"
#include "bayesev/experiments.hpp"
#include "bayesev/objective.hpp"
#include "bayesev/quadrature.hpp"
#include "bayesev/rng.hpp"
#include "oracles.hpp"

using namespace bayesev;
namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Outcome {
  bool pass = false;
  std::string detail;
};

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// Runs an experiment through the same entry point as the CLI and loads one table.
struct Table {
  CsvData data;

  [[nodiscard]] std::size_t col(const std::string& name) const {
    const auto it = std::find(data.header.begin(), data.header.end(), name);
    if (it == data.header.end()) {
      throw std::runtime_error("missing column " + name);
    }
    return static_cast<std::size_t>(it - data.header.begin());
  }
  [[nodiscard]] std::vector<double> num(const std::string& name) const {
    const std::size_t c = col(name);
    std::vector<double> out;
    for (const auto& r : data.rows) {
      out.push_back(std::stod(r[c]));
    }
    return out;
  }
};

fs::path run_dir(const std::string& command, const std::vector<std::pair<std::string, std::string>>& set) {
  const fs::path dir = fs::temp_directory_path() / ("bayesev_acceptance_" + command);
  fs::remove_all(dir);
  fs::create_directories(dir);
  Config cfg = default_config(command);
  cfg.set("seed", "1");
  cfg.set("out", dir.string());
  cfg.set("threads", std::to_string(workers()));
  for (const auto& [k, v] : set) {
    cfg.set(k, v);
  }
  run_experiment(command, cfg);
  return dir;
}

Table load(const fs::path& p) { return Table{read_csv(p)}; }

// 1 -------------------------------------------------------------------------
Outcome closed_form_vs_quadrature() {
  double worst = 0.0;
  std::size_t cases = 0;
  auto track = [&](double exact, double quad) {
    worst = std::max(worst, std::abs(exact - quad) / std::max(1.0, std::abs(exact)));
    ++cases;
  };

  const std::vector<double> y = {2.078, 1.2, 3.1, 0.4};
  for (const double s0 : {0.3, 1.0, 3.0, 10.0, 100.0, 1000.0}) {
    for (const double mu0 : {-1.0, 0.0, 2.0}) {
      const GaussianMeanModel m{1.0, mu0, s0};
      const BayesModel bm = gaussian_mean_bayes_model(m, y);
      track(gaussian_mean_log_evidence(m, y).log_z,
            evidence_grid(bm, GridSpec::uniform(bm.space.window, 200001)).log_z);
    }
  }

  Eigen::VectorXd yr(4);
  yr << 0.3, 1.9, 2.2, 4.4;
  Eigen::MatrixXd X(4, 2);
  X << 1, 1, 1, 2, 1, 3, 1, 4;
  for (const double s : {0.5, 1.0, 3.0, 10.0}) {
    const LinRegModel lr = LinRegModel::with_prior_sd(X, 1.0, Eigen::Vector2d(s, 1.0));
    const BayesModel bm = linreg_bayes_model(lr, yr);
    track(linreg_log_evidence(lr, yr).log_z,
          evidence_grid(bm, GridSpec::uniform(bm.space.window, 2000)).log_z);
  }

  const std::vector<Counts> counts = {{3}, {1, 2, 0, 4}, {7, 9, 8, 6, 10, 12}, {0, 0, 1}};
  for (const Counts& c : counts) {
    const auto poisson = [&c](double upper, bool proper) {
      BayesModel bm;
      bm.space = ParamSpace::box({{0.0, upper}});
      bm.n_data = c.size();
      bm.point_log_like = [&c](std::span<const double> th, std::size_t i) {
        const double k = static_cast<double>(c[i]);
        return (k > 0 ? k * std::log(th[0]) : 0.0) - th[0] - std::lgamma(k + 1.0);
      };
      if (proper) {
        bm.log_prior = [upper](std::span<const double>) { return -std::log(upper); };
        bm.prior_is_proper = true;
      }
      return evidence_grid(bm, GridSpec::uniform(bm.space.window, 200001)).log_z;
    };
    for (const double L : {5.0, 20.0, 100.0}) {
      track(poisson_log_evidence(c, PoissonPrior::uniform(L)), poisson(L, true));
    }
    // The improper-prior integrand is negligible past 200 for these counts.
    track(poisson_log_evidence(c, PoissonPrior::improper()), poisson(200.0, false));

    BayesModel g;
    g.space = ParamSpace::box({{0.0, 1.0}});
    g.n_data = c.size();
    g.point_log_like = [&c](std::span<const double> th, std::size_t i) {
      return std::log(th[0]) + static_cast<double>(c[i]) * std::log1p(-th[0]);
    };
    g.log_prior = [](std::span<const double>) { return 0.0; };
    g.prior_is_proper = true;
    track(geometric_log_evidence(c), evidence_grid(g, GridSpec::uniform({{0.0, 1.0}}, 200001)).log_z);
  }
  return {worst < 1e-6, fmt::format("{} cases, worst relative gap {:.3g} (need < 1e-6)", cases, worst)};
}

// 2 -------------------------------------------------------------------------
Outcome lindley_shrinkage() {
  const std::vector<double> y = {2.078};
  double prev = kInf;
  bool decreasing = true;
  std::string zs;
  for (const double s0 : {3.0, 10.0, 100.0, 1e3, 1e4}) {
    const double lz = gaussian_mean_log_evidence({1.0, 0.0, s0}, y).log_z;
    decreasing = decreasing && lz < prev;
    prev = lz;
    zs += fmt::format(" {:.4f}", lz);
  }
  const double shift = std::abs(gaussian_mean_posterior({1.0, 0.0, 100.0}, y).mean -
                                gaussian_mean_posterior({1.0, 0.0, 1e4}, y).mean);
  return {decreasing && shift < 1e-3,
          fmt::format("log Z:{}; posterior mean shift {:.3g}", zs, shift)};
}

// 3, 4 ----------------------------------------------------------------------
Outcome shared_prior_stability() {
  const fs::path dir = run_dir("exp2", {{"exp2.sigma0_values", "0.1,1,10,100,1000,10000,100000,1000000"},
                                        {"exp2.r2_samples", "1000"},
                                        {"exp2.avg_runs", "2"}});
  const Table t = load(dir / "exp2_bf01_vs_sigma0.csv");
  const auto s0 = t.num("sigma0");
  const auto bf = t.num("log_bf01");
  double at3 = kNaN;
  double at6 = kNaN;
  bool below = true;
  for (std::size_t i = 0; i < s0.size(); ++i) {
    at3 = s0[i] == 1e3 ? bf[i] : at3;
    at6 = s0[i] == 1e6 ? bf[i] : at6;
    below = below && bf[i] < 0.0;
  }
  const double gap = std::abs(at3 - at6);
  return {gap < 0.05 && below,
          fmt::format("log BF01(1e3) = {:.5f}, log BF01(1e6) = {:.5f}, gap {:.3g}; BF01 < 1 at all "
                      "{} sigma0: {}",
                      at3, at6, gap, s0.size(), below ? "yes" : "no")};
}

Outcome varying_sigma1() {
  const fs::path dir = run_dir("exp2", {{"exp2.r2_samples", "1000"}, {"exp2.avg_runs", "2"}});
  const Table t = load(dir / "exp2_bf01_vs_sigma1.csv");
  const auto s1 = t.num("sigma1");
  const auto bf = t.num("log_bf01");
  const auto z0 = t.num("log_z0");
  const auto [lo, hi] = std::minmax_element(z0.begin(), z0.end());
  const double spread = *hi - *lo;
  std::string where = "none";
  bool crosses = false;
  for (std::size_t i = 1; i < s1.size(); ++i) {
    if ((bf[i - 1] < 0.0) != (bf[i] < 0.0)) {
      where = fmt::format("between {} and {}", s1[i - 1], s1[i]);
      crosses = crosses || (s1[i - 1] >= 100.0 && s1[i] <= 1e4);
    }
  }
  return {crosses && spread <= 1e-12,
          fmt::format("BF01 crosses 1 {}; log Z0 spread {:.3g}", where, spread)};
}

// 5 -------------------------------------------------------------------------
Outcome uip_identity() {
  Rng rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 4 + trial % 7;
    const Eigen::Index d = 1 + trial % 3;
    Eigen::MatrixXd X(n, d);
    for (Eigen::Index i = 0; i < X.size(); ++i) {
      X.data()[i] = rng.normal();
    }
    const double sigma = 0.5 + rng.uniform();
    const LinRegModel base = LinRegModel::with_prior_sd(X, sigma, Eigen::VectorXd::Ones(d));
    const LinRegModel uip = with_prior(base, uip_prior(base, Eigen::VectorXd::Zero(d)));
    worst = std::max(worst, std::abs(prior_expected_snr(uip) - static_cast<double>(d)));
  }
  return {worst < 1e-10, fmt::format("20 designs, worst |SNR - D_theta| = {:.3g}", worst)};
}

// 6 -------------------------------------------------------------------------
Outcome lindley_bands() {
  const std::vector<double> ls = {10, 100, 1000, 1e4, 1e5, 1e6};
  const SweepResult r30 = lindley_sweep(2.0, 30, ls, 100, 1, workers());
  const SweepResult r100 = lindley_sweep(2.0, 100, ls, 100, 1, workers());
  std::size_t worst100 = 0;
  for (const auto& row : r100.rows) {
    worst100 = std::max(worst100, row.errors);
  }
  const std::size_t e_hi = r30.rows.back().errors;
  const std::size_t e_lo = r30.rows.front().errors;
  return {e_hi >= 90 && e_lo <= 10 && worst100 <= 12,
          fmt::format("D_y=30: errors(L=1e6) = {}, errors(L=10) = {}; D_y=100 worst cell {}", e_hi,
                      e_lo, worst100)};
}

// 7 -------------------------------------------------------------------------
Outcome ibf_bands() {
  std::size_t worst_m1 = 0;
  for (const double theta : {2.0, 5.0}) {
    for (const std::size_t dy : {30, 100}) {
      worst_m1 = std::max(
          worst_m1,
          ibf_experiment(TrueModel::poisson, theta, dy, 100, 1, IbfMode::one_sided, workers()).errors);
    }
  }
  const std::size_t one =
      ibf_experiment(TrueModel::geometric, 0.8, 30, 100, 1, IbfMode::one_sided, workers()).errors;
  const std::size_t sym =
      ibf_experiment(TrueModel::geometric, 0.8, 30, 100, 1, IbfMode::symmetric, workers()).errors;
  return {worst_m1 <= 3 && one >= 50 && one <= 80 && sym <= 30,
          fmt::format("M1 true worst cell {}; M2 true one-sided {}, symmetric {}", worst_m1, one,
                      sym)};
}

// 8 -------------------------------------------------------------------------
Outcome kepler() {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double worst = 0.0;
  for (int i = 0; i < 40; ++i) {
    for (int j = 0; j < 25; ++j) {
      const double M = two_pi * i / 40.0;
      const double e = 0.95 * j / 24.0;
      const KeplerSolution s = solve_kepler(M, e);
      worst = std::max(worst, std::abs(s.E - e * std::sin(s.E) - M));
    }
  }
  bool exact = true;
  for (const double M : {0.0, 0.7, 3.0, 5.5}) {
    exact = exact && solve_kepler(M, 0.0).E == M;
  }
  Rng rng(8);
  double gap = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double M = two_pi * rng.uniform();
    const double e = 0.95 * rng.uniform();
    gap = std::max(gap, std::abs(solve_kepler(M, e).E - oracle::kepler_bisect(M, e)));
  }
  return {worst < 1e-12 && exact && gap < 1e-10,
          fmt::format("lattice residual {:.3g}; e = 0 exact: {}; bisection gap {:.3g}", worst,
                      exact ? "yes" : "no", gap)};
}

// 9, 10, 11 -----------------------------------------------------------------
struct Exp4 {
  Table pmax;
  Table hier;
  Table ideas;
};

const Exp4& exp4() {
  static const Exp4 e = [] {
    const fs::path dir = run_dir("exp4", {});
    return Exp4{load(dir / "exp4_bf10_vs_pmax.csv"), load(dir / "exp4_hierarchical.csv"),
                load(dir / "exp4_idea_curves.csv")};
  }();
  return e;
}

Outcome bf_curve() {
  const Table& t = exp4().pmax;
  const auto p = t.num("pmax");
  const auto bf = t.num("log_bf10");
  const auto z1 = t.num("log_z1");
  auto at = [&](double v) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] == v) {
        return bf[i];
      }
    }
    throw std::runtime_error(fmt::format("P_max {} not in the sweep", v));
  };
  const bool favour = at(20) > 0 && at(50) > 0 && at(100) > 0;
  const bool against = at(365) < 0 && at(5) < 0;
  bool decreasing = true;
  double prev = kInf;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] >= 100) {
      decreasing = decreasing && z1[i] < prev;
      prev = z1[i];
    }
  }
  return {favour && against && decreasing,
          fmt::format("log BF10 at P_max 5/20/50/100/365 = {:.2f}/{:.2f}/{:.2f}/{:.2f}/{:.2f}; "
                      "Z1 decreasing from 100: {}",
                      at(5), at(20), at(50), at(100), at(365), decreasing ? "yes" : "no")};
}

Outcome hierarchical_rescue() {
  const Table& t = exp4().hier;
  const double zn = t.num("log_z_new1").at(0);
  const double z0 = t.num("log_z0").at(0);
  return {zn > z0, fmt::format("log Z_new1 = {:.4f}, log Z0 = {:.4f} over U[{}, {}]", zn, z0,
                               t.num("hyper_lower").at(0), t.num("hyper_upper").at(0))};
}

Outcome idea_curves() {
  const Table& t = exp4().ideas;
  const std::size_t ci = t.col("idea");
  const auto n = t.num("n");
  const auto bf = t.num("log_bf10");
  std::vector<double> i2(n.size() + 1, kNaN);
  std::vector<double> i3(n.size() + 1, kNaN);
  double i1 = kNaN;
  std::size_t dy = 0;
  bool positive = true;
  for (std::size_t r = 0; r < n.size(); ++r) {
    const std::string& idea = t.data.rows[r][ci];
    const auto k = static_cast<std::size_t>(n[r]);
    if (idea == "idea1") {
      i1 = bf[r];
      dy = k;
    } else {
      (idea == "idea2" ? i2 : i3)[k] = bf[r];
      positive = positive && bf[r] > 0;
    }
  }
  bool ordered = true;
  std::size_t compared = 0;
  for (std::size_t k = 0; k < i2.size(); ++k) {
    if (!std::isnan(i2[k]) && !std::isnan(i3[k])) {
      ordered = ordered && i2[k] >= i3[k];
      ++compared;
    }
  }
  const double gap = std::abs(i2.at(dy) - i1);
  return {positive && ordered && compared > 0 && gap < 1e-9,
          fmt::format("all sequential log BF10 > 0: {}; idea2 >= idea3 at {} prefixes: {}; "
                      "|idea2(D_y) - idea1| = {:.3g}",
                      positive ? "yes" : "no", compared, ordered ? "yes" : "no", gap)};
}

// 12 ------------------------------------------------------------------------
Outcome identity_suite() {
  std::vector<std::string> failed;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) {
      failed.push_back(what);
    }
  };

  const std::vector<double> y = {0.8, 1.9, 1.1, 2.6, 1.4};
  const GaussianMeanModel gm{1.0, 0.0, 5.0};
  const BayesModel bm = gaussian_mean_bayes_model(gm, y);
  const GridSpec grid = GridSpec::uniform(bm.space.window, 4001);
  const GridIntegrator flat(bm, grid);
  const Counts c = {3, 1, 4, 1, 5};
  const PoissonIntegrator pois(c, PoissonPrior::improper());

  for (const LikelihoodIntegrator* integ : {static_cast<const LikelihoodIntegrator*>(&flat),
                                            static_cast<const LikelihoodIntegrator*>(&pois)}) {
    expect(tempered_evidence(*integ, 1.0).log_z == idea1_evidence(*integ).log_z,
           "tempered(1) != idea1");
    expect(fractional_evidence(*integ, 1.0).log_z == 0.0, "fractional(1) != 1");
    std::vector<std::size_t> all(integ->n_data());
    for (std::size_t i = 0; i < all.size(); ++i) {
      all[i] = i;
    }
    expect(std::abs(posterior_predictive_log(*integ, all, all) - idea1_evidence(*integ).log_z) <
               1e-10,
           "posterior predictive(y | y) != idea1");
  }

  // Same likelihoods under baselines that differ only by a constant.
  const BayesModel bm2 = gaussian_mean_bayes_model({1.0, 0.5, 5.0}, y);
  const std::vector<std::size_t> train = {1, 3};
  BayesFactorReport pbf0;
  BayesFactorReport fbf0;
  bool first = true;
  for (const double shift : {0.0, 4.25, -730.5, 1e6}) {
    const GridIntegrator a(bm, grid, BaselinePrior::flat(shift));
    const GridIntegrator b(bm2, grid, BaselinePrior::flat(-shift));
    const BayesFactorReport pbf = partial_bf(a, b, train);
    const BayesFactorReport fbf = fractional_bf(a, b);
    if (first) {
      pbf0 = pbf;
      fbf0 = fbf;
      first = false;
    }
    expect(pbf.log_bf == pbf0.log_bf, fmt::format("PBF moved under shift {}", shift));
    expect(fbf.log_bf == fbf0.log_bf, fmt::format("FBF moved under shift {}", shift));
  }

  for (std::int64_t v = 0; v <= 50; ++v) {
    const Counts one = {v};
    expect(poisson_log_evidence(one, PoissonPrior::improper()) == 0.0,
           fmt::format("Poisson single datum {} evidence != 1", v));
  }

  // Box prior: uniform on [-delta/2, delta/2]^2 against the decomposition.
  const double obs[2] = {0.3, -0.5};
  for (const double delta : {1.0, 2.0, 5.0}) {
    const std::vector<Interval> box = {{-delta / 2, delta / 2}, {-delta / 2, delta / 2}};
    BayesModel like;
    like.space = ParamSpace::box(box);
    like.n_data = 2;
    like.point_log_like = [&obs](std::span<const double> th, std::size_t i) {
      return oracle::normal_log_pdf(obs[i], th[i], 0.7);
    };
    BayesModel prior = like;
    prior.log_prior = [delta](std::span<const double>) { return -2.0 * std::log(delta); };
    prior.prior_is_proper = true;
    const GridSpec g = GridSpec::uniform(box, 801);
    const BoxPenalty d = box_penalty_decomposition(delta, 2, evidence_grid(like, g).log_z);
    expect(std::abs(d.log_z - evidence_grid(prior, g).log_z) < 1e-8,
           fmt::format("box decomposition off at delta {}", delta));
  }

  // Occam factor and evidence bounds over a zoo of proper-prior grid evidences.
  std::vector<BayesModel> zoo;
  for (const double s0 : {0.1, 1.0, 10.0, 100.0}) {
    zoo.push_back(gaussian_mean_bayes_model({1.0, -1.0, s0}, y));
  }
  Eigen::VectorXd yr(4);
  yr << 0.3, 1.9, 2.2, 4.4;
  Eigen::MatrixXd X(4, 2);
  X << 1, 1, 1, 2, 1, 3, 1, 4;
  for (const double s : {0.5, 5.0}) {
    zoo.push_back(linreg_bayes_model(LinRegModel::with_prior_sd(X, 1.0, Eigen::Vector2d(s, s)), yr));
  }
  for (const double L : {3.0, 30.0}) {
    BayesModel pm;
    pm.space = ParamSpace::box({{0.0, L}});
    pm.n_data = c.size();
    pm.point_log_like = [&c](std::span<const double> th, std::size_t i) {
      const double k = static_cast<double>(c[i]);
      return (k > 0 ? k * std::log(th[0]) : 0.0) - th[0] - std::lgamma(k + 1.0);
    };
    pm.log_prior = [L](std::span<const double>) { return -std::log(L); };
    pm.prior_is_proper = true;
    zoo.push_back(pm);
  }
  for (std::size_t m = 0; m < zoo.size(); ++m) {
    const std::size_t pts = zoo[m].space.dims() == 1 ? 4001 : 401;
    const EvidenceResult z = evidence_grid(zoo[m], GridSpec::uniform(zoo[m].space.window, pts));
    const bool in = bounds_check(z.log_z, *z.log_like_min, *z.log_like_max);
    const double w = occam_factor(z.log_z, *z.log_like_max);
    expect(in && w > 0.0 && w <= 1.0, fmt::format("zoo model {} breaks W or the bounds", m));
  }

  return {failed.empty(), failed.empty() ? fmt::format("all identities hold; zoo of {} models", zoo.size())
                                         : fmt::format("{} broken, first: {}", failed.size(), failed[0])};
}

// 13 ------------------------------------------------------------------------
Outcome criteria_arithmetic() {
  struct Triple {
    double ll;
    std::size_t dt;
    std::size_t dy;
  };
  bool ok = true;
  for (const Triple t : {Triple{0.0, 2, 100}, Triple{-12.5, 1, 50}, Triple{-340.25, 5, 1000}}) {
    const double fit = -2.0 * t.ll;
    const double dt = static_cast<double>(t.dt);
    const double n = static_cast<double>(t.dy);
    ok = ok && info_criterion(t.ll, t.dt, t.dy, CriterionKind::bic) == fit + std::log(n) * dt;
    ok = ok && info_criterion(t.ll, t.dt, t.dy, CriterionKind::aic) == fit + 2.0 * dt;
    ok = ok && info_criterion(t.ll, t.dt, t.dy, CriterionKind::hqic) ==
                   fit + 2.0 * std::log(std::log(n)) * dt;
  }
  ok = ok && info_criterion(0.0, 2, 100, CriterionKind::bic) == 2.0 * std::log(100.0);
  ok = ok && info_criterion(0.0, 2, 100, CriterionKind::aic) == 4.0;
  return {ok, fmt::format("BIC(0, 2, 100) = {:.6f}, AIC = {}",
                          info_criterion(0.0, 2, 100, CriterionKind::bic),
                          info_criterion(0.0, 2, 100, CriterionKind::aic))};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> check;
    double budget_s;  // 0 means no runtime requirement
  };
  const std::vector<Criterion> all = {
      {1, "closed form vs quadrature", closed_form_vs_quadrature, 10.0},
      {2, "Lindley-Bartlett shrinkage", lindley_shrinkage, 0.0},
      {3, "shared-prior stability", shared_prior_stability, 0.0},
      {4, "varying-sigma1 paradox", varying_sigma1, 0.0},
      {5, "UIP identity", uip_identity, 0.0},
      {6, "Lindley sweep bands", lindley_bands, 60.0},
      {7, "IBF bands", ibf_bands, 120.0},
      {8, "Kepler solver", kepler, 1.0},
      {9, "exoplanet BF curve", bf_curve, 300.0},
      {10, "hierarchical rescue", hierarchical_rescue, 0.0},
      {11, "likelihood-based-prior curves", idea_curves, 0.0},
      {12, "identity suite", identity_suite, 0.0},
      {13, "criteria arithmetic", criteria_arithmetic, 0.0},
  };
  int failures = 0;
  for (const Criterion& c : all) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0.0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += fmt::format("; over the {} s budget", c.budget_s);
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s  %2d  %-30s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failures, all.size());
  return failures == 0 ? 0 : 1;
}
