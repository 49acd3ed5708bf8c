#include "bayesev/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "bayesev/conjugate.hpp"
#include "bayesev/criteria.hpp"
#include "bayesev/csv.hpp"
#include "bayesev/discrete.hpp"
#include "bayesev/exoplanet.hpp"
#include "bayesev/quadrature.hpp"
#include "bayesev/rng.hpp"
#include "parallel.hpp"

namespace bayesev {

namespace fs = std::filesystem;

namespace {

const std::vector<Knob>& global_knobs() {
  static const std::vector<Knob> knobs = {
      {"seed", "", "base seed; required by commands that simulate data"},
      {"out", ".", "output directory"},
      {"threads", "1", "worker threads for Monte Carlo runs and grid rows"},
  };
  return knobs;
}

const std::vector<Knob>& own_knobs(std::string_view command) {
  static const std::vector<Knob> exp1 = {
      {"exp1.y", "2.078", "observations"},
      {"exp1.mu0", "0", "prior mean"},
      {"exp1.sigma", "1", "likelihood sd"},
      {"exp1.sigma0_values", "3,10,100,1000,10000", "prior sds to sweep"},
      {"exp1.theta_lower", "-6", "lower end of the density grid"},
      {"exp1.theta_upper", "10", "upper end of the density grid"},
      {"exp1.theta_points", "801", "density grid points"},
  };
  static const std::vector<Knob> exp2 = {
      {"exp2.x", "1,2,3,4", "design values x_i (D_y = their count)"},
      {"exp2.beta0", "1", "true intercept"},
      {"exp2.beta1", "1", "true slope"},
      {"exp2.sigma_like", "1", "noise sd"},
      {"exp2.sigma0_values", "0.1,1,10,100,1000,10000,100000,1000000",
       "sd of the intercept prior, swept with sigma1 fixed"},
      {"exp2.sigma1_fixed", "1", "slope prior sd during the sigma0 sweep"},
      {"exp2.sigma1_values",
       "0.1,1,10,30,100,200,300,500,1000,2000,5000,10000,100000,1000000",
       "sd of the slope prior, swept with sigma0 fixed"},
      {"exp2.sigma0_fixed", "1", "intercept prior sd during the sigma1 sweep"},
      {"exp2.r2_sigma_values", "0.001,0.01,0.1,0.3,1,3,10,100,1000,1000000",
       "common prior sd for the prior-expected SNR and R^2 curves"},
      {"exp2.r2_samples", "100000", "Monte Carlo samples per R^2 value"},
      {"exp2.avg_sigma_values", "0.1,0.2,0.5,1,2,5,10", "common prior sd for the averaged BF01"},
      {"exp2.avg_runs", "100", "simulated datasets per averaged BF01 value"},
  };
  static const std::vector<Knob> exp3 = {
      {"exp3.theta_true", "2", "Poisson rate of the simulated data"},
      {"exp3.dy_values", "10,30,50,100", "sample sizes of the Lindley sweep"},
      {"exp3.l_values", "10,100,1000,10000,100000,1000000", "upper ends L of the U[0,L] prior"},
      {"exp3.runs", "100", "simulated datasets per cell"},
      {"exp3.errors_l", "100000", "L of the errors-versus-D_y curve"},
      {"exp3.errors_dy_values", "10,20,30,40,50,60,70,80,90,100",
       "sample sizes of the errors-versus-D_y curve"},
      {"exp3.ibf_theta", "5,2", "Poisson rates for the IBF tables"},
      {"exp3.ibf_phi", "0.2,0.5,0.8", "geometric parameters for the IBF tables"},
      {"exp3.ibf_dy", "30,100", "sample sizes for the IBF tables"},
  };
  static const std::vector<Knob> exp4 = {
      {"exp4.data", "", "load t,y from this CSV instead of simulating (sidecar <stem>.cfg)"},
      {"exp4.v0", "5", "true V0"},
      {"exp4.k", "25", "true amplitude K"},
      {"exp4.omega", "0.61", "true omega"},
      {"exp4.e", "0.1", "true eccentricity"},
      {"exp4.period", "15", "true period (days)"},
      {"exp4.tau", "3", "true periastron time (days)"},
      {"exp4.dy", "25", "number of epochs"},
      {"exp4.t_end", "60", "epochs evenly spaced on [0, t_end] days"},
      {"exp4.sigma_e2", "15", "noise variance"},
      {"exp4.pmax_values", "5,10,15,20,30,50,100,150,200,250,300,365", "P_max sweep"},
      {"exp4.hyper_lower", "10", "lower end of the uniform P_max hyperprior"},
      {"exp4.hyper_upper", "365", "upper end of the uniform P_max hyperprior"},
      {"exp4.hyper_step", "1", "spacing of the hyper grid"},
      {"exp4.idea_window", "365", "P window for the likelihood-based priors"},
      {"exp4.v0_lower", "-20", "V0 prior lower bound"},
      {"exp4.v0_upper", "20", "V0 prior upper bound"},
      {"exp4.v0_points", "400", "V0 grid points"},
      {"exp4.period_step", "0.005", "period grid spacing (days)"},
      {"exp4.min_period_points", "400", "minimum period grid points"},
  };
  static const std::vector<Knob> criteria = {
      {"criteria.model", "gaussian_mean", "built-in model (gaussian_mean)"},
      {"criteria.dy", "50", "number of simulated observations"},
      {"criteria.true_mean", "0.5", "mean of the simulated data"},
      {"criteria.sigma", "1", "likelihood sd"},
      {"criteria.sigma0_values", "0.1,1,3,10,100,1000", "prior sds"},
      {"criteria.grid_points", "4001", "grid points for the bounds check"},
  };
  if (command == "exp1") return exp1;
  if (command == "exp2") return exp2;
  if (command == "exp3") return exp3;
  if (command == "exp4") return exp4;
  if (command == "criteria") return criteria;
  throw UsageError(fmt::format("unknown command '{}'", command));
}

std::uint64_t require_seed(const Config& cfg, std::string_view command) {
  const auto s = cfg.get("seed");
  if (!s || s->empty()) {
    throw UsageError(fmt::format("{} simulates data and needs an explicit --seed", command));
  }
  return cfg.get_u64("seed");
}

unsigned threads_of(const Config& cfg) {
  const auto t = cfg.get_u64("threads");
  return static_cast<unsigned>(std::clamp<std::uint64_t>(t, 1, 1024));
}

fs::path out_dir(const Config& cfg) { return fs::path(cfg.get_string("out")); }

std::string num(double v) { return format_double(v); }
std::string num(std::size_t v) { return std::to_string(v); }

fs::path emit(const Config& cfg, const std::string& name, const CsvTable& table) {
  const fs::path p = out_dir(cfg) / name;
  write_file_atomic(p, table.text());
  return p;
}

void require_nonempty(const std::vector<double>& v, const char* what) {
  if (v.empty()) {
    throw UsageError(fmt::format("{} must list at least one value", what));
  }
}

// exp2 helpers: M0 is intercept-only, M1 adds the slope.
struct RegressionSetup {
  Eigen::MatrixXd x0;
  Eigen::MatrixXd x1;
  double sigma_like = 1.0;
};

RegressionSetup regression_setup(const std::vector<double>& x, double sigma_like) {
  RegressionSetup s;
  const auto n = static_cast<Eigen::Index>(x.size());
  s.x0 = Eigen::MatrixXd::Ones(n, 1);
  s.x1 = Eigen::MatrixXd::Ones(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    s.x1(i, 1) = x[static_cast<std::size_t>(i)];
  }
  s.sigma_like = sigma_like;
  return s;
}

Eigen::VectorXd simulate_regression(const RegressionSetup& s, double b0, double b1, Rng& rng) {
  Eigen::VectorXd y(s.x1.rows());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    y(i) = b0 + b1 * s.x1(i, 1) + s.sigma_like * rng.normal();
  }
  return y;
}

struct RegressionEvidence {
  double log_z0;
  double log_z1;
};

RegressionEvidence regression_evidence(const RegressionSetup& s, const Eigen::VectorXd& y,
                                       double sigma0, double sigma1) {
  const auto m0 = LinRegModel::with_prior_sd(s.x0, s.sigma_like, Eigen::VectorXd::Constant(1, sigma0));
  const auto m1 =
      LinRegModel::with_prior_sd(s.x1, s.sigma_like, Eigen::Vector2d(sigma0, sigma1));
  return {linreg_log_evidence(m0, y).log_z, linreg_log_evidence(m1, y).log_z};
}

RvGridConfig rv_grid(const Config& cfg) {
  RvGridConfig g;
  g.v0_bounds = {cfg.get_double("exp4.v0_lower"), cfg.get_double("exp4.v0_upper")};
  g.v0_points = cfg.get_size("exp4.v0_points");
  g.period_step = cfg.get_double("exp4.period_step");
  g.min_period_points = cfg.get_size("exp4.min_period_points");
  g.threads = threads_of(cfg);
  g.validate();
  return g;
}

double parse_cell(const fs::path& path, const std::string& cell) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used == cell.size()) {
      return v;
    }
  } catch (const std::exception&) {
  }
  throw UsageError(fmt::format("{}: '{}' is not a number", path.string(), cell));
}

RvDataset load_rv(const fs::path& path, double default_sigma_e) {
  const CsvData csv = read_csv(path);
  if (csv.header != std::vector<std::string>{"t", "y"}) {
    throw UsageError(fmt::format("{}: expected header t,y", path.string()));
  }
  RvDataset d;
  for (const auto& row : csv.rows) {
    d.times.push_back(parse_cell(path, row[0]));
    d.values.push_back(parse_cell(path, row[1]));
  }
  d.sigma_e = default_sigma_e;
  fs::path side = path;
  side.replace_extension(".cfg");
  if (fs::exists(side)) {
    const Config sc = Config::load(side);
    if (sc.has("sigma_e")) {
      d.sigma_e = sc.get_double("sigma_e");
    }
  }
  d.validate();
  return d;
}

}  // namespace

const std::vector<std::string>& experiment_commands() {
  static const std::vector<std::string> cmds = {"exp1", "exp2", "exp3", "exp4", "criteria"};
  return cmds;
}

std::vector<Knob> experiment_knobs(std::string_view command) {
  std::vector<Knob> all = global_knobs();
  const auto& own = own_knobs(command);
  all.insert(all.end(), own.begin(), own.end());
  return all;
}

Config default_config(std::string_view command) {
  Config cfg;
  for (const Knob& k : experiment_knobs(command)) {
    if (!k.default_value.empty()) {
      cfg.set(k.key, k.default_value);
    }
  }
  return cfg;
}

std::vector<fs::path> run_experiment(std::string_view command, const Config& cfg) {
  if (command == "exp1") return cmd_exp1(cfg);
  if (command == "exp2") return cmd_exp2(cfg);
  if (command == "exp3") return cmd_exp3(cfg);
  if (command == "exp4") return cmd_exp4(cfg);
  if (command == "criteria") return cmd_criteria(cfg);
  throw UsageError(fmt::format("unknown command '{}'", command));
}

std::vector<fs::path> cmd_exp1(const Config& cfg) {
  const std::vector<double> y = cfg.get_doubles("exp1.y");
  const std::vector<double> sigma0s = cfg.get_doubles("exp1.sigma0_values");
  require_nonempty(y, "exp1.y");
  require_nonempty(sigma0s, "exp1.sigma0_values");
  const double mu0 = cfg.get_double("exp1.mu0");
  const double sigma = cfg.get_double("exp1.sigma");
  const double lo = cfg.get_double("exp1.theta_lower");
  const double hi = cfg.get_double("exp1.theta_upper");
  const std::size_t n_theta = cfg.get_size("exp1.theta_points");
  if (!(lo < hi) || n_theta < 2) {
    throw UsageError("exp1 density grid needs theta_lower < theta_upper and >= 2 points");
  }

  CsvTable dens({"sigma0", "theta", "prior", "likelihood", "posterior"});
  CsvTable zs({"sigma0", "log_z", "posterior_mean", "posterior_sd"});
  for (const double s0 : sigma0s) {
    const GaussianMeanModel model{sigma, mu0, s0};
    const GaussianPosterior post = gaussian_mean_posterior(model, y);
    for (std::size_t j = 0; j < n_theta; ++j) {
      const double theta = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(n_theta - 1);
      double ll = 0.0;
      for (const double v : y) {
        ll += gaussian_log_pdf(v, theta, sigma);
      }
      dens.row({num(s0), num(theta), num(std::exp(gaussian_log_pdf(theta, mu0, s0))),
                num(std::exp(ll)), num(std::exp(gaussian_log_pdf(theta, post.mean, post.sd)))});
    }
    zs.row({num(s0), num(gaussian_mean_log_evidence(model, y).log_z), num(post.mean),
            num(post.sd)});
  }
  return {emit(cfg, "exp1_posteriors.csv", dens), emit(cfg, "exp1_z_vs_sigma0.csv", zs)};
}

std::vector<fs::path> cmd_exp2(const Config& cfg) {
  const std::uint64_t seed = require_seed(cfg, "exp2");
  const std::vector<double> x = cfg.get_doubles("exp2.x");
  if (x.size() < 2) {
    throw UsageError("exp2.x needs at least two design values");
  }
  const double b0 = cfg.get_double("exp2.beta0");
  const double b1 = cfg.get_double("exp2.beta1");
  const RegressionSetup setup = regression_setup(x, cfg.get_double("exp2.sigma_like"));
  Rng rng(seed);
  const Eigen::VectorXd y = simulate_regression(setup, b0, b1, rng);

  std::vector<fs::path> written;
  CsvTable data({"x", "y"});
  for (std::size_t i = 0; i < x.size(); ++i) {
    data.row({num(x[i]), num(y(static_cast<Eigen::Index>(i)))});
  }
  written.push_back(emit(cfg, "exp2_data.csv", data));

  const double s1_fixed = cfg.get_double("exp2.sigma1_fixed");
  CsvTable by_s0({"sigma0", "log_z0", "log_z1", "log_bf01"});
  for (const double s0 : cfg.get_doubles("exp2.sigma0_values")) {
    const auto z = regression_evidence(setup, y, s0, s1_fixed);
    by_s0.row({num(s0), num(z.log_z0), num(z.log_z1), num(z.log_z0 - z.log_z1)});
  }
  written.push_back(emit(cfg, "exp2_bf01_vs_sigma0.csv", by_s0));

  const double s0_fixed = cfg.get_double("exp2.sigma0_fixed");
  CsvTable by_s1({"sigma1", "log_z0", "log_z1", "log_bf01"});
  for (const double s1 : cfg.get_doubles("exp2.sigma1_values")) {
    const auto z = regression_evidence(setup, y, s0_fixed, s1);
    by_s1.row({num(s1), num(z.log_z0), num(z.log_z1), num(z.log_z0 - z.log_z1)});
  }
  written.push_back(emit(cfg, "exp2_bf01_vs_sigma1.csv", by_s1));

  const std::size_t r2_samples = cfg.get_size("exp2.r2_samples");
  CsvTable r2({"sigma", "snr_m0", "r2_m0", "snr_m1", "r2_m1", "seed"});
  for (const double s : cfg.get_doubles("exp2.r2_sigma_values")) {
    const auto m0 =
        LinRegModel::with_prior_sd(setup.x0, setup.sigma_like, Eigen::VectorXd::Constant(1, s));
    const auto m1 =
        LinRegModel::with_prior_sd(setup.x1, setup.sigma_like, Eigen::VectorXd::Constant(2, s));
    r2.row({num(s), num(prior_expected_snr(m0)), num(prior_expected_r2(m0, r2_samples, Rng(seed))),
            num(prior_expected_snr(m1)), num(prior_expected_r2(m1, r2_samples, Rng(seed))),
            num(seed)});
  }
  written.push_back(emit(cfg, "exp2_r2_vs_sigma.csv", r2));

  const std::size_t runs = cfg.get_size("exp2.avg_runs");
  if (runs < 1) {
    throw UsageError("exp2.avg_runs must be at least 1");
  }
  const std::vector<double> avg_sigmas = cfg.get_doubles("exp2.avg_sigma_values");
  std::vector<std::vector<double>> lbf(avg_sigmas.size(), std::vector<double>(runs));
  detail::parallel_for(runs, threads_of(cfg), [&](std::size_t r) {
    Rng run_rng = Rng::stream(seed, r);
    const Eigen::VectorXd yr = simulate_regression(setup, b0, b1, run_rng);
    for (std::size_t k = 0; k < avg_sigmas.size(); ++k) {
      const auto z = regression_evidence(setup, yr, avg_sigmas[k], avg_sigmas[k]);
      lbf[k][r] = z.log_z0 - z.log_z1;
    }
  });
  CsvTable avg({"sigma", "mean_log_bf01", "log_mean_bf01", "runs", "seed"});
  for (std::size_t k = 0; k < avg_sigmas.size(); ++k) {
    const double mean_log =
        std::accumulate(lbf[k].begin(), lbf[k].end(), 0.0) / static_cast<double>(runs);
    const double log_mean = log_sum_exp(lbf[k]) - std::log(static_cast<double>(runs));
    avg.row({num(avg_sigmas[k]), num(mean_log), num(log_mean), num(runs), num(seed)});
  }
  written.push_back(emit(cfg, "exp2_bf01_vs_sigma_avg.csv", avg));
  return written;
}

std::vector<fs::path> cmd_exp3(const Config& cfg) {
  const std::uint64_t seed = require_seed(cfg, "exp3");
  const unsigned threads = threads_of(cfg);
  const double theta_true = cfg.get_double("exp3.theta_true");
  const std::size_t runs = cfg.get_size("exp3.runs");
  const std::vector<double> l_values = cfg.get_doubles("exp3.l_values");
  const std::vector<std::string> sweep_header = {"param", "Dy",   "min_bf", "max_bf",
                                                 "errors", "runs", "seed"};
  auto sweep_row = [](const SweepRow& r) {
    return std::vector<std::string>{num(r.param),   num(r.dy),   num(r.min_bf), num(r.max_bf),
                                    num(r.errors), num(r.runs), num(r.seed)};
  };

  std::vector<fs::path> written;
  CsvTable lindley(sweep_header);
  for (const std::size_t dy : cfg.get_sizes("exp3.dy_values")) {
    for (const SweepRow& r : lindley_sweep(theta_true, dy, l_values, runs, seed, threads).rows) {
      lindley.row(sweep_row(r));
    }
  }
  written.push_back(emit(cfg, "exp3_lindley.csv", lindley));

  const double errors_l = cfg.get_double("exp3.errors_l");
  CsvTable by_dy(sweep_header);
  for (const std::size_t dy : cfg.get_sizes("exp3.errors_dy_values")) {
    const double ls[] = {errors_l};
    by_dy.row(sweep_row(lindley_sweep(theta_true, dy, ls, runs, seed, threads).rows.front()));
  }
  written.push_back(emit(cfg, "exp3_errors_vs_dy.csv", by_dy));

  for (const IbfMode mode : {IbfMode::one_sided, IbfMode::symmetric}) {
    CsvTable ibf({"true_model", "param", "Dy", "min_bf", "max_bf", "errors", "runs", "seed"});
    for (const std::size_t dy : cfg.get_sizes("exp3.ibf_dy")) {
      for (const double theta : cfg.get_doubles("exp3.ibf_theta")) {
        const SweepRow r = ibf_experiment(TrueModel::poisson, theta, dy, runs, seed, mode, threads);
        auto cells = sweep_row(r);
        cells.insert(cells.begin(), "poisson");
        ibf.row(cells);
      }
      for (const double phi : cfg.get_doubles("exp3.ibf_phi")) {
        const SweepRow r = ibf_experiment(TrueModel::geometric, phi, dy, runs, seed, mode, threads);
        auto cells = sweep_row(r);
        cells.insert(cells.begin(), "geometric");
        ibf.row(cells);
      }
    }
    written.push_back(emit(cfg, "exp3_ibf_" + to_string(mode) + ".csv", ibf));
  }
  return written;
}

std::vector<fs::path> cmd_exp4(const Config& cfg) {
  const RvGridConfig grid = rv_grid(cfg);
  Planet truth{cfg.get_double("exp4.k"), cfg.get_double("exp4.omega"), cfg.get_double("exp4.e"),
               cfg.get_double("exp4.period"), cfg.get_double("exp4.tau")};
  truth.validate();
  const double sigma_e = std::sqrt(cfg.get_double("exp4.sigma_e2"));
  std::vector<fs::path> written;

  RvDataset data;
  const auto data_path = cfg.get("exp4.data");
  if (data_path && !data_path->empty()) {
    data = load_rv(*data_path, sigma_e);
  } else {
    const std::uint64_t seed = require_seed(cfg, "exp4");
    const RvParams params{cfg.get_double("exp4.v0"), {truth}};
    data = simulate_rv(params, default_times(cfg.get_size("exp4.dy"), cfg.get_double("exp4.t_end")),
                       sigma_e, seed);
    CsvTable csv({"t", "y"});
    for (std::size_t i = 0; i < data.size(); ++i) {
      csv.row({num(data.times[i]), num(data.values[i])});
    }
    written.push_back(emit(cfg, "exp4_data.csv", csv));
    Config side;
    side.set("sigma_e", num(sigma_e));
    side.set("seed", num(seed));
    side.set("v0", num(params.v0));
    side.set("k", num(truth.k));
    side.set("omega", num(truth.omega));
    side.set("e", num(truth.e));
    side.set("period", num(truth.period));
    side.set("tau", num(truth.tau));
    const fs::path side_path = out_dir(cfg) / "exp4_data.cfg";
    write_file_atomic(side_path, side.text());
    written.push_back(side_path);
  }

  const std::vector<double> pmaxes = cfg.get_doubles("exp4.pmax_values");
  require_nonempty(pmaxes, "exp4.pmax_values");
  CsvTable curve({"pmax", "log_z1", "log_z0", "log_bf10"});
  for (const PmaxPoint& p : bf10_vs_pmax(data, truth, pmaxes, grid)) {
    curve.row({num(p.p_max), num(p.log_z1), num(p.log_z0), num(p.log_bf10)});
  }
  written.push_back(emit(cfg, "exp4_bf10_vs_pmax.csv", curve));

  const Interval window{cfg.get_double("exp4.hyper_lower"), cfg.get_double("exp4.hyper_upper")};
  const EvidenceResult znew =
      hierarchical_pmax_evidence(data, truth, window, cfg.get_double("exp4.hyper_step"), grid);
  const double z0 = evidence_zero_planet(data, grid).log_z;
  CsvTable hier({"hyper_lower", "hyper_upper", "log_z_new1", "log_z0", "log_bf10"});
  hier.row({num(window.lower), num(window.upper), num(znew.log_z), num(z0), num(znew.log_z - z0)});
  written.push_back(emit(cfg, "exp4_hierarchical.csv", hier));

  const double idea_window = cfg.get_double("exp4.idea_window");
  CsvTable ideas({"idea", "n", "log_bf10"});
  const std::pair<const char*, LikelihoodPriorIdea> kinds[] = {
      {"idea1", LikelihoodPriorIdea::idea1},
      {"idea2", LikelihoodPriorIdea::idea2},
      {"idea3", LikelihoodPriorIdea::idea3}};
  for (const auto& [name, idea] : kinds) {
    for (const IdeaPoint& p : rv_likelihood_prior_bf(data, truth, idea, idea_window, {}, grid)) {
      ideas.row({name, num(p.n), num(p.log_bf10)});
    }
  }
  written.push_back(emit(cfg, "exp4_idea_curves.csv", ideas));
  return written;
}

std::vector<fs::path> cmd_criteria(const Config& cfg) {
  const std::string model = cfg.get_string("criteria.model");
  if (model != "gaussian_mean") {
    throw UsageError(fmt::format("unknown built-in model '{}' (available: gaussian_mean)", model));
  }
  const std::uint64_t seed = require_seed(cfg, "criteria");
  const std::size_t dy = cfg.get_size("criteria.dy");
  if (dy < 2) {
    throw UsageError("criteria.dy must be at least 2");
  }
  const double sigma = cfg.get_double("criteria.sigma");
  const double mean = cfg.get_double("criteria.true_mean");
  Rng rng(seed);
  std::vector<double> y(dy);
  for (double& v : y) {
    v = mean + sigma * rng.normal();
  }
  const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(dy);
  double ll_max = 0.0;
  for (const double v : y) {
    ll_max += gaussian_log_pdf(v, ybar, sigma);
  }
  const std::size_t points = cfg.get_size("criteria.grid_points");

  CsvTable table({"model", "sigma0", "log_z", "log_like_max", "occam", "bic", "aic", "hqic",
                  "grid_log_z", "bounds_ok", "seed"});
  for (const double s0 : cfg.get_doubles("criteria.sigma0_values")) {
    const GaussianMeanModel gm{sigma, 0.0, s0};
    const double log_z = gaussian_mean_log_evidence(gm, y).log_z;
    const BayesModel bm = gaussian_mean_bayes_model(gm, y);
    // The integrand is negligible beyond 12 posterior sds, so the grid covers
    // only that span and stays fine enough for very diffuse priors.
    const GaussianPosterior post = gaussian_mean_posterior(gm, y);
    const EvidenceResult grid_z = evidence_grid(
        bm, GridSpec::uniform({{post.mean - 12.0 * post.sd, post.mean + 12.0 * post.sd}}, points));
    const bool ok = grid_z.log_like_min && bounds_check(grid_z.log_z, *grid_z.log_like_min,
                                                        *grid_z.log_like_max);
    table.row({model, num(s0), num(log_z), num(ll_max), num(occam_factor(log_z, ll_max)),
               num(info_criterion(ll_max, 1, dy, CriterionKind::bic)),
               num(info_criterion(ll_max, 1, dy, CriterionKind::aic)),
               num(info_criterion(ll_max, 1, dy, CriterionKind::hqic)), num(grid_z.log_z),
               ok ? "1" : "0", num(seed)});
  }
  return {emit(cfg, "criteria.csv", table)};
}

}  // namespace bayesev
