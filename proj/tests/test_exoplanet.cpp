#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "bayesev/exoplanet.hpp"
#include "bayesev/quadrature.hpp"
#include "bayesev/rng.hpp"
#include "oracles.hpp"

using namespace bayesev;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const Planet kTrue{25.0, 0.61, 0.1, 15.0, 3.0};

RvDataset reference_data(std::uint64_t seed = 1) {
  return simulate_rv(RvParams{5.0, {kTrue}}, default_times(25, 60.0), std::sqrt(15.0), seed);
}

// Signal by the same recipe but through bisection and the tan half-angle form.
double naive_signal(const Planet& p, double t) {
  double M = std::fmod(kTwoPi * (t - p.tau) / p.period, kTwoPi);
  if (M < 0) {
    M += kTwoPi;
  }
  const double E = oracle::kepler_bisect(M, p.e);
  double u = 2.0 * std::atan(std::sqrt((1 + p.e) / (1 - p.e)) * std::tan(E / 2));
  return p.k * (std::cos(u + p.omega) + p.e * std::cos(p.omega));
}

double naive_loglike(const RvDataset& d, double v0, const Planet* p, double period) {
  double s = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double f = v0;
    if (p != nullptr) {
      Planet q = *p;
      q.period = period;
      f += naive_signal(q, d.times[i]);
    }
    s += oracle::normal_log_pdf(d.values[i], f, d.sigma_e);
  }
  return s;
}

}  // namespace

TEST_CASE("Kepler solver on a lattice") {
  double worst = 0.0;
  for (int i = 0; i < 40; ++i) {
    const double M = kTwoPi * i / 40.0;
    for (int j = 0; j < 25; ++j) {
      const double e = 0.95 * j / 24.0;
      const KeplerSolution s = solve_kepler(M, e);
      worst = std::max(worst, std::abs(s.E - e * std::sin(s.E) - M));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("Kepler solver special cases") {
  for (const double M : {0.0, 0.3, 2.0, 6.0}) {
    const KeplerSolution s = solve_kepler(M, 0.0);
    CHECK(s.E == M);
    CHECK(s.iterations == 1);
  }
  for (const double e : {0.0, 0.3, 0.85, 0.99}) {
    CHECK(solve_kepler(0.0, e).E == doctest::Approx(0.0));
    CHECK(std::abs(solve_kepler(0.0, e).E) < 1e-12);
  }
  const KeplerSolution s = solve_kepler(1.0, 0.1);
  CHECK(s.residual < 1e-12);
  CHECK(std::abs(s.E - oracle::kepler_bisect(1.0, 0.1)) < 1e-10);

  // Reduction: E(M + 2 pi k) = E(M) + 2 pi k.
  for (const int k : {-3, -1, 1, 7}) {
    CHECK(solve_kepler(1.3 + kTwoPi * k, 0.4).E ==
          doctest::Approx(solve_kepler(1.3, 0.4).E + kTwoPi * k).epsilon(1e-13));
  }

  CHECK_THROWS_AS(solve_kepler(1.0, 1.0), UsageError);
  CHECK_THROWS_AS(solve_kepler(1.0, -0.1), UsageError);
  CHECK_THROWS_AS(solve_kepler(NAN, 0.1), UsageError);
  CHECK_THROWS_AS(solve_kepler(0.3, 0.9, 1e-12, 1), NumericalError);
}

TEST_CASE("Kepler solver against bisection") {
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const double M = kTwoPi * rng.uniform();
    const double e = 0.95 * rng.uniform();
    CHECK(std::abs(solve_kepler(M, e).E - oracle::kepler_bisect(M, e)) < 1e-10);
  }
}

TEST_CASE("true anomaly") {
  for (const double E : {-3.0, -1.0, 0.0, 0.5, 2.9}) {
    CHECK(true_anomaly(E, 0.0) == doctest::Approx(E).epsilon(1e-15));
  }
  CHECK(true_anomaly(0.0, 0.7) == 0.0);
  const double e = 0.1;
  const double E = std::numbers::pi / 2;
  const double tan_form = 2.0 * std::atan(std::sqrt((1 + e) / (1 - e)) * std::tan(E / 2));
  CHECK(std::abs(true_anomaly(E, e) - tan_form) < 1e-12);
}

TEST_CASE("radial-velocity model") {
  const RvParams none{3.5, {}};
  for (const double t : {0.0, 10.0, 33.3}) {
    CHECK(rv_model(none, t) == 3.5);
  }
  const Planet circ{4.0, 0.3, 0.0, 7.0, 1.0};
  for (const double t : {0.0, 2.2, 9.9, 51.0}) {
    CHECK(rv_model(RvParams{1.0, {circ}}, t) ==
          doctest::Approx(1.0 + 4.0 * std::cos(kTwoPi * (t - 1.0) / 7.0 + 0.3)).epsilon(1e-12));
  }
  const double at_tau = rv_model(RvParams{5.0, {kTrue}}, 3.0);
  CHECK(at_tau == doctest::Approx(5.0 + 25.0 * (std::cos(0.61) + 0.1 * std::cos(0.61))).epsilon(1e-14));

  for (const double t : {0.0, 4.0, 17.5, 59.0}) {
    CHECK(std::abs(rv_model(RvParams{5.0, {kTrue}}, t) - (5.0 + naive_signal(kTrue, t))) < 1e-9);
  }
  CHECK_THROWS_AS(rv_model(RvParams{0.0, {Planet{1.0, 0.0, 1.0, 1.0, 0.0}}}, 0.0), UsageError);
}

TEST_CASE("radial-velocity likelihood") {
  const RvParams truth{5.0, {kTrue}};
  const RvDataset clean = simulate_rv(truth, default_times(), 0.0, 4);
  for (std::size_t i = 0; i < clean.size(); ++i) {
    CHECK(clean.values[i] == rv_model(truth, clean.times[i]));
  }
  RvDataset exact = clean;
  for (const double s : {0.5, 2.0}) {
    exact.sigma_e = s;
    const double T = static_cast<double>(exact.size());
    CHECK(rv_log_likelihood(truth, exact) ==
          doctest::Approx(-0.5 * T * std::log(2 * std::numbers::pi * s * s)).epsilon(1e-13));
  }
  // Doubling sigma_e at zero residual costs exactly T log 2.
  exact.sigma_e = 1.0;
  const double l1 = rv_log_likelihood(truth, exact);
  exact.sigma_e = 2.0;
  CHECK(l1 - rv_log_likelihood(truth, exact) ==
        doctest::Approx(25.0 * std::log(2.0)).epsilon(1e-12));

  const RvDataset d = reference_data();
  CHECK(std::abs(rv_log_likelihood(truth, d) - naive_loglike(d, 5.0, &kTrue, 15.0)) < 1e-10);

  RvDataset bad = d;
  std::swap(bad.times[0], bad.times[1]);
  CHECK_THROWS_AS(rv_log_likelihood(truth, bad), UsageError);
}

TEST_CASE("simulated noise") {
  const RvParams truth{5.0, {kTrue}};
  const RvDataset a = reference_data(7);
  const RvDataset b = reference_data(7);
  CHECK(a.values == b.values);
  CHECK(reference_data(8).values != a.values);

  const double sigma = std::sqrt(15.0);
  std::vector<double> resid;
  for (std::uint64_t s = 0; s < 400; ++s) {
    const RvDataset d = reference_data(100 + s);
    for (std::size_t i = 0; i < d.size(); ++i) {
      resid.push_back(d.values[i] - rv_model(truth, d.times[i]));
    }
  }
  REQUIRE(resid.size() == 10000);
  CHECK(std::abs(oracle::mean(resid)) < 3.0 * sigma / 100.0);
  CHECK(std::abs(oracle::variance(resid) / 15.0 - 1.0) < 0.05);

  const auto t = default_times(25, 60.0);
  CHECK(t.front() == 0.0);
  CHECK(t.back() == 60.0);
  CHECK(t[1] == 2.5);
}

TEST_CASE("zero-planet evidence") {
  const RvDataset d = reference_data();
  const EvidenceResult z0 = evidence_zero_planet(d);
  const double oracle_z = oracle::log_simpson(
      [&](double v) { return naive_loglike(d, v, nullptr, 0.0); }, -20.0, 20.0, 20000) -
                          std::log(40.0);
  CHECK(oracle::rel_close(z0.log_z, oracle_z, 1e-6));
  REQUIRE(z0.log_like_max.has_value());
  CHECK(*z0.log_like_min <= z0.log_z);
  CHECK(z0.log_z <= *z0.log_like_max);

  // Wider V0 prior with the same resolution dilutes Z by about 10.
  RvGridConfig wide;
  wide.v0_bounds = {-200.0, 200.0};
  wide.v0_points = 4000;
  CHECK(std::abs(evidence_zero_planet(d, wide).log_z - (z0.log_z - std::log(10.0))) < 1e-6);

  // Same nodes through the generic grid backend, including weighted integrals.
  BayesModel bm;
  bm.space = ParamSpace::box({{-20.0, 20.0}});
  bm.n_data = d.size();
  bm.point_log_like = [&](std::span<const double> th, std::size_t i) {
    return oracle::normal_log_pdf(d.values[i], th[0], d.sigma_e);
  };
  const GridIntegrator grid(bm, GridSpec::uniform({{-20.0, 20.0}}, 400),
                            BaselinePrior::flat(-std::log(40.0)));
  const RvIntegrator rv(d, RvGridConfig{});
  std::vector<double> w(d.size(), 1.0);
  CHECK(std::abs(rv.log_integral(w).value() - grid.log_integral(w).value()) < 1e-9);
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = static_cast<double>(i % 3);
  }
  CHECK(std::abs(rv.log_integral(w).value() - grid.log_integral(w).value()) < 1e-9);
  CHECK(rv.grid_points_per_dim() == 400);
}

TEST_CASE("one-planet evidence") {
  const RvDataset d = reference_data();
  RvGridConfig cfg;
  cfg.threads = 4;
  const double p_max = 20.0;
  const EvidenceResult z1 = evidence_one_planet(d, kTrue, p_max, cfg);

  // Independent brute force on the same period nodes: midpoint in P, Simpson
  // over V0 with the bisection signal.
  const std::size_t np = 4000;
  const double h = p_max / np;
  std::vector<double> terms(np);
  for (std::size_t j = 0; j < np; ++j) {
    Planet q = kTrue;
    q.period = (static_cast<double>(j) + 0.5) * h;
    std::vector<double> r(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      r[i] = d.values[i] - naive_signal(q, d.times[i]);
    }
    terms[j] = std::log(h) + oracle::log_simpson(
                                 [&](double v) {
                                   double s = 0.0;
                                   for (const double ri : r) {
                                     s += oracle::normal_log_pdf(ri, v, d.sigma_e);
                                   }
                                   return s;
                                 },
                                 -20.0, 20.0, 400);
  }
  const double top = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (const double t : terms) {
    acc += std::exp(t - top);
  }
  const double expect = top + std::log(acc) - std::log(40.0) - std::log(p_max);
  CHECK(oracle::rel_close(z1.log_z, expect, 1e-9));

  // The likelihood is spiky in P; a tenfold finer lattice moves log Z by a few 1e-3.
  RvGridConfig fine = cfg;
  fine.period_step = 0.0005;
  CHECK(std::abs(evidence_one_planet(d, kTrue, p_max, fine).log_z - z1.log_z) < 0.01);
  CHECK(z1.log_z <= *z1.log_like_max);

  const RvIntegrator rv(d, kTrue, p_max, cfg);
  CHECK(rv.has_planet());
  CHECK(rv.period_points() == 4000);
  CHECK(rv.period_step() == 0.005);
  const double th[] = {4.0, 15.2};
  const std::size_t all[] = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12,
                             13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24};
  CHECK(std::abs(rv.log_like(th, all) - naive_loglike(d, 4.0, &kTrue, 15.2)) < 1e-9);
}

TEST_CASE("period lattice and the master prefix profile") {
  const RvDataset d = reference_data();
  RvGridConfig cfg;
  cfg.threads = 4;
  const RvIntegrator master(d, kTrue, 100.0, cfg);
  CHECK(master.on_period_lattice(20.0));
  CHECK(master.on_period_lattice(100.0));
  CHECK_FALSE(master.on_period_lattice(20.0025));
  CHECK_FALSE(master.on_period_lattice(150.0));

  const std::vector<double> ps = {2.0, 20.0, 50.0, 100.0};
  const auto prefix = master.prefix_log_evidence(ps);
  for (std::size_t k = 0; k < ps.size(); ++k) {
    CAPTURE(ps[k]);
    CHECK(prefix[k] == evidence_one_planet(d, kTrue, ps[k], cfg).log_z);
  }
  const std::vector<double> mixed = {20.0, 20.0025};
  const auto z = one_planet_log_evidences(d, kTrue, mixed, cfg);
  CHECK(z[0] == evidence_one_planet(d, kTrue, 20.0, cfg).log_z);
  CHECK(z[1] == evidence_one_planet(d, kTrue, 20.0025, cfg).log_z);
  CHECK(std::abs(z[1] - z[0]) < 1e-3);

  // Off the lattice with few steps: the minimum node count takes over.
  const RvIntegrator small(d, kTrue, 1.0, cfg);
  CHECK(small.period_points() == 400);
  CHECK(small.period_step() == doctest::Approx(1.0 / 400));
}

TEST_CASE("Bayes factor curve and hierarchical evidence") {
  const RvDataset d = reference_data();
  RvGridConfig cfg;
  cfg.threads = 4;
  const std::vector<double> single = {30.0};
  const auto one = bf10_vs_pmax(d, kTrue, single, cfg);
  REQUIRE(one.size() == 1);
  CHECK(one[0].log_bf10 == one[0].log_z1 - evidence_zero_planet(d, cfg).log_z);
  CHECK(one[0].log_z1 == evidence_one_planet(d, kTrue, 30.0, cfg).log_z);
  const std::vector<double> ps = {5.0, 30.0, 120.0};
  const auto a = bf10_vs_pmax(d, kTrue, ps, cfg);
  const auto b = bf10_vs_pmax(d, kTrue, ps, cfg);
  for (std::size_t k = 0; k < ps.size(); ++k) {
    CHECK(a[k].log_bf10 == b[k].log_bf10);
  }

  const EvidenceResult point = hierarchical_pmax_evidence(d, kTrue, {40.0, 40.0}, 1.0, cfg);
  CHECK(point.log_z == evidence_one_planet(d, kTrue, 40.0, cfg).log_z);

  const EvidenceResult h = hierarchical_pmax_evidence(d, kTrue, {10.0, 60.0}, 1.0, cfg);
  std::vector<double> window;
  for (double p = 10.0; p <= 60.0; p += 1.0) {
    window.push_back(p);
  }
  const auto zs = one_planet_log_evidences(d, kTrue, window, cfg);
  CHECK(h.log_z >= *std::min_element(zs.begin(), zs.end()));
  CHECK(h.log_z <= *std::max_element(zs.begin(), zs.end()));
  CHECK(h.method == EvidenceMethod::hierarchical);
}

TEST_CASE("likelihood-based prior curves") {
  const RvDataset d = reference_data();
  RvGridConfig cfg;
  cfg.threads = 4;
  const auto i1 = rv_likelihood_prior_bf(d, kTrue, LikelihoodPriorIdea::idea1, 40.0, {}, cfg);
  REQUIRE(i1.size() == 1);
  CHECK(i1[0].n == 25);
  const std::size_t ns[] = {1, 5, 25};
  const auto i2 = rv_likelihood_prior_bf(d, kTrue, LikelihoodPriorIdea::idea2, 40.0, ns, cfg);
  REQUIRE(i2.size() == 3);
  CHECK(std::abs(i2[2].log_bf10 - i1[0].log_bf10) < 1e-9);
  const std::size_t bad[] = {25};
  CHECK_THROWS_AS(rv_likelihood_prior_bf(d, kTrue, LikelihoodPriorIdea::idea3, 40.0, bad, cfg),
                  UsageError);
  const auto i3 = rv_likelihood_prior_bf(d, kTrue, LikelihoodPriorIdea::idea3, 40.0, {}, cfg);
  CHECK(i3.size() == 24);
}

TEST_CASE("grid configuration checks") {
  const RvDataset d = reference_data();
  RvGridConfig cfg;
  cfg.v0_points = 1;
  CHECK_THROWS_AS(evidence_zero_planet(d, cfg), UsageError);
  cfg = RvGridConfig{};
  cfg.period_step = 0.0;
  CHECK_THROWS_AS(evidence_one_planet(d, kTrue, 10.0, cfg), UsageError);
  CHECK_THROWS_AS(evidence_one_planet(d, kTrue, -1.0), UsageError);
}
