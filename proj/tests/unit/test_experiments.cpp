#include <doctest.h>

#include <cmath>

#include "momentbody/experiments.hpp"

using namespace momentbody;
using nlohmann::json;

TEST_CASE("clt: k = 1 variance lands within 10% of 1/8 at n = 200") {
  ExperimentConfig cfg;
  cfg.id = "clt";
  cfg.k = 1;
  cfg.n_grid = {200};
  cfg.trials = 20000;
  cfg.seed = 7001;
  cfg.workers = 4;
  cfg.hard_asserts = json{{"cov_frob_rtol", 0.10}, {"mean_drift_max", 4.0}};
  const ExperimentReport rep = clt_check(cfg);
  CHECK(rep.passed());
  REQUIRE(rep.rows.size() == 1);
  const double cov11 = rep.rows[0][5];  // n, trials, frob, frob_se, drift, cov_11, ...
  CHECK(std::abs(cov11 - 0.125) / 0.125 < 0.10);
}

TEST_CASE("clt: k = 2 covariance against Sigma_2") {
  ExperimentConfig cfg;
  cfg.id = "clt";
  cfg.k = 2;
  cfg.n_grid = {200};
  cfg.trials = 20000;
  cfg.seed = 7002;
  cfg.workers = 4;
  cfg.hard_asserts = json{{"cov_frob_rtol", 0.10}, {"mean_drift_max", 4.0}};
  const ExperimentReport rep = clt_check(cfg);
  CHECK(rep.passed());
  CHECK(rep.rows[0][2] < 0.10);  // Frobenius-relative error column
}

TEST_CASE("clt reports are worker-count independent") {
  ExperimentConfig cfg;
  cfg.id = "clt";
  cfg.k = 1;
  cfg.n_grid = {100};
  cfg.trials = 5000;
  cfg.seed = 7003;
  cfg.workers = 1;
  const auto rows1 = clt_check(cfg).rows;
  cfg.workers = 7;
  const auto rows7 = clt_check(cfg).rows;
  CHECK(rows1 == rows7);
}

TEST_CASE("ldp: fitted slope within 10% of the rate at t = 0.6") {
  ExperimentConfig cfg;
  cfg.id = "ldp";
  cfg.threshold = 0.6;
  cfg.n_grid = {50, 100, 150, 200, 250, 300, 350, 400};
  cfg.trials = 20000;
  cfg.mc_check_n = 100;
  cfg.seed = 7004;
  cfg.hard_asserts = json{{"slope_rtol", 0.10}, {"mc_z_max", 3.0}};
  const ExperimentReport rep = ldp_rate_check(cfg);
  CHECK(rep.passed());
  const double slope = rep.metadata.at("slope").get<double>();
  CHECK(std::abs(slope - 0.0408220) / 0.0408220 < 0.10);
}

TEST_CASE("ldp: the median event has vanishing slope") {
  ExperimentConfig cfg;
  cfg.id = "ldp";
  cfg.threshold = 0.5;
  cfg.n_grid = {50, 100, 200, 400};
  cfg.hard_asserts = json{{"slope_atol", 1e-3}};
  const ExperimentReport rep = ldp_rate_check(cfg);
  CHECK(rep.passed());
}

TEST_CASE("ldp reports are deterministic") {
  ExperimentConfig cfg;
  cfg.id = "ldp";
  cfg.threshold = 0.6;
  cfg.n_grid = {50, 100, 150, 200};
  cfg.mc_check_n = 50;
  cfg.trials = 5000;
  cfg.seed = 7005;
  const ExperimentReport a = ldp_rate_check(cfg);
  const ExperimentReport b = ldp_rate_check(cfg);
  CHECK(a.csv() == b.csv());
  CHECK(a.to_json() == b.to_json());
}

TEST_CASE("mdp: scaled exact tails approach 4 t^2") {
  ExperimentConfig cfg;
  cfg.id = "mdp";
  cfg.gamma = 0.5;
  cfg.threshold = 1.0;
  cfg.n_grid = {100, 1000, 10000};
  const ExperimentReport rep = mdp_rate_check(cfg);
  REQUIRE(rep.rows.size() == 3);
  const double final_ratio = rep.rows.back()[4];
  CHECK(std::abs(final_ratio - 1.0) < 0.25);
  // t = 0: the event has probability 1/2 and the scaled rate vanishes.
  cfg.threshold = 0.0;
  const ExperimentReport rep0 = mdp_rate_check(cfg);
  CHECK(rep0.rows.back()[2] == doctest::Approx(std::pow(10000.0, -0.5) * std::log(2.0)));
  // gamma near 1 degrades toward the LDP regime: scaled rate drifts off 4t^2
  // (qualitative row, reported not asserted). The threshold must shrink to
  // keep the shifted event inside (0,1).
  cfg.threshold = 0.3;
  cfg.gamma = 0.95;
  const ExperimentReport rep9 = mdp_rate_check(cfg);
  CHECK(rep9.rows.back()[2] > 0.0);
  cfg.gamma = 1.0;
  CHECK_THROWS_AS(mdp_rate_check(cfg), InvalidArgument);
  cfg.gamma = 0.5;
  cfg.threshold = 100.0;
  CHECK_THROWS_AS(mdp_rate_check(cfg), InvalidArgument);
}

TEST_CASE("taylor: residual over |delta|^2 is bounded and stable under radius halving") {
  ExperimentConfig cfg;
  cfg.id = "taylor";
  cfg.k = 3;
  cfg.radius = 0.01;
  cfg.radius_levels = 3;
  cfg.trials = 500;
  cfg.seed = 7006;
  cfg.hard_asserts = json{{"ratio_spread_max", 2.0}};
  const ExperimentReport rep = taylor_check(cfg);
  CHECK(rep.passed());

  // p = pbar gives residual 0; a single-coordinate perturbation of p_1 moves
  // c_1 by exactly epsilon (c_1 = p_1).
  const auto exact_c = detail::moments_from_canonical<double>({0.5, 0.5, 0.5}, 3);
  CHECK(exact_c[0] == 0.5);
  CHECK(exact_c[1] == 0.375);
  const auto bumped = detail::moments_from_canonical<double>({0.5 + 1e-3, 0.5, 0.5}, 1);
  CHECK(bumped[0] == doctest::Approx(0.5 + 1e-3).epsilon(1e-15));
}

TEST_CASE("szego: arcsine ratios decrease monotonically toward 8") {
  ExperimentConfig cfg;
  cfg.id = "szego";
  cfg.measure = "arcsine";
  for (std::size_t n = 1; n <= 8; ++n) cfg.n_grid.push_back(n);
  cfg.chain_identity = true;
  cfg.hard_asserts = json{{"monotone", true}, {"chain_identity_exact", true}};
  const ExperimentReport rep = szego_ratio_check(cfg);
  CHECK(rep.passed());
  CHECK(rep.metadata.at("limit").get<double>() == doctest::Approx(8.0).epsilon(1e-8));
  CHECK(rep.metadata.at("chain_identity_all_equal").get<bool>());
}

TEST_CASE("szego: the linear density 2x tends to pi") {
  ExperimentConfig cfg;
  cfg.id = "szego";
  cfg.measure = "linear";
  for (std::size_t n = 1; n <= 8; ++n) cfg.n_grid.push_back(n);
  cfg.hard_asserts = json{{"monotone", true}};
  const ExperimentReport rep = szego_ratio_check(cfg);
  CHECK(rep.passed());
  CHECK(rep.metadata.at("limit").get<double>() == doctest::Approx(M_PI).epsilon(1e-8));
}

TEST_CASE("range-conv: P = 1 is identically zero, the golden P from k = 1") {
  ExperimentConfig trivial;
  trivial.id = "range-conv";
  trivial.poly = {1.0};
  trivial.k_grid = {1, 2, 3, 4};
  trivial.hard_asserts = json{{"value_max_from_deg", 1e-9}};
  CHECK(range_convergence_check(trivial).passed());

  ExperimentConfig golden;
  golden.id = "range-conv";
  golden.poly = {0.5 * (1.0 + std::sqrt(5.0)), -1.0};
  golden.k_grid = {1, 2, 3, 4, 5, 6};
  golden.hard_asserts = json{{"value_max_from_deg", 1e-8}};
  CHECK(range_convergence_check(golden).passed());
}

TEST_CASE("sigma-plus: median Kolmogorov distance decreases along the n grid") {
  ExperimentConfig cfg;
  cfg.id = "sigma-plus";
  cfg.n_grid = {20, 40, 80};
  cfg.trials = 30;
  cfg.seed = 7007;
  cfg.workers = 4;
  cfg.hard_asserts = json{{"monotone", true}, {"max_failure_rate", 0.01}};
  const ExperimentReport rep = sigma_plus_concentration(cfg);
  CHECK(rep.passed());
  for (const auto& row : rep.rows) CHECK(row[4] == 0.0);  // no construction failures
}

TEST_CASE("degenerate n = 1: two endpoint-ish atoms bound the Kolmogorov distance") {
  const double p = 0.37;
  const DiscreteMeasure mu = principal_representation_from_canonical({p}, Side::upper);
  double cum = 0.0, d = 0.0;
  for (const auto& a : mu.atoms) {
    const double f = arcsine::cdf(a.x);
    d = std::max(d, std::abs(f - cum));
    cum += a.w;
    d = std::max(d, std::abs(cum - f));
  }
  CHECK(d <= 0.5 + std::abs(p - 0.5) + 1e-12);
}

TEST_CASE("experiment dispatch and config round-trip") {
  ExperimentConfig cfg;
  cfg.id = "mdp";
  cfg.n_grid = {100, 1000};
  const json j = cfg.to_json();
  const ExperimentConfig back = ExperimentConfig::from_json(j);
  CHECK(back.id == cfg.id);
  CHECK(back.n_grid == cfg.n_grid);
  CHECK(run_experiment(back).rows.size() == 2);
  ExperimentConfig bad;
  bad.id = "nope";
  CHECK_THROWS_AS(run_experiment(bad), InvalidArgument);
}
