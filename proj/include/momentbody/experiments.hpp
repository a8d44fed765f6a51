#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "momentbody/rates.hpp"
#include "momentbody/sampling.hpp"

namespace momentbody {

// Desk-scale experiment harness. Every experiment is a pure function of its
// config (seed included): reruns produce bit-identical reports.
struct ExperimentConfig {
  std::string id;
  std::uint64_t seed = 20240601;
  std::size_t trials = 1000;
  std::size_t k = 1;
  std::vector<std::size_t> n_grid;
  std::vector<std::size_t> k_grid;
  double gamma = 0.5;      // MDP speed exponent: u_n = n^{-gamma}, 0 < gamma < 1
  double threshold = 0.6;  // half-space event {c_1 >= threshold}
  double radius = 0.01;    // taylor perturbation radius
  std::size_t radius_levels = 3;
  std::size_t mc_check_n = 0;  // ldp: Monte Carlo cross-check at this n (0: off)
  bool use_logn_regressor = true;
  std::string measure = "arcsine";  // szego: "arcsine" or "linear" (f = 2x)
  bool chain_identity = false;      // szego: verify the mu' product identity rows
  std::vector<double> poly;         // range-conv: coefficients of P, low order first
  unsigned workers = 1;
  nlohmann::json hard_asserts;  // optional tolerances; violations fail the run

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct ExperimentReport {
  std::string id;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json metadata;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
  std::string csv() const;
  nlohmann::json to_json() const;
};

// Eq.-(3)-style Gaussian fluctuations: empirical covariance of
// sqrt(n) (Z^(k) - arcsine moments) against the exact Sigma_k.
ExperimentReport clt_check(const ExperimentConfig& cfg);

// Exact Beta(n,n) tails for the half-space event {c_1 >= t}: fits the slope
// of -ln P against n (optional ln n regressor) and compares with the rate
// -ln(t - t^2) - ln 4; optional Monte Carlo cross-check.
ExperimentReport ldp_rate_check(const ExperimentConfig& cfg);

// Moderate-deviation trend: u_n * (-ln P(X_n >= t)) against 4 t^2 for
// X_n = sqrt(n u_n) (p_1 - 1/2), exact Beta tails (reported, not asserted).
ExperimentReport mdp_rate_check(const ExperimentConfig& cfg);

// First-order expansion of moments around the arcsine point: residual of
// c - cbar against 2 A (p - 1/2) relative to |p - 1/2|^2, across radius
// halvings.
ExperimentReport taylor_check(const ExperimentConfig& cfg);

// Szego-type Hankel ratio 4^{2n+1} H_{2n} / H_{2n-2} in exact rational
// arithmetic against 2 pi exp(int ln f dnu); optionally the exact product
// identity linking consecutive range widths to the transformed measure mu'.
ExperimentReport szego_ratio_check(const ExperimentConfig& cfg);

// ln(4^k r_{k+1}) + I(nu/P) across k for a normalized polynomial P;
// exactly zero for k >= deg P.
ExperimentReport range_convergence_check(const ExperimentConfig& cfg);

// Median Kolmogorov distance between the upper principal representation of
// sampled points and the arcsine CDF, decreasing along the n-grid.
ExperimentReport sigma_plus_concentration(const ExperimentConfig& cfg);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace momentbody
