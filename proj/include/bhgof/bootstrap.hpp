#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bhgof/mle.hpp"
#include "bhgof/quadrature.hpp"
#include "bhgof/sample.hpp"

namespace bhgof {

struct BootstrapOptions {
  int B = 500;
  std::uint64_t seed = 0;
  int workers = 1;  // <= 0: hardware concurrency
  FitOptions fit{};
  bool refit = true;  // false: reuse the data fit per replicate (diagnostics only)
  double max_failure_frac = 0.05;
  std::vector<double> critical_alphas{0.01, 0.05, 0.10};
};

struct TestReport {
  double v_obs = 0.0;
  double p_value = 1.0;
  BHParams theta_hat;
  double loglik = 0.0;
  bool fit_converged = false;
  int B = 0;
  int b_effective = 0;
  int failures = 0;
  std::vector<double> replicate_stats;  // replicate-index order, failures removed
  std::vector<std::pair<double, double>> critical_values;  // (alpha, upper quantile)
  std::uint64_t seed = 0;
  WeightSpec weight;
  std::optional<double> fix_lambda3;
  int n = 0;
};

/// Add-one Monte Carlo p-value: (1 + #{stat >= v_obs}) / (size + 1).
double bootstrap_p_value(double v_obs, const std::vector<double>& stats);

/// Upper-alpha empirical critical value: the ceil((1-alpha)(B_eff+1))-th
/// order statistic (clamped to the maximum).
double bootstrap_critical_value(std::vector<double> stats, double alpha);

/// Parametric bootstrap test: fit, simulate B samples from the fitted null,
/// refit each, recompute the statistic, calibrate. Replicate streams derive
/// from (seed, replicate index), so results are identical for any worker
/// count. Throws when the data fit fails or replicate failures exceed
/// max_failure_frac * B.
TestReport run_bootstrap_test(const BivariateSample& s, const WeightSpec& w,
                              const BootstrapOptions& opts);

/// Same replicates evaluated under several weight specs at once; the fits and
/// simulated samples are shared, only the statistics differ.
std::vector<TestReport> run_bootstrap_multi(const BivariateSample& s,
                                            const std::vector<WeightSpec>& ws,
                                            const BootstrapOptions& opts);

}  // namespace bhgof
