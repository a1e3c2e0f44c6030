#pragma once

#include <cstdint>
#include <optional>

#include "bhgof/params.hpp"
#include "bhgof/sample.hpp"

namespace bhgof {

struct FitOptions {
  int max_evals = 2000;          // per simplex run
  double tol = 1e-6;             // simplex diameter, transformed space
  int restarts = 2;              // perturbed restarts after the first run
  std::uint64_t restart_seed = 0;
  std::optional<double> fix_lambda3{};  // pin lambda3 (e.g. 0); empty = free
  double mu_cap = 50.0;          // guards the Poisson-boundary divergence
  double initial_step = 0.25;
  double perturb = 0.5;          // restart perturbation half-width
};

struct FitResult {
  BHParams theta_hat;   // sigma2 = 1 gauge
  double loglik = 0.0;
  int evaluations = 0;
  bool converged = false;
  BHParams init_theta;
  double init_loglik = 0.0;
};

struct LogLikelihood {
  double value;
  bool underflow = false;  // an observed cell fell below the probability floor
  int bad_x = -1, bad_y = -1;
};

/// Sum of log pmf over the sample; -inf (with the offending cell) when an
/// observed cell's probability is below 1e-300 or not a valid probability.
LogLikelihood log_likelihood_detail(const BHParams& p, const CellCounts& cells);
double log_likelihood(const BHParams& p, const BivariateSample& s);

/// Moment-matched starting point in the sigma2 = 1 gauge, projected into the
/// interior of the parameter space. Requires n >= 5 and a non-degenerate
/// sample (not all pairs identical).
BHParams initial_estimate(const BivariateSample& s);

/// Maximum likelihood in the sigma2 = 1 gauge via Nelder-Mead over an
/// unconstrained softplus transform of (mu, lambda1, lambda2[, lambda3]).
/// Deterministic given (sample, options).
FitResult fit_mle(const BivariateSample& s, const FitOptions& opts = {});

}  // namespace bhgof
