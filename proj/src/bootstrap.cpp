#include "bhgof/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bhgof/parallel.hpp"
#include "bhgof/pmf.hpp"
#include "bhgof/rng.hpp"
#include "bhgof/sampler.hpp"
#include "bhgof/statistic.hpp"

namespace bhgof {

namespace {
// sub-stream tags under the run seed
constexpr std::uint64_t kDataFitStream = 0;
// replicate b uses derive_seed(seed, b + 1), then index 0 for sampling and
// index 1 for the refit restarts
}  // namespace

double bootstrap_p_value(double v_obs, const std::vector<double>& stats) {
  std::size_t count = 0;
  for (double v : stats)
    if (v >= v_obs) ++count;
  return static_cast<double>(1 + count) / static_cast<double>(stats.size() + 1);
}

double bootstrap_critical_value(std::vector<double> stats, double alpha) {
  if (stats.empty()) throw std::invalid_argument("bootstrap_critical_value: empty stats");
  std::sort(stats.begin(), stats.end());
  const std::size_t b = stats.size();
  std::size_t k = static_cast<std::size_t>(std::ceil((1.0 - alpha) * (b + 1)));
  k = std::clamp<std::size_t>(k, 1, b);
  return stats[k - 1];
}

std::vector<TestReport> run_bootstrap_multi(const BivariateSample& s,
                                            const std::vector<WeightSpec>& ws,
                                            const BootstrapOptions& opts) {
  s.require_valid();
  if (opts.B < 99) throw std::invalid_argument("bootstrap: B must be >= 99");
  if (ws.empty()) throw std::invalid_argument("bootstrap: no weight specs");

  FitOptions fit_opts = opts.fit;
  fit_opts.restart_seed = derive_seed(opts.seed, kDataFitStream);
  const FitResult fit0 = fit_mle(s, fit_opts);
  if (!std::isfinite(fit0.loglik))
    throw std::runtime_error("bootstrap: maximum-likelihood fit failed on the input data");

  const PoissonDecomposition dec = poisson_decomposition(fit0.theta_hat);
  if (!dec.representable())
    throw std::domain_error(
        "bootstrap: fitted parameters " + params_to_string(fit0.theta_hat) +
        " are not representable for exact sampling (negative Poisson rate)");

  const CvmEvaluator evaluator(ws);
  const CellCounts cells0 = CellCounts::from(s);
  const std::vector<double> v_obs = evaluator.evaluate(cells0, fit0.theta_hat);

  const int n = s.n();
  const std::size_t nw = ws.size();
  std::vector<std::vector<double>> rep_stats(opts.B);  // empty marks failure
  parallel_for(static_cast<std::size_t>(opts.B), opts.workers, [&](std::size_t b) {
    const std::uint64_t rep_seed = derive_seed(opts.seed, b + 1);
    try {
      Rng rng(derive_seed(rep_seed, 0));
      const BivariateSample sb = sample_bhd(dec, n, rng);
      BHParams theta_b = fit0.theta_hat;
      if (opts.refit) {
        // an all-origin replicate (common when the fitted null is very
        // sparse) has no interior MLE; its boundary limit is the point mass
        // at the origin, whose pgf equals the epgf, so the statistic is 0
        const bool all_origin = std::all_of(
            sb.pairs.begin(), sb.pairs.end(),
            [](const std::pair<int, int>& xy) { return xy.first == 0 && xy.second == 0; });
        if (all_origin) {
          rep_stats[b].assign(nw, 0.0);
          return;
        }
        FitOptions ro = opts.fit;
        ro.restart_seed = derive_seed(rep_seed, 1);
        const FitResult rb = fit_mle(sb, ro);
        if (!std::isfinite(rb.loglik)) return;  // failure
        theta_b = rb.theta_hat;
      }
      rep_stats[b] = evaluator.evaluate(CellCounts::from(sb), theta_b);
    } catch (const std::exception&) {
      // counted as a replicate failure below
    }
  });

  int failures = 0;
  std::vector<std::vector<double>> stats_by_weight(nw);
  for (auto& sw : stats_by_weight) sw.reserve(opts.B);
  for (int b = 0; b < opts.B; ++b) {
    if (rep_stats[b].empty()) {
      ++failures;
      continue;
    }
    for (std::size_t w = 0; w < nw; ++w) stats_by_weight[w].push_back(rep_stats[b][w]);
  }
  if (failures > opts.max_failure_frac * opts.B)
    throw std::runtime_error("bootstrap: replicate failure count " + std::to_string(failures) +
                             " exceeds the allowed fraction of B=" + std::to_string(opts.B));

  std::vector<TestReport> reports(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    TestReport& r = reports[w];
    r.v_obs = v_obs[w];
    r.theta_hat = fit0.theta_hat;
    r.loglik = fit0.loglik;
    r.fit_converged = fit0.converged;
    r.B = opts.B;
    r.failures = failures;
    r.b_effective = opts.B - failures;
    r.replicate_stats = std::move(stats_by_weight[w]);
    r.p_value = bootstrap_p_value(r.v_obs, r.replicate_stats);
    for (double alpha : opts.critical_alphas)
      r.critical_values.emplace_back(alpha,
                                     bootstrap_critical_value(r.replicate_stats, alpha));
    r.seed = opts.seed;
    r.weight = ws[w];
    r.fix_lambda3 = opts.fit.fix_lambda3;
    r.n = n;
  }
  return reports;
}

TestReport run_bootstrap_test(const BivariateSample& s, const WeightSpec& w,
                              const BootstrapOptions& opts) {
  return run_bootstrap_multi(s, {w}, opts).front();
}

}  // namespace bhgof
