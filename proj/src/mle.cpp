#include "bhgof/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bhgof/nelder_mead.hpp"
#include "bhgof/pmf.hpp"
#include "bhgof/rng.hpp"

namespace bhgof {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kProbFloor = 1e-300;

double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double softplus_inv(double y) {
  // log(expm1(y)); stable for both tails
  return y > 30.0 ? y : std::log(std::expm1(y));
}

struct Transform {
  std::optional<double> fix_lambda3;
  double mu_cap;

  std::size_t dim() const { return fix_lambda3 ? 3 : 4; }

  // layout: [u_mu, u_l1, u_l2, (u_l3)]. mu is kept above the packet-rate sum
  // lambda1+lambda2+lambda3 (not just the parameter-space bound), restricting
  // the search to points that are actual distributions and can seed the
  // bootstrap sampler.
  BHParams params(const std::vector<double>& u) const {
    const double l3 = fix_lambda3 ? *fix_lambda3 : std::max(softplus(u[3]), 0.0);
    const double l1 = l3 + std::max(softplus(u[1]), 1e-12);
    const double l2 = l3 + std::max(softplus(u[2]), 1e-12);
    const double lower = l1 + l2 + l3;
    double mu = lower + std::max(softplus(u[0]), 1e-12);
    if (mu > mu_cap) mu = std::max(mu_cap, lower + 1e-6);
    return BHParams{mu, 1.0, l1, l2, l3};
  }

  std::vector<double> unconstrained(const BHParams& p) const {
    std::vector<double> u(dim());
    const double l3 = fix_lambda3 ? *fix_lambda3 : p.lambda3;
    u[1] = softplus_inv(std::max(p.lambda1 - l3, 1e-8));
    u[2] = softplus_inv(std::max(p.lambda2 - l3, 1e-8));
    const double lower = p.lambda1 + p.lambda2 + l3;
    u[0] = softplus_inv(std::clamp(p.mu - lower, 1e-8, mu_cap));
    if (!fix_lambda3) u[3] = softplus_inv(std::max(p.lambda3, 1e-8));
    return u;
  }
};

// pins lambda3 and restores strict ordering / interiority around it; mu is
// kept above the packet-rate sum so the start has positive pmf cells
BHParams project_for_fixed_lambda3(BHParams p, double l3) {
  p.lambda3 = l3;
  p.lambda1 = std::max(p.lambda1, l3 + 1e-3);
  p.lambda2 = std::max(p.lambda2, l3 + 1e-3);
  p.mu = std::max(p.mu, p.lambda1 + p.lambda2 + p.lambda3 + 0.05);
  return p;
}

}  // namespace

LogLikelihood log_likelihood_detail(const BHParams& p, const CellCounts& cells) {
  // a positive exponent at the origin means exp(...) is not a pmf here
  if (pgf_exponent(p, 0.0, 0.0) > 0.0) return {-kInf, true, 0, 0};
  const PmfTable table = pmf_table(p, cells.max_x, cells.max_y);
  double acc = 0.0;
  for (const auto& c : cells.cells) {
    const double pr = table.at(c.x, c.y);
    if (!std::isfinite(pr) || pr <= kProbFloor || pr > 1.0 + 1e-12)
      return {-kInf, true, c.x, c.y};
    acc += c.count * std::log(pr);
  }
  return {acc, false, -1, -1};
}

double log_likelihood(const BHParams& p, const BivariateSample& s) {
  return log_likelihood_detail(p, CellCounts::from(s)).value;
}

BHParams initial_estimate(const BivariateSample& s) {
  s.require_valid();
  if (s.n() < 5) throw std::invalid_argument("initial_estimate: need n >= 5");
  bool all_same = true;
  for (const auto& xy : s.pairs) all_same = all_same && xy == s.pairs.front();
  if (all_same) throw std::invalid_argument("initial_estimate: degenerate sample (all pairs identical)");

  const double n = s.n();
  double m1 = 0, m2 = 0, q1 = 0, q2 = 0, q12 = 0;
  for (const auto& [x, y] : s.pairs) {
    m1 += x;
    m2 += y;
    q1 += static_cast<double>(x) * x;
    q2 += static_cast<double>(y) * y;
    q12 += static_cast<double>(x) * y;
  }
  m1 /= n;
  m2 /= n;
  const double v1 = q1 / n - m1 * m1;
  const double v2 = q2 / n - m2 * m2;
  const double cov = q12 / n - m1 * m2;

  const double eps = 1e-3;
  const double l1 = std::sqrt(std::max(v1 - m1, eps * eps));
  const double l2 = std::sqrt(std::max(v2 - m2, eps * eps));

  double mu = 0.0;
  int used = 0;
  if (l1 > eps) {
    mu += m1 / l1;
    ++used;
  }
  if (l2 > eps) {
    mu += m2 / l2;
    ++used;
  }
  // both equidispersed or under-dispersed: near-Poisson start
  mu = used > 0 ? mu / used : std::max(m1, m2) / eps;
  mu = std::min(mu, 50.0);

  // cov = (l1+x)(l2+x) + mu*x in the sigma2 = 1 gauge
  double l3 = 0.0;
  const double b = l1 + l2 + mu, c = l1 * l2 - cov;
  const double disc = b * b - 4.0 * c;
  if (disc > 0.0) l3 = (-b + std::sqrt(disc)) / 2.0;
  l3 = std::clamp(l3, 0.0, 0.9 * std::min(l1, l2));

  // keep the start inside the Poisson-packet region (mu above the rate sum,
  // not just the parameter-space bound), so every observed cell has positive
  // probability and the search begins finite
  mu = std::max(mu, l1 + l2 + l3 + 0.05);

  BHParams p{mu, 1.0, l1, l2, l3};
  const std::string msg = check_params(p.mu, p.sigma2, p.lambda1, p.lambda2, p.lambda3);
  if (!msg.empty()) throw std::logic_error("initial_estimate produced invalid parameters: " + msg);
  return p;
}

FitResult fit_mle(const BivariateSample& s, const FitOptions& opts) {
  s.require_valid();
  if (s.n() < 5) throw std::invalid_argument("fit_mle: need n >= 5");

  BHParams init = initial_estimate(s);
  if (opts.fix_lambda3) init = project_for_fixed_lambda3(init, *opts.fix_lambda3);

  const CellCounts cells = CellCounts::from(s);
  const Transform tf{opts.fix_lambda3, opts.mu_cap};
  auto objective = [&](const std::vector<double>& u) {
    const double ll = log_likelihood_detail(tf.params(u), cells).value;
    return std::isfinite(ll) ? -ll : 1e300;
  };

  const std::vector<double> u0 = tf.unconstrained(init);
  NelderMeadOptions nm;
  nm.max_evals = opts.max_evals;
  nm.diameter_tol = opts.tol;
  nm.initial_step = opts.initial_step;

  FitResult out;
  out.init_theta = init;
  out.init_loglik = log_likelihood_detail(init, cells).value;

  double best_f = kInf;
  std::vector<double> best_x;
  for (int run = 0; run <= opts.restarts; ++run) {
    std::vector<double> start = u0;
    if (run > 0) {
      Rng prng(derive_seed(opts.restart_seed, static_cast<std::uint64_t>(run)));
      for (double& v : start) v += opts.perturb * (2.0 * prng.next_double() - 1.0);
    }
    const NelderMeadResult r = nelder_mead(objective, start, nm);
    out.evaluations += r.evals;
    if (r.fmin < best_f) {
      best_f = r.fmin;
      best_x = r.x;
      out.converged = r.converged;
    }
  }

  out.theta_hat = tf.params(best_x);
  out.loglik = best_f >= 1e300 ? -kInf : -best_f;
  return out;
}

}  // namespace bhgof
