#pragma once

#include <cmath>
#include <string>

namespace bhgof {

/// Parameters (mu, sigma2, lambda1, lambda2, lambda3) of the bivariate
/// Hermite distribution with pgf exp(mu*L(t) + sigma2/2 * L(t)^2),
/// L(t) = lambda1(t1-1) + lambda2(t2-1) + lambda3(t1*t2-1).
struct BHParams {
  double mu = 1.0;
  double sigma2 = 1.0;
  double lambda1 = 0.5;
  double lambda2 = 0.5;
  double lambda3 = 0.0;
};

/// Empty string when the parameter-space constraints hold; otherwise a
/// message naming every violated inequality.
std::string check_params(double mu, double sigma2, double lambda1, double lambda2,
                         double lambda3);

/// Validates and constructs; throws std::invalid_argument naming the
/// violated constraint(s).
BHParams make_params(double mu, double sigma2, double lambda1, double lambda2,
                     double lambda3);

/// The exponent of the pgf at t.
inline double pgf_exponent(const BHParams& p, double t1, double t2) {
  const double lam = p.lambda1 * (t1 - 1.0) + p.lambda2 * (t2 - 1.0) +
                     p.lambda3 * (t1 * t2 - 1.0);
  return p.mu * lam + 0.5 * p.sigma2 * lam * lam;
}

inline double pgf_eval(const BHParams& p, double t1, double t2) {
  return std::exp(pgf_exponent(p, t1, t2));
}

/// Rescales to the sigma2 = 1 representative of the equivalence class
/// (mu, sigma2, lambda) ~ (mu/c, sigma2/c^2, c*lambda), which leaves the pgf
/// unchanged. Throws std::domain_error when sigma2 = 0 (Poisson boundary,
/// no such representative).
BHParams gauge_normalize(const BHParams& p);

struct Moments {
  double mean1, mean2, var1, var2, cov;
};

Moments moments(const BHParams& p);

std::string params_to_string(const BHParams& p);

}  // namespace bhgof
