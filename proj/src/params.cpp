#include "bhgof/params.hpp"

#include <cstdio>
#include <stdexcept>

namespace bhgof {

std::string check_params(double mu, double sigma2, double lambda1, double lambda2,
                         double lambda3) {
  std::string msg;
  auto fail = [&msg](const std::string& s) {
    if (!msg.empty()) msg += "; ";
    msg += s;
  };
  if (!(mu > 0.0)) fail("mu > 0 violated");
  if (!(sigma2 >= 0.0)) fail("sigma2 >= 0 violated");
  if (!(lambda3 >= 0.0)) fail("lambda3 >= 0 violated");
  if (!(lambda1 > lambda3)) fail("lambda1 > lambda3 violated");
  if (!(lambda2 > lambda3)) fail("lambda2 > lambda3 violated");
  if (!(mu > sigma2 * (lambda1 + lambda3))) fail("mu > sigma2*(lambda1+lambda3) violated");
  if (!(mu > sigma2 * (lambda2 + lambda3))) fail("mu > sigma2*(lambda2+lambda3) violated");
  return msg;
}

BHParams make_params(double mu, double sigma2, double lambda1, double lambda2,
                     double lambda3) {
  const std::string msg = check_params(mu, sigma2, lambda1, lambda2, lambda3);
  if (!msg.empty()) throw std::invalid_argument("invalid BH parameters: " + msg);
  return BHParams{mu, sigma2, lambda1, lambda2, lambda3};
}

BHParams gauge_normalize(const BHParams& p) {
  if (p.sigma2 == 1.0) return p;
  if (p.sigma2 <= 0.0)
    throw std::domain_error("gauge_normalize: sigma2 = 0 (Poisson boundary) has no sigma2=1 representative");
  const double c = std::sqrt(p.sigma2);
  return BHParams{p.mu / c, 1.0, c * p.lambda1, c * p.lambda2, c * p.lambda3};
}

Moments moments(const BHParams& p) {
  const double r1 = p.lambda1 + p.lambda3;
  const double r2 = p.lambda2 + p.lambda3;
  Moments m;
  m.mean1 = p.mu * r1;
  m.mean2 = p.mu * r2;
  m.var1 = p.mu * r1 + p.sigma2 * r1 * r1;
  m.var2 = p.mu * r2 + p.sigma2 * r2 * r2;
  m.cov = p.sigma2 * r1 * r2 + p.mu * p.lambda3;
  return m;
}

std::string params_to_string(const BHParams& p) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "(%.6g,%.6g,%.6g,%.6g,%.6g)", p.mu, p.sigma2,
                p.lambda1, p.lambda2, p.lambda3);
  return buf;
}

}  // namespace bhgof
