#include "bhgof/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace bhgof {

double Rng::gamma_int(int shape) {
  if (shape < 0) throw std::invalid_argument("gamma_int: negative shape");
  double acc = 0.0;
  for (int i = 0; i < shape; ++i) acc += exponential();
  return acc;
}

int Rng::poisson(double rate) {
  if (rate < 0.0 || !std::isfinite(rate)) throw std::invalid_argument("poisson: invalid rate");
  if (rate == 0.0) return 0;
  if (rate < 10.0) return poisson_inversion(rate);
  return poisson_transformed_rejection(rate);
}

int Rng::poisson_inversion(double rate) {
  const double u = next_double();
  double p = std::exp(-rate);
  double cum = p;
  int k = 0;
  while (u > cum && k < 1000) {
    ++k;
    p *= rate / k;
    cum += p;
  }
  return k;
}

// Hoermann's PTRS transformed rejection, valid for rate >= 10.
int Rng::poisson_transformed_rejection(double rate) {
  const double b = 0.931 + 2.53 * std::sqrt(rate);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_rate = std::log(rate);
  for (;;) {
    const double u = next_double() - 0.5;
    const double v = next_double();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + rate + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<int>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_rate - rate - std::lgamma(k + 1.0)) {
      return static_cast<int>(k);
    }
  }
}

}  // namespace bhgof
