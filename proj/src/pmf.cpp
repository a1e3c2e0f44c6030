#include "bhgof/pmf.hpp"

#include <algorithm>

#include "bhgof/series.hpp"

namespace bhgof {

double PmfTable::sum() const {
  double s = 0.0;
  for (double v : p) s += v;
  return s;
}

PoissonDecomposition poisson_decomposition(const BHParams& p) {
  const double gamma = -(p.lambda1 + p.lambda2 + p.lambda3);
  const double base = p.mu + p.sigma2 * gamma;  // mu - sigma2*(l1+l2+l3)
  PoissonDecomposition d;
  d.rate[0] = p.lambda1 * base;                      // (1,0)
  d.rate[1] = p.lambda2 * base;                      // (0,1)
  d.rate[2] = 0.5 * p.sigma2 * p.lambda1 * p.lambda1;  // (2,0)
  d.rate[3] = 0.5 * p.sigma2 * p.lambda2 * p.lambda2;  // (0,2)
  d.rate[4] = p.lambda3 * base + p.sigma2 * p.lambda1 * p.lambda2;  // (1,1)
  d.rate[5] = p.sigma2 * p.lambda1 * p.lambda3;      // (2,1)
  d.rate[6] = p.sigma2 * p.lambda2 * p.lambda3;      // (1,2)
  d.rate[7] = 0.5 * p.sigma2 * p.lambda3 * p.lambda3;  // (2,2)
  return d;
}

namespace {

// pgf exponent as a polynomial grid on t1^j t2^k, constant included
SeriesGrid exponent_polynomial(const BHParams& p) {
  const PoissonDecomposition d = poisson_decomposition(p);
  SeriesGrid h(2, 2);
  for (std::size_t i = 0; i < d.monomials.size(); ++i) {
    const auto [j, k] = d.monomials[i];
    h.at(j, k) = d.rate[i];
  }
  const double gamma = -(p.lambda1 + p.lambda2 + p.lambda3);
  h.at(0, 0) = p.mu * gamma + 0.5 * p.sigma2 * gamma * gamma;
  return h;
}

}  // namespace

PmfTable pmf_table(const BHParams& p, int rmax, int smax) {
  const SeriesGrid f = series_exp(exponent_polynomial(p), rmax, smax);
  PmfTable t;
  t.rmax = rmax;
  t.smax = smax;
  t.p.resize(static_cast<std::size_t>(rmax + 1) * (smax + 1));
  for (int r = 0; r <= rmax; ++r)
    for (int s = 0; s <= smax; ++s)
      t.p[static_cast<std::size_t>(r) * (smax + 1) + s] = f.at(r, s);
  t.tail_mass = 1.0 - t.sum();
  return t;
}

PmfTable pmf_table_auto(const BHParams& p, double tail_tol, int cap) {
  int dim = 16;
  for (;;) {
    PmfTable t = pmf_table(p, std::min(dim, cap), std::min(dim, cap));
    if (t.tail_mass < tail_tol) {
      t.tail_converged = true;
      return t;
    }
    if (dim >= cap) {
      t.tail_converged = false;
      return t;
    }
    dim *= 2;
  }
}

}  // namespace bhgof
