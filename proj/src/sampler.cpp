#include "bhgof/sampler.hpp"

#include <stdexcept>

namespace bhgof {

BivariateSample sample_bhd(const PoissonDecomposition& d, int n, Rng& rng) {
  if (!d.representable())
    throw std::domain_error(
        "sample_bhd: parameter point is not representable as independent "
        "Poisson packets (negative rate); exact sampling unavailable");
  BivariateSample s;
  s.pairs.reserve(n);
  for (int i = 0; i < n; ++i) {
    int x = 0, y = 0;
    for (std::size_t m = 0; m < d.monomials.size(); ++m) {
      const double rate = d.rate[m] > 0.0 ? d.rate[m] : 0.0;
      if (rate == 0.0) continue;
      const int cnt = rng.poisson(rate);
      x += d.monomials[m].first * cnt;
      y += d.monomials[m].second * cnt;
    }
    s.pairs.emplace_back(x, y);
  }
  return s;
}

BivariateSample sample_bhd(const BHParams& p, int n, Rng& rng) {
  return sample_bhd(poisson_decomposition(p), n, rng);
}

}  // namespace bhgof
