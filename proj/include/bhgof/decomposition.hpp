#pragma once

#include <array>
#include <utility>

#include "bhgof/params.hpp"

namespace bhgof {

/// Rewrite of the pgf exponent as sum_{(j,k)} rate_{jk} * (t1^j t2^k - 1).
/// When every rate is nonnegative the distribution is a sum of independent
/// Poisson packets, packet (j,k) contributing (j*N, k*N) to the pair; this
/// drives exact sampling and the convolution cross-checks.
struct PoissonDecomposition {
  // fixed monomial order; samplers consume the generator stream in this order
  static constexpr std::array<std::pair<int, int>, 8> monomials{
      {{1, 0}, {0, 1}, {2, 0}, {0, 2}, {1, 1}, {2, 1}, {1, 2}, {2, 2}}};

  std::array<double, 8> rate{};

  double rate_of(int j, int k) const {
    for (std::size_t i = 0; i < monomials.size(); ++i)
      if (monomials[i].first == j && monomials[i].second == k) return rate[i];
    return 0.0;
  }

  double total() const {
    double s = 0.0;
    for (double r : rate) s += r;
    return s;
  }

  // all rates nonnegative up to rounding; required by the exact sampler
  bool representable(double tol = 1e-12) const {
    for (double r : rate)
      if (r < -tol) return false;
    return true;
  }
};

PoissonDecomposition poisson_decomposition(const BHParams& p);

}  // namespace bhgof
