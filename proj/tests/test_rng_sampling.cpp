#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "bhgof/pmf.hpp"
#include "bhgof/rng.hpp"
#include "bhgof/sampler.hpp"
#include "bhgof/statistic.hpp"
#include "support/oracles.hpp"

using namespace bhgof;

TEST_CASE("derive_seed is deterministic and collision-free") {
  CHECK(derive_seed(42, 0) == derive_seed(42, 0));
  CHECK(derive_seed(42, 0) != derive_seed(42, 1));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(derive_seed(123456789, i));
  CHECK(seen.size() == 10000);
}

TEST_CASE("generator streams replay exactly") {
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(8);
  bool differs = false;
  Rng a2(7);
  for (int i = 0; i < 100; ++i) differs = differs || (a2.next_u64() != c.next_u64());
  CHECK(differs);
}

namespace {

double poisson_pmf(double rate, int k) {
  return std::exp(-rate + k * std::log(rate) - std::lgamma(k + 1.0));
}

void check_poisson_rate(double rate, std::uint64_t seed) {
  Rng rng(seed);
  const int n = 50000;
  std::vector<int> counts;
  for (int i = 0; i < n; ++i) {
    const int k = rng.poisson(rate);
    if (k >= static_cast<int>(counts.size())) counts.resize(k + 1, 0);
    ++counts[k];
  }
  // Pearson test against the exact pmf, cells with expectation >= 5
  double stat = 0.0, e_in = 0.0, o_in = 0.0;
  int used = 0;
  for (int k = 0; k < static_cast<int>(counts.size()) + 20; ++k) {
    const double e = n * poisson_pmf(rate, k);
    if (e < 5.0) continue;
    const double o = k < static_cast<int>(counts.size()) ? counts[k] : 0.0;
    stat += (o - e) * (o - e) / e;
    e_in += e;
    o_in += o;
    ++used;
  }
  const double e_pool = n - e_in, o_pool = n - o_in;
  if (e_pool > 1e-9) {
    stat += (o_pool - e_pool) * (o_pool - e_pool) / e_pool;
  } else {
    --used;
  }
  CHECK(oracles::chi2_sf(stat, used) > 0.001);
}

}  // namespace

TEST_CASE("poisson variates match the exact pmf across both generation regimes") {
  check_poisson_rate(0.5, 11);   // inversion
  check_poisson_rate(3.0, 12);   // inversion
  check_poisson_rate(15.0, 13);  // transformed rejection
  check_poisson_rate(42.0, 14);  // transformed rejection
}

TEST_CASE("integer gamma draws have the right first two moments") {
  Rng rng(21);
  const int n = 200000, shape = 3;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gamma_int(shape);
    s += g;
    s2 += g * g;
  }
  const double mean = s / n, var = s2 / n - mean * mean;
  CHECK(std::fabs(mean - shape) < 3.0 * std::sqrt(static_cast<double>(shape) / n));
  CHECK(std::fabs(var - shape) < 0.1);
}

TEST_CASE("sample_bhd: same seed gives the identical sample") {
  const BHParams p = make_params(1.0, 0.8, 0.5, 0.5, 0.0);
  Rng r1(99), r2(99);
  const BivariateSample s1 = sample_bhd(p, 500, r1);
  const BivariateSample s2 = sample_bhd(p, 500, r2);
  CHECK(s1.pairs == s2.pairs);
}

TEST_CASE("sample_bhd mean matches the finite-difference expectation") {
  const BHParams p = make_params(1.0, 0.8, 0.5, 0.5, 0.0);
  Rng rng(4242);
  const int n = 200000;
  const BivariateSample s = sample_bhd(p, n, rng);
  double m1 = 0.0;
  for (const auto& [x, y] : s.pairs) m1 += x;
  m1 /= n;
  const auto fd = oracles::finite_difference_moments(p);
  const double se = std::sqrt(fd.var1 / n);
  CHECK(std::fabs(m1 - fd.mean1) < 3.0 * se);
}

TEST_CASE("sample_bhd empirical frequencies pass a chi-square against the pmf table") {
  const BHParams pts[] = {make_params(1.0, 0.8, 0.5, 0.5, 0.0),
                          make_params(2.0, 0.5, 0.4, 0.4, 0.1)};
  std::uint64_t seed = 31337;
  for (const auto& p : pts) {
    Rng rng(seed++);
    const BivariateSample s = sample_bhd(p, 100000, rng);
    const PmfTable t = pmf_table(p, 25, 25);
    const auto cs = oracles::chi_square_gof(
        CellCounts::from(s), [&](int r, int c) { return t.at(r, c); }, 25, 25);
    CHECK(cs.p_value > 0.001);
  }
}

TEST_CASE("sample_bhd rejects non-representable parameter points") {
  const BHParams p = make_params(1.0, 1.0, 0.6, 0.55, 0.0);
  Rng rng(1);
  CHECK_THROWS_AS(sample_bhd(p, 10, rng), std::domain_error);
}

TEST_CASE("epgf converges to the pgf in sup distance as n grows") {
  const BHParams p = make_params(1.0, 0.8, 0.5, 0.5, 0.0);
  std::vector<double> sup_small, sup_large;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng r1(derive_seed(777, 2 * seed)), r2(derive_seed(777, 2 * seed + 1));
    sup_small.push_back(
        oracles::sup_grid_distance(CellCounts::from(sample_bhd(p, 100, r1)), p));
    sup_large.push_back(
        oracles::sup_grid_distance(CellCounts::from(sample_bhd(p, 10000, r2)), p));
  }
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return 0.5 * (v[v.size() / 2] + v[(v.size() - 1) / 2]);
  };
  CHECK(median(sup_large) < median(sup_small));
}
