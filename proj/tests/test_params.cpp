#include <doctest.h>

#include <cmath>

#include "bhgof/params.hpp"
#include "support/oracles.hpp"

using namespace bhgof;

namespace {
const double kGrid11[][4] = {{1.0, 0.8, 0.10, 0.20}, {1.0, 0.8, 0.25, 0.25},
                             {1.0, 0.8, 0.50, 0.20}, {1.0, 0.8, 0.50, 0.50},
                             {1.5, 1.0, 0.50, 0.50}, {1.5, 1.0, 0.50, 0.75},
                             {1.5, 1.0, 0.75, 0.25}, {1.5, 1.0, 1.00, 0.25},
                             {2.0, 1.0, 0.25, 0.75}, {2.0, 1.0, 0.50, 0.25},
                             {2.0, 1.0, 0.75, 0.25}};
}

TEST_CASE("parameter validation accepts the simulation-grid point") {
  CHECK(check_params(1.0, 0.8, 0.5, 0.5, 0.0).empty());
  const BHParams p = make_params(1.0, 0.8, 0.5, 0.5, 0.0);
  CHECK(p.mu == 1.0);
  for (const auto& g : kGrid11) CHECK(check_params(g[0], g[1], g[2], g[3], 0.0).empty());
}

TEST_CASE("parameter validation names the violated constraint") {
  const std::string m1 = check_params(1.0, 0.8, 0.5, 0.5, 0.6);
  CHECK(m1.find("lambda2 > lambda3") != std::string::npos);
  CHECK_THROWS_AS(make_params(1.0, 0.8, 0.5, 0.5, 0.6), std::invalid_argument);

  // boundary: 1.0 is not strictly greater than 2.0*(0.5+0)
  const std::string m2 = check_params(1.0, 2.0, 0.5, 0.5, 0.0);
  CHECK(m2.find("mu > sigma2*(lambda1+lambda3)") != std::string::npos);
  CHECK_THROWS_AS(make_params(1.0, 2.0, 0.5, 0.5, 0.0), std::invalid_argument);

  CHECK_FALSE(check_params(-1.0, 0.8, 0.5, 0.5, 0.0).empty());
  CHECK_FALSE(check_params(1.0, 0.8, 0.5, 0.5, -0.1).empty());
}

TEST_CASE("gauge normalization rescales to sigma2 = 1 with the pgf unchanged") {
  const BHParams p = make_params(1.0, 0.8, 0.5, 0.5, 0.0);
  const BHParams q = gauge_normalize(p);
  CHECK(q.sigma2 == 1.0);
  CHECK(q.mu == doctest::Approx(1.118033988749895).epsilon(1e-12));
  CHECK(q.lambda1 == doctest::Approx(0.4472135954999579).epsilon(1e-12));
  CHECK(q.lambda2 == doctest::Approx(0.4472135954999579).epsilon(1e-12));
  CHECK(q.lambda3 == 0.0);
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 4; ++j) {
      const double t1 = i / 4.0, t2 = j / 4.0;
      CHECK(pgf_eval(p, t1, t2) == doctest::Approx(pgf_eval(q, t1, t2)).epsilon(1e-12));
    }
}

TEST_CASE("gauge normalization: identity at sigma2 = 1, invariance with lambda3 > 0") {
  const BHParams p1 = make_params(1.5, 1.0, 0.5, 0.75, 0.0);
  const BHParams q1 = gauge_normalize(p1);
  CHECK(q1.mu == p1.mu);
  CHECK(q1.lambda1 == p1.lambda1);

  const BHParams p2 = make_params(2.0, 0.5, 0.4, 0.4, 0.1);
  const BHParams q2 = gauge_normalize(p2);
  CHECK(q2.sigma2 == 1.0);
  CHECK(q2.lambda1 == doctest::Approx(0.4 * std::sqrt(0.5)).epsilon(1e-14));
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 4; ++j) {
      const double t1 = i / 4.0, t2 = j / 4.0;
      CHECK(pgf_eval(p2, t1, t2) == doctest::Approx(pgf_eval(q2, t1, t2)).epsilon(1e-12));
    }
  CHECK(check_params(q2.mu, q2.sigma2, q2.lambda1, q2.lambda2, q2.lambda3).empty());
}

TEST_CASE("gauge normalization rejects the Poisson boundary") {
  const BHParams p = make_params(1.0, 0.0, 0.5, 0.5, 0.0);
  CHECK_THROWS_AS(gauge_normalize(p), std::domain_error);
}

TEST_CASE("pgf evaluation") {
  const BHParams p = make_params(1.0, 0.8, 0.5, 0.5, 0.0);
  CHECK(std::fabs(pgf_eval(p, 1.0, 1.0) - 1.0) < 1e-14);
  CHECK(pgf_eval(p, 0.0, 0.0) == doctest::Approx(std::exp(-0.6)).epsilon(1e-14));
  CHECK(pgf_eval(p, 0.3, 0.7) ==
        doctest::Approx(pgf_eval(gauge_normalize(p), 0.3, 0.7)).epsilon(1e-12));

  // pgf(1,1) = 1 across the grid and for lambda3 > 0
  for (const auto& g : kGrid11)
    CHECK(std::fabs(pgf_eval(make_params(g[0], g[1], g[2], g[3], 0.0), 1.0, 1.0) - 1.0) <
          1e-14);
  CHECK(std::fabs(pgf_eval(make_params(2.0, 0.5, 0.4, 0.4, 0.1), 1.0, 1.0) - 1.0) < 1e-14);
}

TEST_CASE("moment formulas") {
  const Moments m = moments(make_params(1.0, 0.8, 0.5, 0.5, 0.0));
  CHECK(m.mean1 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(m.mean2 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(m.var1 == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(m.var2 == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(m.cov == doctest::Approx(0.2).epsilon(1e-14));

  // sigma2 = 0, lambda3 = 0: Poisson margins
  const Moments mp = moments(make_params(1.3, 0.0, 0.4, 0.7, 0.0));
  CHECK(mp.var1 == doctest::Approx(mp.mean1).epsilon(1e-14));
  CHECK(mp.var2 == doctest::Approx(mp.mean2).epsilon(1e-14));
  CHECK(mp.cov == 0.0);

  // lambda3 = 0: cov = sigma2*lambda1*lambda2, confirmed by finite differences
  const BHParams pc = make_params(1.5, 1.0, 0.75, 0.25, 0.0);
  CHECK(moments(pc).cov == doctest::Approx(1.0 * 0.75 * 0.25).epsilon(1e-12));
  const auto fd = oracles::finite_difference_moments(pc);
  CHECK(moments(pc).cov == doctest::Approx(fd.cov).epsilon(1e-6));
}

TEST_CASE("moment formulas match pgf finite differences on the full grid") {
  auto check_point = [](const BHParams& p) {
    const Moments m = moments(p);
    const auto fd = oracles::finite_difference_moments(p);
    CHECK(std::fabs(m.mean1 - fd.mean1) < 1e-6);
    CHECK(std::fabs(m.mean2 - fd.mean2) < 1e-6);
    CHECK(std::fabs(m.var1 - fd.var1) < 1e-6);
    CHECK(std::fabs(m.var2 - fd.var2) < 1e-6);
    CHECK(std::fabs(m.cov - fd.cov) < 1e-6);
  };
  for (const auto& g : kGrid11) check_point(make_params(g[0], g[1], g[2], g[3], 0.0));
  check_point(make_params(2.0, 0.5, 0.4, 0.4, 0.1));
}
