#include <doctest.h>

#include <cmath>

#include "bhgof/bootstrap.hpp"
#include "bhgof/rng.hpp"
#include "bhgof/sampler.hpp"

using namespace bhgof;

TEST_CASE("add-one p-value rule") {
  std::vector<double> below(500, 1.0);
  CHECK(bootstrap_p_value(2.0, below) == doctest::Approx(1.0 / 501.0).epsilon(1e-15));

  std::vector<double> stats{0.1, 0.2, 0.3, 0.4};
  CHECK(bootstrap_p_value(0.25, stats) == doctest::Approx(3.0 / 5.0).epsilon(1e-15));
  CHECK(bootstrap_p_value(-1.0, stats) == doctest::Approx(1.0).epsilon(1e-15));
  // monotone nonincreasing in v_obs
  double prev = 2.0;
  for (double v = 0.0; v < 0.6; v += 0.05) {
    const double pv = bootstrap_p_value(v, stats);
    CHECK(pv <= prev + 1e-15);
    CHECK(pv > 0.0);
    CHECK(pv <= 1.0);
    prev = pv;
  }
}

TEST_CASE("critical value is the matching order statistic") {
  std::vector<double> stats;
  for (int i = 1; i <= 99; ++i) stats.push_back(i / 100.0);
  // k = ceil(0.95 * 100) = 95 -> 95th smallest
  CHECK(bootstrap_critical_value(stats, 0.05) == doctest::Approx(0.95).epsilon(1e-15));
  CHECK(bootstrap_critical_value(stats, 0.01) == doctest::Approx(0.99).epsilon(1e-15));
  CHECK(bootstrap_critical_value(stats, 0.10) == doctest::Approx(0.90).epsilon(1e-15));
}

namespace {

BivariateSample null_sample(int n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_bhd(make_params(1.0, 0.8, 0.5, 0.5, 0.0), n, rng);
}

}  // namespace

TEST_CASE("bootstrap test report invariants and determinism") {
  const BivariateSample s = null_sample(40, 9001);
  BootstrapOptions opts;
  opts.B = 99;
  opts.seed = 1234;
  opts.fit.fix_lambda3 = 0.0;

  const TestReport r1 = run_bootstrap_test(s, WeightSpec{1, 1, 32}, opts);
  CHECK(r1.p_value > 0.0);
  CHECK(r1.p_value <= 1.0);
  CHECK(static_cast<int>(r1.replicate_stats.size()) == r1.b_effective);
  CHECK(r1.b_effective == r1.B - r1.failures);
  CHECK(r1.v_obs >= -1e-10);
  CHECK(r1.p_value ==
        doctest::Approx(bootstrap_p_value(r1.v_obs, r1.replicate_stats)).epsilon(1e-15));

  const TestReport r2 = run_bootstrap_test(s, WeightSpec{1, 1, 32}, opts);
  CHECK(r1.v_obs == r2.v_obs);
  CHECK(r1.p_value == r2.p_value);
  CHECK(r1.replicate_stats == r2.replicate_stats);
}

TEST_CASE("bootstrap is schedule independent") {
  const BivariateSample s = null_sample(35, 77);
  BootstrapOptions opts;
  opts.B = 99;
  opts.seed = 555;
  opts.fit.fix_lambda3 = 0.0;
  opts.workers = 1;
  const TestReport serial = run_bootstrap_test(s, WeightSpec{1, 1, 32}, opts);
  opts.workers = 8;
  const TestReport parallel = run_bootstrap_test(s, WeightSpec{1, 1, 32}, opts);
  CHECK(serial.replicate_stats == parallel.replicate_stats);
  CHECK(serial.p_value == parallel.p_value);
  CHECK(serial.v_obs == parallel.v_obs);
}

TEST_CASE("decision by p-value agrees with decision by critical value") {
  const BivariateSample s = null_sample(45, 31415);
  BootstrapOptions opts;
  opts.B = 199;
  opts.seed = 2024;
  opts.fit.fix_lambda3 = 0.0;
  const TestReport r = run_bootstrap_test(s, WeightSpec{1, 1, 32}, opts);
  for (const auto& [alpha, crit] : r.critical_values) {
    const bool by_p = r.p_value <= alpha;
    const bool by_crit = r.v_obs >= crit;
    CHECK(by_p == by_crit);
  }
}

TEST_CASE("multi-weight run shares replicates and matches single runs") {
  const BivariateSample s = null_sample(40, 8080);
  BootstrapOptions opts;
  opts.B = 99;
  opts.seed = 99;
  opts.fit.fix_lambda3 = 0.0;
  const auto reports =
      run_bootstrap_multi(s, {WeightSpec{0, 0, 32}, WeightSpec{1, 1, 32}}, opts);
  REQUIRE(reports.size() == 2);
  const TestReport lone = run_bootstrap_test(s, WeightSpec{1, 1, 32}, opts);
  CHECK(reports[1].v_obs == lone.v_obs);
  CHECK(reports[1].replicate_stats == lone.replicate_stats);
  CHECK(reports[0].failures == reports[1].failures);
}

TEST_CASE("no-refit mode runs and rejects nothing on its own fit") {
  const BivariateSample s = null_sample(40, 642);
  BootstrapOptions opts;
  opts.B = 99;
  opts.seed = 17;
  opts.refit = false;
  opts.fit.fix_lambda3 = 0.0;
  const TestReport r = run_bootstrap_test(s, WeightSpec{1, 1, 32}, opts);
  CHECK(r.failures == 0);
  CHECK(r.p_value > 0.0);
}

TEST_CASE("B below the floor is rejected") {
  const BivariateSample s = null_sample(40, 10);
  BootstrapOptions opts;
  opts.B = 50;
  CHECK_THROWS_AS(run_bootstrap_test(s, WeightSpec{1, 1, 32}, opts), std::invalid_argument);
}

TEST_CASE("identical invocations serialize to identical reports") {
  const BivariateSample s = null_sample(40, 222);
  BootstrapOptions opts;
  opts.B = 99;
  opts.seed = 7;
  opts.fit.fix_lambda3 = 0.0;
  const TestReport a = run_bootstrap_test(s, WeightSpec{1, 0, 32}, opts);
  const TestReport b = run_bootstrap_test(s, WeightSpec{1, 0, 32}, opts);
  CHECK(a.v_obs == b.v_obs);
  CHECK(a.p_value == b.p_value);
  CHECK(a.replicate_stats == b.replicate_stats);
}

TEST_CASE("null-data p-values are not concentrated in the rejection region") {
  int above = 0;
  std::vector<double> ps;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const BivariateSample s = null_sample(40, derive_seed(4040, seed));
    BootstrapOptions opts;
    opts.B = 99;
    opts.seed = derive_seed(4141, seed);
    opts.fit.fix_lambda3 = 0.0;
    const TestReport r = run_bootstrap_test(s, WeightSpec{1, 1, 32}, opts);
    ps.push_back(r.p_value);
    if (r.p_value >= 0.05) ++above;
  }
  INFO("p-values: ", ps[0], " ", ps[1], " ", ps[2], " ", ps[3], " ", ps[4], " ", ps[5]);
  CHECK(above >= 1);  // all six below 0.05 has probability ~6e-8 when calibrated
}
