#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "bhgof/experiment.hpp"
#include "bhgof/io.hpp"

using namespace bhgof;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path = "/tmp/bhgof_test_" + std::to_string(counter++) + ".csv";
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

const std::string kAccidents = std::string(BHGOF_DATA_DIR) + "/accidents.csv";

}  // namespace

TEST_CASE("pair ingestion") {
  TempFile ok("0,0\n1,2\n");
  const BivariateSample s = load_pairs(ok.path);
  CHECK(s.n() == 2);
  CHECK(s.pairs[0] == std::pair<int, int>{0, 0});
  CHECK(s.pairs[1] == std::pair<int, int>{1, 2});

  TempFile with_header("x,y\n3,1\n0,4\n");
  CHECK(load_pairs(with_header.path).n() == 2);

  TempFile negative("1,-2\n");
  try {
    load_pairs(negative.path);
    CHECK(false);
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }

  TempFile empty("");
  try {
    load_pairs(empty.path);
    CHECK(false);
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("empty sample") != std::string::npos);
  }

  TempFile malformed("0,0\n1\n");
  CHECK_THROWS_AS(load_pairs(malformed.path), std::runtime_error);
}

TEST_CASE("contingency ingestion expands counts in row-major order") {
  TempFile single("7\n");
  const BivariateSample s1 = load_contingency(single.path);
  CHECK(s1.n() == 7);
  for (const auto& xy : s1.pairs) CHECK(xy == std::pair<int, int>{0, 0});

  TempFile ragged("1,2\n3\n");
  CHECK_THROWS_AS(load_contingency(ragged.path), std::runtime_error);

  TempFile negative("1,2\n-3,0\n");
  CHECK_THROWS_AS(load_contingency(negative.path), std::runtime_error);
}

TEST_CASE("the bundled accident table expands to 708 pairs") {
  const BivariateSample s = load_contingency(kAccidents);
  CHECK(s.n() == 708);
  int origin = 0, x1y0 = 0;
  int maxx = 0, maxy = 0;
  for (const auto& [x, y] : s.pairs) {
    if (x == 0 && y == 0) ++origin;
    if (x == 1 && y == 0) ++x1y0;
    maxx = std::max(maxx, x);
    maxy = std::max(maxy, y);
  }
  CHECK(origin == 117);
  CHECK(x1y0 == 96);
  CHECK(maxx == 7);
  CHECK(maxy == 7);
}

TEST_CASE("experiment configs parse, serialize and apply overrides") {
  const ExperimentConfig def = default_type1_config();
  CHECK(def.sources.size() == 11);
  CHECK(def.weights.size() == 7);
  CHECK(def.B == 500);
  CHECK(def.reps == 1000);
  CHECK(def.fix_lambda3.has_value());

  const ExperimentConfig power = default_power_config();
  CHECK(power.sources.size() == 30);
  CHECK(power.weights.size() == 5);
  CHECK(power.sample_sizes == std::vector<int>{50});

  nlohmann::json j = config_to_json(def);
  const ExperimentConfig round = config_from_json(j);
  CHECK(round.sources.size() == def.sources.size());
  CHECK(round.B == def.B);

  nlohmann::json custom = {
      {"mode", "type1"},
      {"null_thetas", {{1.0, 0.8, 0.5, 0.5, 0.0}}},
      {"n", {30}},
      {"B", 120},
      {"reps", 7},
      {"weights", {{0.0, 0.0}, {1.0, 1.0}}},
      {"master_seed", 9090},
      {"fix_lambda3", 0.0},
  };
  const ExperimentConfig cfg = config_from_json(custom);
  CHECK(cfg.sources.size() == 1);
  CHECK(cfg.sources[0].family == Family::BH);
  CHECK(cfg.B == 120);
  CHECK(cfg.reps == 7);
  CHECK(cfg.weights.size() == 2);
  CHECK(cfg.master_seed == 9090);
}

TEST_CASE("tiny type-1 experiment: determinism across worker counts") {
  nlohmann::json j = {
      {"mode", "type1"},          {"null_thetas", {{1.0, 0.8, 0.5, 0.5, 0.0}}},
      {"n", {30}},                {"B", 99},
      {"reps", 4},                {"weights", {{0.0, 0.0}, {1.0, 1.0}}},
      {"master_seed", 20260811}, {"fix_lambda3", 0.0},
  };
  ExperimentConfig cfg = config_from_json(j);
  cfg.workers = 1;
  const ResultTable t1 = run_type1_experiment(cfg);
  cfg.workers = 4;
  const ResultTable t4 = run_type1_experiment(cfg);
  CHECK(tables_equal(t1, t4, 0.0));
  REQUIRE(t1.rows.size() == 2);
  for (const auto& row : t1.rows) {
    CHECK(row.reps_effective == 4);
    for (double r : row.rejection) {
      CHECK(r >= 0.0);
      CHECK(r <= 1.0);
    }
  }
}

TEST_CASE("single-repetition cells are Bernoulli") {
  nlohmann::json j = {
      {"mode", "type1"},         {"null_thetas", {{1.0, 0.8, 0.5, 0.5, 0.0}}},
      {"n", {30}},               {"B", 99},
      {"reps", 1},               {"weights", {{1.0, 1.0}}},
      {"master_seed", 7},        {"fix_lambda3", 0.0},
  };
  const ResultTable t = run_type1_experiment(config_from_json(j));
  REQUIRE(t.rows.size() == 1);
  for (double r : t.rows[0].rejection) CHECK((r == 0.0 || r == 1.0));
}

TEST_CASE("result tables round-trip through CSV and expose the JSON schema") {
  nlohmann::json j = {
      {"mode", "type1"},         {"null_thetas", {{1.0, 0.8, 0.5, 0.5, 0.0}}},
      {"n", {30}},               {"B", 99},
      {"reps", 3},               {"weights", {{1.0, 1.0}}},
      {"master_seed", 3333},     {"fix_lambda3", 0.0},
  };
  const ResultTable t = run_type1_experiment(config_from_json(j));
  const std::string path = "/tmp/bhgof_table_roundtrip.csv";
  write_table_csv(t, path);
  const ResultTable back = read_table_csv(path);
  CHECK(tables_equal(t, back, 1e-12));
  std::remove(path.c_str());

  const nlohmann::json tj = table_to_json(t);
  for (const char* key : {"metadata", "alphas", "rows"}) CHECK(tj.contains(key));
  REQUIRE(!tj["rows"].empty());
  for (const char* key :
       {"spec", "n", "a1", "a2", "rejection", "mc_se", "reps_effective", "failures"})
    CHECK(tj["rows"][0].contains(key));
  for (const char* key : {"mode", "B", "reps", "master_seed", "p_value_rule",
                          "quad_rel_target", "conventions", "runtime_seconds"})
    CHECK(tj["metadata"].contains(key));
  // the experiment records the mc standard error for every cell
  CHECK(tj["rows"][0]["mc_se"].size() == tj["alphas"].size());
}

TEST_CASE("power experiment accepts the null as an alternative (label only)") {
  nlohmann::json j = {
      {"mode", "power"},
      {"alternatives",
       {{{"family", "BH"}, {"theta", {1.0, 0.8, 0.5, 0.5, 0.0}}}}},
      {"n", {30}},
      {"B", 99},
      {"reps", 2},
      {"weights", {{1.0, 1.0}}},
      {"master_seed", 11},
      {"fix_lambda3", 0.0},
  };
  const ResultTable t = run_power_experiment(config_from_json(j));
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].spec.substr(0, 3) == "BH(");
  const nlohmann::json tj = table_to_json(t);
  CHECK(tj["rows"][0].contains("power_pct"));
}

TEST_CASE("test report serializations carry the documented fields") {
  TestReport r;
  r.v_obs = 0.5;
  r.p_value = 0.25;
  r.theta_hat = make_params(1.0, 1.0, 0.5, 0.5, 0.0);
  r.B = 99;
  r.b_effective = 99;
  r.replicate_stats = {0.1, 0.9};
  r.critical_values = {{0.05, 0.8}};
  r.weight = WeightSpec{1, 0, 32};
  r.n = 10;
  const nlohmann::json j = report_to_json(r);
  for (const char* key : {"n", "weight", "v_obs", "p_value", "theta_hat", "B",
                          "b_effective", "failures", "critical_values", "seed",
                          "replicate_stats", "fix_lambda3", "metadata"})
    CHECK(j.contains(key));
  CHECK(params_from_json(j["theta_hat"]).mu == 1.0);
  CHECK(report_to_text(r).find("do not reject") != std::string::npos);
  CHECK(report_to_csv(r).find("p_value,0.25") != std::string::npos);
}

TEST_CASE("empty result tables emit a header-only CSV") {
  ResultTable t;
  t.alphas = {0.05};
  t.metadata = nlohmann::json::object();
  const std::string path = "/tmp/bhgof_empty_table.csv";
  write_table_csv(t, path);
  std::ifstream in(path);
  std::string line;
  int lines = 0;
  std::string first;
  while (std::getline(in, line))
    if (!line.empty()) {
      if (lines == 0) first = line;
      ++lines;
    }
  CHECK(lines == 1);
  CHECK(first.substr(0, 5) == "spec,");
  std::remove(path.c_str());
}

TEST_CASE("running the null as the power alternative rejects at about alpha") {
  nlohmann::json j = {
      {"mode", "power"},
      {"alternatives", {{{"family", "BH"}, {"theta", {1.0, 0.8, 0.5, 0.5, 0.0}}}}},
      {"n", {30}},
      {"B", 99},
      {"reps", 60},
      {"weights", {{1.0, 1.0}}},
      {"alpha", {0.05, 0.10}},
      {"master_seed", 246810},
      {"fix_lambda3", 0.0},
  };
  ExperimentConfig cfg = config_from_json(j);
  cfg.workers = 2;
  const ResultTable t = run_power_experiment(cfg);
  REQUIRE(t.rows.size() == 1);
  for (std::size_t a = 0; a < t.alphas.size(); ++a) {
    const double alpha = t.alphas[a];
    const double se = std::sqrt(alpha * (1.0 - alpha) / 60.0);
    INFO("alpha ", alpha, " rejection ", t.rows[0].rejection[a]);
    CHECK(std::fabs(t.rows[0].rejection[a] - alpha) <= 3.0 * se);
  }
}
