#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bhgof/alternatives.hpp"
#include "bhgof/bootstrap.hpp"
#include "bhgof/quadrature.hpp"

namespace bhgof {

/// Monte Carlo study configuration. In type1 mode the sources are BH
/// parameter points; in power mode they are alternative-family specs.
struct ExperimentConfig {
  enum class Mode { type1, power };
  Mode mode = Mode::type1;
  std::vector<AlternativeSpec> sources;
  std::vector<int> sample_sizes{30, 50, 70};
  int B = 500;
  int reps = 1000;
  std::vector<double> alphas{0.05, 0.10};
  std::vector<WeightSpec> weights;
  std::uint64_t master_seed = 20260811;
  int workers = 1;  // <= 0: hardware concurrency
  std::optional<double> fix_lambda3 = 0.0;
  FitOptions fit{};
  double max_dataset_failure_frac = 0.02;
};

/// The full type-I grid: eleven parameter rows, n in {30,50,70}, seven
/// weight exponent pairs, B=500, reps=1000.
ExperimentConfig default_type1_config();
/// The full power setup: thirty alternative rows, n=50, five weight pairs,
/// B=500, reps=1000.
ExperimentConfig default_power_config();

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

struct ResultRow {
  std::string spec;
  int n = 0;
  double a1 = 0.0, a2 = 0.0;
  std::vector<double> rejection;  // per alpha, fraction in [0,1]
  std::vector<double> mc_se;      // sqrt(p(1-p)/reps_effective)
  int reps_effective = 0;
  int failures = 0;
};

struct ResultTable {
  std::vector<double> alphas;
  std::vector<ResultRow> rows;
  nlohmann::json metadata;
};

/// Datasets within a (source, n) cell share their bootstrap replicates across
/// all weight pairs; seeds derive master -> cell -> dataset -> replicate, so
/// every cell is a pure function of (config, master_seed).
ResultTable run_type1_experiment(const ExperimentConfig& cfg);
ResultTable run_power_experiment(const ExperimentConfig& cfg);

void write_table_csv(const ResultTable& t, const std::string& path);
void write_table_json(const ResultTable& t, const std::string& path);
ResultTable read_table_csv(const std::string& path);
nlohmann::json table_to_json(const ResultTable& t);

bool tables_equal(const ResultTable& a, const ResultTable& b, double tol = 1e-12);

}  // namespace bhgof
