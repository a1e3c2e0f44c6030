#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bhgof/experiment.hpp"
#include "bhgof/io.hpp"
#include "bhgof/sampler.hpp"

namespace {

using namespace bhgof;

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

BivariateSample load_input(const std::string& data_path, const std::string& table_path) {
  if (!data_path.empty() && !table_path.empty())
    throw std::runtime_error("give either --data or --table, not both");
  if (!data_path.empty()) return load_pairs(data_path);
  if (!table_path.empty()) return load_contingency(table_path);
  throw std::runtime_error("one of --data or --table is required");
}

void emit(const nlohmann::json& j, const std::string& text, const std::string& out,
          const std::string& format, const std::string& csv = "") {
  if (!out.empty()) {
    if (format == "csv" && !csv.empty())
      write_text_file(out, csv);
    else
      write_text_file(out, j.dump(2) + "\n");
  }
  std::cout << text;
}

AlternativeSpec spec_from_cli(const std::string& family, const std::string& theta,
                              const std::string& params, const std::string& params2,
                              int m, double lambda, double p) {
  AlternativeSpec s;
  s.family = family_from_name(family);
  if (s.family == Family::BH) {
    const auto v = parse_doubles(theta);
    if (v.size() != 5) throw std::runtime_error("--theta needs mu,sigma2,lambda1,lambda2,lambda3");
    std::copy(v.begin(), v.end(), s.bh.begin());
    return validate_alternative(s);
  }
  const auto v = parse_doubles(params);
  if (v.size() != 3) throw std::runtime_error("--params needs three comma-separated values");
  std::copy(v.begin(), v.end(), s.a.begin());
  s.m = m;
  s.rate = lambda;
  s.mix_p = p;
  if (s.family == Family::BPP) {
    const auto w = parse_doubles(params2);
    if (w.size() != 3) throw std::runtime_error("--params2 needs three comma-separated values");
    std::copy(w.begin(), w.end(), s.b.begin());
  }
  return validate_alternative(s);
}

int run_experiment_command(const std::string& mode, const std::string& config_path,
                           const std::string& out, const std::string& format,
                           std::optional<int> reps, std::optional<int> B,
                           std::optional<std::uint64_t> seed, int jobs) {
  ExperimentConfig cfg;
  if (!config_path.empty()) {
    nlohmann::json j = nlohmann::json::parse(read_text_file(config_path));
    j["mode"] = mode;
    cfg = config_from_json(j);
  } else {
    cfg = mode == "power" ? default_power_config() : default_type1_config();
  }
  if (reps) cfg.reps = *reps;
  if (B) cfg.B = *B;
  if (seed) cfg.master_seed = *seed;
  cfg.workers = jobs;

  const ResultTable table = mode == "power" ? run_power_experiment(cfg)
                                            : run_type1_experiment(cfg);
  if (!out.empty()) {
    if (format == "json")
      write_table_json(table, out);
    else
      write_table_csv(table, out);
    std::cout << "wrote " << table.rows.size() << " rows to " << out << "\n";
  } else {
    const std::string tmp = "/tmp/bhgof_table.csv";
    write_table_csv(table, tmp);
    std::cout << read_text_file(tmp);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bivariate Hermite goodness-of-fit: epgf-based Cramer-von Mises test "
               "with parametric-bootstrap calibration"};
  app.require_subcommand(1);

  std::string data_path, table_path, out, format = "json";
  double a1 = 1.0, a2 = 1.0;
  int B = 500, jobs = 1, quad_order = 32, n_draws = 100, m = 1;
  std::uint64_t seed = 20260811;
  double fix_l3 = -1.0;  // negative sentinel: lambda3 free
  bool no_refit = false;
  std::string family = "BH", theta = "1.0,1.0,0.5,0.5,0.0", params, params2;
  double alt_lambda = 0.0, alt_p = 0.0;
  std::string config_path;
  int reps_override = -1, b_override = -1;
  bool seed_given = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out, "output file path");
    sub->add_option("--format", format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--jobs", jobs, "worker threads (0 = all cores)");
  };

  CLI::App* test = app.add_subcommand("test", "run the goodness-of-fit test on data");
  test->add_option("--data", data_path, "CSV of x,y pairs, one per line");
  test->add_option("--table", table_path, "contingency matrix of counts (rows = second coordinate)");
  test->add_option("--a1", a1, "weight exponent a1 (default 1)");
  test->add_option("--a2", a2, "weight exponent a2 (default 1)");
  test->add_option("--bootstrap", B, "bootstrap replicates (default 500)");
  test->add_option("--seed", seed, "run seed");
  test->add_option("--fix-lambda3", fix_l3, "pin lambda3 to this value (omit to fit it)");
  test->add_option("--quad-order", quad_order, "quadrature nodes per axis (default 32)");
  test->add_flag("--no-refit", no_refit, "reuse the data fit per replicate (diagnostics only)");
  add_common(test);

  CLI::App* fit = app.add_subcommand("fit", "maximum-likelihood fit only");
  fit->add_option("--data", data_path, "CSV of x,y pairs");
  fit->add_option("--table", table_path, "contingency matrix of counts");
  fit->add_option("--fix-lambda3", fix_l3, "pin lambda3 to this value (omit to fit it)");
  fit->add_option("--seed", seed, "restart-perturbation seed");
  add_common(fit);

  CLI::App* sample = app.add_subcommand("sample", "draw samples from a model");
  sample->add_option("--family", family, "BH, BB, BP, BLS, BNB, BNTA or BPP");
  sample->add_option("--theta", theta, "BH parameters mu,sigma2,lambda1,lambda2,lambda3");
  sample->add_option("--params", params, "family parameter triple");
  sample->add_option("--params2", params2, "second BP triple (BPP)");
  sample->add_option("--m", m, "BB trials / BNB shape");
  sample->add_option("--lambda", alt_lambda, "BNTA event rate");
  sample->add_option("--p", alt_p, "BPP mixing probability");
  sample->add_option("--n", n_draws, "number of pairs");
  sample->add_option("--seed", seed, "run seed");
  add_common(sample);

  auto add_experiment = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "experiment config JSON (defaults documented in README)");
    sub->add_option("--reps", reps_override, "override Monte Carlo repetitions");
    sub->add_option("--bootstrap", b_override, "override bootstrap replicates");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& v) { seed = v; seed_given = true; },
        "override master seed");
    add_common(sub);
    return sub;
  };
  add_experiment("type1", "type-I-error study over a null parameter grid");
  add_experiment("power", "power study over alternative families");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("test")) {
      const BivariateSample s = load_input(data_path, table_path);
      BootstrapOptions opts;
      opts.B = B;
      opts.seed = seed;
      opts.workers = jobs;
      opts.refit = !no_refit;
      if (fix_l3 >= 0.0) opts.fit.fix_lambda3 = fix_l3;
      const TestReport r = run_bootstrap_test(s, make_weight_spec(a1, a2, quad_order), opts);
      emit(report_to_json(r), report_to_text(r), out, format, report_to_csv(r));
      return 0;
    }
    if (app.got_subcommand("fit")) {
      const BivariateSample s = load_input(data_path, table_path);
      FitOptions fo;
      fo.restart_seed = seed;
      if (fix_l3 >= 0.0) fo.fix_lambda3 = fix_l3;
      const FitResult r = fit_mle(s, fo);
      std::ostringstream text;
      text << "n = " << s.n() << "\n"
           << "theta_hat (sigma2-gauge) = " << params_to_string(r.theta_hat) << "\n"
           << "loglik = " << r.loglik << (r.converged ? "" : "  [not converged]") << "\n";
      emit(fit_to_json(r), text.str(), out, format);
      return 0;
    }
    if (app.got_subcommand("sample")) {
      const AlternativeSpec spec =
          spec_from_cli(family, theta, params, params2, m, alt_lambda, alt_p);
      Rng rng(seed);
      const BivariateSample s = sample_alternative(spec, n_draws, rng);
      std::ostringstream csv;
      csv << "x,y\n";
      for (const auto& [x, y] : s.pairs) csv << x << "," << y << "\n";
      nlohmann::json j{{"family", family_name(spec.family)}, {"n", s.n()}};
      j["pairs"] = nlohmann::json::array();
      for (const auto& [x, y] : s.pairs) j["pairs"].push_back({x, y});
      if (!out.empty()) {
        if (format == "json")
          write_text_file(out, j.dump(2) + "\n");
        else
          write_text_file(out, csv.str());
        std::cout << "wrote " << s.n() << " pairs to " << out << "\n";
      } else {
        std::cout << csv.str();
      }
      return 0;
    }
    const std::string mode = app.got_subcommand("power") ? "power" : "type1";
    return run_experiment_command(
        mode, config_path, out, format,
        reps_override > 0 ? std::optional<int>(reps_override) : std::nullopt,
        b_override > 0 ? std::optional<int>(b_override) : std::nullopt,
        seed_given ? std::optional<std::uint64_t>(seed) : std::nullopt, jobs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
