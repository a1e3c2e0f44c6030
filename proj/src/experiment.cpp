#include "bhgof/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bhgof/io.hpp"
#include "bhgof/parallel.hpp"
#include "bhgof/rng.hpp"

namespace bhgof {

namespace {

AlternativeSpec bh_spec(double mu, double s2, double l1, double l2, double l3) {
  AlternativeSpec s;
  s.family = Family::BH;
  s.bh = {mu, s2, l1, l2, l3};
  return s;
}

AlternativeSpec triple_spec(Family f, double x, double y, double z) {
  AlternativeSpec s;
  s.family = f;
  s.a = {x, y, z};
  return s;
}

}  // namespace

ExperimentConfig default_type1_config() {
  ExperimentConfig cfg;
  cfg.mode = ExperimentConfig::Mode::type1;
  const double grid[][4] = {{1.0, 0.8, 0.10, 0.20}, {1.0, 0.8, 0.25, 0.25},
                            {1.0, 0.8, 0.50, 0.20}, {1.0, 0.8, 0.50, 0.50},
                            {1.5, 1.0, 0.50, 0.50}, {1.5, 1.0, 0.50, 0.75},
                            {1.5, 1.0, 0.75, 0.25}, {1.5, 1.0, 1.00, 0.25},
                            {2.0, 1.0, 0.25, 0.75}, {2.0, 1.0, 0.50, 0.25},
                            {2.0, 1.0, 0.75, 0.25}};
  for (const auto& g : grid) cfg.sources.push_back(bh_spec(g[0], g[1], g[2], g[3], 0.0));
  cfg.sample_sizes = {30, 50, 70};
  for (auto [a1, a2] : {std::pair{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0},
                        {5.0, 1.0}, {1.0, 5.0}, {5.0, 5.0}})
    cfg.weights.push_back(WeightSpec{a1, a2, 32});
  cfg.B = 500;
  cfg.reps = 1000;
  cfg.fix_lambda3 = 0.0;
  return cfg;
}

ExperimentConfig default_power_config() {
  ExperimentConfig cfg;
  cfg.mode = ExperimentConfig::Mode::power;
  const double d = 1.0 - std::exp(-1.0);

  auto bb = [](int m, double p1, double p2, double p3) {
    AlternativeSpec s = triple_spec(Family::BB, p1, p2, p3);
    s.m = m;
    return s;
  };
  auto bnb = [](int nu, double g0, double g1, double g2) {
    AlternativeSpec s = triple_spec(Family::BNB, g0, g1, g2);
    s.m = nu;
    return s;
  };
  auto bnta = [](double rate, double l1, double l2, double l3) {
    AlternativeSpec s = triple_spec(Family::BNTA, l1, l2, l3);
    s.rate = rate;
    return s;
  };
  auto bpp = [](double p, std::array<double, 3> t, std::array<double, 3> l) {
    AlternativeSpec s;
    s.family = Family::BPP;
    s.mix_p = p;
    s.a = t;
    s.b = l;
    return s;
  };

  cfg.sources = {
      bb(1, 0.41, 0.02, 0.01),
      bb(1, 0.41, 0.03, 0.02),
      bb(2, 0.61, 0.01, 0.01),
      bb(1, 0.61, 0.03, 0.02),
      bb(2, 0.71, 0.01, 0.01),
      triple_spec(Family::BP, 1.00, 1.00, 0.25),
      triple_spec(Family::BP, 1.00, 1.00, 0.50),
      triple_spec(Family::BP, 1.00, 1.00, 0.75),
      triple_spec(Family::BP, 1.50, 1.00, 0.31),
      triple_spec(Family::BP, 1.50, 1.00, 0.92),
      triple_spec(Family::BLS, 0.25, 0.15, 0.10),
      triple_spec(Family::BLS, 5 * d / 7, d / 7, d / 7),
      triple_spec(Family::BLS, 3 * d / 4, d / 8, d / 8),
      triple_spec(Family::BLS, 7 * d / 9, d / 9, d / 9),
      triple_spec(Family::BLS, 0.51, 0.01, 0.02),
      bnb(1, 0.92, 0.97, 0.01),
      bnb(1, 0.97, 0.97, 0.01),
      bnb(1, 0.97, 0.97, 0.02),
      bnb(1, 0.98, 0.98, 0.01),
      bnb(1, 0.99, 0.99, 0.01),
      bnta(0.21, 0.01, 0.01, 0.98),
      bnta(0.24, 0.01, 0.01, 0.98),
      bnta(0.26, 0.01, 0.01, 0.97),
      bnta(0.26, 0.01, 0.01, 0.98),
      bnta(0.28, 0.01, 0.01, 0.97),
      bpp(0.31, {0.2, 0.2, 0.1}, {1.0, 1.0, 0.9}),
      bpp(0.31, {0.2, 0.2, 0.1}, {1.0, 1.2, 0.9}),
      bpp(0.32, {0.2, 0.2, 0.1}, {1.0, 1.0, 0.9}),
      bpp(0.33, {0.2, 0.2, 0.1}, {1.0, 1.0, 0.9}),
      bpp(0.33, {0.2, 0.2, 0.1}, {1.0, 1.1, 0.9}),
  };
  cfg.sample_sizes = {50};
  for (auto [a1, a2] :
       {std::pair{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {1.0, 5.0}, {5.0, 5.0}})
    cfg.weights.push_back(WeightSpec{a1, a2, 32});
  cfg.B = 500;
  cfg.reps = 1000;
  cfg.fix_lambda3 = 0.0;
  return cfg;
}

namespace {

nlohmann::json spec_to_json(const AlternativeSpec& s) {
  nlohmann::json j{{"family", family_name(s.family)}};
  switch (s.family) {
    case Family::BH:
      j["theta"] = s.bh;
      break;
    case Family::BB:
      j["m"] = s.m;
      j["params"] = s.a;
      break;
    case Family::BNB:
      j["nu"] = s.m;
      j["params"] = s.a;
      break;
    case Family::BNTA:
      j["lambda"] = s.rate;
      j["params"] = s.a;
      break;
    case Family::BPP:
      j["p"] = s.mix_p;
      j["params"] = s.a;
      j["params2"] = s.b;
      break;
    default:
      j["params"] = s.a;
      break;
  }
  return j;
}

AlternativeSpec spec_from_json(const nlohmann::json& j) {
  AlternativeSpec s;
  s.family = family_from_name(j.at("family").get<std::string>());
  switch (s.family) {
    case Family::BH:
      s.bh = j.at("theta").get<std::array<double, 5>>();
      break;
    case Family::BB:
      s.m = j.at("m").get<int>();
      s.a = j.at("params").get<std::array<double, 3>>();
      break;
    case Family::BNB:
      s.m = j.at("nu").get<int>();
      s.a = j.at("params").get<std::array<double, 3>>();
      break;
    case Family::BNTA:
      s.rate = j.at("lambda").get<double>();
      s.a = j.at("params").get<std::array<double, 3>>();
      break;
    case Family::BPP:
      s.mix_p = j.at("p").get<double>();
      s.a = j.at("params").get<std::array<double, 3>>();
      s.b = j.at("params2").get<std::array<double, 3>>();
      break;
    default:
      s.a = j.at("params").get<std::array<double, 3>>();
      break;
  }
  return validate_alternative(s);
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
  const std::string mode = j.value("mode", "type1");
  ExperimentConfig cfg =
      mode == "power" ? default_power_config() : default_type1_config();
  if (mode != "type1" && mode != "power")
    throw std::invalid_argument("config: mode must be 'type1' or 'power'");

  if (j.contains("null_thetas")) {
    cfg.sources.clear();
    for (const auto& t : j.at("null_thetas")) {
      const auto v = t.get<std::array<double, 5>>();
      cfg.sources.push_back(bh_spec(v[0], v[1], v[2], v[3], v[4]));
    }
  }
  if (j.contains("alternatives")) {
    cfg.sources.clear();
    for (const auto& a : j.at("alternatives")) cfg.sources.push_back(spec_from_json(a));
  }
  if (j.contains("n")) cfg.sample_sizes = j.at("n").get<std::vector<int>>();
  cfg.B = j.value("B", cfg.B);
  cfg.reps = j.value("reps", cfg.reps);
  if (j.contains("alpha")) cfg.alphas = j.at("alpha").get<std::vector<double>>();
  if (j.contains("weights")) {
    cfg.weights.clear();
    const int order = j.value("quad_order", 32);
    for (const auto& w : j.at("weights")) {
      const auto v = w.get<std::vector<double>>();
      if (v.size() != 2) throw std::invalid_argument("config: weight entries are [a1, a2]");
      cfg.weights.push_back(make_weight_spec(v[0], v[1], order));
    }
  }
  if (j.contains("master_seed")) cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
  cfg.workers = j.value("workers", cfg.workers);
  if (j.contains("fix_lambda3")) {
    if (j.at("fix_lambda3").is_null())
      cfg.fix_lambda3.reset();
    else
      cfg.fix_lambda3 = j.at("fix_lambda3").get<double>();
  }
  if (j.contains("fit")) {
    const auto& f = j.at("fit");
    cfg.fit.max_evals = f.value("max_evals", cfg.fit.max_evals);
    cfg.fit.tol = f.value("tol", cfg.fit.tol);
    cfg.fit.restarts = f.value("restarts", cfg.fit.restarts);
  }
  cfg.max_dataset_failure_frac = j.value("max_failure_frac", cfg.max_dataset_failure_frac);
  return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json alts = nlohmann::json::array();
  for (const auto& s : cfg.sources) alts.push_back(spec_to_json(s));
  nlohmann::json weights = nlohmann::json::array();
  for (const auto& w : cfg.weights) weights.push_back({w.a1, w.a2});
  nlohmann::json j{{"mode", cfg.mode == ExperimentConfig::Mode::power ? "power" : "type1"},
                   {"alternatives", alts},
                   {"n", cfg.sample_sizes},
                   {"B", cfg.B},
                   {"reps", cfg.reps},
                   {"alpha", cfg.alphas},
                   {"weights", weights},
                   {"quad_order", cfg.weights.empty() ? 32 : cfg.weights.front().quad_order},
                   {"master_seed", cfg.master_seed},
                   {"workers", cfg.workers},
                   {"max_failure_frac", cfg.max_dataset_failure_frac}};
  if (cfg.fix_lambda3)
    j["fix_lambda3"] = *cfg.fix_lambda3;
  else
    j["fix_lambda3"] = nullptr;
  return j;
}

namespace {

ResultTable run_experiment(const ExperimentConfig& cfg) {
  if (cfg.reps < 1) throw std::invalid_argument("experiment: reps >= 1 required");
  if (cfg.B < 99) throw std::invalid_argument("experiment: B >= 99 required");
  if (cfg.sources.empty() || cfg.weights.empty() || cfg.sample_sizes.empty())
    throw std::invalid_argument("experiment: sources, sizes and weights must be nonempty");
  for (const auto& s : cfg.sources) validate_alternative(s);

  const auto t_start = std::chrono::steady_clock::now();
  const std::size_t n_sizes = cfg.sample_sizes.size();
  const std::size_t n_cells = cfg.sources.size() * n_sizes;
  const std::size_t n_weights = cfg.weights.size();
  const std::size_t reps = static_cast<std::size_t>(cfg.reps);

  struct TaskResult {
    bool ok = false;
    std::vector<double> pvals;
  };
  std::vector<TaskResult> results(n_cells * reps);

  BootstrapOptions bo;
  bo.B = cfg.B;
  bo.workers = 1;  // parallelism lives at the dataset level
  bo.fit = cfg.fit;
  bo.fit.fix_lambda3 = cfg.fix_lambda3;

  parallel_for(n_cells * reps, cfg.workers, [&](std::size_t task) {
    const std::size_t cell = task / reps;
    const std::size_t d = task % reps;
    const AlternativeSpec& src = cfg.sources[cell / n_sizes];
    const int n = cfg.sample_sizes[cell % n_sizes];
    const std::uint64_t cell_seed = derive_seed(cfg.master_seed, cell + 1);
    const std::uint64_t ds_seed = derive_seed(cell_seed, d + 1);
    try {
      Rng rng(derive_seed(ds_seed, 0));
      const BivariateSample sample = sample_alternative(src, n, rng);
      BootstrapOptions local = bo;
      local.seed = derive_seed(ds_seed, 1);
      const auto reports = run_bootstrap_multi(sample, cfg.weights, local);
      TaskResult& r = results[task];
      r.pvals.reserve(n_weights);
      for (const auto& rep : reports) r.pvals.push_back(rep.p_value);
      r.ok = true;
    } catch (const std::exception&) {
      // dataset failure, counted per cell below
    }
  });

  ResultTable table;
  table.alphas = cfg.alphas;
  for (std::size_t cell = 0; cell < n_cells; ++cell) {
    const AlternativeSpec& src = cfg.sources[cell / n_sizes];
    const int n = cfg.sample_sizes[cell % n_sizes];
    int failures = 0;
    for (std::size_t d = 0; d < reps; ++d)
      if (!results[cell * reps + d].ok) ++failures;
    const int eff = cfg.reps - failures;
    if (failures > cfg.max_dataset_failure_frac * cfg.reps || eff == 0)
      throw std::runtime_error("experiment: dataset failure count " +
                               std::to_string(failures) + " in cell " + describe(src) +
                               ", n=" + std::to_string(n) + " exceeds the allowed fraction");
    for (std::size_t w = 0; w < n_weights; ++w) {
      ResultRow row;
      row.spec = describe(src);
      row.n = n;
      row.a1 = cfg.weights[w].a1;
      row.a2 = cfg.weights[w].a2;
      row.reps_effective = eff;
      row.failures = failures;
      for (double alpha : cfg.alphas) {
        int hits = 0;
        for (std::size_t d = 0; d < reps; ++d) {
          const TaskResult& r = results[cell * reps + d];
          if (r.ok && r.pvals[w] <= alpha) ++hits;
        }
        const double frac = static_cast<double>(hits) / eff;
        row.rejection.push_back(frac);
        row.mc_se.push_back(std::sqrt(frac * (1.0 - frac) / eff));
      }
      table.rows.push_back(std::move(row));
    }
  }

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  table.metadata = config_to_json(cfg);
  table.metadata["runtime_seconds"] = secs;
  table.metadata["p_value_rule"] = "(1 + #{V* >= V_obs}) / (B_effective + 1)";
  table.metadata["quad_rel_target"] = 1e-8;
  table.metadata["conventions"] = {
      {"BP", "trivariate reduction, pgf exp(l1(t1-1)+l2(t2-1)+l3(t1t2-1))"},
      {"BNB", "gamma(nu,1) mixture of BP, pgf (1-g0(t1-1)-g1(t2-1)-g2(t1t2-1))^-nu"},
      {"BLS", "pgf log(1-l1 t1-l2 t2-l3 t1 t2)/log(1-l1-l2-l3)"},
      {"BNTA", "Poisson(lambda)-fold sum of iid BP draws"}};
  return table;
}

}  // namespace

ResultTable run_type1_experiment(const ExperimentConfig& cfg) {
  for (const auto& s : cfg.sources)
    if (s.family != Family::BH)
      throw std::invalid_argument("type1 experiment: all sources must be BH parameter points");
  return run_experiment(cfg);
}

ResultTable run_power_experiment(const ExperimentConfig& cfg) { return run_experiment(cfg); }

namespace {

bool is_power_metadata(const nlohmann::json& meta) {
  return meta.contains("mode") && meta.at("mode") == "power";
}

}  // namespace

void write_table_csv(const ResultTable& t, const std::string& path) {
  const bool power = is_power_metadata(t.metadata);
  std::ostringstream os;
  os.precision(17);
  for (const auto& [key, value] : t.metadata.items())
    os << "# " << key << "=" << value.dump() << "\n";
  os << "spec,n,a1,a2,alpha,rejection_rate,mc_se,reps_effective,failures";
  if (power) os << ",power_pct";
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t a = 0; a < t.alphas.size(); ++a) {
      os << row.spec << "," << row.n << "," << row.a1 << "," << row.a2 << ","
         << t.alphas[a] << "," << row.rejection[a] << "," << row.mc_se[a] << ","
         << row.reps_effective << "," << row.failures;
      if (power) os << "," << std::lround(100.0 * row.rejection[a]);
      os << "\n";
    }
  }
  write_text_file(path, os.str());
}

nlohmann::json table_to_json(const ResultTable& t) {
  const bool power = is_power_metadata(t.metadata);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r{{"spec", row.spec},       {"n", row.n},
                     {"a1", row.a1},           {"a2", row.a2},
                     {"rejection", row.rejection}, {"mc_se", row.mc_se},
                     {"reps_effective", row.reps_effective}, {"failures", row.failures}};
    if (power) {
      std::vector<int> pct;
      for (double v : row.rejection) pct.push_back(static_cast<int>(std::lround(100.0 * v)));
      r["power_pct"] = pct;
    }
    rows.push_back(std::move(r));
  }
  return {{"metadata", t.metadata}, {"alphas", t.alphas}, {"rows", rows}};
}

void write_table_json(const ResultTable& t, const std::string& path) {
  write_text_file(path, table_to_json(t).dump(2) + "\n");
}

ResultTable read_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  ResultTable t;
  t.metadata = nlohmann::json::object();
  std::string line;
  bool header_seen = false;
  struct Key {
    std::string spec;
    int n;
    double a1, a2;
    bool operator==(const Key& o) const {
      return spec == o.spec && n == o.n && a1 == o.a1 && a2 == o.a2;
    }
  };
  std::vector<Key> keys;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        std::string key = line.substr(2, eq - 2);
        t.metadata[key] = nlohmann::json::parse(line.substr(eq + 1), nullptr, false);
      }
      continue;
    }
    if (!header_seen) {
      header_seen = true;  // column header
      continue;
    }
    std::vector<std::string> f;
    std::string cur;
    // spec labels contain commas inside (...) groups; split on top-level commas only
    int depth = 0;
    for (char ch : line) {
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (ch == ',' && depth == 0) {
        f.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    f.push_back(cur);
    if (f.size() < 9) throw std::runtime_error("table csv: short row: " + line);
    const Key key{f[0], std::stoi(f[1]), std::stod(f[2]), std::stod(f[3])};
    const double alpha = std::stod(f[4]);
    std::size_t idx = keys.size();
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (keys[i] == key) idx = i;
    if (idx == keys.size()) {
      keys.push_back(key);
      ResultRow row;
      row.spec = key.spec;
      row.n = key.n;
      row.a1 = key.a1;
      row.a2 = key.a2;
      row.reps_effective = std::stoi(f[7]);
      row.failures = std::stoi(f[8]);
      t.rows.push_back(std::move(row));
    }
    if (idx == 0) t.alphas.push_back(alpha);
    t.rows[idx].rejection.push_back(std::stod(f[5]));
    t.rows[idx].mc_se.push_back(std::stod(f[6]));
  }
  return t;
}

bool tables_equal(const ResultTable& a, const ResultTable& b, double tol) {
  if (a.alphas.size() != b.alphas.size() || a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.alphas.size(); ++i)
    if (std::fabs(a.alphas[i] - b.alphas[i]) > tol) return false;
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    const auto& x = a.rows[r];
    const auto& y = b.rows[r];
    if (x.spec != y.spec || x.n != y.n || x.a1 != y.a1 || x.a2 != y.a2 ||
        x.reps_effective != y.reps_effective || x.failures != y.failures)
      return false;
    if (x.rejection.size() != y.rejection.size()) return false;
    for (std::size_t i = 0; i < x.rejection.size(); ++i)
      if (std::fabs(x.rejection[i] - y.rejection[i]) > tol ||
          std::fabs(x.mc_se[i] - y.mc_se[i]) > tol)
        return false;
  }
  return true;
}

}  // namespace bhgof
