#include "bhgof/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bhgof {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',' || ch == ';' || ch == '\t' || ch == ' ') {
      if (!cur.empty()) out.push_back(cur);
      if (ch == ',' || ch == ';') {
        if (cur.empty()) out.emplace_back();  // keep empty comma fields visible
      }
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

bool parse_nonneg_int(const std::string& tok, int& out) {
  if (tok.empty()) return false;
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(tok, &pos);
  } catch (...) {
    return false;
  }
  if (pos != tok.size() || v < 0) return false;
  out = static_cast<int>(v);
  return true;
}

bool looks_numeric(const std::string& tok) {
  for (char ch : tok)
    if (!std::isdigit(static_cast<unsigned char>(ch)) && ch != '-' && ch != '+') return false;
  return !tok.empty();
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return in;
}

}  // namespace

BivariateSample load_pairs(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  BivariateSample s;
  std::string line;
  int lineno = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++lineno;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (first_content && !looks_numeric(fields[0])) {
      first_content = false;  // header
      continue;
    }
    first_content = false;
    int x = 0, y = 0;
    if (fields.size() != 2 || !parse_nonneg_int(fields[0], x) || !parse_nonneg_int(fields[1], y))
      throw std::runtime_error(path + ": malformed pair at line " + std::to_string(lineno) +
                               ": '" + line + "'");
    s.pairs.emplace_back(x, y);
  }
  if (s.pairs.empty()) throw std::runtime_error(path + ": empty sample");
  return s;
}

BivariateSample load_contingency(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::vector<std::vector<int>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    std::vector<int> row;
    for (const auto& tok : fields) {
      int v = 0;
      if (!parse_nonneg_int(tok, v))
        throw std::runtime_error(path + ": bad count at line " + std::to_string(lineno) +
                                 ": '" + tok + "'");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(path + ": empty sample");
  for (const auto& row : rows)
    if (row.size() != rows.front().size())
      throw std::runtime_error(path + ": ragged rows in contingency matrix");

  BivariateSample s;
  for (std::size_t y = 0; y < rows.size(); ++y)
    for (std::size_t x = 0; x < rows[y].size(); ++x)
      for (int k = 0; k < rows[y][x]; ++k)
        s.pairs.emplace_back(static_cast<int>(x), static_cast<int>(y));
  if (s.pairs.empty()) throw std::runtime_error(path + ": empty sample");
  return s;
}

nlohmann::json params_to_json(const BHParams& p) {
  return {{"mu", p.mu},
          {"sigma2", p.sigma2},
          {"lambda1", p.lambda1},
          {"lambda2", p.lambda2},
          {"lambda3", p.lambda3}};
}

BHParams params_from_json(const nlohmann::json& j) {
  return BHParams{j.at("mu").get<double>(), j.at("sigma2").get<double>(),
                  j.at("lambda1").get<double>(), j.at("lambda2").get<double>(),
                  j.at("lambda3").get<double>()};
}

nlohmann::json report_to_json(const TestReport& r) {
  nlohmann::json crit = nlohmann::json::object();
  for (const auto& [alpha, v] : r.critical_values) {
    std::ostringstream key;
    key << alpha;
    crit[key.str()] = v;
  }
  nlohmann::json j{
      {"n", r.n},
      {"weight", {{"a1", r.weight.a1}, {"a2", r.weight.a2}, {"quad_order", r.weight.quad_order}}},
      {"v_obs", r.v_obs},
      {"p_value", r.p_value},
      {"theta_hat", params_to_json(r.theta_hat)},
      {"loglik", r.loglik},
      {"fit_converged", r.fit_converged},
      {"B", r.B},
      {"b_effective", r.b_effective},
      {"failures", r.failures},
      {"critical_values", crit},
      {"seed", r.seed},
      {"replicate_stats", r.replicate_stats},
      {"metadata",
       {{"p_value_rule", "(1 + #{V* >= V_obs}) / (B_effective + 1)"},
        {"quadrature", "tensor Gauss-Legendre, double-order refinement"},
        {"quad_rel_target", 1e-8}}}};
  if (r.fix_lambda3)
    j["fix_lambda3"] = *r.fix_lambda3;
  else
    j["fix_lambda3"] = nullptr;
  return j;
}

std::string report_to_text(const TestReport& r) {
  std::ostringstream os;
  os << "n = " << r.n << ", weight (a1,a2) = (" << r.weight.a1 << "," << r.weight.a2
     << "), B = " << r.B << " (effective " << r.b_effective << ", failures " << r.failures
     << ")\n";
  os << "fitted parameters (sigma2-gauge): " << params_to_string(r.theta_hat)
     << (r.fit_converged ? "" : "  [fit not converged]") << "\n";
  os << "log-likelihood = " << r.loglik << "\n";
  os << "V_obs = " << r.v_obs << "\n";
  os << "bootstrap p-value = " << r.p_value << "\n";
  os << "critical values:";
  for (const auto& [alpha, v] : r.critical_values) os << "  " << alpha << ": " << v;
  os << "\n";
  os << "decision at alpha=0.05: " << (r.p_value <= 0.05 ? "reject H0" : "do not reject H0")
     << "\n";
  return os.str();
}

std::string report_to_csv(const TestReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "key,value\n";
  os << "n," << r.n << "\n";
  os << "a1," << r.weight.a1 << "\n";
  os << "a2," << r.weight.a2 << "\n";
  os << "B," << r.B << "\n";
  os << "b_effective," << r.b_effective << "\n";
  os << "failures," << r.failures << "\n";
  os << "v_obs," << r.v_obs << "\n";
  os << "p_value," << r.p_value << "\n";
  os << "mu," << r.theta_hat.mu << "\n";
  os << "sigma2," << r.theta_hat.sigma2 << "\n";
  os << "lambda1," << r.theta_hat.lambda1 << "\n";
  os << "lambda2," << r.theta_hat.lambda2 << "\n";
  os << "lambda3," << r.theta_hat.lambda3 << "\n";
  os << "loglik," << r.loglik << "\n";
  os << "seed," << r.seed << "\n";
  for (const auto& [alpha, v] : r.critical_values)
    os << "critical_" << alpha << "," << v << "\n";
  return os.str();
}

nlohmann::json fit_to_json(const FitResult& f) {
  return {{"theta_hat", params_to_json(f.theta_hat)},
          {"loglik", f.loglik},
          {"evaluations", f.evaluations},
          {"converged", f.converged},
          {"init_theta", params_to_json(f.init_theta)},
          {"init_loglik", f.init_loglik}};
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace bhgof
