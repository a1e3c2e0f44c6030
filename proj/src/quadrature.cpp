#include "bhgof/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace bhgof {

std::string check_weight_spec(const WeightSpec& w) {
  std::string msg;
  auto fail = [&msg](const std::string& s) {
    if (!msg.empty()) msg += "; ";
    msg += s;
  };
  if (!(w.a1 >= 0.0)) fail("a1 >= 0 violated");
  if (!(w.a2 >= 0.0)) fail("a2 >= 0 violated");
  if (w.quad_order < 2 || w.quad_order > 256) fail("quad_order outside [2,256]");
  return msg;
}

WeightSpec make_weight_spec(double a1, double a2, int quad_order) {
  WeightSpec w{a1, a2, quad_order};
  const std::string msg = check_weight_spec(w);
  if (!msg.empty()) throw std::invalid_argument("invalid weight spec: " + msg);
  return w;
}

// Newton iteration on Legendre polynomials, then the affine map to [0,1].
GaussLegendre::GaussLegendre(int n) {
  if (n < 1) throw std::invalid_argument("GaussLegendre: order must be >= 1");
  node.resize(n);
  weight.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p1 = 1.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2 * j + 1) * x * p2 - j * p3) / (j + 1);
      }
      dp = n * (x * p1 - p2) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // x descends with i on [-1,1]; store ascending on [0,1]
    node[i] = 0.5 * (1.0 - x);
    weight[i] = 0.5 * w;
    node[n - 1 - i] = 0.5 * (1.0 + x);
    weight[n - 1 - i] = 0.5 * w;
  }
}

const GaussLegendre& gauss_legendre_cached(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<const GaussLegendre>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, std::make_unique<const GaussLegendre>(n)).first;
  return *it->second;
}

}  // namespace bhgof
