#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace bhgof {

/// Weight function t1^a1 * t2^a2 on the unit square plus quadrature order
/// (nodes per axis; a refinement pass doubles it).
struct WeightSpec {
  double a1 = 1.0;
  double a2 = 1.0;
  int quad_order = 32;
};

/// Empty string when valid (a1, a2 >= 0; order in [2, 256]).
std::string check_weight_spec(const WeightSpec& w);
WeightSpec make_weight_spec(double a1, double a2, int quad_order = 32);

/// Gauss-Legendre nodes and weights on [0,1].
struct GaussLegendre {
  std::vector<double> node, weight;
  explicit GaussLegendre(int n);
};

/// Shared per-order tables (thread safe; computed once).
const GaussLegendre& gauss_legendre_cached(int n);

struct IntegrationResult {
  double value;           // tensor-product estimate at 2 * quad_order nodes
  double coarse;          // estimate at quad_order nodes
  double error_estimate;  // |value - coarse|
};

/// Tensor-product Gauss-Legendre approximation of
/// iint f(t1,t2) t1^a1 t2^a2 dt over [0,1]^2 with a double-order refinement.
template <class F>
IntegrationResult integrate_weighted(F&& f, const WeightSpec& w) {
  auto pass = [&](int order) {
    const GaussLegendre& gl = gauss_legendre_cached(order);
    std::vector<double> w1(order), w2(order);
    for (int i = 0; i < order; ++i) {
      w1[i] = gl.weight[i] * std::pow(gl.node[i], w.a1);
      w2[i] = gl.weight[i] * std::pow(gl.node[i], w.a2);
    }
    double acc = 0.0;
    for (int i = 0; i < order; ++i) {
      double row = 0.0;
      for (int j = 0; j < order; ++j) row += w2[j] * f(gl.node[i], gl.node[j]);
      acc += w1[i] * row;
    }
    return acc;
  };
  IntegrationResult r;
  r.coarse = pass(w.quad_order);
  r.value = pass(2 * w.quad_order);
  r.error_estimate = std::fabs(r.value - r.coarse);
  return r;
}

}  // namespace bhgof
