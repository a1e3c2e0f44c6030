#pragma once

#include <vector>

#include "bhgof/params.hpp"
#include "bhgof/quadrature.hpp"
#include "bhgof/sample.hpp"

namespace bhgof {

inline double ipow(double t, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= t;
  return r;  // 0^0 = 1 by the empty product
}

/// Empirical pgf (1/n) * sum_i t1^{X_i1} t2^{X_i2}, with 0^0 = 1.
double epgf_eval(const CellCounts& cells, double t1, double t2);
double epgf_eval(const BivariateSample& s, double t1, double t2);

/// Closed form of iint epgf(t)^2 t1^a1 t2^a2 dt:
/// (1/n^2) sum_{i,j} 1/((X_i1+X_j1+a1+1)(X_i2+X_j2+a2+1)).
double epgf_sq_integral(const CellCounts& cells, const WeightSpec& w);
double epgf_sq_integral(const BivariateSample& s, const WeightSpec& w);

/// Cramer-von Mises distance n * iint (epgf - pgf)^2 w dt, evaluated as
/// n*(A - 2B + C) with A in closed form and B, C by weighted quadrature.
/// Precomputes node tables for a batch of weight specs sharing one
/// quadrature order; the cross and model terms are shared across weights.
class CvmEvaluator {
 public:
  explicit CvmEvaluator(std::vector<WeightSpec> specs);

  /// One statistic per weight spec. Throws std::runtime_error when the
  /// double-order refinement disagrees beyond tolerance (both values quoted).
  std::vector<double> evaluate(const CellCounts& cells, const BHParams& p) const;

  double refine_rel_tol = 1e-6;
  double refine_abs_tol = 1e-8;

 private:
  struct Grid {
    const GaussLegendre* gl = nullptr;
    std::vector<std::vector<double>> wf1, wf2;  // [weight][node]: gl weight * node^a
  };
  Grid make_grid(int order) const;
  std::vector<WeightSpec> specs_;
  Grid coarse_, fine_;
};

double cvm_statistic(const BivariateSample& s, const BHParams& p, const WeightSpec& w);

}  // namespace bhgof
