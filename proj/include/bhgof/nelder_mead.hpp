#pragma once

#include <functional>
#include <vector>

namespace bhgof {

struct NelderMeadOptions {
  int max_evals = 2000;
  double diameter_tol = 1e-6;  // sup-norm simplex diameter
  double initial_step = 0.25;
};

struct NelderMeadResult {
  std::vector<double> x;
  double fmin = 0.0;
  int evals = 0;
  bool converged = false;
};

/// Derivative-free simplex minimization (reflection/expansion/contraction/
/// shrink with the standard coefficients).
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, const NelderMeadOptions& opts);

}  // namespace bhgof
