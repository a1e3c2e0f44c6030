#include "bhgof/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bhgof {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, const NelderMeadOptions& opts) {
  const std::size_t dim = x0.size();
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

  std::vector<std::vector<double>> verts(dim + 1, x0);
  for (std::size_t i = 0; i < dim; ++i) verts[i + 1][i] += opts.initial_step;

  NelderMeadResult res;
  std::vector<double> fv(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) {
    fv[i] = f(verts[i]);
    ++res.evals;
  }

  std::vector<std::size_t> order(dim + 1);
  auto sort_order = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
  };
  auto diameter = [&] {
    double d = 0.0;
    const auto& best = verts[order[0]];
    for (std::size_t i = 0; i <= dim; ++i)
      for (std::size_t k = 0; k < dim; ++k)
        d = std::max(d, std::fabs(verts[i][k] - best[k]));
    return d;
  };

  std::vector<double> centroid(dim), xr(dim), xe(dim), xc(dim);
  for (;;) {
    sort_order();
    if (diameter() < opts.diameter_tol) {
      res.converged = true;
      break;
    }
    if (res.evals >= opts.max_evals) break;

    const std::size_t worst = order[dim];
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += verts[i][k];
    }
    for (std::size_t k = 0; k < dim; ++k) centroid[k] /= static_cast<double>(dim);

    for (std::size_t k = 0; k < dim; ++k)
      xr[k] = centroid[k] + alpha * (centroid[k] - verts[worst][k]);
    const double fr = f(xr);
    ++res.evals;

    if (fr < fv[order[0]]) {
      for (std::size_t k = 0; k < dim; ++k)
        xe[k] = centroid[k] + gamma * (xr[k] - centroid[k]);
      const double fe = f(xe);
      ++res.evals;
      if (fe < fr) {
        verts[worst] = xe;
        fv[worst] = fe;
      } else {
        verts[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[order[dim - 1]]) {
      verts[worst] = xr;
      fv[worst] = fr;
      continue;
    }
    // contraction (outside when the reflected point improves on the worst)
    if (fr < fv[worst]) {
      for (std::size_t k = 0; k < dim; ++k)
        xc[k] = centroid[k] + rho * (xr[k] - centroid[k]);
    } else {
      for (std::size_t k = 0; k < dim; ++k)
        xc[k] = centroid[k] + rho * (verts[worst][k] - centroid[k]);
    }
    const double fc = f(xc);
    ++res.evals;
    if (fc < std::min(fr, fv[worst])) {
      verts[worst] = xc;
      fv[worst] = fc;
      continue;
    }
    // shrink toward the best vertex
    const auto best = verts[order[0]];
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == order[0]) continue;
      for (std::size_t k = 0; k < dim; ++k)
        verts[i][k] = best[k] + sigma * (verts[i][k] - best[k]);
      fv[i] = f(verts[i]);
      ++res.evals;
      if (res.evals >= opts.max_evals) break;
    }
  }

  sort_order();
  res.x = verts[order[0]];
  res.fmin = fv[order[0]];
  return res;
}

}  // namespace bhgof
