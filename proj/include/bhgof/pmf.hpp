#pragma once

#include <vector>

#include "bhgof/decomposition.hpp"
#include "bhgof/params.hpp"

namespace bhgof {

struct PmfTable {
  int rmax = 0, smax = 0;
  std::vector<double> p;     // row-major (rmax+1) x (smax+1)
  double tail_mass = 0.0;    // 1 - sum of entries
  bool tail_converged = true;

  double at(int r, int s) const { return p[static_cast<std::size_t>(r) * (smax + 1) + s]; }
  bool covers(int r, int s) const { return r >= 0 && s >= 0 && r <= rmax && s <= smax; }
  double sum() const;
};

/// P(X1=r, X2=s) for r <= rmax, s <= smax via the Taylor coefficients of
/// exp(pgf exponent). Entries are exact power-series coefficients; truncation
/// only affects tail_mass.
PmfTable pmf_table(const BHParams& p, int rmax, int smax);

/// Grows the truncation geometrically until tail_mass < tail_tol or the
/// per-axis cap is reached; tail_converged reports which happened.
PmfTable pmf_table_auto(const BHParams& p, double tail_tol = 1e-10, int cap = 200);

}  // namespace bhgof
