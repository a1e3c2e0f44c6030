#pragma once

#include <vector>

namespace bhgof {

/// Dense truncated bivariate power series; coefficient of t1^r t2^s at (r,s).
class SeriesGrid {
 public:
  SeriesGrid() = default;
  SeriesGrid(int rmax, int smax)
      : nr_(rmax + 1), nc_(smax + 1), c_(static_cast<std::size_t>(nr_) * nc_, 0.0) {}

  int rmax() const { return nr_ - 1; }
  int smax() const { return nc_ - 1; }

  double& at(int r, int s) { return c_[static_cast<std::size_t>(r) * nc_ + s]; }
  double at(int r, int s) const { return c_[static_cast<std::size_t>(r) * nc_ + s]; }

  double sum() const;

 private:
  int nr_ = 1, nc_ = 1;
  std::vector<double> c_;
};

/// exp(h) truncated to (rmax, smax). h may have any (smaller or larger)
/// support; coefficients outside its grid are treated as zero.
SeriesGrid series_exp(const SeriesGrid& h, int rmax, int smax);

/// log(g) truncated to (rmax, smax); requires g(0,0) > 0 and g covering the
/// requested truncation.
SeriesGrid series_log(const SeriesGrid& g, int rmax, int smax);

/// g^alpha truncated to (rmax, smax); requires g(0,0) > 0 and g covering the
/// requested truncation.
SeriesGrid series_pow(const SeriesGrid& g, double alpha, int rmax, int smax);

/// Truncated product.
SeriesGrid series_mul(const SeriesGrid& a, const SeriesGrid& b, int rmax, int smax);

}  // namespace bhgof
