#include "bhgof/series.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

namespace bhgof {

double SeriesGrid::sum() const {
  double s = 0.0;
  for (double v : c_) s += v;
  return s;
}

namespace {

// coefficient with out-of-range reads treated as zero
inline double cf(const SeriesGrid& g, int r, int s) {
  if (r < 0 || s < 0 || r > g.rmax() || s > g.smax()) return 0.0;
  return g.at(r, s);
}

}  // namespace

// Derivative recurrence for F = exp(h): r*F_{r,s} = sum_j>=1 j*h_{j,k} F_{r-j,s-k},
// with the t2 analogue filling the r = 0 row.
SeriesGrid series_exp(const SeriesGrid& h, int rmax, int smax) {
  SeriesGrid f(rmax, smax);
  std::vector<std::tuple<int, int, double>> dcol;  // (j, k, j*h_jk), j >= 1
  std::vector<std::pair<int, double>> drow;        // (k, k*h_0k), k >= 1
  for (int j = 1; j <= h.rmax(); ++j)
    for (int k = 0; k <= h.smax(); ++k)
      if (h.at(j, k) != 0.0) dcol.emplace_back(j, k, j * h.at(j, k));
  for (int k = 1; k <= h.smax(); ++k)
    if (h.at(0, k) != 0.0) drow.emplace_back(k, k * h.at(0, k));

  f.at(0, 0) = std::exp(h.at(0, 0));
  for (int s = 1; s <= smax; ++s) {
    double acc = 0.0;
    for (const auto& [k, khk] : drow)
      if (k <= s) acc += khk * f.at(0, s - k);
    f.at(0, s) = acc / s;
  }
  for (int r = 1; r <= rmax; ++r) {
    for (int s = 0; s <= smax; ++s) {
      double acc = 0.0;
      for (const auto& [j, k, jhj] : dcol)
        if (j <= r && k <= s) acc += jhj * f.at(r - j, s - k);
      f.at(r, s) = acc / r;
    }
  }
  return f;
}

SeriesGrid series_log(const SeriesGrid& g, int rmax, int smax) {
  const double g00 = cf(g, 0, 0);
  if (!(g00 > 0.0)) throw std::domain_error("series_log: constant term must be positive");
  SeriesGrid l(rmax, smax);
  l.at(0, 0) = std::log(g00);
  for (int s = 1; s <= smax; ++s) {
    double acc = s * cf(g, 0, s);
    for (int k = 1; k < s; ++k) acc -= k * l.at(0, k) * cf(g, 0, s - k);
    l.at(0, s) = acc / (s * g00);
  }
  for (int r = 1; r <= rmax; ++r) {
    for (int s = 0; s <= smax; ++s) {
      double acc = r * cf(g, r, s);
      for (int j = 1; j <= r; ++j)
        for (int k = 0; k <= s; ++k) {
          if (j == r && k == s) continue;
          acc -= j * l.at(j, k) * cf(g, r - j, s - k);
        }
      l.at(r, s) = acc / (r * g00);
    }
  }
  return l;
}

SeriesGrid series_pow(const SeriesGrid& g, double alpha, int rmax, int smax) {
  const double g00 = cf(g, 0, 0);
  if (!(g00 > 0.0)) throw std::domain_error("series_pow: constant term must be positive");
  SeriesGrid p(rmax, smax);
  p.at(0, 0) = std::pow(g00, alpha);
  for (int s = 1; s <= smax; ++s) {
    double acc = 0.0;
    for (int k = 1; k <= s; ++k) acc += alpha * k * cf(g, 0, k) * p.at(0, s - k);
    for (int k = 1; k < s; ++k) acc -= k * p.at(0, k) * cf(g, 0, s - k);
    p.at(0, s) = acc / (s * g00);
  }
  for (int r = 1; r <= rmax; ++r) {
    for (int s = 0; s <= smax; ++s) {
      double acc = 0.0;
      for (int j = 1; j <= r; ++j)
        for (int k = 0; k <= s; ++k) acc += alpha * j * cf(g, j, k) * p.at(r - j, s - k);
      for (int j = 1; j <= r; ++j)
        for (int k = 0; k <= s; ++k) {
          if (j == r && k == s) continue;
          acc -= j * p.at(j, k) * cf(g, r - j, s - k);
        }
      p.at(r, s) = acc / (r * g00);
    }
  }
  return p;
}

SeriesGrid series_mul(const SeriesGrid& a, const SeriesGrid& b, int rmax, int smax) {
  SeriesGrid out(rmax, smax);
  const int ar = std::min(a.rmax(), rmax), as = std::min(a.smax(), smax);
  for (int r = 0; r <= ar; ++r)
    for (int s = 0; s <= as; ++s) {
      const double av = a.at(r, s);
      if (av == 0.0) continue;
      const int br = std::min(b.rmax(), rmax - r), bs = std::min(b.smax(), smax - s);
      for (int rb = 0; rb <= br; ++rb)
        for (int sb = 0; sb <= bs; ++sb) out.at(r + rb, s + sb) += av * b.at(rb, sb);
    }
  return out;
}

}  // namespace bhgof
