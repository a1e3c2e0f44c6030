#include "bhgof/statistic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bhgof {

double epgf_eval(const CellCounts& cells, double t1, double t2) {
  double acc = 0.0;
  for (const auto& c : cells.cells) acc += c.count * ipow(t1, c.x) * ipow(t2, c.y);
  return acc / cells.n;
}

double epgf_eval(const BivariateSample& s, double t1, double t2) {
  return epgf_eval(CellCounts::from(s), t1, t2);
}

double epgf_sq_integral(const CellCounts& cells, const WeightSpec& w) {
  double acc = 0.0;
  for (const auto& a : cells.cells)
    for (const auto& b : cells.cells)
      acc += static_cast<double>(a.count) * b.count /
             ((a.x + b.x + w.a1 + 1.0) * (a.y + b.y + w.a2 + 1.0));
  return acc / (static_cast<double>(cells.n) * cells.n);
}

double epgf_sq_integral(const BivariateSample& s, const WeightSpec& w) {
  return epgf_sq_integral(CellCounts::from(s), w);
}

CvmEvaluator::CvmEvaluator(std::vector<WeightSpec> specs) : specs_(std::move(specs)) {
  if (specs_.empty()) throw std::invalid_argument("CvmEvaluator: no weight specs");
  for (const auto& w : specs_) {
    const std::string msg = check_weight_spec(w);
    if (!msg.empty()) throw std::invalid_argument("invalid weight spec: " + msg);
    if (w.quad_order != specs_.front().quad_order)
      throw std::invalid_argument("CvmEvaluator: all specs must share quad_order");
  }
  coarse_ = make_grid(specs_.front().quad_order);
  fine_ = make_grid(2 * specs_.front().quad_order);
}

CvmEvaluator::Grid CvmEvaluator::make_grid(int order) const {
  Grid g;
  g.gl = &gauss_legendre_cached(order);
  g.wf1.resize(specs_.size());
  g.wf2.resize(specs_.size());
  for (std::size_t w = 0; w < specs_.size(); ++w) {
    g.wf1[w].resize(order);
    g.wf2[w].resize(order);
    for (int i = 0; i < order; ++i) {
      g.wf1[w][i] = g.gl->weight[i] * std::pow(g.gl->node[i], specs_[w].a1);
      g.wf2[w][i] = g.gl->weight[i] * std::pow(g.gl->node[i], specs_[w].a2);
    }
  }
  return g;
}

std::vector<double> CvmEvaluator::evaluate(const CellCounts& cells, const BHParams& p) const {
  const std::size_t nw = specs_.size();
  std::vector<double> a(nw);
  for (std::size_t w = 0; w < nw; ++w) a[w] = epgf_sq_integral(cells, specs_[w]);

  auto pass = [&](const Grid& g, std::vector<double>& b, std::vector<double>& c) {
    const int m = static_cast<int>(g.gl->node.size());
    // per-node powers of the observed counts
    std::vector<double> p1(static_cast<std::size_t>(m) * (cells.max_x + 1));
    std::vector<double> p2(static_cast<std::size_t>(m) * (cells.max_y + 1));
    for (int i = 0; i < m; ++i) {
      double v = 1.0;
      for (int x = 0; x <= cells.max_x; ++x) {
        p1[static_cast<std::size_t>(i) * (cells.max_x + 1) + x] = v;
        v *= g.gl->node[i];
      }
      v = 1.0;
      for (int y = 0; y <= cells.max_y; ++y) {
        p2[static_cast<std::size_t>(i) * (cells.max_y + 1) + y] = v;
        v *= g.gl->node[i];
      }
    }
    b.assign(nw, 0.0);
    c.assign(nw, 0.0);
    for (int i = 0; i < m; ++i) {
      const double* row1 = &p1[static_cast<std::size_t>(i) * (cells.max_x + 1)];
      for (int j = 0; j < m; ++j) {
        const double* row2 = &p2[static_cast<std::size_t>(j) * (cells.max_y + 1)];
        const double v = pgf_eval(p, g.gl->node[i], g.gl->node[j]);
        double e = 0.0;
        for (const auto& cell : cells.cells) e += cell.count * row1[cell.x] * row2[cell.y];
        e /= cells.n;
        for (std::size_t w = 0; w < nw; ++w) {
          const double wt = g.wf1[w][i] * g.wf2[w][j];
          b[w] += wt * v * e;
          c[w] += wt * v * v;
        }
      }
    }
  };

  std::vector<double> bc_b, bc_c, bf_b, bf_c;
  pass(coarse_, bc_b, bc_c);
  pass(fine_, bf_b, bf_c);

  std::vector<double> out(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    const double fine = cells.n * (a[w] - 2.0 * bf_b[w] + bf_c[w]);
    const double coarse = cells.n * (a[w] - 2.0 * bc_b[w] + bc_c[w]);
    const double diff = std::fabs(fine - coarse);
    if (diff > refine_abs_tol && diff > refine_rel_tol * std::fabs(fine)) {
      std::ostringstream os;
      os << "quadrature refinement disagreement: order " << specs_[w].quad_order
         << " gives " << coarse << ", order " << 2 * specs_[w].quad_order << " gives "
         << fine;
      throw std::runtime_error(os.str());
    }
    out[w] = fine;
  }
  return out;
}

double cvm_statistic(const BivariateSample& s, const BHParams& p, const WeightSpec& w) {
  return CvmEvaluator({w}).evaluate(CellCounts::from(s), p)[0];
}

}  // namespace bhgof
