#include "bhgof/alternatives.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "bhgof/sampler.hpp"
#include "bhgof/series.hpp"

namespace bhgof {

std::string family_name(Family f) {
  switch (f) {
    case Family::BH: return "BH";
    case Family::BB: return "BB";
    case Family::BP: return "BP";
    case Family::BLS: return "BLS";
    case Family::BNB: return "BNB";
    case Family::BNTA: return "BNTA";
    case Family::BPP: return "BPP";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "BH") return Family::BH;
  if (name == "BB") return Family::BB;
  if (name == "BP") return Family::BP;
  if (name == "BLS") return Family::BLS;
  if (name == "BNB") return Family::BNB;
  if (name == "BNTA") return Family::BNTA;
  if (name == "BPP") return Family::BPP;
  throw std::invalid_argument("unknown family: " + name);
}

namespace {

std::string check_bp_triple(const std::array<double, 3>& l, const std::string& tag) {
  std::string msg;
  auto fail = [&](const std::string& s) {
    if (!msg.empty()) msg += "; ";
    msg += s;
  };
  if (!(l[2] > 0.0)) fail(tag + "lambda3 > 0 violated");
  if (!(l[0] > l[2])) fail(tag + "lambda1 > lambda3 violated");
  if (!(l[1] > l[2])) fail(tag + "lambda2 > lambda3 violated");
  return msg;
}

}  // namespace

std::string check_alternative(const AlternativeSpec& spec) {
  std::string msg;
  auto fail = [&](const std::string& s) {
    if (!msg.empty()) msg += "; ";
    msg += s;
  };
  const auto& a = spec.a;
  const double sum = a[0] + a[1] + a[2];
  switch (spec.family) {
    case Family::BH:
      return check_params(spec.bh[0], spec.bh[1], spec.bh[2], spec.bh[3], spec.bh[4]);
    case Family::BB:
      if (spec.m < 1) fail("m >= 1 violated");
      if (!(a[2] > 0.0)) fail("p3 > 0 violated");
      if (!(a[0] >= a[2])) fail("p1 >= p3 violated");
      if (!(a[1] >= a[2])) fail("p2 >= p3 violated");
      if (!(a[0] + a[1] - a[2] <= 1.0)) fail("p1+p2-p3 <= 1 violated");
      break;
    case Family::BP:
      return check_bp_triple(a, "");
    case Family::BLS:
      if (!(a[0] >= 0.0 && a[1] >= 0.0 && a[2] >= 0.0)) fail("lambda_i >= 0 violated");
      if (!(sum > 0.0 && sum < 1.0)) fail("0 < lambda1+lambda2+lambda3 < 1 violated");
      break;
    case Family::BNB:
      if (spec.m < 1) fail("nu >= 1 violated");
      if (!(a[2] > 0.0)) fail("gamma2 > 0 violated");
      if (!(a[0] > a[2])) fail("gamma0 > gamma2 violated");
      if (!(a[1] > a[2])) fail("gamma1 > gamma2 violated");
      break;
    case Family::BNTA:
      if (!(spec.rate > 0.0)) fail("lambda > 0 violated");
      if (!(a[0] >= 0.0 && a[1] >= 0.0 && a[2] >= 0.0)) fail("lambda_i >= 0 violated");
      if (!(sum > 0.0 && sum <= 1.0)) fail("0 < lambda1+lambda2+lambda3 <= 1 violated");
      break;
    case Family::BPP: {
      if (!(spec.mix_p > 0.0 && spec.mix_p < 1.0)) fail("0 < p < 1 violated");
      const std::string m1 = check_bp_triple(spec.a, "first component: ");
      const std::string m2 = check_bp_triple(spec.b, "second component: ");
      if (!m1.empty()) fail(m1);
      if (!m2.empty()) fail(m2);
      break;
    }
  }
  return msg;
}

AlternativeSpec validate_alternative(const AlternativeSpec& spec) {
  const std::string msg = check_alternative(spec);
  if (!msg.empty())
    throw std::invalid_argument("invalid " + family_name(spec.family) + " spec: " + msg);
  return spec;
}

std::string describe(const AlternativeSpec& spec) {
  char buf[200];
  const auto& a = spec.a;
  switch (spec.family) {
    case Family::BH:
      std::snprintf(buf, sizeof(buf), "BH(%g,%g,%g,%g,%g)", spec.bh[0], spec.bh[1],
                    spec.bh[2], spec.bh[3], spec.bh[4]);
      break;
    case Family::BB:
      std::snprintf(buf, sizeof(buf), "BB(%d;%g,%g,%g)", spec.m, a[0], a[1], a[2]);
      break;
    case Family::BP:
      std::snprintf(buf, sizeof(buf), "BP(%g,%g,%g)", a[0], a[1], a[2]);
      break;
    case Family::BLS:
      std::snprintf(buf, sizeof(buf), "BLS(%g,%g,%g)", a[0], a[1], a[2]);
      break;
    case Family::BNB:
      std::snprintf(buf, sizeof(buf), "BNB(%d;%g,%g,%g)", spec.m, a[0], a[1], a[2]);
      break;
    case Family::BNTA:
      std::snprintf(buf, sizeof(buf), "BNTA(%g;%g,%g,%g)", spec.rate, a[0], a[1], a[2]);
      break;
    case Family::BPP:
      std::snprintf(buf, sizeof(buf), "BPP(%g;(%g,%g,%g),(%g,%g,%g))", spec.mix_p, a[0],
                    a[1], a[2], spec.b[0], spec.b[1], spec.b[2]);
      break;
  }
  return buf;
}

namespace {

// trivariate reduction: (N1+N3, N2+N3), Ni independent Poisson
std::pair<int, int> draw_bp(const std::array<double, 3>& l, Rng& rng) {
  const int n1 = l[0] > 0.0 ? rng.poisson(l[0]) : 0;
  const int n2 = l[1] > 0.0 ? rng.poisson(l[1]) : 0;
  const int n3 = l[2] > 0.0 ? rng.poisson(l[2]) : 0;
  return {n1 + n3, n2 + n3};
}

std::pair<int, int> draw_bb(const AlternativeSpec& spec, Rng& rng) {
  const double p11 = spec.a[2];
  const double p10 = spec.a[0] - spec.a[2];
  const double p01 = spec.a[1] - spec.a[2];
  int x = 0, y = 0;
  for (int t = 0; t < spec.m; ++t) {
    const double u = rng.next_double();
    if (u < p11) {
      ++x;
      ++y;
    } else if (u < p11 + p10) {
      ++x;
    } else if (u < p11 + p10 + p01) {
      ++y;
    }
  }
  return {x, y};
}

// inversion sampler over the flattened pmf table (tail mapped to the last cell)
struct TableSampler {
  PmfTable table;
  std::vector<double> cdf;

  explicit TableSampler(PmfTable t) : table(std::move(t)) {
    cdf.resize(table.p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < table.p.size(); ++i) {
      acc += std::max(table.p[i], 0.0);
      cdf[i] = acc;
    }
  }

  std::pair<int, int> draw(Rng& rng) const {
    const double u = rng.next_double() * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t idx = std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1);
    const int s = static_cast<int>(idx % (table.smax + 1));
    const int r = static_cast<int>(idx / (table.smax + 1));
    return {r, s};
  }
};

SeriesGrid bp_exponent(const std::array<double, 3>& l) {
  SeriesGrid h(1, 1);
  h.at(1, 0) = l[0];
  h.at(0, 1) = l[1];
  h.at(1, 1) = l[2];
  h.at(0, 0) = -(l[0] + l[1] + l[2]);
  return h;
}

// 1 - l1*t1 - l2*t2 - l3*t1*t2 shifted by `shift` at the constant term
SeriesGrid linear_base(const std::array<double, 3>& l, double shift) {
  SeriesGrid g(1, 1);
  g.at(0, 0) = 1.0 + shift;
  g.at(1, 0) = -l[0];
  g.at(0, 1) = -l[1];
  g.at(1, 1) = -l[2];
  return g;
}

PmfTable grid_to_table(const SeriesGrid& f) {
  PmfTable t;
  t.rmax = f.rmax();
  t.smax = f.smax();
  t.p.resize(static_cast<std::size_t>(t.rmax + 1) * (t.smax + 1));
  for (int r = 0; r <= t.rmax; ++r)
    for (int s = 0; s <= t.smax; ++s)
      t.p[static_cast<std::size_t>(r) * (t.smax + 1) + s] = f.at(r, s);
  t.tail_mass = 1.0 - t.sum();
  return t;
}

}  // namespace

PmfTable alternative_pmf(const AlternativeSpec& spec, int rmax, int smax) {
  switch (spec.family) {
    case Family::BH:
      return pmf_table(make_params(spec.bh[0], spec.bh[1], spec.bh[2], spec.bh[3], spec.bh[4]),
                       rmax, smax);
    case Family::BP:
      return grid_to_table(series_exp(bp_exponent(spec.a), rmax, smax));
    case Family::BB: {
      // [p00 + p10 t1 + p01 t2 + p11 t1 t2]^m by repeated truncated products
      SeriesGrid base(1, 1);
      base.at(0, 0) = 1.0 - spec.a[0] - spec.a[1] + spec.a[2];
      base.at(1, 0) = spec.a[0] - spec.a[2];
      base.at(0, 1) = spec.a[1] - spec.a[2];
      base.at(1, 1) = spec.a[2];
      SeriesGrid acc(0, 0);
      acc.at(0, 0) = 1.0;
      for (int t = 0; t < spec.m; ++t) acc = series_mul(acc, base, rmax, smax);
      return grid_to_table(acc);
    }
    case Family::BLS: {
      const double sum = spec.a[0] + spec.a[1] + spec.a[2];
      SeriesGrid l = series_log(linear_base(spec.a, 0.0), rmax, smax);
      const double scale = 1.0 / std::log(1.0 - sum);
      SeriesGrid f(rmax, smax);
      for (int r = 0; r <= rmax; ++r)
        for (int s = 0; s <= smax; ++s) f.at(r, s) = scale * l.at(r, s);
      return grid_to_table(f);
    }
    case Family::BNB: {
      const double shift = spec.a[0] + spec.a[1] + spec.a[2];
      return grid_to_table(series_pow(linear_base(spec.a, shift), -spec.m, rmax, smax));
    }
    case Family::BNTA: {
      const SeriesGrid g = series_exp(bp_exponent(spec.a), rmax, smax);
      SeriesGrid h(rmax, smax);
      for (int r = 0; r <= rmax; ++r)
        for (int s = 0; s <= smax; ++s) h.at(r, s) = spec.rate * g.at(r, s);
      h.at(0, 0) -= spec.rate;
      return grid_to_table(series_exp(h, rmax, smax));
    }
    case Family::BPP: {
      const SeriesGrid f1 = series_exp(bp_exponent(spec.a), rmax, smax);
      const SeriesGrid f2 = series_exp(bp_exponent(spec.b), rmax, smax);
      SeriesGrid f(rmax, smax);
      for (int r = 0; r <= rmax; ++r)
        for (int s = 0; s <= smax; ++s)
          f.at(r, s) = spec.mix_p * f1.at(r, s) + (1.0 - spec.mix_p) * f2.at(r, s);
      return grid_to_table(f);
    }
  }
  throw std::logic_error("alternative_pmf: unreachable");
}

PmfTable alternative_pmf_auto(const AlternativeSpec& spec, double tail_tol, int cap) {
  int dim = 16;
  for (;;) {
    PmfTable t = alternative_pmf(spec, std::min(dim, cap), std::min(dim, cap));
    if (t.tail_mass < tail_tol) {
      t.tail_converged = true;
      return t;
    }
    if (dim >= cap) {
      t.tail_converged = false;
      return t;
    }
    dim *= 2;
  }
}

BivariateSample sample_alternative(const AlternativeSpec& spec, int n, Rng& rng) {
  validate_alternative(spec);
  BivariateSample s;
  s.pairs.reserve(n);
  switch (spec.family) {
    case Family::BH:
      return sample_bhd(
          make_params(spec.bh[0], spec.bh[1], spec.bh[2], spec.bh[3], spec.bh[4]), n, rng);
    case Family::BB:
      for (int i = 0; i < n; ++i) s.pairs.push_back(draw_bb(spec, rng));
      return s;
    case Family::BP:
      for (int i = 0; i < n; ++i) s.pairs.push_back(draw_bp(spec.a, rng));
      return s;
    case Family::BNB:
      for (int i = 0; i < n; ++i) {
        const double delta = rng.gamma_int(spec.m);
        const std::array<double, 3> l{delta * spec.a[0], delta * spec.a[1],
                                      delta * spec.a[2]};
        s.pairs.push_back(draw_bp(l, rng));
      }
      return s;
    case Family::BNTA:
      for (int i = 0; i < n; ++i) {
        const int events = rng.poisson(spec.rate);
        int x = 0, y = 0;
        for (int e = 0; e < events; ++e) {
          const auto [dx, dy] = draw_bp(spec.a, rng);
          x += dx;
          y += dy;
        }
        s.pairs.emplace_back(x, y);
      }
      return s;
    case Family::BPP:
      for (int i = 0; i < n; ++i)
        s.pairs.push_back(draw_bp(rng.next_double() < spec.mix_p ? spec.a : spec.b, rng));
      return s;
    case Family::BLS: {
      const PmfTable t = alternative_pmf_auto(spec, 1e-9, 200);
      if (!t.tail_converged)
        throw std::runtime_error("sample_alternative: BLS pmf truncation cap reached "
                                 "before the tail tolerance");
      const TableSampler sampler(t);
      for (int i = 0; i < n; ++i) s.pairs.push_back(sampler.draw(rng));
      return s;
    }
  }
  throw std::logic_error("sample_alternative: unreachable");
}

}  // namespace bhgof
