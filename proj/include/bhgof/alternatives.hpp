#pragma once

#include <array>
#include <string>

#include "bhgof/pmf.hpp"
#include "bhgof/rng.hpp"
#include "bhgof/sample.hpp"

namespace bhgof {

/// Sampling families for the power study. BP is the trivariate-reduction
/// bivariate Poisson with pgf exp(l1(t1-1) + l2(t2-1) + l3(t1t2-1)); BNB is
/// its gamma(nu,1) mixture, BNTA its Poisson(rate)-fold sum, BPP a two-point
/// mixture, BB the m-fold Bernoulli-pair binomial and BLS the bivariate
/// logarithmic series with pgf log(1-l.t)/log(1-l1-l2-l3).
enum class Family { BH, BB, BP, BLS, BNB, BNTA, BPP };

struct AlternativeSpec {
  Family family = Family::BP;
  int m = 1;                   // BB: trials; BNB: shape nu
  double rate = 0.0;           // BNTA: event rate
  double mix_p = 0.0;          // BPP: probability of the first component
  std::array<double, 5> bh{};  // BH: (mu, sigma2, l1, l2, l3)
  std::array<double, 3> a{};   // primary triple (p1,p2,p3 / l1,l2,l3 / g0,g1,g2)
  std::array<double, 3> b{};   // BPP: second triple
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// Empty string when the family-specific constraints hold, otherwise a
/// message naming the violated constraint.
std::string check_alternative(const AlternativeSpec& spec);
AlternativeSpec validate_alternative(const AlternativeSpec& spec);  // throws

/// Row label, e.g. "BB(1;0.41,0.02,0.01)".
std::string describe(const AlternativeSpec& spec);

BivariateSample sample_alternative(const AlternativeSpec& spec, int n, Rng& rng);

/// Exact pmf coefficients by the pgf series recurrences (exp / log / power /
/// polynomial-product composition).
PmfTable alternative_pmf(const AlternativeSpec& spec, int rmax, int smax);
PmfTable alternative_pmf_auto(const AlternativeSpec& spec, double tail_tol = 1e-9,
                              int cap = 200);

}  // namespace bhgof
