#pragma once

#include "bhgof/decomposition.hpp"
#include "bhgof/rng.hpp"
#include "bhgof/sample.hpp"

namespace bhgof {

/// n iid pairs from the Poisson-packet representation. One Poisson draw per
/// nonzero rate, in PoissonDecomposition::monomials order. Throws
/// std::domain_error when the decomposition has a negative rate (parameter
/// point admits no exact sampler).
BivariateSample sample_bhd(const PoissonDecomposition& d, int n, Rng& rng);
BivariateSample sample_bhd(const BHParams& p, int n, Rng& rng);

}  // namespace bhgof
