#pragma once

#include <cstdint>
#include <random>

namespace bhgof {

// SplitMix64 finalizer; a bijection on 64-bit integers.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based stream derivation. For a fixed key, distinct indices map to
/// distinct seeds (odd increment + bijective mixer), so child streams do not
/// depend on scheduling or worker count. Chains: derive_seed(derive_seed(m, a), b).
constexpr std::uint64_t derive_seed(std::uint64_t key, std::uint64_t index) noexcept {
  return mix64(key + 0x9e3779b97f4a7c15ULL * (index + 1));
}

/// Seeded generator with a documented stream-consumption contract so replays
/// are exact:
///  - next_double consumes one engine draw,
///  - poisson consumes one draw when rate < 10 (inversion) and two draws per
///    accept/reject attempt when rate >= 10,
///  - exponential consumes one draw, gamma_int(k) consumes k draws,
///  - rate/shape of exactly zero consumes nothing.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // uniform on [0,1) with 53-bit resolution
  double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double exponential() { return -std::log1p(-next_double()); }

  // sum of `shape` unit exponentials (shape >= 0)
  double gamma_int(int shape);

  int poisson(double rate);

 private:
  int poisson_inversion(double rate);
  int poisson_transformed_rejection(double rate);

  std::mt19937_64 gen_;
};

}  // namespace bhgof
