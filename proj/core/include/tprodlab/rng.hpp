#pragma once

#include <cstdint>

#include "tprodlab/tensor.hpp"

namespace tprod {

/// SplitMix64 finalizer; a good 64-bit mixing function.
std::uint64_t mix64(std::uint64_t x);

/// Seed for trial `index` of a run with master seed `master`.
/// Independent of how trials are scheduled across threads.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Small counter-based generator. Every distribution is implemented here
/// rather than through <random> so that streams are identical on every
/// standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(mix64(seed ^ 0x6a09e667f3bcc909ULL)) {}

  std::uint64_t next_u64() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// Standard normal via Box-Muller.
  double normal();
  /// Real and imaginary parts independent N(0, 1/2).
  cplx complex_normal();
  /// +1 or -1 with equal probability.
  double sign() { return (next_u64() >> 63) ? 1.0 : -1.0; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace tprod
