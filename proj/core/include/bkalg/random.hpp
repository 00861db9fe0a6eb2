#pragma once

// Reproducible randomness for the sampling checks.
//
// All streams derive from one 64-bit seed through SplitMix64 (Steele, Lea and
// Flood, "Fast splittable pseudorandom number generators", 2014): state
// advances by the golden-ratio increment 0x9e3779b97f4a7c15 and each output is
// the standard variant-13 finalizer. split() draws a fresh seed from the parent
// stream so independent sub-checks get independent, order-stable streams.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "bkalg/bundle.hpp"

namespace bkalg {

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  SplitMix64 split() noexcept { return SplitMix64((*this)()); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform on {0, ..., n-1}; n must be positive.
  std::size_t below(std::size_t n) noexcept { return static_cast<std::size_t>((*this)() % n); }
  /// Real and imaginary parts uniform on [-1, 1).
  Complex complex_box() noexcept { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

 private:
  std::uint64_t state_;
};

namespace random {

FiberElement fiber_element(SplitMix64& rng, const FiberDescriptor& d);
/// Random element rescaled to the given norm (zero stays zero).
FiberElement fiber_element_with_norm(SplitMix64& rng, const FiberDescriptor& d, double target);

Section section(SplitMix64& rng, const BundlePtr& bundle);
/// Atomwise norms drawn uniformly from [0, max_norm].
Section section_with_norm_below(SplitMix64& rng, const BundlePtr& bundle, double max_norm);
/// Atomwise norm exactly 1 (unit support).
Section unit_norm_section(SplitMix64& rng, const BundlePtr& bundle);
/// Well-conditioned invertible section: e + (random with atomwise norm <= 0.5),
/// scaled by a random complex factor of modulus in [0.5, 2].
Section invertible_section(SplitMix64& rng, const BundlePtr& bundle);

/// Entries uniform in the complex box [-scale, scale)^2.
EFunction efunction(SplitMix64& rng, const SpacePtr& space, double scale = 1.0);
/// Real values uniform on [lo, hi).
EFunction real_efunction(SplitMix64& rng, const SpacePtr& space, double lo, double hi);

/// Random partition into at most max_parts parts (parts may be empty).
PartitionOfUnity partition(SplitMix64& rng, const SpacePtr& space, std::size_t max_parts);

}  // namespace random
}  // namespace bkalg
