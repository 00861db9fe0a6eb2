#include "bkalg/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bkalg::random {

FiberElement fiber_element(SplitMix64& rng, const FiberDescriptor& d) {
  std::vector<Complex> data(d.data_size());
  for (Complex& z : data) z = rng.complex_box();
  return FiberElement(d, std::move(data));
}

FiberElement fiber_element_with_norm(SplitMix64& rng, const FiberDescriptor& d, double target) {
  FiberElement x = fiber_element(rng, d);
  const double n = norm(x);
  if (n == 0.0) return x;
  return (target / n) * x;
}

Section section(SplitMix64& rng, const BundlePtr& bundle) {
  std::vector<FiberElement> v;
  v.reserve(bundle->size());
  for (const auto& d : bundle->fibers()) v.push_back(fiber_element(rng, d));
  return Section(bundle, std::move(v));
}

Section section_with_norm_below(SplitMix64& rng, const BundlePtr& bundle, double max_norm) {
  std::vector<FiberElement> v;
  v.reserve(bundle->size());
  for (const auto& d : bundle->fibers()) v.push_back(fiber_element_with_norm(rng, d, rng.uniform(0.0, max_norm)));
  return Section(bundle, std::move(v));
}

Section unit_norm_section(SplitMix64& rng, const BundlePtr& bundle) {
  std::vector<FiberElement> v;
  v.reserve(bundle->size());
  for (const auto& d : bundle->fibers()) v.push_back(fiber_element_with_norm(rng, d, 1.0));
  return Section(bundle, std::move(v));
}

Section invertible_section(SplitMix64& rng, const BundlePtr& bundle) {
  std::vector<FiberElement> v;
  v.reserve(bundle->size());
  for (const auto& d : bundle->fibers()) {
    const FiberElement perturbation = fiber_element_with_norm(rng, d, rng.uniform(0.0, 0.5));
    const Complex factor = std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 2.0 * std::numbers::pi));
    v.push_back(factor * (FiberElement::unit(d) + perturbation));
  }
  return Section(bundle, std::move(v));
}

EFunction efunction(SplitMix64& rng, const SpacePtr& space, double scale) {
  std::vector<Complex> v(space->size());
  for (Complex& z : v) z = scale * rng.complex_box();
  return EFunction(space, std::move(v));
}

EFunction real_efunction(SplitMix64& rng, const SpacePtr& space, double lo, double hi) {
  std::vector<Complex> v(space->size());
  for (Complex& z : v) z = rng.uniform(lo, hi);
  return EFunction(space, std::move(v));
}

PartitionOfUnity partition(SplitMix64& rng, const SpacePtr& space, std::size_t max_parts) {
  const std::size_t parts = 1 + rng.below(std::max<std::size_t>(1, max_parts));
  std::vector<std::size_t> labels(space->size());
  for (auto& l : labels) l = rng.below(parts);
  return PartitionOfUnity::from_labels(space, labels, parts);
}

}  // namespace bkalg::random
