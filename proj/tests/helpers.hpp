#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "bkalg/bkalg.hpp"

namespace testing_helpers {

using namespace bkalg;

inline EFunction efn(const SpacePtr& s, std::initializer_list<Complex> v) { return EFunction(s, std::vector<Complex>(v)); }

inline FiberElement mat2(Complex a, Complex b, Complex c, Complex d) {
  return FiberElement(FiberDescriptor::matrix(2), {a, b, c, d});
}

inline FiberElement diag2(Complex a, Complex d) { return mat2(a, 0.0, 0.0, d); }

inline Section section(const BundlePtr& b, std::vector<FiberElement> v) { return Section(b, std::move(v)); }

inline Section scalars(const BundlePtr& b, std::initializer_list<Complex> v) {
  std::vector<FiberElement> out;
  for (Complex z : v) out.push_back(FiberElement::scalar(z));
  return Section(b, std::move(out));
}

inline BundlePtr scalar_bundle(std::size_t n) {
  return Bundle::uniform(AtomicMeasureSpace::uniform(n), FiberDescriptor::scalar());
}

inline BundlePtr matrix_bundle(std::size_t atoms, std::size_t n) {
  return Bundle::uniform(AtomicMeasureSpace::uniform(atoms), FiberDescriptor::matrix(n));
}

/// Four atoms carrying scalar, matrix(2), function(3) and matrix(3) fibers.
inline BundlePtr mixed_bundle() {
  return Bundle::create(AtomicMeasureSpace::uniform(4),
                        {FiberDescriptor::scalar(), FiberDescriptor::matrix(2), FiberDescriptor::function(3),
                         FiberDescriptor::matrix(3)});
}

}  // namespace testing_helpers
