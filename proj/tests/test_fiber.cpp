#include <gtest/gtest.h>

#include <algorithm>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace bkalg;
using testing_helpers::diag2;
using testing_helpers::mat2;

namespace {

const std::vector<FiberDescriptor> kKinds{FiberDescriptor::scalar(),    FiberDescriptor::matrix(1),
                                          FiberDescriptor::matrix(2),   FiberDescriptor::matrix(3),
                                          FiberDescriptor::matrix(5),   FiberDescriptor::matrix(8),
                                          FiberDescriptor::function(1), FiberDescriptor::function(7)};

// Multiset comparison up to tol by greedy matching.
void expect_same_multiset(std::vector<Complex> got, std::vector<Complex> want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (Complex w : want) {
    auto it = std::min_element(got.begin(), got.end(),
                               [&](Complex a, Complex b) { return std::abs(a - w) < std::abs(b - w); });
    EXPECT_LE(std::abs(*it - w), tol) << "missing eigenvalue " << w;
    got.erase(it);
  }
}

}  // namespace

TEST(FiberDescriptor, Bounds) {
  EXPECT_THROW(FiberDescriptor::matrix(0), ShapeError);
  EXPECT_THROW(FiberDescriptor::matrix(9), ShapeError);
  EXPECT_THROW(FiberDescriptor::function(0), ShapeError);
  EXPECT_THROW(FiberDescriptor::function(65), ShapeError);
  EXPECT_EQ(FiberDescriptor::matrix(3).data_size(), 9u);
}

TEST(FiberOps, MatrixUnits) {
  const FiberElement e12 = FiberElement::matrix_unit(2, 0, 1);
  const FiberElement e21 = FiberElement::matrix_unit(2, 1, 0);
  EXPECT_EQ(e12 * e21, FiberElement::matrix_unit(2, 0, 0));
  EXPECT_TRUE((e12 * e12).is_zero());
}

TEST(FiberOps, UnitIsNeutral) {
  SplitMix64 rng(3);
  for (const auto& d : kKinds) {
    const FiberElement a = random::fiber_element(rng, d);
    EXPECT_EQ(FiberElement::unit(d) * a, a) << d.to_string();
    EXPECT_EQ(a * FiberElement::unit(d), a) << d.to_string();
  }
}

TEST(FiberOps, DescriptorMismatch) {
  const FiberElement a = FiberElement::unit(FiberDescriptor::matrix(2));
  const FiberElement b = FiberElement::unit(FiberDescriptor::matrix(3));
  EXPECT_THROW(a + b, MismatchError);
  EXPECT_THROW(a * FiberElement::unit(FiberDescriptor::function(4)), MismatchError);
  EXPECT_THROW(FiberElement(FiberDescriptor::matrix(2), {1.0, 2.0}), ShapeError);
}

TEST(FiberNorm, Examples) {
  EXPECT_NEAR(norm(mat2(0, 1, 0, 0)), 1.0, 1e-15);
  for (std::size_t n = 1; n <= 8; ++n) EXPECT_NEAR(norm(FiberElement::unit(FiberDescriptor::matrix(n))), 1.0, 1e-14);
  EXPECT_NEAR(norm(diag2(3, Complex(0, -4))), 4.0, 1e-14);
  EXPECT_NEAR(norm(FiberElement(FiberDescriptor::function(3), {1.0, Complex(0, -2), 0.5})), 2.0, 0.0);
  EXPECT_NEAR(norm(FiberElement::scalar({3, 4})), 5.0, 1e-15);
}

TEST(FiberNorm, MatchesSvdOracle) {
  SplitMix64 rng(5);
  for (const auto& d : kKinds)
    for (int t = 0; t < 200; ++t) {
      const FiberElement a = random::fiber_element(rng, d);
      EXPECT_NEAR(norm(a), oracle::norm(a), 1e-12 * std::max(1.0, oracle::norm(a))) << d.to_string();
    }
}

TEST(FiberNorm, Axioms) {
  SplitMix64 rng(6);
  for (const auto& d : kKinds)
    for (int t = 0; t < 300; ++t) {
      const FiberElement a = random::fiber_element(rng, d);
      const FiberElement b = random::fiber_element(rng, d);
      const Complex z = rng.complex_box();
      EXPECT_NEAR(norm(z * a), std::abs(z) * norm(a), 1e-12);
      EXPECT_LE(norm(a + b), norm(a) + norm(b) + 1e-12);
      EXPECT_LE(norm(a * b), norm(a) * norm(b) + 1e-12);
    }
}

TEST(FiberInverse, Examples) {
  const auto s = inverse(FiberElement::scalar(2.0));
  ASSERT_TRUE(s);
  EXPECT_EQ((*s)[0], Complex(0.5));
  EXPECT_FALSE(inverse(FiberElement::matrix_unit(2, 0, 0)));
  const auto u = inverse(mat2(1, 0.5, 0, 1));
  ASSERT_TRUE(u);
  EXPECT_LT(norm(*u - mat2(1, -0.5, 0, 1)), 1e-15);
  EXPECT_FALSE(inverse(FiberElement(FiberDescriptor::function(3), {1.0, 0.0, 2.0})));
  EXPECT_FALSE(inverse(FiberElement::scalar(0.0)));
}

TEST(FiberInverse, MatchesLuOracle) {
  SplitMix64 rng(8);
  for (const auto& d : kKinds)
    for (int t = 0; t < 200; ++t) {
      const FiberElement a = FiberElement::unit(d) + random::fiber_element_with_norm(rng, d, 0.9 * rng.uniform());
      const auto inv = inverse(a);
      ASSERT_TRUE(inv) << d.to_string();
      EXPECT_LT(oracle::distance(*inv, oracle::inverse(a)), 1e-10) << d.to_string();
    }
}

TEST(FiberInverse, SmallestSingularValue) {
  EXPECT_NEAR(smallest_singular_value(diag2(3, Complex(0, 0.25))), 0.25, 1e-15);
  EXPECT_EQ(smallest_singular_value(FiberElement::matrix_unit(3, 1, 2)), 0.0);
}

TEST(FiberSpectrum, Examples) {
  expect_same_multiset(spectrum(diag2(1, 2)), {1.0, 2.0}, 1e-12);
  expect_same_multiset(spectrum(mat2(0, 0.5, 0, 0)), {0.0, 0.0}, 1e-12);
  expect_same_multiset(spectrum(mat2(0, 1, 1, 0)), {1.0, -1.0}, 1e-12);
  expect_same_multiset(spectrum(FiberElement::scalar({2, -1})), {Complex(2, -1)}, 0.0);
  expect_same_multiset(spectrum(FiberElement(FiberDescriptor::function(3), {1.0, 1.0, 4.0})), {1.0, 1.0, 4.0}, 0.0);
}

TEST(FiberSpectrum, RepeatedEigenvaluesOfNonNormalMatrices) {
  // Jordan block with eigenvalue 2 conjugated by a non-unitary matrix.
  const FiberElement j = mat2(2, 1, 0, 2);
  const FiberElement p = mat2(1, 2, 0.5, 3);
  const FiberElement a = p * j * *inverse(p);
  const auto got = spectrum(a, 1e-8);
  ASSERT_EQ(got.size(), 2u);
  for (Complex z : got) EXPECT_NEAR(std::abs(z - 2.0), 0.0, 1e-6);
}

TEST(FiberSpectrum, MatchesEigenOracle) {
  SplitMix64 rng(9);
  for (const auto& d : kKinds)
    for (int t = 0; t < 200; ++t) {
      const FiberElement a = random::fiber_element(rng, d);
      expect_same_multiset(spectrum(a), oracle::eigenvalues(a), 1e-8);
      for (Complex z : spectrum(a)) EXPECT_LE(oracle::resolvent_gap(a, z), 1e-9 * std::max(1.0, norm(a)));
    }
}

TEST(FiberSpectrum, SpectralRadiusBoundedByNorm) {
  SplitMix64 rng(10);
  for (const auto& d : kKinds)
    for (int t = 0; t < 200; ++t) {
      const FiberElement a = random::fiber_element(rng, d);
      for (Complex z : spectrum(a)) EXPECT_LE(std::abs(z), norm(a) + 1e-12);
    }
}

TEST(Linalg, PolynomialRootsReportsNonConvergence) {
  // An iteration cap of one cannot converge; the partial roots travel with the error.
  linalg::RootOptions opts;
  opts.max_iterations = 1;
  try {
    const std::vector<Complex> monic{1.0, -3.0, 3.0, -1.0, 0.5, 1.0};
    linalg::polynomial_roots(monic, opts);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.partial().size(), 5u);
  }
}
