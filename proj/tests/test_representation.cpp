#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace bkalg;
using namespace testing_helpers;

TEST(Seminorm, Examples) {
  const auto b = mixed_bundle();
  for (std::size_t w = 0; w < 4; ++w) {
    EXPECT_DOUBLE_EQ(seminorm_alpha(Section::unit(b), w), 1.0);
    EXPECT_DOUBLE_EQ(seminorm_alpha(Section::zero(b), w), 0.0);
  }
  SplitMix64 rng(1);
  for (int t = 0; t < 100; ++t) {
    const Section u = random::section(rng, b);
    const EFunction a = random::efunction(rng, b->space(), 2.0);
    for (std::size_t w = 0; w < 4; ++w)
      EXPECT_NEAR(seminorm_alpha(a * u, w), std::abs(a[w]) * seminorm_alpha(u, w), 1e-12);
  }
  EXPECT_THROW(seminorm_alpha(Section::unit(b), 4), PreconditionError);
}

TEST(QuotientNorm, Examples) {
  const auto sb = scalar_bundle(2);
  const Section u = scalars(sb, {1, 3});
  EXPECT_DOUBLE_EQ(quotient_norm(u, 0), 1.0);
  EXPECT_DOUBLE_EQ(oracle::quotient_norm(u, 0), 1.0);
  for (std::size_t w = 0; w < 2; ++w) EXPECT_DOUBLE_EQ(quotient_norm(Section::unit(sb), w), 1.0);
  EXPECT_DOUBLE_EQ(quotient_norm(scalars(sb, {0, 3}), 0), 0.0);
  EXPECT_TRUE(in_ideal(scalars(sb, {0, 3}), 0));
  EXPECT_FALSE(in_ideal(scalars(sb, {0, 3}), 1));
}

TEST(QuotientNorm, BruteForceOracle) {
  SplitMix64 rng(2);
  for (std::size_t atoms = 1; atoms <= 6; ++atoms) {
    const auto b = matrix_bundle(atoms, 2);
    for (int t = 0; t < 30; ++t) {
      const Section u = random::section(rng, b);
      for (std::size_t w = 0; w < atoms; ++w) {
        EXPECT_NEAR(quotient_norm(u, w), oracle::quotient_norm(u, w), 1e-10);
        EXPECT_NEAR(quotient_norm(u, w), seminorm_alpha(u, w), 1e-10);
      }
    }
  }
}

TEST(Reconstruct, UnitOnly) {
  const auto b = mixed_bundle();
  SplitMix64 rng(3);
  const std::vector<Section> gens{Section::unit(b)};
  const Reconstruction r = reconstruct_bundle(gens, rng);
  EXPECT_TRUE(r.report.passed());
  EXPECT_EQ(r.images.front(), Section::unit(r.bundle));
}

TEST(Reconstruct, ScalarFibersStayOneDimensional) {
  const auto b = scalar_bundle(3);
  SplitMix64 rng(4);
  std::vector<Section> gens;
  for (int t = 0; t < 5; ++t) gens.push_back(random::section(rng, b));
  const Reconstruction r = reconstruct_bundle(gens, rng);
  EXPECT_TRUE(r.report.passed());
  EXPECT_TRUE(r.bundle->all_one_dimensional());
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (std::size_t w = 0; w < 3; ++w) EXPECT_EQ(r.images[k][w][0], gens[k][w][0]);
}

TEST(Reconstruct, RandomMatrixSections) {
  const auto b = matrix_bundle(3, 2);
  SplitMix64 rng(5);
  std::vector<Section> gens;
  for (int t = 0; t < 50; ++t) gens.push_back(random::section(rng, b));
  const Reconstruction r = reconstruct_bundle(gens, rng);
  for (const CheckEntry& c : r.report.checks) EXPECT_TRUE(c.passed) << c.check << ": " << c.witness;
  // Both sides of each check, recomputed here.
  for (std::size_t k = 0; k + 1 < gens.size(); ++k) {
    EXPECT_LT(max_distance(norm(r.images[k]), norm(gens[k])), 1e-10);
    const Section prod = tau(gens[k] * gens[k + 1], r.bundle);
    EXPECT_LT(max_distance(prod, r.images[k] * r.images[k + 1]), 1e-10);
  }
}

TEST(Reconstruct, RejectsForeignSections) {
  SplitMix64 rng(6);
  const std::vector<Section> gens{Section::unit(scalar_bundle(2)), Section::unit(matrix_bundle(2, 2))};
  EXPECT_THROW(reconstruct_bundle(gens, rng), MismatchError);
}

TEST(HilbertKaplansky, Examples) {
  const auto s = AtomicMeasureSpace::uniform(3);
  const auto m = HKModule::create(s, {1, 2, 4});
  std::vector<std::vector<Complex>> basis{{1.0}, {0.0, 1.0}, {0.0, 0.0, 1.0, 0.0}};
  const HKElement x(m, basis);
  EXPECT_EQ(hk_inner(x, x), EFunction::constant(s, 1.0));
  EXPECT_EQ(hk_norm(x), EFunction::constant(s, 1.0));

  const auto flat = HKModule::create(s, {1, 1, 1});
  const BundlePtr ops = hk_operator_algebra(*flat);
  for (const auto& d : ops->fibers()) EXPECT_EQ(d, FiberDescriptor::scalar());

  SplitMix64 rng(7);
  const OperatorNormCheck id = hk_operator_norm_check(Section::unit(hk_operator_algebra(*m)), rng, 1000);
  EXPECT_TRUE(id.agrees);
  EXPECT_LT(max_distance(id.operator_norm, EFunction::constant(s, 1.0)), 1e-14);

  EXPECT_THROW(HKModule::create(s, {1, 9, 1}), ShapeError);
  EXPECT_THROW(HKElement(m, {{1.0}, {1.0}, {1.0}}), ShapeError);
}

TEST(HilbertKaplansky, InnerProductAxioms) {
  const auto s = AtomicMeasureSpace::uniform(4);
  const auto m = HKModule::create(s, {1, 3, 5, 8});
  SplitMix64 rng(8);
  auto draw = [&] {
    std::vector<std::vector<Complex>> v;
    for (std::size_t w = 0; w < 4; ++w) {
      v.emplace_back(m->dim(w));
      for (Complex& z : v.back()) z = rng.complex_box();
    }
    return HKElement(m, v);
  };
  for (int t = 0; t < 100; ++t) {
    const HKElement x = draw(), y = draw();
    const EFunction xy = hk_inner(x, y), yx = hk_inner(y, x);
    for (std::size_t w = 0; w < 4; ++w) EXPECT_LT(std::abs(xy[w] - std::conj(yx[w])), 1e-14);
    EXPECT_TRUE(hk_inner(x, x).is_real(1e-15));
    EXPECT_TRUE(leq(EFunction::constant(s, 0.0), hk_inner(x, x).map([](Complex z) { return Complex(z.real()); })));
  }
}

TEST(HilbertKaplansky, SampledSupMatchesOperatorNorm) {
  const auto s = AtomicMeasureSpace::uniform(3);
  const auto m = HKModule::create(s, {2, 5, 8});
  const BundlePtr ops = hk_operator_algebra(*m);
  SplitMix64 rng(9);
  for (int t = 0; t < 5; ++t) {
    const OperatorNormCheck c = hk_operator_norm_check(random::section(rng, ops), rng);
    EXPECT_TRUE(c.agrees);
    EXPECT_LE(c.max_gap, 1e-6);
  }
}
