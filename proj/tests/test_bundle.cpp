#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace bkalg;
using namespace testing_helpers;

TEST(Bundle, Validation) {
  const auto s = AtomicMeasureSpace::uniform(2);
  EXPECT_THROW(Bundle::create(s, {FiberDescriptor::scalar()}), ShapeError);
  const auto b = Bundle::create(s, {FiberDescriptor::scalar(), FiberDescriptor::matrix(2)});
  EXPECT_THROW(Section(b, {FiberElement::scalar(1.0), FiberElement::scalar(1.0)}), ShapeError);
  EXPECT_FALSE(b->all_one_dimensional());
  EXPECT_TRUE(Bundle::uniform(s, FiberDescriptor::function(1))->all_one_dimensional());
}

TEST(Section, RingExamples) {
  const auto b = scalar_bundle(2);
  SplitMix64 rng(1);
  const Section u = random::section(rng, b);
  EXPECT_EQ(u * Section::unit(b), u);
  EXPECT_EQ(u + Section::zero(b), u);
  EXPECT_EQ(scalars(b, {1, 2}) * scalars(b, {3, 4}), scalars(b, {3, 8}));
  EXPECT_THROW(u + Section::unit(matrix_bundle(2, 1)), MismatchError);
}

TEST(Section, ModuleAction) {
  const auto b = mixed_bundle();
  SplitMix64 rng(2);
  const Section u = random::section(rng, b);
  EXPECT_EQ(EFunction::constant(b->space(), 1.0) * u, u);
  for (int t = 0; t < 200; ++t) {
    const EFunction a = random::efunction(rng, b->space(), 2.0);
    const Section v = random::section(rng, b);
    const Section w = random::section(rng, b);
    EXPECT_LT(max_distance(norm(a * v), abs(a) * norm(v)), 1e-10);
    EXPECT_LT(max_distance((a * v) * w, a * (v * w)), 1e-12);
  }
  EXPECT_THROW(EFunction::constant(AtomicMeasureSpace::uniform(3), 1.0) * u, MismatchError);
}

TEST(Section, NormExamples) {
  const auto b = matrix_bundle(2, 2);
  EXPECT_EQ(norm(Section::unit(b)), EFunction::constant(b->space(), 1.0));
  const Section u = section(b, {FiberElement::matrix_unit(2, 0, 1), diag2(3, 1)});
  const EFunction n = norm(u);
  EXPECT_NEAR(n[0].real(), oracle::norm(u[0]), 1e-14);
  EXPECT_NEAR(n[1].real(), oracle::norm(u[1]), 1e-14);
  EXPECT_LT(max_distance(n, efn(b->space(), {1, 3})), 1e-14);
}

TEST(Section, NormSubmultiplicative) {
  const auto b = mixed_bundle();
  SplitMix64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const Section u = random::section(rng, b);
    const Section v = random::section(rng, b);
    EXPECT_TRUE(leq(norm(u * v), norm(u) * norm(v) + EFunction::constant(b->space(), 1e-12)));
  }
}

TEST(DDecompose, Examples) {
  const auto b = matrix_bundle(2, 2);
  SplitMix64 rng(4);
  const Section u = random::section(rng, b);
  const EFunction zero = EFunction::constant(b->space(), 0.0);

  auto [x1, x2] = d_decompose(u, norm(u), zero);
  EXPECT_EQ(x1, u);
  EXPECT_EQ(x2, Section::zero(b));

  const EFunction nu = norm(u);
  const EFunction l1 = efn(b->space(), {nu[0], 0});
  auto [y1, y2] = d_decompose(u, l1, nu - l1);
  EXPECT_EQ(y1, section(b, {u[0], FiberElement::zero(FiberDescriptor::matrix(2))}));
  EXPECT_EQ(y2, section(b, {FiberElement::zero(FiberDescriptor::matrix(2)), u[1]}));

  auto [z1, z2] = d_decompose(Section::zero(b), zero, zero);
  EXPECT_EQ(z1, Section::zero(b));
  EXPECT_EQ(z2, Section::zero(b));
}

TEST(DDecompose, PreconditionNamesAtom) {
  const auto b = scalar_bundle(2);
  const Section u = scalars(b, {1, 2});
  const auto s = b->space();
  try {
    d_decompose(u, efn(s, {1, 1}), efn(s, {0, 0.5}));  // sums to ||u|| at w1 only
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.atom(), 1u);
    EXPECT_NE(std::string(e.what()).find("w2"), std::string::npos);
  }
  EXPECT_THROW(d_decompose(u, efn(s, {0.5, 1}), efn(s, {0.5, 1})), PreconditionError);  // not disjoint
}

TEST(Lifting, Identity) {
  const auto b = mixed_bundle();
  SplitMix64 rng(5);
  EXPECT_EQ(lifting(EFunction::constant(b->space(), 1.0)), EFunction::constant(b->space(), 1.0));
  EXPECT_EQ(lifting(Section::unit(b)), Section::unit(b));
  for (int t = 0; t < 50; ++t) {
    const Section u = random::section(rng, b);
    const Section v = random::section(rng, b);
    EXPECT_EQ(lifting(u * v), lifting(u) * lifting(v));
  }
}

TEST(MixSections, Examples) {
  const auto b = mixed_bundle();
  const auto s = b->space();
  SplitMix64 rng(6);
  const Section u = random::section(rng, b);
  const std::vector<Section> one{u};
  EXPECT_EQ(mix(PartitionOfUnity::trivial(s), one), u);
  const std::vector<Section> same(4, u);
  EXPECT_EQ(mix(PartitionOfUnity::atoms(s), same), u);
  for (int t = 0; t < 100; ++t) {
    const PartitionOfUnity p = random::partition(rng, s, 4);
    std::vector<Section> xs;
    for (std::size_t k = 0; k < p.size(); ++k) xs.push_back(random::section(rng, b));
    const Section m = mix(p, xs);
    for (std::size_t k = 0; k < p.size(); ++k) EXPECT_EQ(p.part(k) * m, p.part(k) * xs[k]);
  }
  EXPECT_THROW(mix(PartitionOfUnity::atoms(s), one), PreconditionError);
  const std::vector<Section> foreign{u, u, u, Section::unit(matrix_bundle(4, 2))};
  EXPECT_THROW(mix(PartitionOfUnity::atoms(s), foreign), MismatchError);
}
