#pragma once

// Measurable bundles over an atomic space and their sections, the concrete
// model of the lattice-normed algebra E(Omega, X).
//
// Over finitely many atoms every section is simple, hence measurable, and the
// liftings p and l_X are identities. Section norms are E-valued: the norm of u
// is the function w -> ||u(w)||.

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "bkalg/fiber.hpp"
#include "bkalg/measure_space.hpp"

namespace bkalg {

class Bundle {
 public:
  static std::shared_ptr<const Bundle> create(SpacePtr space, std::vector<FiberDescriptor> fibers);
  static std::shared_ptr<const Bundle> uniform(SpacePtr space, FiberDescriptor fiber);

  const SpacePtr& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return fibers_.size(); }
  const FiberDescriptor& fiber(std::size_t i) const { return fibers_.at(i); }
  const std::vector<FiberDescriptor>& fibers() const noexcept { return fibers_; }

  /// Every fiber is isomorphic to C.
  bool all_one_dimensional() const noexcept;

  bool same_as(const Bundle& other) const noexcept;

 private:
  Bundle(SpacePtr space, std::vector<FiberDescriptor> fibers) : space_(std::move(space)), fibers_(std::move(fibers)) {}
  SpacePtr space_;
  std::vector<FiberDescriptor> fibers_;
};

using BundlePtr = std::shared_ptr<const Bundle>;

bool same_bundle(const BundlePtr& a, const BundlePtr& b) noexcept;

class Section {
 public:
  Section(BundlePtr bundle, std::vector<FiberElement> values);

  static Section zero(BundlePtr bundle);
  static Section unit(BundlePtr bundle);
  /// a * e: the E-multiple of the unit.
  static Section from_function(BundlePtr bundle, const EFunction& a);

  const BundlePtr& bundle() const noexcept { return bundle_; }
  const SpacePtr& space() const noexcept { return bundle_->space(); }
  std::size_t size() const noexcept { return values_.size(); }
  const FiberElement& operator[](std::size_t i) const { return values_[i]; }
  const FiberElement& at(std::size_t i) const { return values_.at(i); }
  const std::vector<FiberElement>& values() const noexcept { return values_; }

  friend bool operator==(const Section& a, const Section& b);

 private:
  BundlePtr bundle_;
  std::vector<FiberElement> values_;
};

Section operator+(const Section& u, const Section& v);
Section operator-(const Section& u, const Section& v);
Section operator*(const Section& u, const Section& v);
Section operator*(Complex s, const Section& u);

/// Module action (a u)(w) = a(w) u(w).
Section operator*(const EFunction& a, const Section& u);
Section operator*(const Idempotent& pi, const Section& u);

/// E-valued norm w -> ||u(w)||.
EFunction norm(const Section& u);

/// Largest atomwise distance ||u - v||(w).
double max_distance(const Section& u, const Section& v);

/// Splits u along a disjoint decomposition l1 + l2 = ||u||, l1 l2 = 0:
/// returns (x1, x2) with x1 + x2 = u and ||x_k|| = l_k. Atoms where both
/// l's vanish give zero pieces (up to the 1e-10 slack absorbed by x2).
std::pair<Section, Section> d_decompose(const Section& u, const EFunction& l1, const EFunction& l2);

/// The scalar lifting p and the vector-valued lifting l_X. Both are the
/// identity on an atomic space.
EFunction lifting(const EFunction& a);
Section lifting(const Section& u);

/// Gluing sum_k pi_k x_k along a partition of unity.
Section mix(const PartitionOfUnity& p, std::span<const Section> xs);

}  // namespace bkalg
