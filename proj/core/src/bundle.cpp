#include "bkalg/bundle.hpp"

#include <algorithm>
#include <cmath>

namespace bkalg {

namespace {

constexpr double kSplitSumTolerance = 1e-10;
constexpr double kSplitDisjointTolerance = 1e-12;

void require_same_bundle(const Section& u, const Section& v, const char* op) {
  if (!same_bundle(u.bundle(), v.bundle()))
    throw MismatchError(std::string("section ") + op + ": operands live on different bundles");
}

}  // namespace

std::shared_ptr<const Bundle> Bundle::create(SpacePtr space, std::vector<FiberDescriptor> fibers) {
  if (!space) throw PreconditionError("Bundle: null measure space");
  if (fibers.size() != space->size())
    throw ShapeError("Bundle: " + std::to_string(fibers.size()) + " fiber descriptors for " +
                     std::to_string(space->size()) + " atoms");
  return std::shared_ptr<const Bundle>(new Bundle(std::move(space), std::move(fibers)));
}

std::shared_ptr<const Bundle> Bundle::uniform(SpacePtr space, FiberDescriptor fiber) {
  const std::size_t n = space->size();
  return create(std::move(space), std::vector<FiberDescriptor>(n, fiber));
}

bool Bundle::all_one_dimensional() const noexcept {
  return std::all_of(fibers_.begin(), fibers_.end(), [](const FiberDescriptor& d) { return d.algebra_dimension() == 1; });
}

bool Bundle::same_as(const Bundle& other) const noexcept {
  return same_space(space_, other.space_) && fibers_ == other.fibers_;
}

bool same_bundle(const BundlePtr& a, const BundlePtr& b) noexcept {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

Section::Section(BundlePtr bundle, std::vector<FiberElement> values)
    : bundle_(std::move(bundle)), values_(std::move(values)) {
  if (!bundle_) throw PreconditionError("Section: null bundle");
  if (values_.size() != bundle_->size())
    throw ShapeError("Section: " + std::to_string(values_.size()) + " values for " + std::to_string(bundle_->size()) +
                     " atoms");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i].descriptor() != bundle_->fiber(i))
      throw ShapeError("Section: value at atom '" + bundle_->space()->id(i) + "' is " +
                       values_[i].descriptor().to_string() + ", fiber is " + bundle_->fiber(i).to_string());
  }
}

Section Section::zero(BundlePtr bundle) {
  std::vector<FiberElement> v;
  for (const auto& d : bundle->fibers()) v.push_back(FiberElement::zero(d));
  return Section(std::move(bundle), std::move(v));
}

Section Section::unit(BundlePtr bundle) {
  std::vector<FiberElement> v;
  for (const auto& d : bundle->fibers()) v.push_back(FiberElement::unit(d));
  return Section(std::move(bundle), std::move(v));
}

Section Section::from_function(BundlePtr bundle, const EFunction& a) { return a * unit(std::move(bundle)); }

bool operator==(const Section& a, const Section& b) {
  return same_bundle(a.bundle_, b.bundle_) && a.values_ == b.values_;
}

Section operator+(const Section& u, const Section& v) {
  require_same_bundle(u, v, "add");
  std::vector<FiberElement> out;
  out.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out.push_back(u[i] + v[i]);
  return Section(u.bundle(), std::move(out));
}

Section operator-(const Section& u, const Section& v) {
  require_same_bundle(u, v, "sub");
  std::vector<FiberElement> out;
  out.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out.push_back(u[i] - v[i]);
  return Section(u.bundle(), std::move(out));
}

Section operator*(const Section& u, const Section& v) {
  require_same_bundle(u, v, "mul");
  std::vector<FiberElement> out;
  out.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out.push_back(u[i] * v[i]);
  return Section(u.bundle(), std::move(out));
}

Section operator*(Complex s, const Section& u) {
  std::vector<FiberElement> out;
  out.reserve(u.size());
  for (const auto& x : u.values()) out.push_back(s * x);
  return Section(u.bundle(), std::move(out));
}

Section operator*(const EFunction& a, const Section& u) {
  require_same_space(a.space(), u.space(), "module_mul");
  std::vector<FiberElement> out;
  out.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out.push_back(a[i] * u[i]);
  return Section(u.bundle(), std::move(out));
}

Section operator*(const Idempotent& pi, const Section& u) { return pi.as_function() * u; }

EFunction norm(const Section& u) {
  std::vector<Complex> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = norm(u[i]);
  return EFunction(u.space(), std::move(out));
}

double max_distance(const Section& u, const Section& v) { return norm(u - v).sup(); }

std::pair<Section, Section> d_decompose(const Section& u, const EFunction& l1, const EFunction& l2) {
  require_same_space(u.space(), l1.space(), "d_decompose");
  require_same_space(u.space(), l2.space(), "d_decompose");
  const EFunction nu = norm(u);
  const auto& space = *u.space();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto fail = [&](const std::string& why) {
      throw PreconditionError("d_decompose: " + why + " at atom '" + space.id(i) + "'", i);
    };
    if (l1[i].imag() != 0.0 || l2[i].imag() != 0.0 || l1[i].real() < 0.0 || l2[i].real() < 0.0)
      fail("split values must be real and non-negative");
    if (std::abs(l1[i].real() + l2[i].real() - nu[i].real()) > kSplitSumTolerance)
      fail("split does not sum to the norm");
    if (l1[i].real() * l2[i].real() > kSplitDisjointTolerance) fail("split is not disjoint");
  }

  std::vector<FiberElement> x1;
  std::vector<FiberElement> x2;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const FiberElement zero = FiberElement::zero(u[i].descriptor());
    if (l1[i].real() > l2[i].real()) {
      x1.push_back(u[i]);
      x2.push_back(zero);
    } else {
      x1.push_back(zero);
      x2.push_back(u[i]);
    }
  }
  return {Section(u.bundle(), std::move(x1)), Section(u.bundle(), std::move(x2))};
}

EFunction lifting(const EFunction& a) { return a; }
Section lifting(const Section& u) { return u; }

Section mix(const PartitionOfUnity& p, std::span<const Section> xs) {
  if (xs.size() != p.size())
    throw PreconditionError("mix: " + std::to_string(xs.size()) + " sections for " + std::to_string(p.size()) +
                            " parts");
  if (xs.empty()) throw PreconditionError("mix: empty family");
  for (const Section& x : xs) {
    if (!same_bundle(x.bundle(), xs.front().bundle())) throw MismatchError("mix: sections live on different bundles");
  }
  require_same_space(p.space(), xs.front().space(), "mix");
  std::vector<FiberElement> out;
  out.reserve(xs.front().size());
  for (std::size_t i = 0; i < xs.front().size(); ++i) out.push_back(xs[p.part_of(i)][i]);
  return Section(xs.front().bundle(), std::move(out));
}

}  // namespace bkalg
