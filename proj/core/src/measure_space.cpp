#include "bkalg/measure_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace bkalg {

std::shared_ptr<const AtomicMeasureSpace> AtomicMeasureSpace::create(std::vector<Atom> atoms) {
  if (atoms.empty()) throw PreconditionError("measure space needs at least one atom");
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Atom& a = atoms[i];
    if (!(a.weight > 0.0) || !std::isfinite(a.weight))
      throw PreconditionError("atom '" + a.id + "' has non-positive or non-finite weight", i);
    if (!seen.insert(a.id).second) throw PreconditionError("duplicate atom id '" + a.id + "'", i);
  }
  return std::shared_ptr<const AtomicMeasureSpace>(new AtomicMeasureSpace(std::move(atoms)));
}

std::shared_ptr<const AtomicMeasureSpace> AtomicMeasureSpace::uniform(std::size_t n) {
  std::vector<Atom> atoms;
  atoms.reserve(n);
  for (std::size_t i = 0; i < n; ++i) atoms.push_back({"w" + std::to_string(i + 1), 1.0});
  return create(std::move(atoms));
}

double AtomicMeasureSpace::total_mass() const noexcept {
  return std::accumulate(atoms_.begin(), atoms_.end(), 0.0,
                         [](double s, const Atom& a) { return s + a.weight; });
}

std::optional<std::size_t> AtomicMeasureSpace::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i].id == id) return i;
  return std::nullopt;
}

bool AtomicMeasureSpace::same_as(const AtomicMeasureSpace& other) const noexcept {
  if (atoms_.size() != other.atoms_.size()) return false;
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i].id != other.atoms_[i].id || atoms_[i].weight != other.atoms_[i].weight) return false;
  return true;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) noexcept {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

void require_same_space(const SpacePtr& a, const SpacePtr& b, std::string_view context) {
  if (!same_space(a, b)) throw MismatchError(std::string(context) + ": operands live on different measure spaces");
}

// ---------------------------------------------------------------- EFunction

EFunction::EFunction(SpacePtr space, std::vector<Complex> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw PreconditionError("EFunction: null measure space");
  if (values_.size() != space_->size())
    throw ShapeError("EFunction: expected " + std::to_string(space_->size()) + " values, got " +
                     std::to_string(values_.size()));
}

EFunction EFunction::constant(SpacePtr space, Complex value) {
  const std::size_t n = space->size();
  return EFunction(std::move(space), std::vector<Complex>(n, value));
}

EFunction EFunction::from_real(SpacePtr space, std::span<const double> values) {
  return EFunction(std::move(space), std::vector<Complex>(values.begin(), values.end()));
}

bool EFunction::is_real(double tol) const noexcept {
  return std::all_of(values_.begin(), values_.end(), [tol](Complex z) { return std::abs(z.imag()) <= tol; });
}

double EFunction::sup() const noexcept {
  double m = 0.0;
  for (Complex z : values_) m = std::max(m, std::abs(z));
  return m;
}

EFunction EFunction::map(const std::function<Complex(Complex)>& f) const {
  std::vector<Complex> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), f);
  return EFunction(space_, std::move(out));
}

bool operator==(const EFunction& a, const EFunction& b) {
  return same_space(a.space_, b.space_) && a.values_ == b.values_;
}

EFunction pointwise(const EFunction& a, const EFunction& b, PointwiseOp op) {
  require_same_space(a.space(), b.space(), "pointwise");
  std::vector<Complex> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    switch (op) {
      case PointwiseOp::add: out[i] = a[i] + b[i]; break;
      case PointwiseOp::sub: out[i] = a[i] - b[i]; break;
      case PointwiseOp::mul: out[i] = a[i] * b[i]; break;
    }
  }
  return EFunction(a.space(), std::move(out));
}

EFunction operator+(const EFunction& a, const EFunction& b) { return pointwise(a, b, PointwiseOp::add); }
EFunction operator-(const EFunction& a, const EFunction& b) { return pointwise(a, b, PointwiseOp::sub); }
EFunction operator*(const EFunction& a, const EFunction& b) { return pointwise(a, b, PointwiseOp::mul); }
EFunction operator*(Complex s, const EFunction& a) {
  return a.map([s](Complex z) { return s * z; });
}

EFunction abs(const EFunction& a) {
  return a.map([](Complex z) { return Complex(std::abs(z), 0.0); });
}

namespace {

void require_real_pair(const EFunction& a, const EFunction& b, std::string_view context) {
  require_same_space(a.space(), b.space(), context);
  if (!a.is_real() || !b.is_real()) throw PreconditionError(std::string(context) + ": order relations need real-valued functions");
}

}  // namespace

bool leq(const EFunction& a, const EFunction& b) {
  require_real_pair(a, b, "leq");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i].real() <= b[i].real())) return false;
  return true;
}

bool strictly_less(const EFunction& a, const EFunction& b) {
  require_real_pair(a, b, "strictly_less");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i].real() < b[i].real())) return false;
  return true;
}

double max_distance(const EFunction& a, const EFunction& b) {
  require_same_space(a.space(), b.space(), "max_distance");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// --------------------------------------------------------------- Idempotent

Idempotent::Idempotent(SpacePtr space, std::vector<bool> mask) : space_(std::move(space)), mask_(std::move(mask)) {
  if (!space_) throw PreconditionError("Idempotent: null measure space");
  if (mask_.size() != space_->size()) throw ShapeError("Idempotent: mask length does not match the atom count");
}

Idempotent Idempotent::unit(SpacePtr space) {
  const std::size_t n = space->size();
  return Idempotent(std::move(space), std::vector<bool>(n, true));
}

Idempotent Idempotent::zero(SpacePtr space) {
  const std::size_t n = space->size();
  return Idempotent(std::move(space), std::vector<bool>(n, false));
}

Idempotent Idempotent::atom(SpacePtr space, std::size_t i) {
  std::vector<bool> mask(space->size(), false);
  mask.at(i) = true;
  return Idempotent(std::move(space), std::move(mask));
}

bool Idempotent::is_zero() const noexcept { return std::none_of(mask_.begin(), mask_.end(), [](bool b) { return b; }); }
bool Idempotent::is_unit() const noexcept { return std::all_of(mask_.begin(), mask_.end(), [](bool b) { return b; }); }
std::size_t Idempotent::count() const noexcept {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true));
}

Idempotent Idempotent::complement() const {
  std::vector<bool> m(mask_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = !mask_[i];
  return Idempotent(space_, std::move(m));
}

Idempotent Idempotent::meet(const Idempotent& other) const {
  require_same_space(space_, other.space_, "Idempotent::meet");
  std::vector<bool> m(mask_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = mask_[i] && other.mask_[i];
  return Idempotent(space_, std::move(m));
}

Idempotent Idempotent::join(const Idempotent& other) const {
  require_same_space(space_, other.space_, "Idempotent::join");
  std::vector<bool> m(mask_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = mask_[i] || other.mask_[i];
  return Idempotent(space_, std::move(m));
}

EFunction Idempotent::as_function() const {
  std::vector<Complex> v(mask_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = mask_[i] ? 1.0 : 0.0;
  return EFunction(space_, std::move(v));
}

bool operator==(const Idempotent& a, const Idempotent& b) {
  return same_space(a.space_, b.space_) && a.mask_ == b.mask_;
}

Idempotent support(const EFunction& a, double tol) {
  std::vector<bool> m(a.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::abs(a[i]) > tol;
  return Idempotent(a.space(), std::move(m));
}

// --------------------------------------------------------- PartitionOfUnity

PartitionOfUnity::PartitionOfUnity(std::vector<Idempotent> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw PreconditionError("partition of unity needs at least one part");
  space_ = parts_.front().space();
  label_.assign(space_->size(), parts_.size());
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    require_same_space(space_, parts_[k].space(), "PartitionOfUnity");
    for (std::size_t i = 0; i < label_.size(); ++i) {
      if (!parts_[k].contains(i)) continue;
      if (label_[i] != parts_.size())
        throw PreconditionError("partition parts overlap at atom '" + space_->id(i) + "'", i);
      label_[i] = k;
    }
  }
  for (std::size_t i = 0; i < label_.size(); ++i)
    if (label_[i] == parts_.size())
      throw PreconditionError("partition does not cover atom '" + space_->id(i) + "'", i);
}

PartitionOfUnity PartitionOfUnity::trivial(SpacePtr space) {
  return PartitionOfUnity({Idempotent::unit(std::move(space))});
}

PartitionOfUnity PartitionOfUnity::atoms(SpacePtr space) {
  std::vector<Idempotent> parts;
  for (std::size_t i = 0; i < space->size(); ++i) parts.push_back(Idempotent::atom(space, i));
  return PartitionOfUnity(std::move(parts));
}

PartitionOfUnity PartitionOfUnity::from_labels(SpacePtr space, std::span<const std::size_t> labels, std::size_t parts) {
  if (labels.size() != space->size()) throw ShapeError("from_labels: one label per atom required");
  std::vector<std::vector<bool>> masks(parts, std::vector<bool>(space->size(), false));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= parts) throw PreconditionError("from_labels: label out of range", i);
    masks[labels[i]][i] = true;
  }
  std::vector<Idempotent> out;
  out.reserve(parts);
  for (auto& m : masks) out.emplace_back(space, std::move(m));
  return PartitionOfUnity(std::move(out));
}

EFunction mix(const PartitionOfUnity& p, std::span<const EFunction> fns) {
  if (fns.size() != p.size())
    throw PreconditionError("mix: " + std::to_string(fns.size()) + " functions for " + std::to_string(p.size()) +
                            " parts");
  for (const EFunction& f : fns) require_same_space(p.space(), f.space(), "mix");
  std::vector<Complex> out(p.space()->size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fns[p.part_of(i)][i];
  return EFunction(p.space(), std::move(out));
}

}  // namespace bkalg
