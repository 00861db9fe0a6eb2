#pragma once

// The base space: a finite atomic measure space and the algebra E = L0 of
// measurable functions on it, with its order, idempotents and mixing.
//
// Every atom carries positive mass, so "almost everywhere" means "at every
// atom" and L-infinity, L0 and any faithful solid subalgebra in between all
// coincide with the algebra of complex vectors indexed by atoms. Weights are
// kept for bookkeeping only; no operation integrates against them.

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bkalg/error.hpp"

namespace bkalg {

class AtomicMeasureSpace {
 public:
  struct Atom {
    std::string id;
    double weight = 1.0;
  };

  /// Validates: at least one atom, unique ids, finite positive weights.
  static std::shared_ptr<const AtomicMeasureSpace> create(std::vector<Atom> atoms);

  /// n atoms named "w1".."wn" with unit weight.
  static std::shared_ptr<const AtomicMeasureSpace> uniform(std::size_t n);

  std::size_t size() const noexcept { return atoms_.size(); }
  const Atom& atom(std::size_t i) const { return atoms_.at(i); }
  const std::string& id(std::size_t i) const { return atoms_.at(i).id; }
  double weight(std::size_t i) const { return atoms_.at(i).weight; }
  double total_mass() const noexcept;
  std::optional<std::size_t> index_of(std::string_view id) const;

  /// Same atoms in the same order (weights included).
  bool same_as(const AtomicMeasureSpace& other) const noexcept;

 private:
  explicit AtomicMeasureSpace(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}
  std::vector<Atom> atoms_;
};

using SpacePtr = std::shared_ptr<const AtomicMeasureSpace>;

bool same_space(const SpacePtr& a, const SpacePtr& b) noexcept;
void require_same_space(const SpacePtr& a, const SpacePtr& b, std::string_view context);

class EFunction {
 public:
  EFunction(SpacePtr space, std::vector<Complex> values);

  static EFunction constant(SpacePtr space, Complex value);
  static EFunction from_real(SpacePtr space, std::span<const double> values);

  const SpacePtr& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return values_.size(); }
  Complex operator[](std::size_t i) const { return values_[i]; }
  Complex at(std::size_t i) const { return values_.at(i); }
  std::span<const Complex> values() const noexcept { return values_; }

  /// Every imaginary part has modulus <= tol.
  bool is_real(double tol = 0.0) const noexcept;
  /// Largest modulus over atoms (the L-infinity norm).
  double sup() const noexcept;

  EFunction map(const std::function<Complex(Complex)>& f) const;

  friend bool operator==(const EFunction& a, const EFunction& b);

 private:
  SpacePtr space_;
  std::vector<Complex> values_;
};

enum class PointwiseOp { add, sub, mul };

EFunction pointwise(const EFunction& a, const EFunction& b, PointwiseOp op);
EFunction operator+(const EFunction& a, const EFunction& b);
EFunction operator-(const EFunction& a, const EFunction& b);
EFunction operator*(const EFunction& a, const EFunction& b);
EFunction operator*(Complex s, const EFunction& a);

EFunction abs(const EFunction& a);

/// a <= b at every atom. Both arguments must be real-valued.
bool leq(const EFunction& a, const EFunction& b);
/// a << b: strict inequality at every atom. Both arguments must be real-valued.
bool strictly_less(const EFunction& a, const EFunction& b);

/// Largest atomwise distance |a - b|.
double max_distance(const EFunction& a, const EFunction& b);

/// Indicator of an atom set; as an element of E it is a 0/1 function.
class Idempotent {
 public:
  Idempotent(SpacePtr space, std::vector<bool> mask);

  static Idempotent unit(SpacePtr space);
  static Idempotent zero(SpacePtr space);
  static Idempotent atom(SpacePtr space, std::size_t i);

  const SpacePtr& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return mask_.size(); }
  bool contains(std::size_t i) const { return mask_.at(i); }
  const std::vector<bool>& mask() const noexcept { return mask_; }

  bool is_zero() const noexcept;
  bool is_unit() const noexcept;
  std::size_t count() const noexcept;

  Idempotent complement() const;
  Idempotent meet(const Idempotent& other) const;
  Idempotent join(const Idempotent& other) const;

  EFunction as_function() const;

  friend bool operator==(const Idempotent& a, const Idempotent& b);

 private:
  SpacePtr space_;
  std::vector<bool> mask_;
};

/// Where |a| > tol.
Idempotent support(const EFunction& a, double tol = 0.0);

/// Pairwise disjoint idempotents joining to the unit. Empty parts are allowed.
class PartitionOfUnity {
 public:
  explicit PartitionOfUnity(std::vector<Idempotent> parts);

  static PartitionOfUnity trivial(SpacePtr space);
  /// One part per atom.
  static PartitionOfUnity atoms(SpacePtr space);
  /// Atom i goes to part labels[i]; `parts` parts in total.
  static PartitionOfUnity from_labels(SpacePtr space, std::span<const std::size_t> labels, std::size_t parts);

  const SpacePtr& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return parts_.size(); }
  const Idempotent& part(std::size_t k) const { return parts_.at(k); }
  const std::vector<Idempotent>& parts() const noexcept { return parts_; }
  /// Index of the part containing atom i.
  std::size_t part_of(std::size_t i) const { return label_.at(i); }

 private:
  SpacePtr space_;
  std::vector<Idempotent> parts_;
  std::vector<std::size_t> label_;
};

/// Gluing sum_k pi_k a_k: the value at atom w is taken from the family member
/// whose part contains w.
EFunction mix(const PartitionOfUnity& p, std::span<const EFunction> fns);

}  // namespace bkalg
