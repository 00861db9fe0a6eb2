#pragma once

// Representation of a lattice-normed algebra as a bundle of quotient fibers.
//
// For an atom w the seminorm alpha_w(u) = p(||u||)(w) has kernel I_w, a closed
// ideal, and X(w) = U_b / I_w. On an atomic space the quotient map i_w is
// evaluation at w. The quotient norm inf{ ||v||_inf : u - v in I_w } is
// computed independently by indicator truncation and must equal alpha_w(u);
// tau(u) = (i_w(u))_w is the isometric isomorphism onto the rebuilt bundle.
//
// Hilbert-Kaplansky modules: E-valued inner products on atomwise C^d and the
// algebra B(A) of bounded E-linear operators, realised as matrix fibers.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bkalg/bundle.hpp"
#include "bkalg/random.hpp"

namespace bkalg {

/// alpha_w(u) = ||u||(w). Throws PreconditionError on an unknown atom.
double seminorm_alpha(const Section& u, std::size_t atom);

/// Infimum of ||v||_inf over v with u - v in I_w, attained by the truncation
/// v = chi_A u with A = { w' : ||u||(w') <= alpha_w(u) }.
double quotient_norm(const Section& u, std::size_t atom);

/// u lies in I_w, i.e. alpha_w(u) <= tol.
bool in_ideal(const Section& u, std::size_t atom, double tol = 0.0);

/// X(w) viewed as the quotient U_b / I_w with i_w = evaluation at w.
struct QuotientFiber {
  BundlePtr source;
  std::size_t atom;

  FiberElement image(const Section& u) const;
  /// ||i_w(u)||_w = alpha_w(u).
  double norm(const Section& u) const;
};

struct CheckEntry {
  std::string check;
  bool passed = true;
  std::size_t trials = 0;
  std::string witness;
};

struct ReconstructionReport {
  std::vector<CheckEntry> checks;
  /// Dimension of span{ i_w(u) } over the supplied sections, per atom.
  std::vector<std::size_t> image_rank;

  bool passed() const noexcept;
};

struct Reconstruction {
  BundlePtr bundle;
  std::vector<Section> images;  // tau(u) for each input section
  ReconstructionReport report;
};

/// Rebuilds the bundle from quotient fibers and verifies that tau is linear,
/// multiplicative, isometric and unit preserving, that quotient and seminorm
/// agree, that I_w is an ideal, and that each rebuilt fiber is isometric to the
/// original (the map H_w). `samples` random combinations and products of the
/// inputs are checked in addition to the inputs themselves.
Reconstruction reconstruct_bundle(std::span<const Section> sections, SplitMix64& rng, std::size_t samples = 50,
                                  double tol = 1e-10);

/// tau(u) as a section of `target` (a bundle with the same fibers).
Section tau(const Section& u, const BundlePtr& target);

// ------------------------------------------------------ Hilbert-Kaplansky

class HKModule {
 public:
  static std::shared_ptr<const HKModule> create(SpacePtr space, std::vector<std::size_t> dims);

  const SpacePtr& space() const noexcept { return space_; }
  std::size_t dim(std::size_t atom) const { return dims_.at(atom); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }

 private:
  HKModule(SpacePtr space, std::vector<std::size_t> dims) : space_(std::move(space)), dims_(std::move(dims)) {}
  SpacePtr space_;
  std::vector<std::size_t> dims_;
};

using HKModulePtr = std::shared_ptr<const HKModule>;

struct HKElement {
  HKElement(HKModulePtr module, std::vector<std::vector<Complex>> vectors);

  HKModulePtr module;
  std::vector<std::vector<Complex>> vectors;
};

/// <x, y>(w) = sum_i x_i(w) conj(y_i(w)); linear in x.
EFunction hk_inner(const HKElement& x, const HKElement& y);
EFunction hk_norm(const HKElement& x);

/// B(A) with matrix(d_w) fibers under the operator norm (scalar where d_w = 1).
BundlePtr hk_operator_algebra(const HKModule& m);

/// Fiberwise application (T x)(w) = T(w) x(w).
HKElement apply(const Section& op, const HKElement& x);

struct OperatorNormCheck {
  EFunction sampled;        // sup of ||T x|| over the unit vectors tried
  EFunction operator_norm;  // largest singular value
  double max_gap = 0.0;
  bool agrees = false;
};

/// Evaluates sup{ ||T x|| : ||x|| <= 1 } from below with `samples` random unit
/// vectors per atom, refined by power iteration on T*T from the best one, and
/// compares it with the singular-value norm.
OperatorNormCheck hk_operator_norm_check(const Section& op, SplitMix64& rng, std::size_t samples = 10'000,
                                         double tol = 1e-6);

}  // namespace bkalg
