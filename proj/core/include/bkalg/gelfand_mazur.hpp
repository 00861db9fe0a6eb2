#pragma once

// Checkers for the two characterisations of E itself among bundle algebras:
//
//   unit support: if every element with unit support is invertible, then
//                 E(Omega, X) is isometrically isomorphic to E;
//   reverse bound: if ||x|| ||y|| <= m ||xy|| for some m in E, the same holds.
//
// Both hypotheses quantify over every element. Sampling can refute them (a
// replayable counterexample) and can certify them when every fiber is C, where
// the isomorphism x -> a_x with x = a_x e is explicit. Anything else is
// reported as inconclusive.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bkalg/bundle.hpp"
#include "bkalg/random.hpp"

namespace bkalg {

enum class GMOutcome { isomorphic, counterexample, inconclusive };

std::string to_string(GMOutcome outcome);

/// One part of the reverse-bound partition: atoms whose best constant m lies
/// in [n, n + 1), or `unbounded` when no constant exists there.
struct GMPart {
  Idempotent part;
  std::optional<std::size_t> level;  // n; nullopt when unbounded
  GMOutcome outcome = GMOutcome::inconclusive;
};

struct GMVerdict {
  GMOutcome outcome = GMOutcome::inconclusive;
  /// Counterexample: the offending element (unit-support check) or pair
  /// (reverse-bound check).
  std::vector<Section> witness;
  /// Idempotent on which the counterexample lives.
  std::optional<Idempotent> witness_support;
  std::size_t checks_run = 0;
  double tolerance = 0.0;
  /// Isomorphic: largest isometry and multiplicativity defects seen.
  double isometry_defect = 0.0;
  double multiplicativity_defect = 0.0;
  /// Reverse bound: certified m (isomorphic) or empirical sup of
  /// ||x|| ||y|| / ||xy|| per atom (inconclusive).
  std::optional<EFunction> bound;
  std::vector<GMPart> parts;
  std::string note;
};

/// a_x for a bundle of one-dimensional fibers: x = a_x e.
EFunction scalar_part(const Section& x);

/// Replays a unit-support counterexample: support(||u||) = 1 and u not
/// invertible.
bool verify_unit_support_witness(const Section& u, double tol);

/// Replays a zero-divisor counterexample: x, y nonzero on `where`, xy = 0.
bool verify_zero_divisor_witness(const Section& x, const Section& y, double tol);

GMVerdict gm_unit_support_check(const BundlePtr& bundle, std::size_t samples, double tol, SplitMix64& rng);
GMVerdict gm_reverse_bound_check(const BundlePtr& bundle, std::size_t samples, double tol, SplitMix64& rng);

}  // namespace bkalg
