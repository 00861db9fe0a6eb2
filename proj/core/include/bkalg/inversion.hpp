#pragma once

// Invertibility in E(Omega, X): certified Neumann series, perturbation of
// inverses and compatibility of inversion with mixing.

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "bkalg/bundle.hpp"

namespace bkalg {

/// Result of a certified inversion.
///
/// `residual` is ||target * inverse - e|| atomwise. `bound_slack` is the
/// right-hand side of the invoked norm bound minus the achieved left-hand
/// side, so it must stay >= -1e-9 everywhere. Exact (non-series) inversions
/// have no truncation order and no bound.
struct InverseCertificate {
  Section inverse;
  EFunction residual;
  std::optional<std::size_t> truncation_order;
  std::optional<EFunction> bound_slack;
};

inline constexpr std::size_t kMaxNeumannOrder = 1'000'000;
inline constexpr double kBoundSlackFloor = -1e-9;

/// (e - x)^{-1} as the partial sum sum_{n<=N} x^n, with N the smallest order
/// whose geometric tail ||x||^{N+1} / (1 - ||x||) is <= tol at every atom.
/// The slack is ||x|| (1 - ||x||)^{-1} - ||(e - x)^{-1} - e||.
///
/// Requires ||x|| << 1 and tol > 0; throws PreconditionError naming the atom
/// otherwise, or when N would exceed kMaxNeumannOrder.
InverseCertificate neumann_inverse(const Section& x, double tol);

/// Atoms at which a section fails to be invertible.
struct NotInvertible {
  std::vector<std::size_t> atoms;
};

std::variant<Section, NotInvertible> inverse(const Section& x, double tol = kDefaultInverseTolerance);
bool is_invertible(const Section& x, double tol = kDefaultInverseTolerance);

/// (x + h)^{-1} through the factorization x + h = x (e + x^{-1} h), i.e.
/// (e + x^{-1} h)^{-1} x^{-1} with the first factor summed as a Neumann
/// series summed to tol / max(1, ||x|| ||x^{-1}||) so that the residual of
/// (x + h) stays within tol. Requires x invertible and
/// 2 ||h|| << ||x^{-1}||^{-1}. The slack is
/// 2 ||x^{-1}||^2 ||h|| - ||(x + h)^{-1} - x^{-1}||.
InverseCertificate perturbed_inverse(const Section& x, const Section& h, double tol);

/// Discrepancy threshold between mix-then-invert and invert-then-mix.
inline constexpr double kMixInverseTolerance = 1e-10;

/// (sum_k pi_k x_k)^{-1}, checked against sum_k pi_k x_k^{-1}. Throws
/// PreconditionError when a member is not invertible, InvariantViolation when
/// the two routes disagree by more than kMixInverseTolerance.
Section inverse_of_mix(const PartitionOfUnity& p, std::span<const Section> xs, double tol = kDefaultInverseTolerance);

}  // namespace bkalg
