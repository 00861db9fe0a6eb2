#pragma once

// Function-valued spectra of a section x.
//
//   sp(x)   the a in E for which a e - x is not invertible, i.e. a(w) lies in
//           the fiber spectrum of x(w) at SOME atom;
//   spm(x)  the a in E for which pi (a e - x) is not invertible in pi U for
//           every nonzero idempotent pi, i.e. a(w) lies in the fiber spectrum
//           at EVERY atom.
//
// spm(x) is exactly the set of atomwise selections from the per-atom spectra,
// so it is stored as that table and enumerated on demand. sp(x) is uncountable
// as soon as there are two atoms and is only available through membership.
// Every spm member fails invertibility at every atom, hence spm(x) is a
// subset of sp(x).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bkalg/bundle.hpp"
#include "bkalg/random.hpp"

namespace bkalg {

inline constexpr double kDefaultSpectrumTolerance = 1e-8;
inline constexpr std::size_t kDefaultEnumerationCap = 4096;

struct FiberSpectrumTable {
  Section section;
  /// Fiber spectrum at each atom, with multiplicity.
  std::vector<std::vector<Complex>> per_atom;

  /// Eigenvalues at atom i, sorted by (re, im), merged within tol.
  std::vector<Complex> distinct(std::size_t atom, double tol = kDefaultSpectrumTolerance) const;
};

FiberSpectrumTable spectrum_table(const Section& x, double tol = kDefaultSpectrumTolerance);

enum class SpectrumKind { sp, spm };

/// An element a of E claimed to lie in sp(x) or spm(x).
struct SpectrumSelection {
  EFunction values;
  SpectrumKind kind;
};

/// Distance from a(w) to the nearest eigenvalue listed at atom w.
EFunction spectral_distance(const FiberSpectrumTable& table, const EFunction& a);

bool spm_contains(const FiberSpectrumTable& table, const EFunction& a, double tol = kDefaultSpectrumTolerance);
bool sp_contains(const FiberSpectrumTable& table, const EFunction& a, double tol = kDefaultSpectrumTolerance);
bool spm_contains(const Section& x, const EFunction& a, double tol = kDefaultSpectrumTolerance);
bool sp_contains(const Section& x, const EFunction& a, double tol = kDefaultSpectrumTolerance);

/// Membership straight from the definition: a(w) e - x(w) has smallest
/// singular value <= tol at every atom.
bool spm_contains_by_invertibility(const Section& x, const EFunction& a, double tol = kDefaultSpectrumTolerance);

bool contains(const FiberSpectrumTable& table, const SpectrumSelection& s, double tol = kDefaultSpectrumTolerance);

struct SpectrumEnumeration {
  std::vector<EFunction> members;
  /// Number of selections in spm(x); saturates at SIZE_MAX.
  std::size_t total = 0;
  bool truncated = false;
};

/// Atomwise selections from the distinct per-atom eigenvalues, in
/// lexicographic order (first atom most significant, eigenvalues by (re, im)).
/// At most `cap` members are produced.
SpectrumEnumeration spm_enumerate(const FiberSpectrumTable& table, std::size_t cap = kDefaultEnumerationCap,
                                  double tol = kDefaultSpectrumTolerance);

/// Nearest atomwise selection to a.
EFunction project_to_spm(const FiberSpectrumTable& table, const EFunction& a);

struct PropertyViolation {
  std::string property;
  std::string detail;
  std::optional<EFunction> witness;
};

/// Outcome of the spm(x) property suite: nonempty, cyclic (closed under
/// mixing), (o)-closed, bounded by ||x||.
struct SpectrumPropertyReport {
  bool nonempty = false;
  bool cyclic = false;
  bool closed = false;
  bool bounded = false;
  std::size_t members = 0;
  bool truncated = false;
  std::size_t cyclic_trials = 0;
  std::size_t closed_trials = 0;
  std::vector<PropertyViolation> violations;

  bool passed() const noexcept { return nonempty && cyclic && closed && bounded; }
};

SpectrumPropertyReport spm_properties(const Section& x, std::size_t samples, double tol, SplitMix64& rng,
                                      std::size_t cap = kDefaultEnumerationCap);

}  // namespace bkalg
