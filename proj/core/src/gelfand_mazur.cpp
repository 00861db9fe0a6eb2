#include "bkalg/gelfand_mazur.hpp"

#include <algorithm>
#include <cmath>

#include "bkalg/inversion.hpp"
#include "bkalg/spectrum.hpp"

namespace bkalg {

namespace {

// A norm-one element that is not invertible, if the fiber has one.
std::optional<FiberElement> singular_probe(const FiberDescriptor& d) {
  if (d.algebra_dimension() == 1) return std::nullopt;
  if (d.kind == FiberKind::matrix) return FiberElement::matrix_unit(d.dim, 0, 0);
  std::vector<Complex> v(d.data_size());
  v[0] = 1.0;
  return FiberElement(d, std::move(v));
}

// Nonzero x, y with xy = 0, if the fiber has such a pair.
std::optional<std::pair<FiberElement, FiberElement>> zero_divisor_probe(const FiberDescriptor& d) {
  if (d.algebra_dimension() == 1) return std::nullopt;
  if (d.kind == FiberKind::matrix) {
    const FiberElement e12 = FiberElement::matrix_unit(d.dim, 0, 1);
    return std::pair{e12, e12};
  }
  std::vector<Complex> x(d.data_size());
  std::vector<Complex> y(d.data_size());
  x[0] = 1.0;
  y[1] = 1.0;
  return std::pair{FiberElement(d, std::move(x)), FiberElement(d, std::move(y))};
}

// Verifies x -> a_x on a bundle of one-dimensional fibers: a_x comes from
// spm(x), a_x e = x, and the map is isometric, multiplicative, linear and onto.
bool verify_isomorphism(const BundlePtr& bundle, std::size_t samples, double tol, SplitMix64& rng, GMVerdict& v) {
  auto a_of = [&](const Section& x) {
    const auto members = spm_enumerate(spectrum_table(x), 1);
    return members.members.front();
  };
  bool ok = true;
  for (std::size_t t = 0; t < samples; ++t) {
    const Section x = random::section(rng, bundle);
    const Section y = random::section(rng, bundle);
    const Complex lambda = rng.complex_box();
    const EFunction ax = a_of(x);
    const EFunction ay = a_of(y);

    const double recon = max_distance(Section::from_function(bundle, ax), x);
    const double iso = max_distance(abs(ax), norm(x));
    const double mult = max_distance(a_of(x * y), ax * ay);
    const double lin = max_distance(a_of(x + lambda * y), ax + lambda * ay);
    const EFunction b = random::efunction(rng, bundle->space());
    const double onto = max_distance(a_of(Section::from_function(bundle, b)), b);

    v.isometry_defect = std::max(v.isometry_defect, iso);
    v.multiplicativity_defect = std::max(v.multiplicativity_defect, mult);
    v.checks_run += 5;
    if (recon > tol || iso > tol || mult > tol || lin > tol || onto > tol) ok = false;
  }
  return ok;
}

}  // namespace

std::string to_string(GMOutcome outcome) {
  switch (outcome) {
    case GMOutcome::isomorphic: return "Isomorphic";
    case GMOutcome::counterexample: return "Counterexample";
    case GMOutcome::inconclusive: return "Inconclusive";
  }
  return "?";
}

EFunction scalar_part(const Section& x) {
  if (!x.bundle()->all_one_dimensional()) throw PreconditionError("scalar_part: every fiber must be one-dimensional");
  std::vector<Complex> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = x[i][0];
  return EFunction(x.space(), std::move(v));
}

bool verify_unit_support_witness(const Section& u, double tol) {
  return support(norm(u), tol).is_unit() && !is_invertible(u, tol);
}

bool verify_zero_divisor_witness(const Section& x, const Section& y, double tol) {
  return norm(x).sup() > tol && norm(y).sup() > tol && norm(x * y).sup() <= tol;
}

GMVerdict gm_unit_support_check(const BundlePtr& bundle, std::size_t samples, double tol, SplitMix64& rng) {
  GMVerdict v;
  v.tolerance = tol;
  const SpacePtr& space = bundle->space();

  // Structured probe: rank-deficient norm-one values where the fiber allows,
  // the unit elsewhere.
  std::vector<FiberElement> probe;
  std::vector<bool> singular(bundle->size(), false);
  for (std::size_t i = 0; i < bundle->size(); ++i) {
    auto p = singular_probe(bundle->fiber(i));
    singular[i] = p.has_value();
    probe.push_back(p ? std::move(*p) : FiberElement::unit(bundle->fiber(i)));
  }
  ++v.checks_run;
  if (std::find(singular.begin(), singular.end(), true) != singular.end()) {
    Section u(bundle, std::move(probe));
    if (!verify_unit_support_witness(u, tol))
      throw InvariantViolation("gm_unit_support_check: structured probe failed to re-verify");
    v.outcome = GMOutcome::counterexample;
    v.witness = {std::move(u)};
    v.witness_support = Idempotent(space, singular);
    v.note = "unit-support element that is not invertible";
    return v;
  }

  for (std::size_t t = 0; t < samples; ++t) {
    Section u = random::unit_norm_section(rng, bundle);
    ++v.checks_run;
    if (!is_invertible(u, tol)) {
      if (!verify_unit_support_witness(u, tol)) continue;
      auto inv = inverse(u, tol);
      std::vector<bool> where(bundle->size(), false);
      for (std::size_t i : std::get<NotInvertible>(inv).atoms) where[i] = true;
      v.outcome = GMOutcome::counterexample;
      v.witness = {std::move(u)};
      v.witness_support = Idempotent(space, std::move(where));
      v.note = "random unit-support element that is not invertible";
      return v;
    }
  }

  if (!bundle->all_one_dimensional()) {
    v.outcome = GMOutcome::inconclusive;
    v.note = "no counterexample found, but sampling cannot prove the hypothesis on multi-dimensional fibers";
    return v;
  }
  if (verify_isomorphism(bundle, samples, tol, rng, v)) {
    v.outcome = GMOutcome::isomorphic;
    v.note = "every fiber is C; x -> a_x with x = a_x e";
  } else {
    v.outcome = GMOutcome::inconclusive;
    v.note = "isomorphism checks exceeded the tolerance";
  }
  return v;
}

GMVerdict gm_reverse_bound_check(const BundlePtr& bundle, std::size_t samples, double tol, SplitMix64& rng) {
  GMVerdict v;
  v.tolerance = tol;
  const SpacePtr& space = bundle->space();
  const std::size_t atoms = bundle->size();

  // x = y = e forces m >= 1 everywhere.
  const Section e = Section::unit(bundle);
  ++v.checks_run;
  if (max_distance(norm(e) * norm(e), norm(e * e)) > tol)
    throw InvariantViolation("gm_reverse_bound_check: ||e|| ||e|| != ||e e||");

  // Per-atom best constant: 1 on one-dimensional fibers (certified by sampling
  // below), none where a zero-divisor pair exists, empirical elsewhere.
  enum class AtomClass { scalar, zero_divisor, unknown };
  std::vector<AtomClass> cls(atoms);
  std::vector<FiberElement> zx;
  std::vector<FiberElement> zy;
  for (std::size_t i = 0; i < atoms; ++i) {
    const auto& d = bundle->fiber(i);
    auto z = zero_divisor_probe(d);
    if (d.algebra_dimension() == 1) {
      cls[i] = AtomClass::scalar;
    } else if (z) {
      cls[i] = AtomClass::zero_divisor;
    } else {
      cls[i] = AtomClass::unknown;
    }
    zx.push_back(z ? z->first : FiberElement::zero(d));
    zy.push_back(z ? z->second : FiberElement::zero(d));
  }

  std::vector<double> empirical(atoms, 1.0);
  std::vector<double> equality_defect(atoms, 0.0);
  for (std::size_t t = 0; t < samples; ++t) {
    const Section x = random::section(rng, bundle);
    const Section y = random::section(rng, bundle);
    const EFunction lhs = norm(x) * norm(y);
    const EFunction rhs = norm(x * y);
    ++v.checks_run;
    for (std::size_t i = 0; i < atoms; ++i) {
      const double l = lhs[i].real();
      const double r = rhs[i].real();
      if (cls[i] == AtomClass::scalar) equality_defect[i] = std::max(equality_defect[i], std::abs(l - r));
      if (r > 0.0) empirical[i] = std::max(empirical[i], l / r);
    }
  }

  // Partition Omega_n = { n <= m < n + 1 } plus the part where no m exists.
  std::vector<std::size_t> level(atoms, 0);
  for (std::size_t i = 0; i < atoms; ++i) {
    if (cls[i] == AtomClass::scalar) level[i] = 1;
    if (cls[i] == AtomClass::unknown) level[i] = static_cast<std::size_t>(std::floor(empirical[i]));
  }
  std::vector<std::size_t> levels;
  for (std::size_t i = 0; i < atoms; ++i)
    if (cls[i] != AtomClass::zero_divisor) levels.push_back(level[i]);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  for (std::size_t n : levels) {
    std::vector<bool> mask(atoms, false);
    bool all_scalar = true;
    bool certified = true;
    for (std::size_t i = 0; i < atoms; ++i) {
      if (cls[i] == AtomClass::zero_divisor || level[i] != n) continue;
      mask[i] = true;
      if (cls[i] != AtomClass::scalar) all_scalar = false;
      if (equality_defect[i] > tol) certified = false;
    }
    const GMOutcome o = all_scalar && certified ? GMOutcome::isomorphic : GMOutcome::inconclusive;
    v.parts.push_back({Idempotent(space, std::move(mask)), n, o});
  }
  {
    std::vector<bool> mask(atoms, false);
    for (std::size_t i = 0; i < atoms; ++i) mask[i] = cls[i] == AtomClass::zero_divisor;
    Idempotent unbounded(space, std::move(mask));
    if (!unbounded.is_zero()) v.parts.push_back({std::move(unbounded), std::nullopt, GMOutcome::counterexample});
  }

  // Glue the per-part verdicts: each part contributes its own witness (zero
  // off the part), mixed along the partition.
  std::vector<Idempotent> pieces;
  for (const auto& p : v.parts) pieces.push_back(p.part);
  const PartitionOfUnity partition(pieces);
  const Section zero = Section::zero(bundle);
  const Section probe_x(bundle, zx);
  const Section probe_y(bundle, zy);
  std::vector<Section> wx;
  std::vector<Section> wy;
  for (const auto& p : v.parts) {
    const bool bad = p.outcome == GMOutcome::counterexample;
    wx.push_back(bad ? probe_x : zero);
    wy.push_back(bad ? probe_y : zero);
  }

  const auto any = [&](GMOutcome o) {
    return std::any_of(v.parts.begin(), v.parts.end(), [o](const GMPart& p) { return p.outcome == o; });
  };
  if (any(GMOutcome::counterexample)) {
    Section x = mix(partition, wx);
    Section y = mix(partition, wy);
    if (!verify_zero_divisor_witness(x, y, tol))
      throw InvariantViolation("gm_reverse_bound_check: zero-divisor witness failed to re-verify");
    v.outcome = GMOutcome::counterexample;
    v.witness = {std::move(x), std::move(y)};
    v.witness_support = v.parts.back().part;
    v.note = "nonzero x, y with xy = 0: no m in E bounds ||x|| ||y|| by m ||xy||";
    return v;
  }

  std::vector<Complex> m(atoms);
  for (std::size_t i = 0; i < atoms; ++i) m[i] = cls[i] == AtomClass::scalar ? 1.0 : empirical[i];
  v.bound = EFunction(space, std::move(m));
  if (any(GMOutcome::inconclusive)) {
    v.outcome = GMOutcome::inconclusive;
    v.note = "no zero divisor found; bound reports the empirical sup of ||x|| ||y|| / ||xy||";
    return v;
  }
  if (verify_isomorphism(bundle, samples, tol, rng, v)) {
    v.outcome = GMOutcome::isomorphic;
    v.note = "m = 1 certified: ||x|| ||y|| = ||xy|| on every fiber";
  } else {
    v.outcome = GMOutcome::inconclusive;
    v.note = "isomorphism checks exceeded the tolerance";
  }
  return v;
}

}  // namespace bkalg
