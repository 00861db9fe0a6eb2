#include "bkalg/representation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "bkalg/linalg.hpp"

namespace bkalg {

namespace {

void require_atom(const Section& u, std::size_t atom, const char* op) {
  if (atom >= u.size()) throw PreconditionError(std::string(op) + ": unknown atom index " + std::to_string(atom));
}

// Rank of a set of coefficient vectors by Gaussian elimination.
std::size_t span_rank(std::vector<std::vector<Complex>> rows, double tol) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  double scale = 0.0;
  for (const auto& r : rows)
    for (Complex z : r) scale = std::max(scale, std::abs(z));
  const double eps = tol * std::max(1.0, scale);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (std::abs(rows[r][c]) > std::abs(rows[piv][c])) piv = r;
    if (std::abs(rows[piv][c]) <= eps) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const Complex f = rows[r][c] / rows[rank][c];
      for (std::size_t j = c; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

class Checker {
 public:
  Checker(std::string name, double tol) : entry_{std::move(name), true, 0, {}}, tol_(tol) {}

  void expect_close(double got, double want, const std::string& where) {
    ++entry_.trials;
    if (std::abs(got - want) <= tol_ || !entry_.passed) return;
    entry_.passed = false;
    std::ostringstream os;
    os << where << ": " << got << " vs " << want;
    entry_.witness = os.str();
  }

  void expect(bool ok, const std::string& where) {
    ++entry_.trials;
    if (ok || !entry_.passed) return;
    entry_.passed = false;
    entry_.witness = where;
  }

  CheckEntry done() { return std::move(entry_); }

 private:
  CheckEntry entry_;
  double tol_;
};

}  // namespace

double seminorm_alpha(const Section& u, std::size_t atom) {
  require_atom(u, atom, "seminorm_alpha");
  return norm(lifting(u)[atom]);
}

double quotient_norm(const Section& u, std::size_t atom) {
  require_atom(u, atom, "quotient_norm");
  const EFunction nu = norm(u);
  const double alpha = nu[atom].real();
  // v = chi_A u keeps u where its norm does not exceed alpha_w(u); u - v
  // vanishes at w, so it lies in I_w.
  double sup = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = nu[i].real();
    if (r <= alpha) sup = std::max(sup, r);
  }
  return sup;
}

bool in_ideal(const Section& u, std::size_t atom, double tol) { return seminorm_alpha(u, atom) <= tol; }

FiberElement QuotientFiber::image(const Section& u) const {
  if (!same_bundle(source, u.bundle())) throw MismatchError("QuotientFiber: section from a different bundle");
  return u.at(atom);
}

double QuotientFiber::norm(const Section& u) const {
  if (!same_bundle(source, u.bundle())) throw MismatchError("QuotientFiber: section from a different bundle");
  return seminorm_alpha(u, atom);
}

bool ReconstructionReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.passed; });
}

Section tau(const Section& u, const BundlePtr& target) {
  if (!target->same_as(*u.bundle())) throw MismatchError("tau: target bundle has different fibers");
  return Section(target, u.values());
}

Reconstruction reconstruct_bundle(std::span<const Section> sections, SplitMix64& rng, std::size_t samples, double tol) {
  if (sections.empty()) throw PreconditionError("reconstruct_bundle: no sections supplied");
  const BundlePtr& source = sections.front().bundle();
  for (const Section& s : sections)
    if (!same_bundle(source, s.bundle())) throw MismatchError("reconstruct_bundle: sections live on different bundles");

  const SpacePtr& space = source->space();
  const std::size_t atoms = space->size();

  // Each fiber is the quotient image { i_w(u) }; at desk scale it is the
  // original fiber algebra, so the rebuilt bundle carries the same descriptors.
  std::vector<FiberDescriptor> fibers;
  for (std::size_t w = 0; w < atoms; ++w) {
    const QuotientFiber q{source, w};
    fibers.push_back(q.image(sections.front()).descriptor());
  }
  Reconstruction out;
  out.bundle = Bundle::create(space, std::move(fibers));
  for (const Section& s : sections) out.images.push_back(tau(s, out.bundle));

  for (std::size_t w = 0; w < atoms; ++w) {
    std::vector<std::vector<Complex>> rows;
    for (const Section& s : sections) rows.emplace_back(s[w].data().begin(), s[w].data().end());
    out.report.image_rank.push_back(span_rank(std::move(rows), tol));
  }

  // Inputs plus random combinations and products.
  std::vector<Section> pool(sections.begin(), sections.end());
  for (std::size_t t = 0; t < samples; ++t) {
    const Section& u = sections[rng.below(sections.size())];
    const Section& v = sections[rng.below(sections.size())];
    pool.push_back(u * v);
    pool.push_back(u + rng.complex_box() * v);
  }

  auto at_atom = [&](const Section& s, std::size_t w) { return "atom '" + space->id(w) + "' of " + std::to_string(&s - pool.data()); };

  Checker quotient("quotient-norm-equals-seminorm", tol);
  Checker isometric("tau-isometric", tol);
  Checker fiber_iso("fiber-isometry", tol);
  for (const Section& u : pool) {
    const Section tu = tau(u, out.bundle);
    const EFunction nu = norm(u);
    const EFunction ntu = norm(tu);
    for (std::size_t w = 0; w < atoms; ++w) {
      quotient.expect_close(quotient_norm(u, w), seminorm_alpha(u, w), at_atom(u, w));
      isometric.expect_close(ntu[w].real(), nu[w].real(), at_atom(u, w));
      // H_w sends i_w(u) to u(w) in the original fiber.
      const QuotientFiber q{source, w};
      fiber_iso.expect_close(norm(q.image(u)), q.norm(u), at_atom(u, w));
    }
  }

  Checker linear("tau-linear", tol);
  Checker multiplicative("tau-multiplicative", tol);
  Checker ideal("kernel-is-ideal", tol);
  for (std::size_t t = 0; t < std::max<std::size_t>(samples, 1); ++t) {
    const Section& u = pool[rng.below(pool.size())];
    const Section& v = pool[rng.below(pool.size())];
    const Complex lambda = rng.complex_box();
    const double scale = 1.0 + std::max(norm(u).sup(), norm(v).sup());
    const Section lhs = tau(u + lambda * v, out.bundle);
    const Section rhs = tau(u, out.bundle) + lambda * tau(v, out.bundle);
    linear.expect_close(max_distance(lhs, rhs) / scale, 0.0, "random pair " + std::to_string(t));
    const Section prod = tau(u * v, out.bundle);
    const Section prod2 = tau(u, out.bundle) * tau(v, out.bundle);
    multiplicative.expect_close(max_distance(prod, prod2) / (scale * scale), 0.0, "random pair " + std::to_string(t));

    // Kill u and v at one atom: the results lie in I_w and so do their sum and
    // their products with anything.
    const std::size_t w = rng.below(atoms);
    const Idempotent off = Idempotent::atom(space, w).complement();
    const Section ku = off * u;
    const Section kv = off * v;
    ideal.expect(in_ideal(ku + kv, w, tol) && in_ideal(ku * v, w, tol) && in_ideal(v * ku, w, tol),
                 "ideal closure at atom '" + space->id(w) + "'");
  }

  Checker unit("unit-preserved", tol);
  const Section e = Section::unit(source);
  const Section te = tau(e, out.bundle);
  unit.expect(te == Section::unit(out.bundle), "tau(e) is not the unit section");
  for (std::size_t w = 0; w < atoms; ++w) {
    const QuotientFiber q{source, w};
    const FiberElement ew = q.image(e);
    unit.expect(ew == FiberElement::unit(out.bundle->fiber(w)), "i_w(e) is not the fiber unit at '" + space->id(w) + "'");
    for (const Section& u : sections) {
      unit.expect_close(norm(ew * q.image(u) - q.image(u)), 0.0, "e_w i_w(u) at '" + space->id(w) + "'");
    }
  }

  out.report.checks = {quotient.done(), isometric.done(), fiber_iso.done(), linear.done(),
                       multiplicative.done(), ideal.done(), unit.done()};
  return out;
}

// ------------------------------------------------------ Hilbert-Kaplansky

std::shared_ptr<const HKModule> HKModule::create(SpacePtr space, std::vector<std::size_t> dims) {
  if (!space) throw PreconditionError("HKModule: null measure space");
  if (dims.size() != space->size()) throw ShapeError("HKModule: one dimension per atom required");
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (dims[i] < 1 || dims[i] > FiberDescriptor::kMaxMatrix)
      throw ShapeError("HKModule: dimension at atom '" + space->id(i) + "' must be in [1, 8]");
  return std::shared_ptr<const HKModule>(new HKModule(std::move(space), std::move(dims)));
}

HKElement::HKElement(HKModulePtr m, std::vector<std::vector<Complex>> v) : module(std::move(m)), vectors(std::move(v)) {
  if (!module) throw PreconditionError("HKElement: null module");
  if (vectors.size() != module->dims().size()) throw ShapeError("HKElement: one vector per atom required");
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (vectors[i].size() != module->dim(i))
      throw ShapeError("HKElement: vector at atom '" + module->space()->id(i) + "' has the wrong dimension");
}

EFunction hk_inner(const HKElement& x, const HKElement& y) {
  if (x.module->dims() != y.module->dims()) throw MismatchError("hk_inner: elements of different modules");
  require_same_space(x.module->space(), y.module->space(), "hk_inner");
  std::vector<Complex> out(x.vectors.size());
  for (std::size_t w = 0; w < out.size(); ++w)
    for (std::size_t i = 0; i < x.vectors[w].size(); ++i) out[w] += x.vectors[w][i] * std::conj(y.vectors[w][i]);
  return EFunction(x.module->space(), std::move(out));
}

EFunction hk_norm(const HKElement& x) {
  return hk_inner(x, x).map([](Complex z) { return Complex(std::sqrt(std::max(0.0, z.real())), 0.0); });
}

namespace {

// One-dimensional Hilbert fibers have the scalar algebra as operators.
FiberDescriptor operator_fiber(std::size_t d) { return d == 1 ? FiberDescriptor::scalar() : FiberDescriptor::matrix(d); }

}  // namespace

BundlePtr hk_operator_algebra(const HKModule& m) {
  std::vector<FiberDescriptor> fibers;
  for (std::size_t d : m.dims()) fibers.push_back(operator_fiber(d));
  return Bundle::create(m.space(), std::move(fibers));
}

HKElement apply(const Section& op, const HKElement& x) {
  require_same_space(op.space(), x.module->space(), "apply");
  std::vector<std::vector<Complex>> out(x.vectors.size());
  for (std::size_t w = 0; w < out.size(); ++w) {
    const FiberElement& t = op[w];
    const std::size_t d = x.module->dim(w);
    if (t.descriptor() != operator_fiber(d))
      throw MismatchError("apply: operator fiber does not match module dimension at '" + op.space()->id(w) + "'");
    out[w].assign(d, Complex{});
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) out[w][r] += t[r * d + c] * x.vectors[w][c];
  }
  return HKElement(x.module, std::move(out));
}

OperatorNormCheck hk_operator_norm_check(const Section& op, SplitMix64& rng, std::size_t samples, double tol) {
  const SpacePtr& space = op.space();
  std::vector<Complex> sampled(op.size());
  std::normal_distribution<double> gauss;
  for (std::size_t w = 0; w < op.size(); ++w) {
    const FiberElement& t = op[w];
    if (t.descriptor().kind == FiberKind::function)
      throw MismatchError("hk_operator_norm_check: operator fibers must be scalar or matrix");
    const std::size_t d = t.descriptor().dim;
    auto apply_t = [&](const std::vector<Complex>& x, bool adj) {
      std::vector<Complex> y(d);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) y[r] += (adj ? std::conj(t[c * d + r]) : t[r * d + c]) * x[c];
      return y;
    };
    auto length = [](const std::vector<Complex>& v) {
      double s = 0.0;
      for (Complex z : v) s += std::norm(z);
      return std::sqrt(s);
    };

    double best = 0.0;
    std::vector<Complex> best_x(d, Complex{});
    best_x[0] = 1.0;
    for (std::size_t s = 0; s < samples; ++s) {
      std::vector<Complex> x(d);
      for (Complex& z : x) z = {gauss(rng), gauss(rng)};
      const double len = length(x);
      if (len == 0.0) continue;
      for (Complex& z : x) z /= len;
      const double value = length(apply_t(x, false));
      if (value > best) {
        best = value;
        best_x = x;
      }
    }
    // Power iteration on T*T; every iterate is a unit vector, so each value is
    // still a lower bound for the sup.
    std::vector<Complex> x = best_x;
    for (int it = 0; it < 2000; ++it) {
      std::vector<Complex> y = apply_t(apply_t(x, false), true);
      const double len = length(y);
      if (len == 0.0) break;
      for (Complex& z : y) z /= len;
      const double value = length(apply_t(y, false));
      x = std::move(y);
      const bool stalled = value <= best * (1.0 + 1e-15);
      best = std::max(best, value);
      if (stalled && it > 10) break;
    }
    sampled[w] = best;
  }

  OperatorNormCheck out{EFunction(space, std::move(sampled)), norm(op), 0.0, true};
  for (std::size_t w = 0; w < op.size(); ++w) {
    const double lower = out.sampled[w].real();
    const double upper = out.operator_norm[w].real();
    out.max_gap = std::max(out.max_gap, std::abs(upper - lower));
    if (lower > upper + 1e-12 || upper - lower > tol) out.agrees = false;
  }
  return out;
}

}  // namespace bkalg
