#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bkalg::tools {

namespace {

class Property {
 public:
  Property(std::string name, double threshold) { result_.name = std::move(name), result_.threshold = threshold; }

  void record(double defect, const std::string& where = {}) {
    ++result_.trials;
    if (!(defect <= result_.threshold)) {
      if (result_.passed) result_.detail = where;
      result_.passed = false;
    }
    if (std::isnan(defect)) defect = std::numeric_limits<double>::infinity();
    result_.max_defect = std::max(result_.max_defect, defect);
  }
  void require(bool ok, const std::string& where) { record(ok ? 0.0 : std::numeric_limits<double>::infinity(), where); }

  PropertyResult done() { return std::move(result_); }

 private:
  PropertyResult result_;
};

// Largest positive part of lhs - rhs over atoms.
double excess(const EFunction& lhs, const EFunction& rhs) {
  double m = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) m = std::max(m, lhs[i].real() - rhs[i].real());
  return m;
}

std::vector<FiberDescriptor> distinct_fibers(const Bundle& b) {
  std::vector<FiberDescriptor> out;
  for (const auto& d : b.fibers())
    if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
  return out;
}

EFunction random_selection(const FiberSpectrumTable& table, SplitMix64& rng) {
  std::vector<Complex> v(table.per_atom.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = table.per_atom[i][rng.below(table.per_atom[i].size())];
  return EFunction(table.section.space(), std::move(v));
}

// Invertible x with a perturbation h satisfying 2||h|| << ||x^-1||^-1.
std::pair<Section, Section> admissible_pair(SplitMix64& rng, const BundlePtr& bundle) {
  Section x = random::invertible_section(rng, bundle);
  const Section x_inv = std::get<Section>(inverse(x));
  const EFunction limit = norm(x_inv).map([](Complex z) { return Complex(0.5 / z.real(), 0.0); });
  std::vector<FiberElement> h;
  for (std::size_t i = 0; i < bundle->size(); ++i)
    h.push_back(random::fiber_element_with_norm(rng, bundle->fiber(i), 0.999 * rng.uniform() * limit[i].real()));
  return {std::move(x), Section(bundle, std::move(h))};
}

}  // namespace

std::vector<PropertyResult> verify_bundle(const BundlePtr& bundle, const VerifyOptions& options) {
  SplitMix64 root(options.seed);
  const SpacePtr& space = bundle->space();
  const std::size_t n = std::max<std::size_t>(options.samples, 1);
  const double tol = options.tolerance;
  std::vector<PropertyResult> out;

  {
    SplitMix64 rng = root.split();
    Property p("efunction-algebra", 1e-12);
    for (std::size_t t = 0; t < n; ++t) {
      const EFunction a = random::efunction(rng, space);
      const EFunction b = random::efunction(rng, space);
      const EFunction c = random::efunction(rng, space);
      p.record(max_distance((a * b) * c, a * (b * c)), "associativity");
      p.record(max_distance(a * b, b * a), "commutativity");
      p.record(max_distance(a * (b + c), a * b + a * c), "distributivity");
      p.record(max_distance(abs(a * b), abs(a) * abs(b)), "modulus multiplicativity");
      const PartitionOfUnity part = random::partition(rng, space, space->size());
      std::vector<EFunction> fns;
      for (std::size_t k = 0; k < part.size(); ++k) fns.push_back(random::efunction(rng, space));
      const EFunction glued = mix(part, fns);
      for (std::size_t k = 0; k < part.size(); ++k) {
        const EFunction pk = part.part(k).as_function();
        p.require(pk * glued == pk * fns[k], "mix locality");
      }
    }
    out.push_back(p.done());
  }

  {
    SplitMix64 rng = root.split();
    Property axioms("fiber-norm-axioms", 1e-9);
    Property radius("spectral-radius-bound", 1e-8);
    Property involution("fiber-inverse-involution", 1e-8);
    for (const FiberDescriptor& d : distinct_fibers(*bundle)) {
      const std::string kind = d.to_string();
      axioms.record(std::abs(norm(FiberElement::unit(d)) - 1.0), kind + " unit norm");
      for (std::size_t t = 0; t < n; ++t) {
        const FiberElement a = random::fiber_element(rng, d);
        const FiberElement b = random::fiber_element(rng, d);
        const Complex lambda = rng.complex_box();
        axioms.record(-norm(a), kind + " positivity");
        axioms.record(std::abs(norm(lambda * a) - std::abs(lambda) * norm(a)), kind + " homogeneity");
        axioms.record(norm(a + b) - norm(a) - norm(b), kind + " triangle");
        axioms.record(norm(a * b) - norm(a) * norm(b), kind + " submultiplicativity");

        double rho = 0.0;
        for (Complex z : spectrum(a)) rho = std::max(rho, std::abs(z));
        radius.record(rho - norm(a), kind);

        const FiberElement x = FiberElement::unit(d) + random::fiber_element_with_norm(rng, d, 0.5 * rng.uniform());
        const auto xi = inverse(x);
        const auto xii = xi ? inverse(*xi) : std::nullopt;
        involution.record(xii ? norm(*xii - x) : std::numeric_limits<double>::infinity(), kind);
      }
    }
    out.push_back(axioms.done());
    out.push_back(radius.done());
    out.push_back(involution.done());
  }

  {
    SplitMix64 rng = root.split();
    Property p("bk-algebra-axioms", 1e-9);
    const Section e = Section::unit(bundle);
    p.record(max_distance(norm(e), EFunction::constant(space, 1.0)), "||e|| = 1");
    p.record(norm(Section::zero(bundle)).sup(), "||0|| = 0");
    for (std::size_t t = 0; t < n; ++t) {
      const Section u = random::section(rng, bundle);
      const Section v = random::section(rng, bundle);
      const EFunction a = random::efunction(rng, space);
      const EFunction nu = norm(u);
      p.record(excess(EFunction::constant(space, 0.0), nu), "positivity");
      p.record(max_distance(norm(a * u), abs(a) * nu), "E-homogeneity");
      p.record(excess(norm(u + v), nu + norm(v)), "triangle");
      p.record(excess(norm(u * v), nu * norm(v)), "submultiplicativity");
      p.record(max_distance((a * u) * v, a * (u * v)), "module associativity");
    }
    out.push_back(p.done());
  }

  {
    SplitMix64 rng = root.split();
    Property decomposition("d-decomposition", 1e-10);
    Property lifts("lifting-axioms", 0.0);
    Property mixing("section-mixing", 0.0);
    for (std::size_t t = 0; t < n; ++t) {
      const Section u = random::section(rng, bundle);
      const Section v = random::section(rng, bundle);
      std::vector<bool> mask(space->size());
      for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = rng.below(2) == 1;
      const EFunction pi = Idempotent(space, mask).as_function();
      const EFunction nu = norm(u);
      const EFunction l1 = pi * nu;
      const EFunction l2 = nu - l1;
      const auto [x1, x2] = d_decompose(u, l1, l2);
      decomposition.record(max_distance(x1 + x2, u), "sum");
      decomposition.record(max_distance(norm(x1), l1), "first norm");
      decomposition.record(max_distance(norm(x2), l2), "second norm");

      lifts.require(lifting(u * v) == lifting(u) * lifting(v), "multiplicative");
      lifts.require(lifting(u + v) == lifting(u) + lifting(v), "additive");
      lifts.require(norm(lifting(u)) == lifting(norm(u)), "norm compatible");
      lifts.require(lifting(pi * u) == lifting(pi) * lifting(u), "module compatible");

      const PartitionOfUnity part = random::partition(rng, space, space->size());
      std::vector<Section> xs;
      for (std::size_t k = 0; k < part.size(); ++k) xs.push_back(random::section(rng, bundle));
      const Section glued = mix(part, xs);
      for (std::size_t k = 0; k < part.size(); ++k)
        mixing.require(part.part(k) * glued == part.part(k) * xs[k], "locality");
    }
    out.push_back(decomposition.done());
    out.push_back(lifts.done());
    out.push_back(mixing.done());
  }

  {
    SplitMix64 rng = root.split();
    Property neumann("neumann-series", 0.0);
    Property perturb("perturbation-bound", 0.0);
    Property mixing("inverse-mixing", kMixInverseTolerance);
    Property continuity("inverse-continuity", 1e-9);
    const Section e = Section::unit(bundle);
    for (std::size_t t = 0; t < n; ++t) {
      const Section x = random::section_with_norm_below(rng, bundle, 0.9);
      const InverseCertificate cert = neumann_inverse(x, tol);
      const Section exact = std::get<Section>(inverse(e - x));
      neumann.record(cert.residual.sup() - tol, "residual");
      double tightest = 0.0;
      for (Complex z : cert.bound_slack->values()) tightest = std::min(tightest, z.real());
      neumann.record(kBoundSlackFloor - tightest, "tail bound slack");
      neumann.record(max_distance(cert.inverse, exact) - 2.0 * tol, "agreement with exact inverse");

      const auto [y, h] = admissible_pair(rng, bundle);
      const InverseCertificate pc = perturbed_inverse(y, h, tol);
      double worst = 0.0;
      for (Complex z : pc.bound_slack->values()) worst = std::min(worst, z.real());
      perturb.record(kBoundSlackFloor - worst, "perturbation bound slack");
      const Section direct = std::get<Section>(inverse(y + h));
      const double scale = std::max(1.0, norm(direct).sup());
      perturb.record(max_distance(pc.inverse, direct) / scale - tol, "agreement with exact inverse");

      const PartitionOfUnity part = random::partition(rng, space, space->size());
      std::vector<Section> xs;
      for (std::size_t k = 0; k < part.size(); ++k) xs.push_back(random::invertible_section(rng, bundle));
      std::vector<Section> inverses;
      for (const Section& s : xs) inverses.push_back(std::get<Section>(inverse(s)));
      try {
        mixing.record(max_distance(inverse_of_mix(part, xs), mix(part, inverses)), "mix then invert");
      } catch (const Error& err) {
        mixing.require(false, err.what());
      }

      // x_k = y + 2^-k d converges to y; once admissible the perturbation
      // bound is the quantitative witness of continuity.
      const Section y_inv = std::get<Section>(inverse(y));
      const Section d = random::section(rng, bundle);
      const EFunction ny = norm(y_inv);
      for (int k = 1; k <= 30; ++k) {
        const Section xk = y + std::ldexp(1.0, -k) * d;
        const EFunction gap = norm(xk - y);
        bool admissible = true;
        for (std::size_t i = 0; i < gap.size(); ++i) admissible = admissible && 2.0 * gap[i].real() * ny[i].real() < 1.0;
        if (!admissible) continue;
        const Section xk_inv = std::get<Section>(inverse(xk));
        continuity.record(excess(norm(xk_inv - y_inv), Complex(2.0) * (ny * ny * gap)), "bound along sequence");
      }
    }
    out.push_back(neumann.done());
    out.push_back(perturb.done());
    out.push_back(mixing.done());
    out.push_back(continuity.done());
  }

  {
    SplitMix64 rng = root.split();
    Property suite("spm-properties", 0.0);
    Property subset("spm-subset-of-sp", 0.0);
    Property agreement("spm-table-vs-definition", 0.0);
    Property scaling("spectrum-scaling", 0.0);
    const std::size_t sections = std::min<std::size_t>(n, 20);
    const std::size_t trials = std::max<std::size_t>(1, n / sections);
    for (std::size_t s = 0; s < sections; ++s) {
      const Section x = random::section(rng, bundle);
      const SpectrumPropertyReport report = spm_properties(x, trials, tol, rng, options.cap);
      suite.require(report.passed(), report.violations.empty() ? "" : report.violations.front().property);
    }
    for (std::size_t t = 0; t < n; ++t) {
      const Section x = random::section(rng, bundle);
      const FiberSpectrumTable table = spectrum_table(x, tol);
      EFunction a = random_selection(table, rng);
      if (rng.below(2) == 1) {
        std::vector<Complex> v(a.values().begin(), a.values().end());
        v[rng.below(v.size())] += 0.1;
        a = EFunction(space, std::move(v));
      }
      const bool in_spm = spm_contains(table, a, tol);
      subset.require(!in_spm || sp_contains(table, a, tol), "spm member outside sp");
      agreement.require(in_spm == spm_contains_by_invertibility(x, a, tol), "routes disagree");

      const EFunction c = norm(x).map([](Complex z) { return Complex(1.0 / (1.0 + z.real()), 0.0); });
      const FiberSpectrumTable scaled = spectrum_table(c * x, tol);
      // Shrinking by c <= 1 can only shrink distances, so compare with the
      // tolerance scaled the same way on the shrunken side.
      scaling.require(in_spm == spm_contains(scaled, c * a, tol), "scaling identity");
    }
    out.push_back(suite.done());
    out.push_back(subset.done());
    out.push_back(agreement.done());
    out.push_back(scaling.done());
  }

  {
    SplitMix64 rng = root.split();
    Property quotient("quotient-norm-equality", 1e-10);
    Property rebuild("reconstruction", 0.0);
    std::vector<Section> gens;
    for (std::size_t t = 0; t < std::min<std::size_t>(n, 50); ++t) gens.push_back(random::section(rng, bundle));
    for (const Section& u : gens)
      for (std::size_t w = 0; w < space->size(); ++w)
        quotient.record(std::abs(quotient_norm(u, w) - seminorm_alpha(u, w)), space->id(w));
    const Reconstruction r = reconstruct_bundle(gens, rng, std::min<std::size_t>(n, 50));
    for (const CheckEntry& c : r.report.checks) rebuild.require(c.passed, c.check + ": " + c.witness);
    out.push_back(quotient.done());
    out.push_back(rebuild.done());
  }

  {
    SplitMix64 rng = root.split();
    Property p("hk-operator-norm", 1e-6);
    std::vector<std::size_t> dims;
    for (const auto& d : bundle->fibers()) dims.push_back(d.kind == FiberKind::matrix ? d.dim : 1);
    const auto module = HKModule::create(space, dims);
    const BundlePtr ops = hk_operator_algebra(*module);
    for (int t = 0; t < 3; ++t) {
      const OperatorNormCheck c = hk_operator_norm_check(random::section(rng, ops), rng);
      p.record(c.agrees ? c.max_gap : std::numeric_limits<double>::infinity(), "sampled sup vs singular value");
    }
    out.push_back(p.done());
  }

  {
    SplitMix64 rng = root.split();
    Property p("gelfand-mazur-consistency", 0.0);
    const double gm_tol = 1e-10;
    for (const bool reverse : {false, true}) {
      const GMVerdict v = reverse ? gm_reverse_bound_check(bundle, n, gm_tol, rng)
                                  : gm_unit_support_check(bundle, n, gm_tol, rng);
      const std::string which = reverse ? "reverse-bound" : "unit-support";
      switch (v.outcome) {
        case GMOutcome::isomorphic:
          p.require(bundle->all_one_dimensional(), which + ": isomorphic on a multi-dimensional bundle");
          p.require(v.isometry_defect <= gm_tol && v.multiplicativity_defect <= gm_tol, which + ": defects");
          break;
        case GMOutcome::counterexample:
          p.require(reverse ? verify_zero_divisor_witness(v.witness.at(0), v.witness.at(1), gm_tol)
                            : verify_unit_support_witness(v.witness.at(0), gm_tol),
                    which + ": witness does not replay");
          break;
        case GMOutcome::inconclusive:
          p.require(!bundle->all_one_dimensional(), which + ": inconclusive on one-dimensional fibers");
          break;
      }
    }
    out.push_back(p.done());
  }

  return out;
}

}  // namespace bkalg::tools
