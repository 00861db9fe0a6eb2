#include "bkalg/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace bkalg {

namespace {

bool by_re_im(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

std::string describe(const EFunction& a) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) os << ", ";
    os << a[i].real() << (a[i].imag() < 0 ? "" : "+") << a[i].imag() << "i";
  }
  os << ")";
  return os.str();
}

EFunction random_selection(const std::vector<std::vector<Complex>>& distinct, const SpacePtr& space, SplitMix64& rng) {
  std::vector<Complex> v(distinct.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = distinct[i][rng.below(distinct[i].size())];
  return EFunction(space, std::move(v));
}

}  // namespace

std::vector<Complex> FiberSpectrumTable::distinct(std::size_t atom, double tol) const {
  std::vector<Complex> sorted = per_atom.at(atom);
  std::sort(sorted.begin(), sorted.end(), by_re_im);
  std::vector<Complex> out;
  for (Complex z : sorted) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](Complex w) { return std::abs(w - z) <= tol; });
    if (!seen) out.push_back(z);
  }
  return out;
}

FiberSpectrumTable spectrum_table(const Section& x, double tol) {
  FiberSpectrumTable table{x, {}};
  table.per_atom.reserve(x.size());
  for (const auto& v : x.values()) table.per_atom.push_back(spectrum(v, tol));
  return table;
}

EFunction spectral_distance(const FiberSpectrumTable& table, const EFunction& a) {
  require_same_space(table.section.space(), a.space(), "spectral_distance");
  std::vector<Complex> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (Complex lambda : table.per_atom[i]) best = std::min(best, std::abs(a[i] - lambda));
    d[i] = best;
  }
  return EFunction(a.space(), std::move(d));
}

bool spm_contains(const FiberSpectrumTable& table, const EFunction& a, double tol) {
  const EFunction d = spectral_distance(table, a);
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!(d[i].real() <= tol)) return false;
  return true;
}

bool sp_contains(const FiberSpectrumTable& table, const EFunction& a, double tol) {
  const EFunction d = spectral_distance(table, a);
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i].real() <= tol) return true;
  return false;
}

bool spm_contains(const Section& x, const EFunction& a, double tol) { return spm_contains(spectrum_table(x), a, tol); }
bool sp_contains(const Section& x, const EFunction& a, double tol) { return sp_contains(spectrum_table(x), a, tol); }

bool spm_contains_by_invertibility(const Section& x, const EFunction& a, double tol) {
  require_same_space(x.space(), a.space(), "spm_contains_by_invertibility");
  for (std::size_t i = 0; i < x.size(); ++i) {
    const FiberElement shifted = a[i] * FiberElement::unit(x[i].descriptor()) - x[i];
    if (!(smallest_singular_value(shifted) <= tol)) return false;
  }
  return true;
}

bool contains(const FiberSpectrumTable& table, const SpectrumSelection& s, double tol) {
  return s.kind == SpectrumKind::spm ? spm_contains(table, s.values, tol) : sp_contains(table, s.values, tol);
}

SpectrumEnumeration spm_enumerate(const FiberSpectrumTable& table, std::size_t cap, double tol) {
  if (cap < 1) throw PreconditionError("spm_enumerate: cap must be at least 1");
  const std::size_t n = table.per_atom.size();
  std::vector<std::vector<Complex>> choices(n);
  SpectrumEnumeration out;
  out.total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    choices[i] = table.distinct(i, tol);
    const std::size_t c = choices[i].size();
    if (c == 0) {
      out.total = 0;
      return out;
    }
    out.total = out.total > std::numeric_limits<std::size_t>::max() / c ? std::numeric_limits<std::size_t>::max()
                                                                          : out.total * c;
  }

  std::vector<std::size_t> digit(n, 0);
  const SpacePtr& space = table.section.space();
  while (out.members.size() < cap) {
    std::vector<Complex> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = choices[i][digit[i]];
    out.members.emplace_back(space, std::move(v));
    // Mixed-radix increment, last atom fastest.
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++digit[i] < choices[i].size()) break;
      digit[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
  out.truncated = out.members.size() < out.total;
  return out;
}

EFunction project_to_spm(const FiberSpectrumTable& table, const EFunction& a) {
  require_same_space(table.section.space(), a.space(), "project_to_spm");
  std::vector<Complex> v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (Complex lambda : table.per_atom[i]) {
      const double d = std::abs(a[i] - lambda);
      if (d < best) {
        best = d;
        v[i] = lambda;
      }
    }
  }
  return EFunction(a.space(), std::move(v));
}

SpectrumPropertyReport spm_properties(const Section& x, std::size_t samples, double tol, SplitMix64& rng,
                                      std::size_t cap) {
  SpectrumPropertyReport report;
  const FiberSpectrumTable table = spectrum_table(x, tol);
  const SpectrumEnumeration members = spm_enumerate(table, cap, tol);
  report.members = members.members.size();
  report.truncated = members.truncated;
  report.nonempty = !members.members.empty();
  if (!report.nonempty) report.violations.push_back({"nonempty", "spm(x) enumerated no members", std::nullopt});

  const EFunction nx = norm(x);
  report.bounded = true;
  for (const EFunction& a : members.members) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::abs(a[i]) > nx[i].real() + tol) {
        report.bounded = false;
        report.violations.push_back({"bounded", "|a| exceeds ||x|| at atom '" + x.space()->id(i) + "'", a});
        break;
      }
    }
  }

  std::vector<std::vector<Complex>> distinct(table.per_atom.size());
  for (std::size_t i = 0; i < distinct.size(); ++i) distinct[i] = table.distinct(i, tol);
  const SpacePtr& space = x.space();

  // Cyclicity: gluing members along a partition stays in spm(x), by the table
  // and by the definition.
  report.cyclic = true;
  if (report.nonempty) {
    for (std::size_t t = 0; t < samples; ++t) {
      const PartitionOfUnity p = random::partition(rng, space, space->size() + 1);
      std::vector<EFunction> family;
      for (std::size_t k = 0; k < p.size(); ++k) family.push_back(random_selection(distinct, space, rng));
      const EFunction glued = mix(p, family);
      ++report.cyclic_trials;
      if (!spm_contains(table, glued, tol) || !spm_contains_by_invertibility(x, glued, tol)) {
        report.cyclic = false;
        report.violations.push_back({"cyclic", "mixture " + describe(glued) + " left spm(x)", glued});
      }
    }
  }

  // (o)-closedness: a_n = a + 2^-n d converges atomwise to a member a; the
  // nearest selections of a_n stay in spm(x) and so does the limit.
  report.closed = true;
  if (report.nonempty) {
    constexpr int kSteps = 60;
    for (std::size_t t = 0; t < samples; ++t) {
      const EFunction a = random_selection(distinct, space, rng);
      const EFunction direction = random::efunction(rng, space);
      ++report.closed_trials;
      bool ok = true;
      EFunction last = a;
      for (int n = 1; n <= kSteps && ok; ++n) {
        last = a + std::ldexp(1.0, -n) * direction;
        ok = spm_contains(table, project_to_spm(table, last), tol);
      }
      ok = ok && max_distance(last, a) <= tol && spm_contains(table, last, tol);
      if (!ok) {
        report.closed = false;
        report.violations.push_back({"closed", "limit of members near " + describe(a) + " left spm(x)", a});
      }
    }
  }
  return report;
}

}  // namespace bkalg
