#include "bkalg/inversion.hpp"

#include <algorithm>
#include <cmath>

namespace bkalg {

namespace {

std::size_t neumann_order(double r, double tol) {
  if (r == 0.0) return 0;
  const auto tail = [&](std::size_t n) { return std::pow(r, static_cast<double>(n + 1)) / (1.0 - r); };
  const double estimate = std::log(tol * (1.0 - r)) / std::log(r) - 1.0;
  if (!(estimate < static_cast<double>(kMaxNeumannOrder))) return kMaxNeumannOrder + 1;
  std::size_t n = estimate > 0.0 ? static_cast<std::size_t>(std::ceil(estimate)) : 0;
  while (n > 0 && tail(n - 1) <= tol) --n;
  while (tail(n) > tol && n <= kMaxNeumannOrder) ++n;
  return n;
}

bool all_zero(const Section& s) {
  return std::all_of(s.values().begin(), s.values().end(), [](const FiberElement& x) { return x.is_zero(); });
}

}  // namespace

InverseCertificate neumann_inverse(const Section& x, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("neumann_inverse: tolerance must be positive");
  const EFunction nx = norm(x);
  const auto& space = *x.space();
  std::size_t order = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = nx[i].real();
    if (!(r < 1.0))
      throw PreconditionError("neumann_inverse: ||x|| = " + std::to_string(r) + " is not < 1 at atom '" +
                                  space.id(i) + "'",
                              i);
    const std::size_t n = neumann_order(r, tol);
    if (n > kMaxNeumannOrder)
      throw PreconditionError("neumann_inverse: truncation order exceeds 10^6 at atom '" + space.id(i) + "'", i);
    order = std::max(order, n);
  }

  const Section e = Section::unit(x.bundle());
  Section sum = e;
  Section power = e;
  for (std::size_t n = 1; n <= order; ++n) {
    power = power * x;
    if (all_zero(power)) break;
    sum = sum + power;
  }

  const EFunction residual = norm((e - x) * sum - e);
  const EFunction achieved = norm(sum - e);
  std::vector<Complex> slack(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = nx[i].real();
    slack[i] = r / (1.0 - r) - achieved[i].real();
  }
  return {sum, residual, order, EFunction(x.space(), std::move(slack))};
}

std::variant<Section, NotInvertible> inverse(const Section& x, double tol) {
  std::vector<FiberElement> out;
  NotInvertible failure;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto inv = inverse(x[i], tol);
    if (inv)
      out.push_back(std::move(*inv));
    else
      failure.atoms.push_back(i);
  }
  if (!failure.atoms.empty()) return failure;
  return Section(x.bundle(), std::move(out));
}

bool is_invertible(const Section& x, double tol) { return std::holds_alternative<Section>(inverse(x, tol)); }

InverseCertificate perturbed_inverse(const Section& x, const Section& h, double tol) {
  if (!same_bundle(x.bundle(), h.bundle())) throw MismatchError("perturbed_inverse: x and h live on different bundles");
  const auto& space = *x.space();
  auto inv = inverse(x);
  if (auto* bad = std::get_if<NotInvertible>(&inv)) {
    const std::size_t i = bad->atoms.front();
    throw PreconditionError("perturbed_inverse: x is not invertible at atom '" + space.id(i) + "'", i);
  }
  const Section& x_inv = std::get<Section>(inv);
  const EFunction n_inv = norm(x_inv);
  const EFunction nh = norm(h);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(2.0 * nh[i].real() * n_inv[i].real() < 1.0))
      throw PreconditionError("perturbed_inverse: 2||h|| is not < ||x^-1||^-1 at atom '" + space.id(i) + "'", i);
  }

  // The residual of the product is at most ||x|| ||x^-1|| times the series
  // residual, so tighten the series tolerance by the worst condition number.
  const EFunction nx = norm(x);
  double condition = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) condition = std::max(condition, nx[i].real() * n_inv[i].real());
  InverseCertificate series = neumann_inverse(Complex(-1.0) * (x_inv * h), tol / condition);
  Section result = series.inverse * x_inv;

  const Section e = Section::unit(x.bundle());
  const EFunction residual = norm((x + h) * result - e);
  const EFunction achieved = norm(result - x_inv);
  std::vector<Complex> slack(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    slack[i] = 2.0 * n_inv[i].real() * n_inv[i].real() * nh[i].real() - achieved[i].real();
  return {std::move(result), residual, series.truncation_order, EFunction(x.space(), std::move(slack))};
}

Section inverse_of_mix(const PartitionOfUnity& p, std::span<const Section> xs, double tol) {
  std::vector<Section> inverses;
  inverses.reserve(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    auto inv = inverse(xs[k], tol);
    if (auto* bad = std::get_if<NotInvertible>(&inv)) {
      const std::size_t i = bad->atoms.front();
      throw PreconditionError("inverse_of_mix: member " + std::to_string(k) + " is not invertible at atom '" +
                                  xs[k].space()->id(i) + "'",
                              i);
    }
    inverses.push_back(std::get<Section>(std::move(inv)));
  }
  const Section mixed = mix(p, xs);
  auto direct = inverse(mixed, tol);
  if (std::holds_alternative<NotInvertible>(direct))
    throw InvariantViolation("inverse_of_mix: mixture of invertible elements is not invertible");
  Section result = std::get<Section>(std::move(direct));
  const Section glued = mix(p, inverses);
  const double gap = max_distance(result, glued);
  if (gap > kMixInverseTolerance)
    throw InvariantViolation("inverse_of_mix: mix-then-invert differs from invert-then-mix by " + std::to_string(gap));
  return result;
}

}  // namespace bkalg
