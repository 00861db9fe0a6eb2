#include "bkalg/fiber.hpp"

#include <algorithm>
#include <cmath>

#include "bkalg/linalg.hpp"

namespace bkalg {

FiberDescriptor FiberDescriptor::matrix(std::size_t n) {
  if (n < 1 || n > kMaxMatrix) throw ShapeError("matrix fiber dimension must be in [1, 8], got " + std::to_string(n));
  return {FiberKind::matrix, n};
}

FiberDescriptor FiberDescriptor::function(std::size_t k) {
  if (k < 1 || k > kMaxFunction)
    throw ShapeError("function fiber point count must be in [1, 64], got " + std::to_string(k));
  return {FiberKind::function, k};
}

std::string to_string(FiberKind kind) {
  switch (kind) {
    case FiberKind::scalar: return "scalar";
    case FiberKind::matrix: return "matrix";
    case FiberKind::function: return "function";
  }
  return "?";
}

std::string FiberDescriptor::to_string() const {
  switch (kind) {
    case FiberKind::scalar: return "scalar";
    case FiberKind::matrix: return "matrix(" + std::to_string(dim) + ")";
    case FiberKind::function: return "function(" + std::to_string(dim) + ")";
  }
  return "?";
}

FiberElement::FiberElement(FiberDescriptor descriptor, std::vector<Complex> data)
    : descriptor_(descriptor), data_(std::move(data)) {
  if (descriptor_.kind == FiberKind::scalar && descriptor_.dim != 1) throw ShapeError("scalar fiber must have dim 1");
  if (descriptor_.kind == FiberKind::matrix) (void)FiberDescriptor::matrix(descriptor_.dim);
  if (descriptor_.kind == FiberKind::function) (void)FiberDescriptor::function(descriptor_.dim);
  if (data_.size() != descriptor_.data_size())
    throw ShapeError(descriptor_.to_string() + " element needs " + std::to_string(descriptor_.data_size()) +
                     " entries, got " + std::to_string(data_.size()));
}

FiberElement FiberElement::zero(FiberDescriptor d) { return FiberElement(d, std::vector<Complex>(d.data_size())); }

FiberElement FiberElement::unit(FiberDescriptor d) {
  if (d.kind == FiberKind::matrix) return FiberElement(d, linalg::identity(d.dim));
  return FiberElement(d, std::vector<Complex>(d.data_size(), 1.0));
}

FiberElement FiberElement::matrix_unit(std::size_t n, std::size_t i, std::size_t j) {
  const auto d = FiberDescriptor::matrix(n);
  std::vector<Complex> data(n * n);
  data.at(i * n + j) = 1.0;
  return FiberElement(d, std::move(data));
}

bool FiberElement::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](Complex z) { return z == Complex{}; });
}

namespace {

void require_same(const FiberElement& a, const FiberElement& b, const char* op) {
  if (a.descriptor() != b.descriptor())
    throw MismatchError(std::string("fiber ") + op + ": " + a.descriptor().to_string() + " vs " +
                        b.descriptor().to_string());
}

}  // namespace

FiberElement operator+(const FiberElement& a, const FiberElement& b) {
  require_same(a, b, "add");
  std::vector<Complex> out(a.data().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
  return FiberElement(a.descriptor(), std::move(out));
}

FiberElement operator-(const FiberElement& a, const FiberElement& b) {
  require_same(a, b, "sub");
  std::vector<Complex> out(a.data().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
  return FiberElement(a.descriptor(), std::move(out));
}

FiberElement operator*(const FiberElement& a, const FiberElement& b) {
  require_same(a, b, "mul");
  if (a.descriptor().kind == FiberKind::matrix)
    return FiberElement(a.descriptor(), linalg::multiply(a.data(), b.data(), a.descriptor().dim));
  std::vector<Complex> out(a.data().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
  return FiberElement(a.descriptor(), std::move(out));
}

FiberElement operator*(Complex s, const FiberElement& a) {
  std::vector<Complex> out(a.data().begin(), a.data().end());
  for (Complex& z : out) z *= s;
  return FiberElement(a.descriptor(), std::move(out));
}

double norm(const FiberElement& a) {
  if (a.descriptor().kind == FiberKind::matrix) return linalg::largest_singular_value(a.data(), a.descriptor().dim);
  double m = 0.0;
  for (Complex z : a.data()) m = std::max(m, std::abs(z));
  return m;
}

double smallest_singular_value(const FiberElement& a) {
  if (a.descriptor().kind == FiberKind::matrix) return linalg::smallest_singular_value(a.data(), a.descriptor().dim);
  double m = std::abs(a[0]);
  for (Complex z : a.data()) m = std::min(m, std::abs(z));
  return m;
}

std::optional<FiberElement> inverse(const FiberElement& a, double tol) {
  if (smallest_singular_value(a) <= tol) return std::nullopt;
  const FiberDescriptor& d = a.descriptor();
  std::optional<FiberElement> b;
  if (d.kind == FiberKind::matrix) {
    auto inv = linalg::inverse(a.data(), d.dim);
    if (!inv) return std::nullopt;
    b.emplace(d, std::move(*inv));
  } else {
    std::vector<Complex> out(a.data().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 1.0 / a[i];
    b.emplace(d, std::move(out));
  }
  const FiberElement e = FiberElement::unit(d);
  if (norm(a * *b - e) > tol || norm(*b * a - e) > tol) return std::nullopt;
  return b;
}

std::vector<Complex> spectrum(const FiberElement& a, double tol) {
  const FiberDescriptor& d = a.descriptor();
  if (d.kind != FiberKind::matrix) return {a.data().begin(), a.data().end()};

  const std::size_t n = d.dim;
  std::vector<Complex> eig;
  if (linalg::is_triangular(a.data(), n)) {
    for (std::size_t i = 0; i < n; ++i) eig.push_back(a.entry(i, i));
    return eig;
  }

  // Work on a / ||a|| so the polynomial coefficients stay O(1).
  const double scale = norm(a);
  std::vector<Complex> scaled(a.data().begin(), a.data().end());
  for (Complex& z : scaled) z /= scale;
  const auto poly = linalg::characteristic_polynomial(scaled, n);
  linalg::RootOptions options;
  options.radius = 2.0;  // ||scaled|| + 1
  std::vector<Complex> roots = linalg::polynomial_roots(poly, options);
  for (Complex& z : roots) {
    z *= scale;
    // The spectral radius never exceeds the norm; trim rounding overshoot.
    const double r = std::abs(z);
    if (r > scale) z *= scale / r;
  }

  const double certificate = tol * std::max(1.0, scale);
  for (const Complex& lambda : roots) {
    std::vector<Complex> shifted(a.data().begin(), a.data().end());
    for (auto& z : shifted) z = -z;
    for (std::size_t i = 0; i < n; ++i) shifted[i * n + i] += lambda;
    if (linalg::smallest_singular_value(shifted, n) > certificate)
      throw ConvergenceError("eigenvalue " + std::to_string(lambda.real()) + "+" + std::to_string(lambda.imag()) +
                                 "i failed its singular-value certificate",
                             roots);
  }
  return roots;
}

}  // namespace bkalg
