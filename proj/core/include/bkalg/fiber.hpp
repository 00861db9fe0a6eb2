#pragma once

// Concrete unital Banach algebras used as fibers X(w):
//   scalar       C with the modulus,
//   matrix(n)    n x n complex matrices with the operator 2-norm (1 <= n <= 8),
//   function(k)  C^k with pointwise product and the sup norm (1 <= k <= 64).

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bkalg/error.hpp"

namespace bkalg {

enum class FiberKind { scalar, matrix, function };

struct FiberDescriptor {
  FiberKind kind = FiberKind::scalar;
  std::size_t dim = 1;  // n for matrix, k for function, 1 for scalar

  static constexpr std::size_t kMaxMatrix = 8;
  static constexpr std::size_t kMaxFunction = 64;

  static FiberDescriptor scalar() { return {FiberKind::scalar, 1}; }
  static FiberDescriptor matrix(std::size_t n);
  static FiberDescriptor function(std::size_t k);

  /// Number of complex entries in an element.
  std::size_t data_size() const noexcept { return kind == FiberKind::matrix ? dim * dim : dim; }
  /// Complex dimension of the algebra. 1 exactly when the fiber is C.
  std::size_t algebra_dimension() const noexcept { return data_size(); }

  std::string to_string() const;

  friend bool operator==(const FiberDescriptor&, const FiberDescriptor&) = default;
};

std::string to_string(FiberKind kind);

class FiberElement {
 public:
  FiberElement(FiberDescriptor descriptor, std::vector<Complex> data);

  static FiberElement zero(FiberDescriptor d);
  static FiberElement unit(FiberDescriptor d);
  static FiberElement scalar(Complex z) { return FiberElement(FiberDescriptor::scalar(), {z}); }
  /// Matrix unit e_ij (0-based).
  static FiberElement matrix_unit(std::size_t n, std::size_t i, std::size_t j);

  const FiberDescriptor& descriptor() const noexcept { return descriptor_; }
  std::span<const Complex> data() const noexcept { return data_; }
  Complex operator[](std::size_t i) const { return data_[i]; }
  /// Matrix entry (row, col).
  Complex entry(std::size_t row, std::size_t col) const { return data_.at(row * descriptor_.dim + col); }

  bool is_zero() const noexcept;

  friend bool operator==(const FiberElement&, const FiberElement&) = default;

 private:
  FiberDescriptor descriptor_;
  std::vector<Complex> data_;
};

FiberElement operator+(const FiberElement& a, const FiberElement& b);
FiberElement operator-(const FiberElement& a, const FiberElement& b);
FiberElement operator*(const FiberElement& a, const FiberElement& b);
FiberElement operator*(Complex s, const FiberElement& a);

/// Modulus, sup norm or operator 2-norm depending on the kind.
double norm(const FiberElement& a);

/// Smallest singular value (min modulus for scalar/function kinds).
double smallest_singular_value(const FiberElement& a);

inline constexpr double kDefaultInverseTolerance = 1e-10;

/// Two-sided inverse b with ||ab - e|| <= tol and ||ba - e|| <= tol, or
/// nullopt (not invertible) when the smallest singular value is <= tol or the
/// computed inverse misses that residual.
std::optional<FiberElement> inverse(const FiberElement& a, double tol = kDefaultInverseTolerance);

/// Spectrum with multiplicity. Triangular matrices read off the diagonal;
/// otherwise the characteristic polynomial is solved by Durand-Kerner and
/// every eigenvalue is certified by sigma_min(lambda e - a) <= tol * max(1, ||a||).
/// Throws ConvergenceError (with the iterates) when that fails.
std::vector<Complex> spectrum(const FiberElement& a, double tol = kDefaultInverseTolerance);

}  // namespace bkalg
