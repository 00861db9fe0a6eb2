#pragma once

// Dense kernels for the small (n <= 8) complex matrices that appear as
// fibers. Matrices are row-major spans of length n*n.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bkalg/error.hpp"

namespace bkalg::linalg {

using Matrix = std::vector<Complex>;

Matrix identity(std::size_t n);
Matrix multiply(std::span<const Complex> a, std::span<const Complex> b, std::size_t n);
Matrix adjoint(std::span<const Complex> a, std::size_t n);

/// Eigenvalues of a Hermitian matrix in ascending order. Closed form for
/// n <= 2, cyclic Jacobi otherwise (off-diagonal threshold 1e-13 relative to
/// the Frobenius norm, at most 100 sweeps).
std::vector<double> hermitian_eigenvalues(std::span<const Complex> h, std::size_t n);

/// Operator 2-norm: sqrt of the largest eigenvalue of A*A.
double largest_singular_value(std::span<const Complex> a, std::size_t n);

/// Gauss-Jordan inverse with partial pivoting; nullopt on an exactly zero
/// pivot or a non-finite result.
std::optional<Matrix> inverse(std::span<const Complex> a, std::size_t n);

/// 1 / ||A^-1||, or 0 when A is exactly singular. More accurate for tiny
/// singular values than the square root of the smallest eigenvalue of A*A.
double smallest_singular_value(std::span<const Complex> a, std::size_t n);

Complex determinant(std::span<const Complex> a, std::size_t n);

bool is_triangular(std::span<const Complex> a, std::size_t n);

/// Characteristic polynomial det(zI - A) by Faddeev-LeVerrier.
/// Coefficients in ascending degree; the leading one is 1.
std::vector<Complex> characteristic_polynomial(std::span<const Complex> a, std::size_t n);

struct RootOptions {
  double radius = 1.0;       // initial guesses lie on this circle
  double tolerance = 1e-11;  // on the Weierstrass correction
  int max_iterations = 500;
};

/// All roots of a monic polynomial by Durand-Kerner iteration. A root also
/// counts as converged once its residual reaches the rounding floor of the
/// polynomial evaluation (multiple roots stall above the step tolerance).
/// Throws ConvergenceError carrying the current iterates at the cap.
std::vector<Complex> polynomial_roots(std::span<const Complex> monic, const RootOptions& options);

}  // namespace bkalg::linalg
