#include "bkalg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bkalg::linalg {

namespace {

constexpr double kJacobiThreshold = 1e-13;
constexpr int kJacobiSweeps = 100;

}  // namespace

Matrix identity(std::size_t n) {
  Matrix m(n * n, Complex{});
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1.0;
  return m;
}

Matrix multiply(std::span<const Complex> a, std::span<const Complex> b, std::size_t n) {
  Matrix c(n * n, Complex{});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a[i * n + k];
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
    }
  }
  return c;
}

Matrix adjoint(std::span<const Complex> a, std::size_t n) {
  Matrix t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[j * n + i] = std::conj(a[i * n + j]);
  return t;
}

std::vector<double> hermitian_eigenvalues(std::span<const Complex> h_in, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {h_in[0].real()};
  if (n == 2) {
    const double a = h_in[0].real();
    const double d = h_in[3].real();
    const double mid = 0.5 * (a + d);
    const double rad = std::hypot(0.5 * (a - d), std::abs(h_in[1]));
    return {mid - rad, mid + rad};
  }

  Matrix h(h_in.begin(), h_in.end());
  auto at = [&](std::size_t i, std::size_t j) -> Complex& { return h[i * n + j]; };

  for (int sweep = 0; sweep < kJacobiSweeps; ++sweep) {
    double off = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double m2 = std::norm(at(i, j));
        total += m2;
        if (i != j) off += m2;
      }
    }
    if (total == 0.0 || std::sqrt(off) <= kJacobiThreshold * std::sqrt(total)) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = std::abs(at(p, q));
        if (apq == 0.0) continue;

        // Unitary diagonal similarity making h(p,q) real and positive.
        const Complex w = std::conj(at(p, q)) / apq;
        for (std::size_t k = 0; k < n; ++k) at(k, q) *= w;
        for (std::size_t k = 0; k < n; ++k) at(q, k) *= std::conj(w);
        at(p, q) = apq;
        at(q, p) = apq;

        const double app = at(p, p).real();
        const double aqq = at(q, q).real();
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex hkp = at(k, p);
          const Complex hkq = at(k, q);
          at(k, p) = c * hkp - s * hkq;
          at(k, q) = s * hkp + c * hkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex hpk = at(p, k);
          const Complex hqk = at(q, k);
          at(p, k) = c * hpk - s * hqk;
          at(q, k) = s * hpk + c * hqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

double largest_singular_value(std::span<const Complex> a, std::size_t n) {
  if (n == 1) return std::abs(a[0]);
  const Matrix ata = multiply(adjoint(a, n), a, n);
  const std::vector<double> eig = hermitian_eigenvalues(ata, n);
  return std::sqrt(std::max(0.0, eig.back()));
}

std::optional<Matrix> inverse(std::span<const Complex> a, std::size_t n) {
  Matrix m(a.begin(), a.end());
  Matrix inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::abs(m[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double v = std::abs(m[r * n + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return std::nullopt;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m[piv * n + j], m[col * n + j]);
        std::swap(inv[piv * n + j], inv[col * n + j]);
      }
    }
    const Complex d = 1.0 / m[col * n + col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col * n + j] *= d;
      inv[col * n + j] *= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = m[r * n + col];
      if (f == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) {
        m[r * n + j] -= f * m[col * n + j];
        inv[r * n + j] -= f * inv[col * n + j];
      }
    }
  }
  for (const Complex& z : inv)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
  return inv;
}

double smallest_singular_value(std::span<const Complex> a, std::size_t n) {
  if (n == 1) return std::abs(a[0]);
  const auto inv = inverse(a, n);
  if (!inv) return 0.0;
  const double r = largest_singular_value(*inv, n);
  if (!(r > 0.0) || !std::isfinite(r)) return 0.0;
  return 1.0 / r;
}

Complex determinant(std::span<const Complex> a, std::size_t n) {
  Matrix m(a.begin(), a.end());
  Complex det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::abs(m[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double v = std::abs(m[r * n + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[piv * n + j], m[col * n + j]);
      det = -det;
    }
    const Complex p = m[col * n + col];
    det *= p;
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = m[r * n + col] / p;
      for (std::size_t j = col; j < n; ++j) m[r * n + j] -= f * m[col * n + j];
    }
  }
  return det;
}

bool is_triangular(std::span<const Complex> a, std::size_t n) {
  bool upper = true;
  bool lower = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i * n + j] == Complex{}) continue;
      if (i > j) upper = false;
      if (i < j) lower = false;
    }
  }
  return upper || lower;
}

std::vector<Complex> characteristic_polynomial(std::span<const Complex> a, std::size_t n) {
  std::vector<Complex> c(n + 1, Complex{});
  c[n] = 1.0;
  Matrix am(n * n, Complex{});  // A * M_{k-1}, with M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix mk = am;
    for (std::size_t i = 0; i < n; ++i) mk[i * n + i] += c[n - k + 1];
    am = multiply(a, mk, n);
    Complex trace{};
    for (std::size_t i = 0; i < n; ++i) trace += am[i * n + i];
    c[n - k] = -trace / static_cast<double>(k);
  }
  return c;
}

std::vector<Complex> polynomial_roots(std::span<const Complex> monic, const RootOptions& options) {
  if (monic.empty()) throw ShapeError("polynomial_roots: empty coefficient list");
  const std::size_t deg = monic.size() - 1;
  if (deg == 0) return {};
  if (deg == 1) return {-monic[0] / monic[1]};

  auto eval = [&](Complex z) {
    Complex acc = monic[deg];
    for (std::size_t k = deg; k-- > 0;) acc = acc * z + monic[k];
    return acc;
  };
  auto eval_floor = [&](Complex z) {
    const double r = std::abs(z);
    double acc = std::abs(monic[deg]);
    for (std::size_t k = deg; k-- > 0;) acc = acc * r + std::abs(monic[k]);
    return 8.0 * static_cast<double>(deg) * std::numeric_limits<double>::epsilon() * acc;
  };

  std::vector<Complex> z(deg);
  for (std::size_t i = 0; i < deg; ++i) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(deg) + 0.4;
    z[i] = std::polar(options.radius, angle);
  }

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    bool converged = true;
    for (std::size_t i = 0; i < deg; ++i) {
      const Complex value = eval(z[i]);
      Complex denom = 1.0;
      for (std::size_t j = 0; j < deg; ++j)
        if (j != i) denom *= (z[i] - z[j]);
      if (denom == Complex{}) denom = Complex{1e-14, 1e-14};
      const Complex step = value / denom;
      z[i] -= step;
      const bool small_step = std::abs(step) <= options.tolerance * std::max(1.0, std::abs(z[i]));
      const bool at_floor = std::abs(value) <= eval_floor(z[i]);
      if (!small_step && !at_floor) converged = false;
    }
    if (converged) return z;
  }
  throw ConvergenceError("Durand-Kerner iteration did not converge", z);
}

}  // namespace bkalg::linalg
