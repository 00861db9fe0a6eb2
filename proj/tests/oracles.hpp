#pragma once

// Reference computations that share no code with the library: Eigen for the
// linear algebra, exhaustive search for the combinatorial quantities.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bkalg/bkalg.hpp"

namespace oracle {

using bkalg::Complex;

inline Eigen::MatrixXcd to_eigen(const bkalg::FiberElement& a) {
  const auto& d = a.descriptor();
  if (d.kind == bkalg::FiberKind::matrix) {
    Eigen::MatrixXcd m(d.dim, d.dim);
    for (std::size_t r = 0; r < d.dim; ++r)
      for (std::size_t c = 0; c < d.dim; ++c) m(r, c) = a[r * d.dim + c];
    return m;
  }
  // Scalars and functions act as diagonal matrices; the sup norm of a
  // function is then the operator norm.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d.dim, d.dim);
  for (std::size_t i = 0; i < d.dim; ++i) m(i, i) = a[i];
  return m;
}

inline double norm(const bkalg::FiberElement& a) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
  return svd.singularValues()(0);
}

inline std::vector<Complex> eigenvalues(const bkalg::FiberElement& a) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(a), false);
  std::vector<Complex> out(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  return out;
}

inline Eigen::MatrixXcd inverse(const bkalg::FiberElement& a) { return to_eigen(a).fullPivLu().inverse(); }

inline double distance(const bkalg::FiberElement& a, const Eigen::MatrixXcd& m) {
  return (to_eigen(a) - m).cwiseAbs().maxCoeff();
}

/// inf of sup_{w' in B} ||u||(w') over subsets B of atoms such that
/// u - chi_B u vanishes at `atom`, found by listing every B.
inline double quotient_norm(const bkalg::Section& u, std::size_t atom) {
  const std::size_t n = u.size();
  std::vector<double> nu(n);
  for (std::size_t i = 0; i < n; ++i) nu[i] = oracle::norm(u[i]);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    const bool in_b = (mask >> atom) & 1;
    if (!in_b && nu[atom] != 0.0) continue;  // u - chi_B u must lie in the ideal at `atom`
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1) sup = std::max(sup, nu[i]);
    best = std::min(best, sup);
  }
  return best;
}

/// Every selection of one value per atom from `sets`, last atom fastest.
inline std::vector<std::vector<Complex>> cartesian(const std::vector<std::vector<Complex>>& sets) {
  std::vector<std::vector<Complex>> out{{}};
  for (const auto& s : sets) {
    std::vector<std::vector<Complex>> next;
    for (const auto& prefix : out)
      for (Complex z : s) {
        auto p = prefix;
        p.push_back(z);
        next.push_back(std::move(p));
      }
    out = std::move(next);
  }
  return out;
}

/// Distinct values of a multiset, merging points closer than tol.
inline std::vector<Complex> distinct(std::vector<Complex> v, double tol) {
  std::vector<Complex> out;
  for (Complex z : v)
    if (std::none_of(out.begin(), out.end(), [&](Complex w) { return std::abs(w - z) <= tol; })) out.push_back(z);
  return out;
}

/// Smallest singular value of lambda I - A, the definition-level test for
/// lambda in the spectrum.
inline double resolvent_gap(const bkalg::FiberElement& a, Complex lambda) {
  Eigen::MatrixXcd m = to_eigen(a);
  m = lambda * Eigen::MatrixXcd::Identity(m.rows(), m.cols()) - m;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace oracle
