#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bkalg {

using Complex = std::complex<double>;

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different measure spaces or bundles.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// Data does not have the shape its descriptor requires.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An operation's precondition failed. `atom` names the offending atom when
/// the failure is local to one.
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& what, std::optional<std::size_t> atom = std::nullopt)
      : Error(what), atom_(atom) {}

  std::optional<std::size_t> atom() const noexcept { return atom_; }

 private:
  std::optional<std::size_t> atom_;
};

/// An iterative solver hit its iteration cap. Carries whatever it had.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<Complex> partial)
      : Error(what), partial_(std::move(partial)) {}

  const std::vector<Complex>& partial() const noexcept { return partial_; }

 private:
  std::vector<Complex> partial_;
};

/// A property the library asserts internally did not hold.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace bkalg
