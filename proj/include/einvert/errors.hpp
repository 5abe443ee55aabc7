#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace einvert {

/// Base class for all library errors. Everything thrown on a contract
/// violation (bad shapes, bad numeric input, malformed files) derives from
/// this so callers can catch one type at the boundary.
class EinvertError : public std::runtime_error {
public:
  explicit EinvertError(const std::string& what) : std::runtime_error(what) {}
};

/// Incompatible shapes fed to a binary operation (Einstein product,
/// linear combination, flatten/unflatten count mismatch, ...). The message
/// names the first offending mode.
class ShapeMismatchError : public EinvertError {
public:
  explicit ShapeMismatchError(const std::string& what) : EinvertError(what) {}
};

/// Invalid value-level input: non-finite entries, empty signature, bad
/// tolerance, nonpositive spectral diagonal, non-unitary factor, ...
class InvalidInputError : public EinvertError {
public:
  explicit InvalidInputError(const std::string& what) : EinvertError(what) {}
};

/// A matrix handed to the Hermitian eigensolver was not Hermitian within
/// the validation tolerance.
class NotHermitianError : public EinvertError {
public:
  NotHermitianError(const std::string& what, double asymmetry)
      : EinvertError(what), asymmetry_(asymmetry) {}
  /// Relative Frobenius distance between the matrix and its adjoint.
  double asymmetry() const noexcept { return asymmetry_; }

private:
  double asymmetry_ = 0.0;
};

/// A candidate weight failed positive definiteness.
class NotPositiveDefiniteError : public EinvertError {
public:
  NotPositiveDefiniteError(const std::string& what, double min_eigenvalue)
      : EinvertError(what), min_eigenvalue_(min_eigenvalue) {}
  /// Smallest eigenvalue found (<= 0).
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
  double min_eigenvalue_ = 0.0;
};

/// Exact inverse requested for a numerically singular matrix. Carries the
/// smallest singular value so the caller can report conditioning.
class SingularMatrixError : public EinvertError {
public:
  SingularMatrixError(const std::string& what, double min_singular_value)
      : EinvertError(what), min_singular_value_(min_singular_value) {}
  double min_singular_value() const noexcept { return min_singular_value_; }

private:
  double min_singular_value_ = 0.0;
};

/// An iterative dense kernel (SVD / eigensolver) reported failure instead
/// of a converged factorization.
class NonConvergenceError : public EinvertError {
public:
  explicit NonConvergenceError(const std::string& what) : EinvertError(what) {}
};

/// Malformed or unreadable tensor / bundle file.
class FileFormatError : public EinvertError {
public:
  explicit FileFormatError(const std::string& what) : EinvertError(what) {}
};

}  // namespace einvert
