#pragma once

#include <vector>

#include "einvert/matricize.hpp"
#include "einvert/shape.hpp"

namespace einvert {

/// Thin SVD a = U * diag(singular_values) * V^H.
/// U is rows x k, V is cols x k with k = min(rows, cols); singular values are
/// real, nonnegative, nonincreasing.
struct SvdFactors {
  DenseMatrix u;
  std::vector<double> singular_values;
  DenseMatrix v;
};

/// Hermitian eigendecomposition a = U * diag(eigenvalues) * U^H with unitary
/// U and real eigenvalues in nondecreasing order.
struct HermEigFactors {
  DenseMatrix u;
  std::vector<double> eigenvalues;
};

// The kernels below are backed by Eigen (JacobiSVD, SelfAdjointEigenSolver,
// HouseholderQR, dense product). Iterative solvers carry Eigen's internal
// sweep limit; a solver that stops without success is surfaced as
// NonConvergenceError rather than a silent bad factorization.

/// Matrix product; throws ShapeMismatchError on an inner-dimension mismatch.
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);

/// Conjugate transpose (exact).
DenseMatrix adjoint(const DenseMatrix& a);

DenseMatrix identity_matrix(std::size_t n);

double matrix_frobenius_norm(const DenseMatrix& a);

/// ||a - b||_F / max(1, ||a||_F, ||b||_F); requires equal dimensions.
double matrix_rel_distance(const DenseMatrix& a, const DenseMatrix& b);

/// Thin singular value decomposition.
SvdFactors svd(const DenseMatrix& a);

/// Moore-Penrose inverse via SVD: singular values at or below
/// tol.rank_cutoff(rows, cols) * sigma_max are treated as exact zeros.
DenseMatrix matrix_pinv(const DenseMatrix& a, const Tolerance& tol = {});

/// Eigendecomposition of a Hermitian matrix. The input must be Hermitian
/// within 1e-12 relative asymmetry (NotHermitianError otherwise).
HermEigFactors hermitian_eig(const DenseMatrix& a);

/// Exact inverse of a square nonsingular matrix; throws SingularMatrixError
/// (carrying the smallest singular value) when the matrix is numerically
/// singular at tol.rank_cutoff.
DenseMatrix matrix_inverse(const DenseMatrix& a, const Tolerance& tol = {});

/// Q factor of a Householder QR of `a` (rows x rows unitary when `a` is
/// square). Deterministic for identical input.
DenseMatrix orthonormal_columns(const DenseMatrix& a);

}  // namespace einvert
