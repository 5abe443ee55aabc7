#include "einvert/kernels.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace einvert {

namespace {

using EigenMat = Eigen::MatrixXcd;

EigenMat to_eigen(const DenseMatrix& m) {
  EigenMat e(static_cast<Eigen::Index>(m.rows), static_cast<Eigen::Index>(m.cols));
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m.at(r, c);
    }
  }
  return e;
}

DenseMatrix from_eigen(const EigenMat& e) {
  DenseMatrix m = DenseMatrix::zeros(static_cast<std::size_t>(e.rows()),
                                     static_cast<std::size_t>(e.cols()));
  for (Eigen::Index r = 0; r < e.rows(); ++r) {
    for (Eigen::Index c = 0; c < e.cols(); ++c) {
      m.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = e(r, c);
    }
  }
  return m;
}

}  // namespace

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols != b.rows) {
    std::ostringstream msg;
    msg << "matrix product dimension mismatch: " << a.rows << " x " << a.cols
        << " times " << b.rows << " x " << b.cols;
    throw ShapeMismatchError(msg.str());
  }
  return from_eigen(to_eigen(a) * to_eigen(b));
}

DenseMatrix adjoint(const DenseMatrix& a) {
  DenseMatrix out = DenseMatrix::zeros(a.cols, a.rows);
  for (std::size_t r = 0; r < a.rows; ++r) {
    for (std::size_t c = 0; c < a.cols; ++c) {
      out.at(c, r) = std::conj(a.at(r, c));
    }
  }
  return out;
}

DenseMatrix identity_matrix(std::size_t n) {
  DenseMatrix out = DenseMatrix::zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) out.at(i, i) = Complex(1.0, 0.0);
  return out;
}

double matrix_frobenius_norm(const DenseMatrix& a) {
  double sum = 0.0;
  for (const Complex& z : a.entries) sum += std::norm(z);
  return std::sqrt(sum);
}

double matrix_rel_distance(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) {
    throw ShapeMismatchError("matrix relative distance needs equal dimensions");
  }
  double diff = 0.0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    diff += std::norm(a.entries[i] - b.entries[i]);
  }
  diff = std::sqrt(diff);
  double denom = 1.0;
  double na = matrix_frobenius_norm(a);
  double nb = matrix_frobenius_norm(b);
  if (na > denom) denom = na;
  if (nb > denom) denom = nb;
  return diff / denom;
}

SvdFactors svd(const DenseMatrix& a) {
  Eigen::JacobiSVD<EigenMat> solver(to_eigen(a),
                                    Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) {
    throw NonConvergenceError("SVD did not converge within the solver's sweep limit");
  }
  SvdFactors f{from_eigen(solver.matrixU()), {}, from_eigen(solver.matrixV())};
  const auto& s = solver.singularValues();
  f.singular_values.assign(s.data(), s.data() + s.size());
  return f;
}

DenseMatrix matrix_pinv(const DenseMatrix& a, const Tolerance& tol) {
  tol.validate();
  SvdFactors f = svd(a);
  const double sigma_max = f.singular_values.empty() ? 0.0 : f.singular_values.front();
  const double cutoff = tol.rank_cutoff(a.rows, a.cols) * sigma_max;
  // X = V * diag(sigma+) * U^H with sigma+_i = 1/sigma_i above the cutoff, 0 below.
  EigenMat u = to_eigen(f.u);
  EigenMat v = to_eigen(f.v);
  Eigen::VectorXd inv(static_cast<Eigen::Index>(f.singular_values.size()));
  for (std::size_t i = 0; i < f.singular_values.size(); ++i) {
    double s = f.singular_values[i];
    inv(static_cast<Eigen::Index>(i)) = s > cutoff ? 1.0 / s : 0.0;
  }
  return from_eigen(v * inv.asDiagonal() * u.adjoint());
}

HermEigFactors hermitian_eig(const DenseMatrix& a) {
  if (a.rows != a.cols) {
    std::ostringstream msg;
    msg << "Hermitian eigendecomposition needs a square matrix, got " << a.rows
        << " x " << a.cols;
    throw ShapeMismatchError(msg.str());
  }
  const double asymmetry = matrix_rel_distance(a, adjoint(a));
  if (asymmetry > 1e-12) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: relative asymmetry " << asymmetry;
    throw NotHermitianError(msg.str(), asymmetry);
  }
  Eigen::SelfAdjointEigenSolver<EigenMat> solver(to_eigen(a));
  if (solver.info() != Eigen::Success) {
    throw NonConvergenceError(
        "Hermitian eigendecomposition did not converge within the solver's sweep limit");
  }
  HermEigFactors f{from_eigen(solver.eigenvectors()), {}};
  const auto& w = solver.eigenvalues();
  f.eigenvalues.assign(w.data(), w.data() + w.size());
  return f;
}

DenseMatrix matrix_inverse(const DenseMatrix& a, const Tolerance& tol) {
  tol.validate();
  if (a.rows != a.cols) {
    std::ostringstream msg;
    msg << "inverse needs a square matrix, got " << a.rows << " x " << a.cols;
    throw ShapeMismatchError(msg.str());
  }
  SvdFactors f = svd(a);
  const double sigma_max = f.singular_values.empty() ? 0.0 : f.singular_values.front();
  const double sigma_min = f.singular_values.empty() ? 0.0 : f.singular_values.back();
  if (sigma_min <= tol.rank_cutoff(a.rows, a.cols) * sigma_max || sigma_min == 0.0) {
    std::ostringstream msg;
    msg << "matrix is numerically singular: smallest singular value " << sigma_min;
    throw SingularMatrixError(msg.str(), sigma_min);
  }
  EigenMat u = to_eigen(f.u);
  EigenMat v = to_eigen(f.v);
  Eigen::VectorXd inv(static_cast<Eigen::Index>(f.singular_values.size()));
  for (std::size_t i = 0; i < f.singular_values.size(); ++i) {
    inv(static_cast<Eigen::Index>(i)) = 1.0 / f.singular_values[i];
  }
  return from_eigen(v * inv.asDiagonal() * u.adjoint());
}

DenseMatrix orthonormal_columns(const DenseMatrix& a) {
  Eigen::HouseholderQR<EigenMat> qr(to_eigen(a));
  EigenMat q = qr.householderQ() * EigenMat::Identity(
      static_cast<Eigen::Index>(a.rows), static_cast<Eigen::Index>(a.rows));
  return from_eigen(q);
}

}  // namespace einvert
