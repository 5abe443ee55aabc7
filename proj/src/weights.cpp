#include "einvert/weights.hpp"

#include <cmath>
#include <sstream>

#include "einvert/kernels.hpp"
#include "einvert/matricize.hpp"
#include "einvert/rng.hpp"

namespace einvert {

namespace {

// U * diag(f(d)) * U^H as a tensor over (extents | extents).
DenseTensor spectral_apply(const DenseMatrix& u, const std::vector<double>& d,
                           double (*fn)(double), const ShapeSignature& sig) {
  const std::size_t n = u.rows;
  DenseMatrix scaled = DenseMatrix::zeros(n, n);  // U * diag(f(d))
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      scaled.at(r, c) = u.at(r, c) * fn(d[c]);
    }
  }
  return unflatten(multiply(scaled, adjoint(u)), sig);
}

double fn_id(double x) { return x; }
double fn_inv(double x) { return 1.0 / x; }
double fn_sqrt(double x) { return std::sqrt(x); }
double fn_inv_sqrt(double x) { return 1.0 / std::sqrt(x); }

// Log-uniform spectrum over exactly [1/sqrt(k), sqrt(k)]: both endpoints are
// placed explicitly (when n >= 2) so max/min == k, interior values are drawn
// log-uniformly, and the whole list is shuffled to decouple value from slot.
std::vector<double> spectrum(std::size_t n, double condition_number, Rng& rng) {
  if (!(condition_number >= 1.0)) {
    throw InvalidInputError("condition number must be >= 1");
  }
  const double half_log = 0.5 * std::log(condition_number);
  std::vector<double> d;
  d.reserve(n);
  if (n == 1) {
    d.push_back(1.0);
    return d;
  }
  d.push_back(std::exp(-half_log));
  d.push_back(std::exp(half_log));
  for (std::size_t i = 2; i < n; ++i) {
    d.push_back(std::exp(rng.uniform(-half_log, half_log)));
  }
  rng.shuffle(d);
  return d;
}

}  // namespace

HpdWeight::HpdWeight(std::vector<std::size_t> extents, DenseTensor unitary,
                     std::vector<double> diagonal)
    : extents_(std::move(extents)),
      unitary_(std::move(unitary)),
      diagonal_(std::move(diagonal)),
      p_(spectral_apply(flatten(unitary_), diagonal_, fn_id, unitary_.signature())),
      p_inv_(spectral_apply(flatten(unitary_), diagonal_, fn_inv, unitary_.signature())),
      p_sqrt_(spectral_apply(flatten(unitary_), diagonal_, fn_sqrt, unitary_.signature())),
      p_inv_sqrt_(spectral_apply(flatten(unitary_), diagonal_, fn_inv_sqrt,
                                 unitary_.signature())) {}

HpdWeight HpdWeight::from_spectral(const DenseTensor& unitary_factor,
                                   std::vector<double> diagonal) {
  const ShapeSignature& sig = unitary_factor.signature();
  if (!sig.is_square()) {
    throw InvalidInputError("spectral unitary factor must have a square signature");
  }
  const std::size_t n = sig.row_count();
  if (diagonal.size() != n) {
    std::ostringstream msg;
    msg << "spectral diagonal length " << diagonal.size()
        << " does not match flattened dimension " << n;
    throw InvalidInputError(msg.str());
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(diagonal[i] > 0.0)) {
      std::ostringstream msg;
      msg << "spectral diagonal entry " << i << " is " << diagonal[i]
          << "; a positive definite weight needs strictly positive eigenvalues";
      throw InvalidInputError(msg.str());
    }
  }
  DenseMatrix u = flatten(unitary_factor);
  const double unitary_residual =
      matrix_rel_distance(multiply(adjoint(u), u), identity_matrix(n));
  if (unitary_residual > 1e-10) {
    std::ostringstream msg;
    msg << "spectral factor is not unitary: ||U^H U - I|| residual " << unitary_residual;
    throw InvalidInputError(msg.str());
  }
  return HpdWeight(sig.row_extents, unitary_factor, std::move(diagonal));
}

HpdWeight HpdWeight::identity(const std::vector<std::size_t>& extents) {
  DenseTensor u = identity_tensor(extents);
  std::vector<double> ones(u.signature().row_count(), 1.0);
  return HpdWeight(extents, std::move(u), std::move(ones));
}

HpdWeight HpdWeight::inverse_weight() const {
  std::vector<double> reciprocal(diagonal_.size());
  for (std::size_t i = 0; i < diagonal_.size(); ++i) reciprocal[i] = 1.0 / diagonal_[i];
  return HpdWeight(extents_, unitary_, std::move(reciprocal));
}

HpdWeight validate_hpd(const DenseTensor& candidate, const Tolerance& tol) {
  tol.validate();
  const ShapeSignature& sig = candidate.signature();
  if (!sig.is_square()) {
    std::ostringstream msg;
    msg << "weight must have a square signature; got "
        << format_extents(sig.row_extents) << " x " << format_extents(sig.col_extents);
    throw InvalidInputError(msg.str());
  }
  // hermitian_eig re-checks Hermitian-ness at 1e-12 and throws
  // NotHermitianError with the measured asymmetry.
  HermEigFactors eig = hermitian_eig(flatten(candidate));
  const double min_eig = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
  if (!(min_eig > 0.0)) {
    std::ostringstream msg;
    msg << "weight is not positive definite: minimum eigenvalue " << min_eig;
    throw NotPositiveDefiniteError(msg.str(), min_eig);
  }
  return HpdWeight::from_spectral(unflatten(eig.u, sig), eig.eigenvalues);
}

HpdWeight random_hpd(const std::vector<std::size_t>& extents,
                     double condition_number, std::uint64_t seed) {
  Rng rng(seed);
  ShapeSignature sig(extents, extents);
  const std::size_t n = sig.row_count();
  std::vector<Complex> gauss(n * n);
  for (Complex& z : gauss) z = rng.cgaussian();
  DenseMatrix q = orthonormal_columns(DenseMatrix(n, n, std::move(gauss)));
  std::vector<double> d = spectrum(n, condition_number, rng);
  return HpdWeight::from_spectral(unflatten(q, sig), std::move(d));
}

HpdWeight random_diagonal_hpd(const std::vector<std::size_t>& extents,
                              double condition_number, std::uint64_t seed) {
  Rng rng(seed);
  ShapeSignature sig(extents, extents);
  std::vector<double> d = spectrum(sig.row_count(), condition_number, rng);
  return HpdWeight::from_spectral(identity_tensor(extents), std::move(d));
}

}  // namespace einvert
