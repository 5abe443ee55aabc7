#pragma once

#include <cstdint>
#include <vector>

#include "einvert/tensor.hpp"

namespace einvert {

/// Hermitian positive definite weight tensor over a square signature
/// (extents | extents), kept in spectral form P = U * diag(d) * U^H with U
/// unitary (checked on the flattened matrix) and d strictly positive.
///
/// The spectral form makes the four derived tensors — P, P^{-1}, P^{1/2},
/// P^{-1/2} — cheap and mutually consistent; all four are cached at
/// construction so weighted products never re-factorize.
class HpdWeight {
public:
  /// Builds from an explicit spectral pair. Throws InvalidInputError if the
  /// flattened U is not unitary within 1e-10 or any diagonal entry is not
  /// strictly positive (the message names the offending index).
  static HpdWeight from_spectral(const DenseTensor& unitary_factor,
                                 std::vector<double> diagonal);

  /// Identity weight of the given extents (exact ones / exact identity).
  static HpdWeight identity(const std::vector<std::size_t>& extents);

  const std::vector<std::size_t>& extents() const noexcept { return extents_; }
  const DenseTensor& unitary_factor() const noexcept { return unitary_; }
  const std::vector<double>& diagonal() const noexcept { return diagonal_; }

  const DenseTensor& tensor() const noexcept { return p_; }           // P
  const DenseTensor& inverse() const noexcept { return p_inv_; }      // P^{-1}
  const DenseTensor& sqrt() const noexcept { return p_sqrt_; }        // P^{1/2}
  const DenseTensor& inverse_sqrt() const noexcept { return p_inv_sqrt_; }

  /// Weight with the same unitary factor and reciprocal diagonal, i.e. the
  /// weight whose tensor is this one's inverse.
  HpdWeight inverse_weight() const;

private:
  HpdWeight(std::vector<std::size_t> extents, DenseTensor unitary,
            std::vector<double> diagonal);

  std::vector<std::size_t> extents_;
  DenseTensor unitary_;
  std::vector<double> diagonal_;
  DenseTensor p_, p_inv_, p_sqrt_, p_inv_sqrt_;
};

/// Validates a dense candidate weight: square signature, Hermitian within
/// 1e-12, strictly positive spectrum (NotPositiveDefiniteError carries the
/// minimum eigenvalue otherwise). On success returns the weight rebuilt from
/// its eigendecomposition.
HpdWeight validate_hpd(const DenseTensor& candidate, const Tolerance& tol = {});

/// Random HPD weight with prescribed spectral condition number >= 1: unitary
/// factor from a QR of a complex Gaussian matrix, diagonal log-uniform over
/// exactly [1/sqrt(k), sqrt(k)] (both endpoints attained when the flattened
/// dimension is >= 2, so max/min == condition_number). condition_number == 1
/// yields a unitarily-disguised identity. Bit-deterministic per seed.
HpdWeight random_hpd(const std::vector<std::size_t>& extents,
                     double condition_number, std::uint64_t seed);

/// Same spectrum recipe but with the identity unitary factor: a random
/// strictly positive diagonal weight.
HpdWeight random_diagonal_hpd(const std::vector<std::size_t>& extents,
                              double condition_number, std::uint64_t seed);

}  // namespace einvert
