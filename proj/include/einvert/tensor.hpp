#pragma once

#include <complex>
#include <span>
#include <vector>

#include "einvert/shape.hpp"

namespace einvert {

using Complex = std::complex<double>;

/// Dense even-order complex tensor with a fixed (row block, col block)
/// shape signature. Entries are stored flat, row-major over the
/// concatenated multi-index, and are validated finite on construction.
/// Instances are immutable values: every operation returns a new tensor.
class DenseTensor {
public:
  DenseTensor(ShapeSignature signature, std::vector<Complex> entries);

  const ShapeSignature& signature() const noexcept { return signature_; }
  std::span<const Complex> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  Complex entry(std::size_t flat) const { return entries_.at(flat); }

  /// Entry addressed by 0-based row / col multi-indices.
  Complex entry_at(std::span<const std::size_t> row_multi,
                   std::span<const std::size_t> col_multi) const;

  friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

private:
  ShapeSignature signature_;
  std::vector<Complex> entries_;
};

/// All-zero tensor of the given signature.
DenseTensor zero_tensor(const ShapeSignature& signature);

/// Square identity: signature (extents | extents), entry 1 exactly where the
/// row multi-index equals the col multi-index.
DenseTensor identity_tensor(const std::vector<std::size_t>& extents);

/// Square diagonal tensor; `diag_values` holds prod(extents) entries in
/// row-major diagonal order.
DenseTensor diagonal_tensor(const std::vector<std::size_t>& extents,
                            const std::vector<Complex>& diag_values);

/// Einstein product: contracts the full col block of `a` against the full
/// row block of `b` (which must match extent-for-extent; the error message
/// names the first differing mode). Result signature is
/// (a.row_extents | b.col_extents). Computed by flattening both operands and
/// multiplying the matrices, which is exactly the contraction because the
/// storage order makes flattening a relabeling.
DenseTensor einstein_product(const DenseTensor& a, const DenseTensor& b);

/// Conjugate transpose: blocks swapped, entries conjugated. Exact (no
/// floating-point rounding); applying it twice is bit-identical to the input.
DenseTensor conj_transpose(const DenseTensor& a);

/// alpha * a + beta * b for identically shaped tensors.
DenseTensor linear_combine(Complex alpha, const DenseTensor& a,
                           Complex beta, const DenseTensor& b);

DenseTensor scale(Complex alpha, const DenseTensor& a);

double frobenius_norm(const DenseTensor& a);

/// ||a - b||_F / max(1, ||a||_F, ||b||_F); requires equal signatures.
double rel_distance(const DenseTensor& a, const DenseTensor& b);

bool approx_equal(const DenseTensor& a, const DenseTensor& b,
                  const Tolerance& tol = {});

}  // namespace einvert
