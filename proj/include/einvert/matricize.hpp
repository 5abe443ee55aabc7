#pragma once

#include <complex>
#include <vector>

#include "einvert/tensor.hpp"

namespace einvert {

/// Dense complex matrix, row-major flat storage. The working currency of the
/// numeric kernels; produced from tensors by `flatten`.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Complex> entries;  // rows * cols, row-major

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c, std::vector<Complex> e);

  /// Zero-initialized r x c matrix.
  static DenseMatrix zeros(std::size_t r, std::size_t c);

  Complex& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  Complex at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;
};

/// Tensor -> (prod(row_extents) x prod(col_extents)) matrix. Because tensor
/// storage is row-major over the concatenated multi-index, this is a pure
/// relabeling: the entry buffer is copied verbatim, no permutation happens.
DenseMatrix flatten(const DenseTensor& a);

/// Inverse of `flatten` for a given target signature; throws
/// ShapeMismatchError when the matrix dimensions do not match the
/// signature's flattened dimensions. flatten(unflatten(m, sig)) == m and
/// unflatten(flatten(a), a.signature()) == a, bit-exact.
DenseTensor unflatten(const DenseMatrix& m, const ShapeSignature& signature);

/// Reference Einstein product: explicit nested loops over the row, shared,
/// and col multi-indices with self-contained index arithmetic. Exists solely
/// as an independent cross-check of the flatten-multiply-unflatten route in
/// tests; no performance expectations.
DenseTensor einstein_product_reference(const DenseTensor& a, const DenseTensor& b);

}  // namespace einvert
