#include "einvert/matricize.hpp"

#include <sstream>

namespace einvert {

DenseMatrix::DenseMatrix(std::size_t r, std::size_t c, std::vector<Complex> e)
    : rows(r), cols(c), entries(std::move(e)) {
  if (entries.size() != rows * cols) {
    std::ostringstream msg;
    msg << "matrix entry count " << entries.size() << " does not match " << rows
        << " x " << cols;
    throw ShapeMismatchError(msg.str());
  }
}

DenseMatrix DenseMatrix::zeros(std::size_t r, std::size_t c) {
  return DenseMatrix(r, c, std::vector<Complex>(r * c));
}

DenseMatrix flatten(const DenseTensor& a) {
  // Row-major tensor storage over (row multi-index, col multi-index) is the
  // row-major storage of the flattened matrix: copy the buffer verbatim.
  return DenseMatrix(a.signature().row_count(), a.signature().col_count(),
                     std::vector<Complex>(a.entries().begin(), a.entries().end()));
}

DenseTensor unflatten(const DenseMatrix& m, const ShapeSignature& signature) {
  if (m.rows != signature.row_count() || m.cols != signature.col_count()) {
    std::ostringstream msg;
    msg << "cannot reshape " << m.rows << " x " << m.cols << " matrix into signature "
        << format_extents(signature.row_extents) << " x "
        << format_extents(signature.col_extents) << " (" << signature.row_count()
        << " x " << signature.col_count() << ")";
    throw ShapeMismatchError(msg.str());
  }
  return DenseTensor(signature, m.entries);
}

DenseTensor einstein_product_reference(const DenseTensor& a, const DenseTensor& b) {
  const auto& row_ext = a.signature().row_extents;
  const auto& mid_ext = a.signature().col_extents;
  const auto& mid_ext_b = b.signature().row_extents;
  const auto& col_ext = b.signature().col_extents;
  if (mid_ext != mid_ext_b) {
    throw ShapeMismatchError("reference contraction: shared blocks differ");
  }

  ShapeSignature out_sig(row_ext, col_ext);
  std::vector<Complex> out(out_sig.element_count(), Complex(0.0, 0.0));

  // Self-contained odometer arithmetic (no shared helpers with the
  // production path): walk all (row, shared, col) multi-index triples and
  // accumulate a[row, shared] * b[shared, col].
  auto advance = [](const std::vector<std::size_t>& ext, std::vector<std::size_t>& idx) {
    for (std::size_t k = ext.size(); k-- > 0;) {
      if (++idx[k] < ext[k]) return true;
      idx[k] = 0;
    }
    return false;
  };
  auto position = [](const std::vector<std::size_t>& ext, const std::vector<std::size_t>& idx) {
    std::size_t flat = 0;
    for (std::size_t k = 0; k < ext.size(); ++k) flat = flat * ext[k] + idx[k];
    return flat;
  };

  const std::size_t mid_count = extent_product(mid_ext);
  const std::size_t col_count = extent_product(col_ext);

  std::vector<std::size_t> ri(row_ext.size(), 0);
  do {
    const std::size_t rpos = position(row_ext, ri);
    std::vector<std::size_t> ci(col_ext.size(), 0);
    do {
      const std::size_t cpos = position(col_ext, ci);
      Complex acc(0.0, 0.0);
      std::vector<std::size_t> mi(mid_ext.size(), 0);
      do {
        const std::size_t mpos = position(mid_ext, mi);
        acc += a.entry(rpos * mid_count + mpos) * b.entry(mpos * col_count + cpos);
      } while (advance(mid_ext, mi));
      out[rpos * col_count + cpos] = acc;
    } while (advance(col_ext, ci));
  } while (advance(row_ext, ri));

  return DenseTensor(std::move(out_sig), std::move(out));
}

}  // namespace einvert
