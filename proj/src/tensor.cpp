#include "einvert/tensor.hpp"

#include <cmath>
#include <sstream>

#include "einvert/kernels.hpp"
#include "einvert/matricize.hpp"

namespace einvert {

namespace {

void check_finite(std::span<const Complex> entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!std::isfinite(entries[i].real()) || !std::isfinite(entries[i].imag())) {
      std::ostringstream msg;
      msg << "tensor entry " << i << " is not finite";
      throw InvalidInputError(msg.str());
    }
  }
}

}  // namespace

DenseTensor::DenseTensor(ShapeSignature signature, std::vector<Complex> entries)
    : signature_(std::move(signature)), entries_(std::move(entries)) {
  if (entries_.size() != signature_.element_count()) {
    std::ostringstream msg;
    msg << "entry count " << entries_.size() << " does not match signature "
        << format_extents(signature_.row_extents) << " x "
        << format_extents(signature_.col_extents) << " (expected "
        << signature_.element_count() << ")";
    throw ShapeMismatchError(msg.str());
  }
  check_finite(entries_);
}

Complex DenseTensor::entry_at(std::span<const std::size_t> row_multi,
                              std::span<const std::size_t> col_multi) const {
  std::size_t r = linear_index(signature_.row_extents, row_multi);
  std::size_t c = linear_index(signature_.col_extents, col_multi);
  return entries_[r * signature_.col_count() + c];
}

DenseTensor zero_tensor(const ShapeSignature& signature) {
  return DenseTensor(signature, std::vector<Complex>(signature.element_count()));
}

DenseTensor identity_tensor(const std::vector<std::size_t>& extents) {
  ShapeSignature sig(extents, extents);
  std::size_t n = sig.row_count();
  std::vector<Complex> entries(n * n, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < n; ++i) entries[i * n + i] = Complex(1.0, 0.0);
  return DenseTensor(std::move(sig), std::move(entries));
}

DenseTensor diagonal_tensor(const std::vector<std::size_t>& extents,
                            const std::vector<Complex>& diag_values) {
  ShapeSignature sig(extents, extents);
  std::size_t n = sig.row_count();
  if (diag_values.size() != n) {
    std::ostringstream msg;
    msg << "diagonal length " << diag_values.size() << " does not match extents "
        << format_extents(extents) << " (expected " << n << ")";
    throw ShapeMismatchError(msg.str());
  }
  std::vector<Complex> entries(n * n, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < n; ++i) entries[i * n + i] = diag_values[i];
  return DenseTensor(std::move(sig), std::move(entries));
}

DenseTensor einstein_product(const DenseTensor& a, const DenseTensor& b) {
  const auto& shared_a = a.signature().col_extents;
  const auto& shared_b = b.signature().row_extents;
  if (shared_a.size() != shared_b.size()) {
    std::ostringstream msg;
    msg << "contraction order mismatch: left col block has " << shared_a.size()
        << " modes " << format_extents(shared_a) << ", right row block has "
        << shared_b.size() << " modes " << format_extents(shared_b);
    throw ShapeMismatchError(msg.str());
  }
  for (std::size_t k = 0; k < shared_a.size(); ++k) {
    if (shared_a[k] != shared_b[k]) {
      std::ostringstream msg;
      msg << "contracted mode " << k << " mismatch: left extent " << shared_a[k]
          << " vs right extent " << shared_b[k] << " (left col block "
          << format_extents(shared_a) << ", right row block "
          << format_extents(shared_b) << ")";
      throw ShapeMismatchError(msg.str());
    }
  }
  // Flattening is a relabeling, so the contraction is exactly the product of
  // the flattened matrices.
  DenseMatrix product = multiply(flatten(a), flatten(b));
  return unflatten(product,
                   ShapeSignature(a.signature().row_extents, b.signature().col_extents));
}

DenseTensor conj_transpose(const DenseTensor& a) {
  const std::size_t rows = a.signature().row_count();
  const std::size_t cols = a.signature().col_count();
  std::vector<Complex> out(a.size());
  auto in = a.entries();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      out[c * rows + r] = std::conj(in[r * cols + c]);
    }
  }
  return DenseTensor(a.signature().swapped(), std::move(out));
}

DenseTensor linear_combine(Complex alpha, const DenseTensor& a,
                           Complex beta, const DenseTensor& b) {
  if (a.signature() != b.signature()) {
    std::ostringstream msg;
    msg << "linear combination needs identical signatures; left is "
        << format_extents(a.signature().row_extents) << " x "
        << format_extents(a.signature().col_extents) << ", right is "
        << format_extents(b.signature().row_extents) << " x "
        << format_extents(b.signature().col_extents);
    throw ShapeMismatchError(msg.str());
  }
  std::vector<Complex> out(a.size());
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = alpha * ea[i] + beta * eb[i];
  return DenseTensor(a.signature(), std::move(out));
}

DenseTensor scale(Complex alpha, const DenseTensor& a) {
  return linear_combine(alpha, a, Complex(0.0, 0.0), a);
}

double frobenius_norm(const DenseTensor& a) {
  double sum = 0.0;
  for (const Complex& z : a.entries()) sum += std::norm(z);
  return std::sqrt(sum);
}

double rel_distance(const DenseTensor& a, const DenseTensor& b) {
  if (a.signature() != b.signature()) {
    throw ShapeMismatchError("relative distance needs identical signatures");
  }
  double diff = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) diff += std::norm(ea[i] - eb[i]);
  diff = std::sqrt(diff);
  double denom = 1.0;
  double na = frobenius_norm(a);
  double nb = frobenius_norm(b);
  if (na > denom) denom = na;
  if (nb > denom) denom = nb;
  return diff / denom;
}

bool approx_equal(const DenseTensor& a, const DenseTensor& b, const Tolerance& tol) {
  tol.validate();
  return rel_distance(a, b) <= tol.rel_eq;
}

}  // namespace einvert
