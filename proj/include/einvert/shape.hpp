#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "einvert/errors.hpp"

namespace einvert {

/// Shape of a dense even-order tensor viewed as a linear map: `row_extents`
/// are the output (row-block) mode extents, `col_extents` the input
/// (col-block) mode extents. One of the two blocks may be empty — a tensor
/// with an empty col block is a "column vector" shape and vice versa — but
/// never both, and every extent is >= 1.
///
/// Entries are stored row-major over the concatenated multi-index
/// (row modes vary slowest, last col mode varies fastest), which is exactly
/// the layout of the flattened (prod(rows) x prod(cols)) matrix.
struct ShapeSignature {
  std::vector<std::size_t> row_extents;
  std::vector<std::size_t> col_extents;

  ShapeSignature() = default;
  ShapeSignature(std::vector<std::size_t> rows, std::vector<std::size_t> cols);

  std::size_t row_count() const;   // prod(row_extents), 1 when empty
  std::size_t col_count() const;   // prod(col_extents), 1 when empty
  std::size_t element_count() const;

  /// Signature of the conjugate transpose (blocks swapped).
  ShapeSignature swapped() const;

  /// True when row and col blocks are identical (so identity / weight
  /// tensors of this signature exist).
  bool is_square() const { return row_extents == col_extents; }

  friend bool operator==(const ShapeSignature&, const ShapeSignature&) = default;
};

/// Numeric comparison / rank-decision knobs.
///
/// `rank_cut` is the relative singular-value cutoff used by pseudo-inverse
/// style kernels; when unset (NaN-free sentinel 0) it defaults per matrix to
/// machine-epsilon times the largest flattened dimension.
struct Tolerance {
  double rel_eq = 1e-8;  // relative equality threshold, in (0, 1)
  double rank_cut = 0.0; // 0 => automatic: eps * max(rows, cols)

  /// Effective relative sigma cutoff for an m x n flattened matrix.
  double rank_cutoff(std::size_t rows, std::size_t cols) const;

  /// Throws InvalidInputError unless 0 < rel_eq < 1 and rank_cut >= 0.
  void validate() const;
};

/// prod(extents) with overflow guard; 1 for an empty list.
std::size_t extent_product(std::span<const std::size_t> extents);

/// Row-major linearization of `multi` (0-based) against `extents`.
std::size_t linear_index(std::span<const std::size_t> extents,
                         std::span<const std::size_t> multi);

/// Odometer step over a 0-based multi-index; returns false after the last
/// index wraps back to all-zeros. An empty extent list has exactly one
/// (empty) index, so the first call returns false.
bool next_multi_index(std::span<const std::size_t> extents,
                      std::vector<std::size_t>& multi);

/// Human-readable "[2, 3, 4]" form used in error messages.
std::string format_extents(std::span<const std::size_t> extents);

}  // namespace einvert
