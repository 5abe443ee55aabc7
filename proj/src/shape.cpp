#include "einvert/shape.hpp"

#include <cfloat>
#include <limits>
#include <sstream>

namespace einvert {

namespace {

void check_extents(std::span<const std::size_t> extents, const char* which) {
  for (std::size_t i = 0; i < extents.size(); ++i) {
    if (extents[i] == 0) {
      std::ostringstream msg;
      msg << "shape " << which << " mode " << i << " has extent 0; every mode extent must be >= 1";
      throw InvalidInputError(msg.str());
    }
  }
}

}  // namespace

ShapeSignature::ShapeSignature(std::vector<std::size_t> rows,
                               std::vector<std::size_t> cols)
    : row_extents(std::move(rows)), col_extents(std::move(cols)) {
  if (row_extents.empty() && col_extents.empty()) {
    throw InvalidInputError("shape signature needs at least one mode (both blocks empty)");
  }
  check_extents(row_extents, "row block");
  check_extents(col_extents, "col block");
  // Overflow guard: the flat entry buffer must be addressable.
  std::size_t r = extent_product(row_extents);
  std::size_t c = extent_product(col_extents);
  if (c != 0 && r > std::numeric_limits<std::size_t>::max() / c) {
    throw InvalidInputError("shape signature element count overflows the index space");
  }
}

std::size_t ShapeSignature::row_count() const { return extent_product(row_extents); }
std::size_t ShapeSignature::col_count() const { return extent_product(col_extents); }
std::size_t ShapeSignature::element_count() const { return row_count() * col_count(); }

ShapeSignature ShapeSignature::swapped() const {
  return ShapeSignature(col_extents, row_extents);
}

double Tolerance::rank_cutoff(std::size_t rows, std::size_t cols) const {
  if (rank_cut > 0.0) return rank_cut;
  return DBL_EPSILON * static_cast<double>(rows > cols ? rows : cols);
}

void Tolerance::validate() const {
  if (!(rel_eq > 0.0) || !(rel_eq < 1.0)) {
    throw InvalidInputError("tolerance rel_eq must lie strictly between 0 and 1");
  }
  if (rank_cut < 0.0) {
    throw InvalidInputError("tolerance rank_cut must be >= 0 (0 selects the automatic cutoff)");
  }
}

std::size_t extent_product(std::span<const std::size_t> extents) {
  std::size_t p = 1;
  for (std::size_t e : extents) {
    if (e != 0 && p > std::numeric_limits<std::size_t>::max() / e) {
      throw InvalidInputError("extent product overflows the index space");
    }
    p *= e;
  }
  return p;
}

std::size_t linear_index(std::span<const std::size_t> extents,
                         std::span<const std::size_t> multi) {
  if (extents.size() != multi.size()) {
    throw InvalidInputError("multi-index order does not match the extent list");
  }
  std::size_t flat = 0;
  for (std::size_t k = 0; k < extents.size(); ++k) {
    if (multi[k] >= extents[k]) {
      std::ostringstream msg;
      msg << "multi-index component " << k << " is " << multi[k]
          << ", out of range for extent " << extents[k];
      throw InvalidInputError(msg.str());
    }
    flat = flat * extents[k] + multi[k];
  }
  return flat;
}

bool next_multi_index(std::span<const std::size_t> extents,
                      std::vector<std::size_t>& multi) {
  for (std::size_t k = extents.size(); k-- > 0;) {
    if (++multi[k] < extents[k]) return true;
    multi[k] = 0;
  }
  return false;
}

std::string format_extents(std::span<const std::size_t> extents) {
  std::ostringstream oss;
  oss << "[";
  for (std::size_t i = 0; i < extents.size(); ++i) {
    if (i) oss << ", ";
    oss << extents[i];
  }
  oss << "]";
  return oss.str();
}

}  // namespace einvert
