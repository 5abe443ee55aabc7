#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "einvert/rol.hpp"
#include "einvert/tensor.hpp"
#include "einvert/weights.hpp"

namespace einvert::io {

/// Tensor file layout (JSON object):
///   {
///     "row_shape": [2, 3],
///     "col_shape": [4],
///     "re": [ ... prod*prod doubles, row-major ... ],
///     "im": [ ... same length ... ]
///   }
/// Numbers are written with 17 significant digits, so write -> read is
/// bit-exact and repeated writes of the same tensor are byte-identical.
void write_tensor(const std::filesystem::path& path, const DenseTensor& tensor);
std::string tensor_to_json(const DenseTensor& tensor);

/// Throws FileFormatError on unreadable files, malformed JSON, missing or
/// mistyped fields, shape/entry-count mismatches, or non-finite values.
DenseTensor read_tensor(const std::filesystem::path& path);
DenseTensor tensor_from_json(const std::string& text);

/// Bundle metadata sidecar ("bundle.json"): family, seed, expected law
/// verdict (absent when unknown), weight kind and the three block shapes.
struct BundleMeta {
  std::string family;
  std::uint64_t seed = 0;
  std::optional<bool> expected_rol;
  std::string weight_kind;
  std::vector<std::size_t> row_shape, mid_shape, col_shape;
};

void write_bundle_meta(const std::filesystem::path& path, const BundleMeta& meta);
BundleMeta read_bundle_meta(const std::filesystem::path& path);

// Report serialization (deterministic for identical inputs).
std::string penrose_report_to_json(const PenroseReport& report);
std::string condition_report_to_json(const rol::ConditionReport& report);
std::string suite_summary_to_json(const rol::SuiteSummary& summary);

}  // namespace einvert::io
