#include "einvert/tensor_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "einvert/errors.hpp"

namespace einvert::io {

namespace {

using nlohmann::json;

// 17 significant digits round-trip an IEEE double exactly, and the fixed
// format keeps repeated writes of the same tensor byte-identical. Integral
// values get a ".0" suffix so JSON parsers read them back as doubles —
// otherwise "-0" would come back as integer zero and lose its sign.
std::string fmt_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  std::string out = buf;
  if (out.find_first_of(".eE") == std::string::npos) out += ".0";
  return out;
}

std::string escape(const std::string& text) {
  std::string out;
  out.reserve(text.size() + 2);
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void append_extent_array(std::string& out, const std::vector<std::size_t>& extents) {
  out += '[';
  for (std::size_t i = 0; i < extents.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(extents[i]);
  }
  out += ']';
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FileFormatError("cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) {
    throw FileFormatError("failed while reading '" + path.string() + "'");
  }
  return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw FileFormatError("cannot open '" + path.string() + "' for writing");
  }
  out << text;
  out.flush();
  if (!out.good()) {
    throw FileFormatError("failed while writing '" + path.string() + "'");
  }
}

json parse_object(const std::string& text, const std::string& what) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw FileFormatError(what + ": malformed JSON");
  if (!doc.is_object()) throw FileFormatError(what + ": expected a JSON object");
  return doc;
}

const json& field(const json& doc, const char* key, const std::string& what) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    throw FileFormatError(what + ": missing field '" + key + "'");
  }
  return *it;
}

std::vector<std::size_t> extents_field(const json& doc, const char* key,
                                       const std::string& what) {
  const json& node = field(doc, key, what);
  if (!node.is_array()) {
    throw FileFormatError(what + ": field '" + key + "' must be an array");
  }
  std::vector<std::size_t> extents;
  extents.reserve(node.size());
  for (const json& item : node) {
    if (!item.is_number_integer() && !item.is_number_unsigned()) {
      throw FileFormatError(what + ": field '" + key +
                            "' must hold non-negative integers");
    }
    const auto value = item.get<std::int64_t>();
    if (value < 0) {
      throw FileFormatError(what + ": field '" + key +
                            "' must hold non-negative integers");
    }
    extents.push_back(static_cast<std::size_t>(value));
  }
  return extents;
}

std::vector<double> number_array_field(const json& doc, const char* key,
                                       const std::string& what) {
  const json& node = field(doc, key, what);
  if (!node.is_array()) {
    throw FileFormatError(what + ": field '" + key + "' must be an array");
  }
  std::vector<double> values;
  values.reserve(node.size());
  for (const json& item : node) {
    if (!item.is_number()) {
      throw FileFormatError(what + ": field '" + key + "' must hold numbers");
    }
    values.push_back(item.get<double>());
  }
  return values;
}

std::string verdict_json(rol::Verdict v) {
  return "\"" + rol::verdict_name(v) + "\"";
}

void append_condition_entry(std::string& out, const rol::ConditionEntry& entry,
                            const char* indent) {
  out += indent;
  out += "{\"label\": \"" + escape(entry.label) + "\", \"residual\": " +
         fmt_double(entry.residual) + ", \"verdict\": " +
         verdict_json(entry.verdict) + "}";
}

}  // namespace

// ---------------------------------------------------------------------------
// Tensors
// ---------------------------------------------------------------------------

std::string tensor_to_json(const DenseTensor& tensor) {
  const ShapeSignature& sig = tensor.signature();
  std::string out = "{\n  \"row_shape\": ";
  append_extent_array(out, sig.row_extents);
  out += ",\n  \"col_shape\": ";
  append_extent_array(out, sig.col_extents);
  out += ",\n  \"re\": [";
  const auto entries = tensor.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ", ";
    out += fmt_double(entries[i].real());
  }
  out += "],\n  \"im\": [";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ", ";
    out += fmt_double(entries[i].imag());
  }
  out += "]\n}\n";
  return out;
}

void write_tensor(const std::filesystem::path& path, const DenseTensor& tensor) {
  write_file(path, tensor_to_json(tensor));
}

DenseTensor tensor_from_json(const std::string& text) {
  const std::string what = "tensor";
  json doc = parse_object(text, what);
  std::vector<std::size_t> row_shape = extents_field(doc, "row_shape", what);
  std::vector<std::size_t> col_shape = extents_field(doc, "col_shape", what);
  std::vector<double> re = number_array_field(doc, "re", what);
  std::vector<double> im = number_array_field(doc, "im", what);
  if (re.size() != im.size()) {
    throw FileFormatError(what + ": 're' and 'im' lengths differ");
  }
  try {
    ShapeSignature sig(row_shape, col_shape);
    if (sig.element_count() != re.size()) {
      throw FileFormatError(what + ": entry count " + std::to_string(re.size()) +
                            " does not match shape (expects " +
                            std::to_string(sig.element_count()) + ")");
    }
    std::vector<Complex> entries(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) entries[i] = Complex(re[i], im[i]);
    return DenseTensor(std::move(sig), std::move(entries));
  } catch (const FileFormatError&) {
    throw;
  } catch (const EinvertError& err) {
    throw FileFormatError(what + ": " + err.what());
  }
}

DenseTensor read_tensor(const std::filesystem::path& path) {
  try {
    return tensor_from_json(read_file(path));
  } catch (const FileFormatError& err) {
    throw FileFormatError("'" + path.string() + "': " + err.what());
  }
}

// ---------------------------------------------------------------------------
// Bundle metadata
// ---------------------------------------------------------------------------

void write_bundle_meta(const std::filesystem::path& path, const BundleMeta& meta) {
  std::string out = "{\n";
  out += "  \"family\": \"" + escape(meta.family) + "\",\n";
  out += "  \"seed\": " + std::to_string(meta.seed) + ",\n";
  if (meta.expected_rol.has_value()) {
    out += std::string("  \"expected_rol\": ") +
           (*meta.expected_rol ? "true" : "false") + ",\n";
  }
  out += "  \"weight_kind\": \"" + escape(meta.weight_kind) + "\",\n";
  out += "  \"row_shape\": ";
  append_extent_array(out, meta.row_shape);
  out += ",\n  \"mid_shape\": ";
  append_extent_array(out, meta.mid_shape);
  out += ",\n  \"col_shape\": ";
  append_extent_array(out, meta.col_shape);
  out += "\n}\n";
  write_file(path, out);
}

BundleMeta read_bundle_meta(const std::filesystem::path& path) {
  const std::string what = "bundle metadata";
  json doc;
  try {
    doc = parse_object(read_file(path), what);
  } catch (const FileFormatError& err) {
    throw FileFormatError("'" + path.string() + "': " + err.what());
  }
  try {
    BundleMeta meta;
    const json& family = field(doc, "family", what);
    if (!family.is_string()) throw FileFormatError(what + ": 'family' must be a string");
    meta.family = family.get<std::string>();
    const json& seed = field(doc, "seed", what);
    if (!seed.is_number_integer() && !seed.is_number_unsigned()) {
      throw FileFormatError(what + ": 'seed' must be an integer");
    }
    meta.seed = seed.get<std::uint64_t>();
    if (auto it = doc.find("expected_rol"); it != doc.end() && !it->is_null()) {
      if (!it->is_boolean()) {
        throw FileFormatError(what + ": 'expected_rol' must be a boolean");
      }
      meta.expected_rol = it->get<bool>();
    }
    const json& kind = field(doc, "weight_kind", what);
    if (!kind.is_string()) {
      throw FileFormatError(what + ": 'weight_kind' must be a string");
    }
    meta.weight_kind = kind.get<std::string>();
    meta.row_shape = extents_field(doc, "row_shape", what);
    meta.mid_shape = extents_field(doc, "mid_shape", what);
    meta.col_shape = extents_field(doc, "col_shape", what);
    return meta;
  } catch (const FileFormatError& err) {
    throw FileFormatError("'" + path.string() + "': " + err.what());
  }
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

std::string penrose_report_to_json(const PenroseReport& report) {
  std::string out = "{\n  \"residuals\": {\n";
  out += "    \"a_x_a\": " + fmt_double(report.residuals[0]) + ",\n";
  out += "    \"x_a_x\": " + fmt_double(report.residuals[1]) + ",\n";
  out += "    \"m_ax_hermitian\": " + fmt_double(report.residuals[2]) + ",\n";
  out += "    \"n_xa_hermitian\": " + fmt_double(report.residuals[3]) + "\n";
  out += "  },\n";
  out += "  \"max_residual\": " + fmt_double(report.max_residual()) + ",\n";
  out += "  \"tolerance\": " + fmt_double(report.tolerance) + ",\n";
  out += std::string("  \"verdict\": ") + (report.verdict ? "true" : "false") +
         "\n}\n";
  return out;
}

std::string condition_report_to_json(const rol::ConditionReport& report) {
  std::string out = "{\n";
  out += "  \"theorem\": \"" + escape(report.theorem_id) + "\",\n";
  out += "  \"conditions\": [\n";
  for (std::size_t i = 0; i < report.conditions.size(); ++i) {
    append_condition_entry(out, report.conditions[i], "    ");
    out += i + 1 < report.conditions.size() ? ",\n" : "\n";
  }
  out += "  ],\n  \"conclusion\":\n";
  append_condition_entry(out, report.conclusion, "    ");
  out += ",\n";
  out += std::string("  \"implication_consistent\": ") +
         (report.implication_consistent ? "true" : "false") + ",\n";
  out += std::string("  \"indeterminate\": ") +
         (report.indeterminate ? "true" : "false") + "\n}\n";
  return out;
}

std::string suite_summary_to_json(const rol::SuiteSummary& summary) {
  std::string out = "{\n";
  out += "  \"seed\": " + std::to_string(summary.seed) + ",\n";
  out += "  \"trials\": " + std::to_string(summary.trials) + ",\n";
  out += "  \"tolerance\": {\"accept\": " + fmt_double(summary.tolerance.accept) +
         ", \"reject\": " + fmt_double(summary.tolerance.reject) + "},\n";
  out += "  \"iff_agreement_failures\": " +
         std::to_string(summary.iff_agreement_failures) + ",\n";
  out += "  \"total_inconsistent\": " + std::to_string(summary.total_inconsistent) +
         ",\n";
  out += std::string("  \"pass\": ") + (summary.pass ? "true" : "false") + ",\n";
  out += "  \"theorems\": [\n";
  for (std::size_t i = 0; i < summary.theorems.size(); ++i) {
    const rol::TheoremSummary& ts = summary.theorems[i];
    out += "    {\n";
    out += "      \"theorem\": \"" + escape(ts.theorem_id) + "\",\n";
    out += "      \"trials\": " + std::to_string(ts.trials) + ",\n";
    out += "      \"consistent\": " + std::to_string(ts.consistent) + ",\n";
    out += "      \"inconsistent\": " + std::to_string(ts.inconsistent) + ",\n";
    out += "      \"indeterminate\": " + std::to_string(ts.indeterminate) + ",\n";
    out += "      \"worst_accepted_residual\": " +
           fmt_double(ts.worst_accepted_residual) + ",\n";
    out += "      \"min_rejected_residual\": " +
           (ts.min_rejected_residual < 0.0 ? std::string("null")
                                           : fmt_double(ts.min_rejected_residual)) +
           ",\n";
    out += "      \"histogram\": {";
    const auto& names = rol::MarginHistogram::bucket_names();
    for (std::size_t b = 0; b < names.size(); ++b) {
      if (b) out += ", ";
      out += "\"" + std::string(names[b]) + "\": " +
             std::to_string(ts.histogram.buckets[b]);
    }
    out += "}\n    }";
    out += i + 1 < summary.theorems.size() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

}  // namespace einvert::io
