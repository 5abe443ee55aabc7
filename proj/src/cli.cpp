#include "einvert/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "einvert/errors.hpp"
#include "einvert/geninv.hpp"
#include "einvert/rol.hpp"
#include "einvert/tensor_io.hpp"

namespace einvert::cli {

namespace {

namespace fs = std::filesystem;

rol::WeightKind weight_kind_from_name(const std::string& name) {
  if (name == "identity") return rol::WeightKind::identity;
  if (name == "random") return rol::WeightKind::random_dense;
  if (name == "diagonal") return rol::WeightKind::random_diagonal;
  throw InvalidInputError("unknown weight kind '" + name +
                          "' (expected identity, random, or diagonal)");
}

const char* weight_kind_name(rol::WeightKind kind) {
  switch (kind) {
    case rol::WeightKind::identity: return "identity";
    case rol::WeightKind::random_dense: return "random";
    case rol::WeightKind::random_diagonal: return "diagonal";
  }
  throw InvalidInputError("unknown weight kind enumerator");
}

HpdWeight load_weight_or_identity(const std::string& path,
                                  const std::vector<std::size_t>& extents) {
  if (path.empty()) return HpdWeight::identity(extents);
  return validate_hpd(io::read_tensor(path));
}

rol::InstanceBundle load_bundle(const std::string& a_path,
                                const std::string& b_path,
                                const std::string& m_path,
                                const std::string& n_path,
                                const std::string& l_path) {
  DenseTensor a = io::read_tensor(a_path);
  DenseTensor b = io::read_tensor(b_path);
  if (a.signature().col_extents != b.signature().row_extents) {
    throw ShapeMismatchError("A's column block (" +
                             format_extents(a.signature().col_extents) +
                             ") does not match B's row block (" +
                             format_extents(b.signature().row_extents) + ")");
  }
  HpdWeight m = load_weight_or_identity(m_path, a.signature().row_extents);
  HpdWeight n = load_weight_or_identity(n_path, a.signature().col_extents);
  HpdWeight l = load_weight_or_identity(l_path, b.signature().col_extents);
  return rol::InstanceBundle{std::move(a),     std::move(b), std::move(m),
                             std::move(n),     std::move(l),
                             rol::Family::random_full,  // unknown provenance
                             0, std::nullopt};
}

bool square_compatible(const rol::InstanceBundle& bundle) {
  return bundle.a.signature().is_square() &&
         bundle.a.signature() == bundle.b.signature();
}

const char* report_outcome(const rol::ConditionReport& report) {
  if (!report.implication_consistent) return "INCONSISTENT";
  return report.indeterminate ? "indeterminate" : "consistent";
}

}  // namespace

int cmd_gen(const GenOptions& options, std::ostream& diag) {
  if (options.out_dir.empty()) {
    throw InvalidInputError("gen needs an output directory");
  }
  rol::Family family = rol::family_from_name(options.family);
  rol::WeightProfile profile;
  profile.kind = weight_kind_from_name(options.weights);
  profile.condition_number = options.condition_number;
  rol::ShapeProfile shape{options.rows, options.mids, options.cols};

  rol::InstanceBundle bundle =
      rol::generate_instance(family, shape, profile, options.seed);

  fs::path dir(options.out_dir);
  fs::create_directories(dir);
  const struct {
    const char* name;
    const DenseTensor& tensor;
  } files[] = {
      {"A.json", bundle.a},          {"B.json", bundle.b},
      {"M.json", bundle.m.tensor()}, {"N.json", bundle.n.tensor()},
      {"L.json", bundle.l.tensor()},
  };
  for (const auto& f : files) {
    io::write_tensor(dir / f.name, f.tensor);
    diag << "wrote " << (dir / f.name).string() << '\n';
  }

  io::BundleMeta meta;
  meta.family = rol::family_name(bundle.family);
  meta.seed = bundle.seed;
  meta.expected_rol = bundle.expected_rol;
  meta.weight_kind = weight_kind_name(profile.kind);
  meta.row_shape = bundle.a.signature().row_extents;
  meta.mid_shape = bundle.a.signature().col_extents;
  meta.col_shape = bundle.b.signature().col_extents;
  io::write_bundle_meta(dir / "bundle.json", meta);
  diag << "wrote " << (dir / "bundle.json").string() << '\n';

  diag << "expected reverse-order law: "
       << (bundle.expected_rol.has_value()
               ? (*bundle.expected_rol ? "holds" : "fails")
               : "unknown")
       << '\n';
  return kExitOk;
}

int cmd_pinv(const PinvOptions& options, std::ostream& diag) {
  if (options.output.empty()) {
    throw InvalidInputError("pinv needs an output path");
  }
  if (options.weight_m.empty() != options.weight_n.empty()) {
    throw InvalidInputError(
        "pinv needs either both weights or neither (got exactly one)");
  }
  if (options.tolerance < 0.0) {
    throw InvalidInputError("verdict tolerance must be non-negative");
  }
  DenseTensor a = io::read_tensor(options.input);

  const bool weighted = !options.weight_m.empty();
  PenroseReport report = [&] {
    if (weighted) {
      HpdWeight m = validate_hpd(io::read_tensor(options.weight_m));
      HpdWeight n = validate_hpd(io::read_tensor(options.weight_n));
      DenseTensor x = weighted_mpinverse(a, m, n);
      io::write_tensor(options.output, x);
      const double tol = options.tolerance > 0.0 ? options.tolerance : 1e-9;
      return weighted_penrose_residuals(a, x, m, n, tol);
    }
    DenseTensor x = mpinverse(a);
    io::write_tensor(options.output, x);
    const double tol = options.tolerance > 0.0 ? options.tolerance : 1e-10;
    return penrose_residuals(a, x, tol);
  }();

  diag << "wrote " << options.output << '\n';
  diag << io::penrose_report_to_json(report);
  return report.verdict ? kExitOk : kExitVerdictFailed;
}

int cmd_wct(const WctOptions& options, std::ostream& diag) {
  if (options.output.empty()) {
    throw InvalidInputError("wct needs an output path");
  }
  if (options.weight_m.empty() != options.weight_n.empty()) {
    throw InvalidInputError(
        "wct needs either both weights or neither (got exactly one)");
  }
  DenseTensor a = io::read_tensor(options.input);
  HpdWeight m = load_weight_or_identity(options.weight_m,
                                        a.signature().row_extents);
  HpdWeight n = load_weight_or_identity(options.weight_n,
                                        a.signature().col_extents);
  io::write_tensor(options.output, weighted_conj_transpose(a, m, n));
  diag << "wrote " << options.output << '\n';
  return kExitOk;
}

int cmd_check_rol(const CheckRolOptions& options, std::ostream& out,
                  std::ostream& diag) {
  rol::CheckTolerance tol{options.accept, options.reject};
  tol.validate();
  rol::InstanceBundle bundle =
      load_bundle(options.a, options.b, options.m, options.n, options.l);

  std::vector<std::string> ids;
  if (options.theorem == "all") {
    const bool square = square_compatible(bundle);
    for (const std::string& id : rol::all_theorem_ids()) {
      if (square || !rol::is_square_theorem(id)) ids.push_back(id);
    }
  } else {
    ids.push_back(options.theorem);
  }

  bool any_inconsistent = false;
  for (const std::string& id : ids) {
    rol::ConditionReport report = rol::run_checker(id, bundle, tol);
    out << io::condition_report_to_json(report);
    diag << id << ": " << report_outcome(report) << '\n';
    if (!report.implication_consistent) any_inconsistent = true;
  }
  return any_inconsistent ? kExitVerdictFailed : kExitOk;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out,
               std::ostream& diag) {
  rol::CheckTolerance tol{options.accept, options.reject};
  tol.validate();
  rol::InstanceBundle bundle =
      load_bundle(options.a, options.b, options.m, options.n, options.l);
  rol::ConditionReport report = rol::check_section3_identities(bundle, tol);
  out << io::condition_report_to_json(report);
  diag << report.theorem_id << ": " << report_outcome(report) << '\n';
  return report.implication_consistent ? kExitOk : kExitVerdictFailed;
}

int cmd_suite(const SuiteOptions& options, std::ostream& out,
              std::ostream& diag) {
  rol::CheckTolerance tol{options.accept, options.reject};
  tol.validate();
  rol::SuiteSummary summary =
      rol::run_suite(options.theorems, options.trials, options.seed, tol);
  const std::string text = io::suite_summary_to_json(summary);
  if (options.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(options.out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      throw FileFormatError("cannot open '" + options.out_path +
                            "' for writing");
    }
    file << text;
    if (!file.good()) {
      throw FileFormatError("failed while writing '" + options.out_path + "'");
    }
    diag << "wrote " << options.out_path << '\n';
  }
  for (const rol::TheoremSummary& ts : summary.theorems) {
    diag << ts.theorem_id << ": " << ts.consistent << " consistent, "
         << ts.inconsistent << " inconsistent, " << ts.indeterminate
         << " indeterminate\n";
  }
  diag << "suite: " << (summary.pass ? "PASS" : "FAIL") << " ("
       << summary.total_inconsistent << " inconsistent, "
       << summary.iff_agreement_failures << " iff agreement failures)\n";
  return summary.pass ? kExitOk : kExitVerdictFailed;
}

}  // namespace einvert::cli
