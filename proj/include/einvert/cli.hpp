#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace einvert::cli {

// Exit code contract shared by every subcommand:
//   0  success (all requested checks consistent / operation completed)
//   1  a numeric verdict failed (law violated, inconsistency found)
//   2  usage, shape, or file-format error
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFailed = 1;
inline constexpr int kExitUsage = 2;

/// `gen`: materialize one instance bundle into a directory as
/// A.json / B.json / M.json / N.json / L.json / bundle.json.
struct GenOptions {
  std::string family = "random_full";
  std::vector<std::size_t> rows, mids, cols;
  std::string weights = "identity";  // identity | random | diagonal
  double condition_number = 10.0;
  std::uint64_t seed = 0;
  std::string out_dir;
};
int cmd_gen(const GenOptions& options, std::ostream& diag);

/// `pinv`: unweighted or weighted pseudo-inverse of a tensor file.
struct PinvOptions {
  std::string input;
  std::string output;
  std::string weight_m;  // both set => weighted
  std::string weight_n;
  double tolerance = 0.0;  // 0 => default (1e-10 unweighted / 1e-9 weighted)
};
int cmd_pinv(const PinvOptions& options, std::ostream& diag);

/// `wct`: weighted conjugate transpose of a tensor file.
struct WctOptions {
  std::string input;
  std::string output;
  std::string weight_m;
  std::string weight_n;
};
int cmd_wct(const WctOptions& options, std::ostream& diag);

/// `check-rol`: run one theorem checker (or all applicable) on a bundle
/// loaded from files; prints one JSON report per checker.
struct CheckRolOptions {
  std::string a, b, m, n, l;
  std::string theorem = "all";
  double accept = 1e-9;
  double reject = 1e-6;
};
int cmd_check_rol(const CheckRolOptions& options, std::ostream& out,
                  std::ostream& diag);

/// `verify`: the identity battery on a bundle loaded from files.
struct VerifyOptions {
  std::string a, b, m, n, l;
  double accept = 1e-9;
  double reject = 1e-6;
};
int cmd_verify(const VerifyOptions& options, std::ostream& out,
               std::ostream& diag);

/// `suite`: seeded sweep over generated bundles; writes the summary JSON to
/// --out (or stdout) and exits nonzero on any inconsistency.
struct SuiteOptions {
  std::int64_t trials = 200;
  std::uint64_t seed = 20260401;
  std::vector<std::string> theorems;  // empty => all
  std::string out_path;               // empty => stdout
  double accept = 1e-9;
  double reject = 1e-6;
};
int cmd_suite(const SuiteOptions& options, std::ostream& out,
              std::ostream& diag);

}  // namespace einvert::cli
