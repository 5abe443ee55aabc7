#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "einvert/cli.hpp"
#include "einvert/errors.hpp"

namespace {

using namespace einvert::cli;

void add_bundle_inputs(CLI::App* cmd, std::string& a, std::string& b,
                       std::string& m, std::string& n, std::string& l) {
  cmd->add_option("--a", a, "tensor file for A")->required();
  cmd->add_option("--b", b, "tensor file for B")->required();
  cmd->add_option("--m", m, "weight tensor on A's row block (default: identity)");
  cmd->add_option("--n", n, "weight tensor on the shared mid block (default: identity)");
  cmd->add_option("--l", l, "weight tensor on B's column block (default: identity)");
}

void add_verdict_thresholds(CLI::App* cmd, double& accept, double& reject) {
  cmd->add_option("--accept", accept,
                  "residuals at or below this count as holding");
  cmd->add_option("--reject", reject,
                  "residuals at or above this count as failing");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "einvert: dense complex tensor pseudo-inverses and reverse-order-law "
      "checks under the Einstein product"};
  app.require_subcommand(1);

  GenOptions gen;
  gen.rows = {2};
  gen.mids = {2};
  gen.cols = {2};
  CLI::App* gen_cmd =
      app.add_subcommand("gen", "generate an instance bundle into a directory");
  gen_cmd->add_option("--family", gen.family,
                      "invertible | diagonal_commuting | pinv_pair | "
                      "random_deficient | random_full");
  gen_cmd->add_option("--rows", gen.rows, "row block mode extents")
      ->delimiter(',');
  gen_cmd->add_option("--mids", gen.mids, "mid block mode extents")
      ->delimiter(',');
  gen_cmd->add_option("--cols", gen.cols, "column block mode extents")
      ->delimiter(',');
  gen_cmd->add_option("--weights", gen.weights,
                      "identity | random | diagonal");
  gen_cmd->add_option("--condition-number", gen.condition_number,
                      "spectral condition of each random weight");
  gen_cmd->add_option("--seed", gen.seed, "generator seed");
  gen_cmd->add_option("--out", gen.out_dir, "output directory")->required();

  PinvOptions pinv;
  CLI::App* pinv_cmd = app.add_subcommand(
      "pinv", "pseudo-inverse of a tensor file (weighted when both weights given)");
  pinv_cmd->add_option("--in", pinv.input, "input tensor file")->required();
  pinv_cmd->add_option("--out", pinv.output, "output tensor file")->required();
  pinv_cmd->add_option("--weight-m", pinv.weight_m, "row-side weight tensor");
  pinv_cmd->add_option("--weight-n", pinv.weight_n, "column-side weight tensor");
  pinv_cmd->add_option("--tol", pinv.tolerance,
                       "verdict tolerance (default 1e-10 unweighted, 1e-9 weighted)");

  WctOptions wct;
  CLI::App* wct_cmd = app.add_subcommand(
      "wct", "weighted conjugate transpose of a tensor file");
  wct_cmd->add_option("--in", wct.input, "input tensor file")->required();
  wct_cmd->add_option("--out", wct.output, "output tensor file")->required();
  wct_cmd->add_option("--weight-m", wct.weight_m, "row-side weight tensor");
  wct_cmd->add_option("--weight-n", wct.weight_n, "column-side weight tensor");

  CheckRolOptions check;
  CLI::App* check_cmd = app.add_subcommand(
      "check-rol", "run reverse-order-law theorem checkers on a bundle");
  add_bundle_inputs(check_cmd, check.a, check.b, check.m, check.n, check.l);
  check_cmd->add_option("--theorem", check.theorem,
                        "theorem id, or 'all' for every applicable checker");
  add_verdict_thresholds(check_cmd, check.accept, check.reject);

  VerifyOptions verify;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "run the transpose/pseudo-inverse identity battery on a bundle");
  add_bundle_inputs(verify_cmd, verify.a, verify.b, verify.m, verify.n,
                    verify.l);
  add_verdict_thresholds(verify_cmd, verify.accept, verify.reject);

  SuiteOptions suite;
  CLI::App* suite_cmd = app.add_subcommand(
      "suite", "seeded sweep of all checkers over generated bundles");
  suite_cmd->add_option("--trials", suite.trials, "number of trials");
  suite_cmd->add_option("--seed", suite.seed, "master seed");
  suite_cmd
      ->add_option("--theorem", suite.theorems,
                   "theorem id (repeatable; default: all)")
      ->delimiter(',');
  suite_cmd->add_option("--out", suite.out_path,
                        "summary JSON path (default: stdout)");
  add_verdict_thresholds(suite_cmd, suite.accept, suite.reject);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, std::cerr);
    if (pinv_cmd->parsed()) return cmd_pinv(pinv, std::cerr);
    if (wct_cmd->parsed()) return cmd_wct(wct, std::cerr);
    if (check_cmd->parsed()) return cmd_check_rol(check, std::cout, std::cerr);
    if (verify_cmd->parsed()) return cmd_verify(verify, std::cout, std::cerr);
    if (suite_cmd->parsed()) return cmd_suite(suite, std::cout, std::cerr);
  } catch (const einvert::EinvertError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << '\n';
    return kExitUsage;
  }
  std::cerr << "error: no subcommand selected\n";
  return kExitUsage;
}
