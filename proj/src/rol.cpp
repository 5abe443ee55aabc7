#include "einvert/rol.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "einvert/kernels.hpp"
#include "einvert/matricize.hpp"
#include "einvert/rng.hpp"

namespace einvert::rol {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

using einvert::einstein_product;

DenseTensor dot(const DenseTensor& x, const DenseTensor& y) {
  return einstein_product(x, y);
}

DenseTensor dot(const DenseTensor& x, const DenseTensor& y, const DenseTensor& z) {
  return dot(dot(x, y), z);
}

double commute_residual(const DenseTensor& x, const DenseTensor& y) {
  return rel_distance(dot(x, y), dot(y, x));
}

double hermitian_residual(const DenseTensor& t) {
  return rel_distance(conj_transpose(t), t);
}

}  // namespace

// ---------------------------------------------------------------------------
// Names
// ---------------------------------------------------------------------------

std::string family_name(Family family) {
  switch (family) {
    case Family::invertible: return "invertible";
    case Family::diagonal_commuting: return "diagonal_commuting";
    case Family::pinv_pair: return "pinv_pair";
    case Family::random_deficient: return "random_deficient";
    case Family::random_full: return "random_full";
  }
  throw InvalidInputError("unknown family enumerator");
}

Family family_from_name(const std::string& name) {
  if (name == "invertible") return Family::invertible;
  if (name == "diagonal_commuting") return Family::diagonal_commuting;
  if (name == "pinv_pair") return Family::pinv_pair;
  if (name == "random_deficient") return Family::random_deficient;
  if (name == "random_full") return Family::random_full;
  throw InvalidInputError("unknown instance family '" + name + "'");
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::indeterminate: return "indeterminate";
  }
  throw InvalidInputError("unknown verdict enumerator");
}

std::string square_variant_name(SquareVariant variant) {
  switch (variant) {
    case SquareVariant::four_commutations: return "sq.four_commutations";
    case SquareVariant::herm_image_product: return "sq.herm_image_product";
    case SquareVariant::herm_coimage_product: return "sq.herm_coimage_product";
    case SquareVariant::adjoint_a_two: return "sq.adjoint_a_two";
    case SquareVariant::adjoint_b_two: return "sq.adjoint_b_two";
    case SquareVariant::adjoint_both_one: return "sq.adjoint_both_one";
  }
  throw InvalidInputError("unknown square variant enumerator");
}

void CheckTolerance::validate() const {
  if (!(accept > 0.0) || !(accept < reject)) {
    throw InvalidInputError("check tolerance needs 0 < accept < reject");
  }
}

// ---------------------------------------------------------------------------
// Verdict algebra
// ---------------------------------------------------------------------------

namespace {

Verdict verdict_of(double residual, const CheckTolerance& tol) {
  if (residual <= tol.accept) return Verdict::holds;
  if (residual >= tol.reject) return Verdict::fails;
  return Verdict::indeterminate;
}

ConditionEntry make_entry(std::string label, double residual,
                          const CheckTolerance& tol) {
  return ConditionEntry{std::move(label), residual, verdict_of(residual, tol)};
}

Verdict all_of(std::initializer_list<Verdict> verdicts) {
  bool indeterminate = false;
  for (Verdict v : verdicts) {
    if (v == Verdict::fails) return Verdict::fails;
    if (v == Verdict::indeterminate) indeterminate = true;
  }
  return indeterminate ? Verdict::indeterminate : Verdict::holds;
}

Verdict conjunction(const std::vector<ConditionEntry>& entries) {
  bool indeterminate = false;
  for (const ConditionEntry& e : entries) {
    if (e.verdict == Verdict::fails) return Verdict::fails;
    if (e.verdict == Verdict::indeterminate) indeterminate = true;
  }
  return indeterminate ? Verdict::indeterminate : Verdict::holds;
}

Verdict disjunction(std::initializer_list<Verdict> verdicts) {
  bool indeterminate = false;
  for (Verdict v : verdicts) {
    if (v == Verdict::holds) return Verdict::holds;
    if (v == Verdict::indeterminate) indeterminate = true;
  }
  return indeterminate ? Verdict::indeterminate : Verdict::fails;
}

// hypothesis => conclusion. Vacuous (hypothesis fails) is determinately
// consistent; so is a holding conclusion whatever the hypothesis.
void finish_sufficient(ConditionReport& report, Verdict hypothesis,
                       Verdict conclusion) {
  if (hypothesis == Verdict::fails || conclusion == Verdict::holds) {
    report.implication_consistent = true;
    report.indeterminate = false;
  } else if (hypothesis == Verdict::holds && conclusion == Verdict::fails) {
    report.implication_consistent = false;
    report.indeterminate = false;
  } else {
    report.implication_consistent = true;
    report.indeterminate = true;
  }
}

// hypothesis <=> conclusion.
void finish_iff(ConditionReport& report, Verdict hypothesis, Verdict conclusion) {
  if (hypothesis == Verdict::indeterminate || conclusion == Verdict::indeterminate) {
    report.implication_consistent = true;
    report.indeterminate = true;
  } else {
    report.implication_consistent = (hypothesis == conclusion);
    report.indeterminate = false;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Instance generation
// ---------------------------------------------------------------------------

namespace {

std::vector<Complex> gaussian_entries(std::size_t count, Rng& rng) {
  std::vector<Complex> v(count);
  for (Complex& z : v) z = rng.cgaussian();
  return v;
}

DenseTensor gaussian_tensor(const ShapeSignature& sig, Rng& rng) {
  return DenseTensor(sig, gaussian_entries(sig.element_count(), rng));
}

// Q1 * diag(s) * Q2^H with log-uniform s in [1, 2]: flattened condition
// number at most 2.
DenseTensor invertible_tensor(const ShapeSignature& sig, Rng& rng) {
  const std::size_t n = sig.row_count();
  DenseMatrix q1 = orthonormal_columns(DenseMatrix(n, n, gaussian_entries(n * n, rng)));
  DenseMatrix q2 = orthonormal_columns(DenseMatrix(n, n, gaussian_entries(n * n, rng)));
  const double log2 = std::log(2.0);
  for (std::size_t c = 0; c < n; ++c) {
    const double s = std::exp(rng.uniform(0.0, log2));
    for (std::size_t r = 0; r < n; ++r) q1.at(r, c) *= s;
  }
  return unflatten(multiply(q1, adjoint(q2)), sig);
}

// Product of two Gaussian factors through a thin inner dimension: flattened
// rank is min(p, q)/2 rounded down (at least 1), a clean deficiency gap.
DenseTensor deficient_tensor(const ShapeSignature& sig, Rng& rng) {
  const std::size_t p = sig.row_count();
  const std::size_t q = sig.col_count();
  const std::size_t r = std::max<std::size_t>(1, std::min(p, q) / 2);
  DenseMatrix g1(p, r, gaussian_entries(p * r, rng));
  DenseMatrix g2(r, q, gaussian_entries(r * q, rng));
  return unflatten(multiply(g1, g2), sig);
}

Complex unit_phase(Rng& rng) {
  const double theta = kTwoPi * rng.uniform();
  return Complex(std::cos(theta), std::sin(theta));
}

// Diagonal pair with entries of modulus exactly 1 or exactly 0 and
// overlapping zero patterns. Unit modulus keeps the weighted-adjoint side
// conditions exact for diagonal weights; a forced common zero index and a
// forced common support index keep the pair away from trivial corner cases.
std::pair<std::vector<Complex>, std::vector<Complex>> diagonal_pair(
    std::size_t n, Rng& rng) {
  std::vector<Complex> da(n), db(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double drop_a = rng.uniform();
    const Complex phase_a = unit_phase(rng);
    const double drop_b = rng.uniform();
    const Complex phase_b = unit_phase(rng);
    da[i] = drop_a < 0.25 ? Complex(0.0, 0.0) : phase_a;
    db[i] = drop_b < 0.25 ? Complex(0.0, 0.0) : phase_b;
  }
  if (n >= 2) {
    const std::size_t z = static_cast<std::size_t>(rng.integer(n));
    da[z] = db[z] = Complex(0.0, 0.0);
    const std::size_t w =
        (z + 1 + static_cast<std::size_t>(rng.integer(n - 1))) % n;
    da[w] = unit_phase(rng);
    db[w] = unit_phase(rng);
  }
  return {std::move(da), std::move(db)};
}

HpdWeight make_weight(WeightKind kind, const std::vector<std::size_t>& extents,
                      double condition_number, std::uint64_t seed) {
  switch (kind) {
    case WeightKind::identity: return HpdWeight::identity(extents);
    case WeightKind::random_dense: return random_hpd(extents, condition_number, seed);
    case WeightKind::random_diagonal:
      return random_diagonal_hpd(extents, condition_number, seed);
  }
  throw InvalidInputError("unknown weight kind enumerator");
}

}  // namespace

InstanceBundle generate_instance(Family family, const ShapeProfile& shape,
                                 const WeightProfile& weights,
                                 std::uint64_t seed) {
  std::vector<std::size_t> rows = shape.row_modes;
  std::vector<std::size_t> mids = shape.mid_modes;
  std::vector<std::size_t> cols =
      family == Family::pinv_pair ? shape.row_modes : shape.col_modes;

  if (family == Family::diagonal_commuting &&
      !(rows == mids && mids == cols)) {
    throw InvalidInputError(
        "diagonal_commuting needs identical row/mid/col mode extents");
  }
  ShapeSignature sig_a(rows, mids);
  ShapeSignature sig_b(mids, cols);
  if (family == Family::invertible &&
      !(sig_a.row_count() == sig_a.col_count() &&
        sig_b.row_count() == sig_b.col_count())) {
    throw InvalidInputError(
        "invertible needs equal flattened row/mid/col dimensions");
  }

  WeightKind kind = weights.kind;
  if (family == Family::diagonal_commuting && kind == WeightKind::random_dense) {
    kind = WeightKind::random_diagonal;  // keep the diagonal structure weighted diagonally
  }

  HpdWeight m = make_weight(kind, rows, weights.condition_number, derive_seed(seed, 11));
  HpdWeight n = make_weight(kind, mids, weights.condition_number, derive_seed(seed, 12));
  HpdWeight l = family == Family::pinv_pair
                    ? m
                    : make_weight(kind, cols, weights.condition_number,
                                  derive_seed(seed, 13));

  Rng rng(derive_seed(seed, 21));
  switch (family) {
    case Family::invertible: {
      DenseTensor a = invertible_tensor(sig_a, rng);
      DenseTensor b = invertible_tensor(sig_b, rng);
      return InstanceBundle{std::move(a), std::move(b), std::move(m), std::move(n),
                            std::move(l), family, seed, true};
    }
    case Family::diagonal_commuting: {
      auto [da, db] = diagonal_pair(sig_a.row_count(), rng);
      DenseTensor a = diagonal_tensor(rows, da);
      DenseTensor b = diagonal_tensor(rows, db);
      return InstanceBundle{std::move(a), std::move(b), std::move(m), std::move(n),
                            std::move(l), family, seed, true};
    }
    case Family::pinv_pair: {
      DenseTensor a = gaussian_tensor(sig_a, rng);
      DenseTensor b = weighted_mpinverse(a, m, n);
      return InstanceBundle{std::move(a), std::move(b), std::move(m), std::move(n),
                            std::move(l), family, seed, true};
    }
    case Family::random_deficient: {
      DenseTensor a = deficient_tensor(sig_a, rng);
      DenseTensor b = deficient_tensor(sig_b, rng);
      return InstanceBundle{std::move(a), std::move(b), std::move(m), std::move(n),
                            std::move(l), family, seed, std::nullopt};
    }
    case Family::random_full: {
      DenseTensor a = gaussian_tensor(sig_a, rng);
      DenseTensor b = gaussian_tensor(sig_b, rng);
      return InstanceBundle{std::move(a), std::move(b), std::move(m), std::move(n),
                            std::move(l), family, seed, std::nullopt};
    }
  }
  throw InvalidInputError("unknown family enumerator");
}

// ---------------------------------------------------------------------------
// Shared per-bundle products
// ---------------------------------------------------------------------------

namespace {

struct GeneralParts {
  DenseTensor adag;    // A+ with weights (M, N)
  DenseTensor bdag;    // B+ with weights (N, L)
  DenseTensor ash;     // A# with weights (M, N)
  DenseTensor bsh;     // B# with weights (N, L)
  DenseTensor ab;      // A*B
  DenseTensor abdag;   // (A*B)+ with weights (M, L)
  DenseTensor adag_a;  // A+*A
  DenseTensor b_bdag;  // B*B+
  DenseTensor ash_a;   // A#*A
  DenseTensor b_bsh;   // B*B#
};

GeneralParts general_parts(const InstanceBundle& bd) {
  DenseTensor adag = weighted_mpinverse(bd.a, bd.m, bd.n);
  DenseTensor bdag = weighted_mpinverse(bd.b, bd.n, bd.l);
  DenseTensor ash = weighted_conj_transpose(bd.a, bd.m, bd.n);
  DenseTensor bsh = weighted_conj_transpose(bd.b, bd.n, bd.l);
  DenseTensor ab = dot(bd.a, bd.b);
  DenseTensor abdag = weighted_mpinverse(ab, bd.m, bd.l);
  DenseTensor adag_a = dot(adag, bd.a);
  DenseTensor b_bdag = dot(bd.b, bdag);
  DenseTensor ash_a = dot(ash, bd.a);
  DenseTensor b_bsh = dot(bd.b, bsh);
  return GeneralParts{std::move(adag), std::move(bdag), std::move(ash),
                      std::move(bsh), std::move(ab), std::move(abdag),
                      std::move(adag_a), std::move(b_bdag), std::move(ash_a),
                      std::move(b_bsh)};
}

const char* kRolLabel = "(A*B)+ = B+*A+";

ConditionEntry rol_entry(const GeneralParts& p, const CheckTolerance& tol) {
  return make_entry(kRolLabel, rel_distance(p.abdag, dot(p.bdag, p.adag)), tol);
}

}  // namespace

std::pair<bool, double> rol_holds(const InstanceBundle& bundle,
                                  const CheckTolerance& tol) {
  tol.validate();
  GeneralParts p = general_parts(bundle);
  const double residual = rel_distance(p.abdag, dot(p.bdag, p.adag));
  return {residual <= tol.accept, residual};
}

// ---------------------------------------------------------------------------
// Square-case sufficient conditions
// ---------------------------------------------------------------------------

ConditionReport check_square_sufficient(const InstanceBundle& bundle,
                                        SquareVariant variant,
                                        const CheckTolerance& tol) {
  tol.validate();
  const ShapeSignature& sa = bundle.a.signature();
  const ShapeSignature& sb = bundle.b.signature();
  if (!sa.is_square() || sa != sb) {
    throw ShapeMismatchError(
        "square-case checkers need A and B square over identical blocks");
  }

  // One weight pair (M, N) serves every pseudo-inverse in this setting.
  DenseTensor adag = weighted_mpinverse(bundle.a, bundle.m, bundle.n);
  DenseTensor bdag = weighted_mpinverse(bundle.b, bundle.m, bundle.n);
  DenseTensor ab = dot(bundle.a, bundle.b);
  DenseTensor abdag = weighted_mpinverse(ab, bundle.m, bundle.n);
  DenseTensor b_bdag = dot(bundle.b, bdag);
  DenseTensor adag_a = dot(adag, bundle.a);

  ConditionEntry c1 = make_entry("commute(A, B*B+)",
                                 commute_residual(bundle.a, b_bdag), tol);
  ConditionEntry c2 = make_entry("commute(A+, B*B+)",
                                 commute_residual(adag, b_bdag), tol);
  ConditionEntry c3 = make_entry("commute(B, A+*A)",
                                 commute_residual(bundle.b, adag_a), tol);
  ConditionEntry c4 = make_entry("commute(B+, A+*A)",
                                 commute_residual(bdag, adag_a), tol);
  ConditionEntry herm_image = make_entry(
      "herm(M*A*B*B+*A+)",
      hermitian_residual(dot(bundle.m.tensor(), dot(bundle.a, b_bdag, adag))), tol);
  ConditionEntry herm_coimage = make_entry(
      "herm(N*B+*A+*A*B)",
      hermitian_residual(dot(bundle.n.tensor(), dot(bdag, adag_a, bundle.b))), tol);
  ConditionEntry side_a = make_entry(
      "M*A+ = (M*A)^H",
      rel_distance(dot(bundle.m.tensor(), adag),
                   conj_transpose(dot(bundle.m.tensor(), bundle.a))), tol);
  ConditionEntry side_b = make_entry(
      "N*B+ = (N*B)^H",
      rel_distance(dot(bundle.n.tensor(), bdag),
                   conj_transpose(dot(bundle.n.tensor(), bundle.b))), tol);

  ConditionReport report;
  report.theorem_id = square_variant_name(variant);
  Verdict hypothesis = Verdict::indeterminate;
  switch (variant) {
    case SquareVariant::four_commutations:
      report.conditions = {c1, c2, c3, c4};
      hypothesis = conjunction(report.conditions);
      break;
    case SquareVariant::herm_image_product:
      report.conditions = {herm_image, c3, c4};
      hypothesis = conjunction(report.conditions);
      break;
    case SquareVariant::herm_coimage_product:
      report.conditions = {c1, c2, herm_coimage};
      hypothesis = conjunction(report.conditions);
      break;
    case SquareVariant::adjoint_a_two:
      report.conditions = {side_a, c3, c4};
      hypothesis = conjunction(report.conditions);
      break;
    case SquareVariant::adjoint_b_two:
      report.conditions = {side_b, c1, c2};
      hypothesis = conjunction(report.conditions);
      break;
    case SquareVariant::adjoint_both_one:
      report.conditions = {side_a, side_b, c1, c2, c3, c4};
      hypothesis = all_of({side_a.verdict, side_b.verdict,
                           disjunction({c1.verdict, c2.verdict, c3.verdict,
                                        c4.verdict})});
      break;
  }
  report.conclusion =
      make_entry(kRolLabel, rel_distance(abdag, dot(bdag, adag)), tol);
  finish_sufficient(report, hypothesis, report.conclusion.verdict);
  return report;
}

// ---------------------------------------------------------------------------
// Arbitrary-order characterizations
// ---------------------------------------------------------------------------

namespace {

ConditionReport iff_report(std::string theorem_id,
                           std::vector<ConditionEntry> hypotheses,
                           const GeneralParts& p, const CheckTolerance& tol) {
  ConditionReport report;
  report.theorem_id = std::move(theorem_id);
  report.conditions = std::move(hypotheses);
  report.conclusion = rol_entry(p, tol);
  finish_iff(report, conjunction(report.conditions), report.conclusion.verdict);
  return report;
}

}  // namespace

ConditionReport check_iff_two_condition(const InstanceBundle& bundle,
                                        const CheckTolerance& tol) {
  tol.validate();
  GeneralParts p = general_parts(bundle);
  ConditionEntry h1 = make_entry(
      "A+*A*B*B#*A# = B*B#*A#",
      rel_distance(dot(p.adag_a, dot(p.b_bsh, p.ash)), dot(p.b_bsh, p.ash)), tol);
  ConditionEntry h2 = make_entry(
      "B*B+*A#*A*B = A#*A*B",
      rel_distance(dot(p.b_bdag, dot(p.ash_a, bundle.b)), dot(p.ash_a, bundle.b)),
      tol);
  return iff_report("iff.two_condition", {h1, h2}, p, tol);
}

ConditionReport check_iff_weighted_adjoint(const InstanceBundle& bundle,
                                           const CheckTolerance& tol) {
  tol.validate();
  GeneralParts p = general_parts(bundle);
  DenseTensor t1 = dot(p.adag_a, p.b_bsh);
  DenseTensor t2 = dot(p.ash_a, p.b_bdag);
  ConditionEntry h1 = make_entry(
      "(A+*A*B*B#)# = A+*A*B*B#",
      rel_distance(weighted_conj_transpose(t1, bundle.n, bundle.n), t1), tol);
  ConditionEntry h2 = make_entry(
      "(A#*A*B*B+)# = A#*A*B*B+",
      rel_distance(weighted_conj_transpose(t2, bundle.n, bundle.n), t2), tol);
  return iff_report("iff.weighted_adjoint", {h1, h2}, p, tol);
}

ConditionReport check_iff_single(const InstanceBundle& bundle,
                                 const CheckTolerance& tol) {
  tol.validate();
  GeneralParts p = general_parts(bundle);
  ConditionEntry h = make_entry(
      "A+*A*B*B#*A#*A*B*B+ = B*B#*A#*A",
      rel_distance(dot(p.adag_a, dot(p.b_bsh, dot(p.ash_a, p.b_bdag))),
                   dot(p.b_bsh, p.ash_a)),
      tol);
  return iff_report("iff.single", {h}, p, tol);
}

ConditionReport check_iff_projector_form(const InstanceBundle& bundle,
                                         const CheckTolerance& tol) {
  tol.validate();
  GeneralParts p = general_parts(bundle);
  ConditionEntry h1 = make_entry(
      "A+*A*B = B*(A*B)+*A*B",
      rel_distance(dot(p.adag_a, bundle.b), dot(bundle.b, dot(p.abdag, p.ab))),
      tol);
  ConditionEntry h2 = make_entry(
      "B*B+*A# = A#*A*B*(A*B)+",
      rel_distance(dot(p.b_bdag, p.ash), dot(p.ash_a, dot(bundle.b, p.abdag))),
      tol);
  return iff_report("iff.projector_form", {h1, h2}, p, tol);
}

ConditionReport check_iff_mixed_first(const InstanceBundle& bundle,
                                      const CheckTolerance& tol) {
  tol.validate();
  GeneralParts p = general_parts(bundle);
  ConditionEntry h1 = make_entry(
      "herm(L*B+*A+*A*B)",
      hermitian_residual(
          dot(bundle.l.tensor(), dot(p.bdag, dot(p.adag_a, bundle.b)))),
      tol);
  ConditionEntry h2 = make_entry(
      "B*B+*A#*A*B = A#*A*B",
      rel_distance(dot(p.b_bdag, dot(p.ash_a, bundle.b)), dot(p.ash_a, bundle.b)),
      tol);
  return iff_report("iff.mixed_first", {h1, h2}, p, tol);
}

ConditionReport check_iff_mixed_second(const InstanceBundle& bundle,
                                       const CheckTolerance& tol) {
  tol.validate();
  GeneralParts p = general_parts(bundle);
  ConditionEntry h1 = make_entry(
      "A+*A*B*B#*A# = B*B#*A#",
      rel_distance(dot(p.adag_a, dot(p.b_bsh, p.ash)), dot(p.b_bsh, p.ash)), tol);
  ConditionEntry h2 = make_entry(
      "herm(M*A*B*B+*A+)",
      hermitian_residual(dot(bundle.m.tensor(), dot(p.ab, dot(p.bdag, p.adag)))),
      tol);
  return iff_report("iff.mixed_second", {h1, h2}, p, tol);
}

ConditionReport check_rol_implies_commute(const InstanceBundle& bundle,
                                          const CheckTolerance& tol) {
  tol.validate();
  GeneralParts p = general_parts(bundle);
  ConditionReport report;
  report.theorem_id = "rol.implies_commute";
  report.conditions = {rol_entry(p, tol)};
  report.conclusion = make_entry("commute(A+*A, B*B+)",
                                 commute_residual(p.adag_a, p.b_bdag), tol);
  finish_sufficient(report, report.conditions.front().verdict,
                    report.conclusion.verdict);
  return report;
}

// ---------------------------------------------------------------------------
// Identity battery
// ---------------------------------------------------------------------------

ConditionReport check_section3_identities(const InstanceBundle& bundle,
                                          const CheckTolerance& tol) {
  tol.validate();
  GeneralParts p = general_parts(bundle);
  Rng rng(derive_seed(bundle.seed, 7001));

  ConditionReport report;
  report.theorem_id = "identities";
  bool consistent = true;
  bool indeterminate = false;

  std::vector<std::size_t> must_hold;  // indices whose identities are unconditional
  auto push = [&](std::string label, double residual, bool unconditional) {
    report.conditions.push_back(make_entry(std::move(label), residual, tol));
    if (unconditional) must_hold.push_back(report.conditions.size() - 1);
    return report.conditions.back().verdict;
  };

  // -- unconditional transpose identities ----------------------------------
  DenseTensor e = gaussian_tensor(bundle.a.signature(), rng);
  push("(A+E)# = A# + E#",
       rel_distance(
           weighted_conj_transpose(linear_combine(1.0, bundle.a, 1.0, e),
                                   bundle.m, bundle.n),
           linear_combine(1.0, p.ash, 1.0,
                          weighted_conj_transpose(e, bundle.m, bundle.n))),
       true);
  push("(A#)^H = (A^H)# under inverse weights",
       rel_distance(conj_transpose(p.ash),
                    weighted_conj_transpose(conj_transpose(bundle.a),
                                            bundle.n.inverse_weight(),
                                            bundle.m.inverse_weight())),
       true);
  push("(A#)# = A under swapped weights",
       rel_distance(weighted_conj_transpose(p.ash, bundle.n, bundle.m), bundle.a),
       true);
  push("(A*B)# = B#*A#",
       rel_distance(weighted_conj_transpose(p.ab, bundle.m, bundle.l),
                    dot(p.bsh, p.ash)),
       true);

  // -- zero-product contrapositive ------------------------------------------
  {
    const double norm_a = frobenius_norm(bundle.a);
    double violation = 0.0;
    if (norm_a > 0.0) {
      const double ratio =
          frobenius_norm(dot(p.ash, bundle.a)) / (frobenius_norm(p.ash) * norm_a);
      violation = ratio > 1e-12 ? 0.0 : 1.0;
    }
    push("A#*A = O only for A = O", violation, true);
  }

  // -- self-adjointness of the two weighted projectors ----------------------
  DenseTensor a_adag = dot(bundle.a, p.adag);
  push("(A*A+)# = A*A+ under weights (M, M)",
       rel_distance(weighted_conj_transpose(a_adag, bundle.m, bundle.m), a_adag),
       true);
  push("(A+*A)# = A+*A under weights (N, N)",
       rel_distance(weighted_conj_transpose(p.adag_a, bundle.n, bundle.n),
                    p.adag_a),
       true);

  // -- cancellation, on constructed witnesses -------------------------------
  const auto& rows = bundle.a.signature().row_extents;
  const auto& mids = bundle.a.signature().col_extents;
  const auto& cols = bundle.b.signature().col_extents;
  {
    // Right: C = B0 + F*(I - A*A+) makes B0*A*A# = C*A*A# by construction;
    // the lemma then forces B0*A = C*A.
    ShapeSignature witness_sig(cols, rows);
    DenseTensor b0 = gaussian_tensor(witness_sig, rng);
    DenseTensor f = gaussian_tensor(witness_sig, rng);
    DenseTensor perp =
        linear_combine(1.0, identity_tensor(rows), -1.0, a_adag);
    DenseTensor c0 = linear_combine(1.0, b0, 1.0, dot(f, perp));
    push("right-cancel premise: B*A*A# = C*A*A#",
         rel_distance(dot(b0, bundle.a, p.ash), dot(c0, bundle.a, p.ash)), true);
    push("right-cancel conclusion: B*A = C*A",
         rel_distance(dot(b0, bundle.a), dot(c0, bundle.a)), true);
  }
  {
    // Left: C = B0 + (I - A+*A)*F makes A#*A*B0 = A#*A*C by construction;
    // the lemma then forces A*B0 = A*C.
    ShapeSignature witness_sig(mids, cols);
    DenseTensor b0 = gaussian_tensor(witness_sig, rng);
    DenseTensor f = gaussian_tensor(witness_sig, rng);
    DenseTensor perp =
        linear_combine(1.0, identity_tensor(mids), -1.0, p.adag_a);
    DenseTensor c0 = linear_combine(1.0, b0, 1.0, dot(perp, f));
    push("left-cancel premise: A#*A*B = A#*A*C",
         rel_distance(dot(p.ash_a, b0), dot(p.ash_a, c0)), true);
    push("left-cancel conclusion: A*B = A*C",
         rel_distance(dot(bundle.a, b0), dot(bundle.a, c0)), true);
  }

  // -- premise => commutation lemmas ----------------------------------------
  Verdict commute1_premise = push(
      "premise: A+*A*B*B#*A# = B*B#*A#",
      rel_distance(dot(p.adag_a, dot(p.b_bsh, p.ash)), dot(p.b_bsh, p.ash)),
      false);
  Verdict commute1_conclusion = push(
      "conclusion: commute(A+*A, B*B#)", commute_residual(p.adag_a, p.b_bsh),
      false);
  Verdict commute2_premise = push(
      "premise: B*B+*A#*A*B = A#*A*B",
      rel_distance(dot(p.b_bdag, dot(p.ash_a, bundle.b)), dot(p.ash_a, bundle.b)),
      false);
  Verdict commute2_conclusion = push(
      "conclusion: commute(B*B+, A#*A)", commute_residual(p.b_bdag, p.ash_a),
      false);

  // -- three-way commutation equivalence ------------------------------------
  Verdict equiv_commute = push("equiv: commute(A+*A, B*B+)",
                               commute_residual(p.adag_a, p.b_bdag), false);
  Verdict equiv_first = push(
      "equiv: A+*A*B*B+*A# = B*B+*A#",
      rel_distance(dot(p.adag_a, dot(p.b_bdag, p.ash)), dot(p.b_bdag, p.ash)),
      false);
  Verdict equiv_second = push(
      "equiv: B*B+*A+*A*B = A+*A*B",
      rel_distance(dot(p.b_bdag, dot(p.adag_a, bundle.b)), dot(p.adag_a, bundle.b)),
      false);

  // -- absorption, on constructed witnesses ---------------------------------
  {
    // P = A*A+ + alpha*(I - A*A+) satisfies M*P = (M*P)^H and P*A = A,
    // and must then be absorbed by A+ from the right: A+*P = A+.
    const double alpha = rng.uniform(0.3, 1.7);
    DenseTensor perp = linear_combine(1.0, identity_tensor(rows), -1.0, a_adag);
    DenseTensor proj = linear_combine(1.0, a_adag, alpha, perp);
    push("absorb-left premise: herm(M*P)",
         hermitian_residual(dot(bundle.m.tensor(), proj)), true);
    push("absorb-left premise: P*A = A", rel_distance(dot(proj, bundle.a), bundle.a),
         true);
    push("absorb-left conclusion: A+*P = A+",
         rel_distance(dot(p.adag, proj), p.adag), true);
  }
  {
    // P = A+*A + beta*(I - A+*A) satisfies N*P = (N*P)^H and A*P = A,
    // and must then be absorbed by A+ from the left: P*A+ = A+.
    const double beta = rng.uniform(0.3, 1.7);
    DenseTensor perp = linear_combine(1.0, identity_tensor(mids), -1.0, p.adag_a);
    DenseTensor proj = linear_combine(1.0, p.adag_a, beta, perp);
    push("absorb-right premise: herm(N*P)",
         hermitian_residual(dot(bundle.n.tensor(), proj)), true);
    push("absorb-right premise: A*P = A", rel_distance(dot(bundle.a, proj), bundle.a),
         true);
    push("absorb-right conclusion: P*A+ = A+",
         rel_distance(dot(proj, p.adag), p.adag), true);
  }

  // -- accounting ------------------------------------------------------------
  double worst_unconditional = 0.0;
  for (std::size_t idx : must_hold) {
    const ConditionEntry& entry = report.conditions[idx];
    worst_unconditional = std::max(worst_unconditional, entry.residual);
    if (entry.verdict == Verdict::fails) consistent = false;
    if (entry.verdict == Verdict::indeterminate) indeterminate = true;
  }
  auto apply_sufficient = [&](Verdict premise, Verdict conclusion) {
    if (premise == Verdict::fails || conclusion == Verdict::holds) return;
    if (premise == Verdict::holds && conclusion == Verdict::fails) {
      consistent = false;
    } else {
      indeterminate = true;
    }
  };
  apply_sufficient(commute1_premise, commute1_conclusion);
  apply_sufficient(commute2_premise, commute2_conclusion);
  if (equiv_commute == Verdict::indeterminate ||
      equiv_first == Verdict::indeterminate ||
      equiv_second == Verdict::indeterminate) {
    indeterminate = true;
  } else if (!(equiv_commute == equiv_first && equiv_first == equiv_second)) {
    consistent = false;
  }

  report.conclusion = make_entry("all unconditional identities",
                                 worst_unconditional, tol);
  report.implication_consistent = consistent;
  report.indeterminate = indeterminate;
  return report;
}

// ---------------------------------------------------------------------------
// Registry and suite
// ---------------------------------------------------------------------------

const std::vector<std::string>& all_theorem_ids() {
  static const std::vector<std::string> ids = {
      "sq.four_commutations", "sq.herm_image_product", "sq.herm_coimage_product",
      "sq.adjoint_a_two",     "sq.adjoint_b_two",      "sq.adjoint_both_one",
      "iff.two_condition",    "iff.weighted_adjoint",  "iff.single",
      "iff.projector_form",   "iff.mixed_first",       "iff.mixed_second",
      "rol.implies_commute",  "identities",
  };
  return ids;
}

bool is_square_theorem(const std::string& theorem_id) {
  return theorem_id.rfind("sq.", 0) == 0;
}

bool is_iff_theorem(const std::string& theorem_id) {
  return theorem_id.rfind("iff.", 0) == 0;
}

ConditionReport run_checker(const std::string& theorem_id,
                            const InstanceBundle& bundle,
                            const CheckTolerance& tol) {
  if (theorem_id == "sq.four_commutations") {
    return check_square_sufficient(bundle, SquareVariant::four_commutations, tol);
  }
  if (theorem_id == "sq.herm_image_product") {
    return check_square_sufficient(bundle, SquareVariant::herm_image_product, tol);
  }
  if (theorem_id == "sq.herm_coimage_product") {
    return check_square_sufficient(bundle, SquareVariant::herm_coimage_product, tol);
  }
  if (theorem_id == "sq.adjoint_a_two") {
    return check_square_sufficient(bundle, SquareVariant::adjoint_a_two, tol);
  }
  if (theorem_id == "sq.adjoint_b_two") {
    return check_square_sufficient(bundle, SquareVariant::adjoint_b_two, tol);
  }
  if (theorem_id == "sq.adjoint_both_one") {
    return check_square_sufficient(bundle, SquareVariant::adjoint_both_one, tol);
  }
  if (theorem_id == "iff.two_condition") return check_iff_two_condition(bundle, tol);
  if (theorem_id == "iff.weighted_adjoint") {
    return check_iff_weighted_adjoint(bundle, tol);
  }
  if (theorem_id == "iff.single") return check_iff_single(bundle, tol);
  if (theorem_id == "iff.projector_form") {
    return check_iff_projector_form(bundle, tol);
  }
  if (theorem_id == "iff.mixed_first") return check_iff_mixed_first(bundle, tol);
  if (theorem_id == "iff.mixed_second") return check_iff_mixed_second(bundle, tol);
  if (theorem_id == "rol.implies_commute") {
    return check_rol_implies_commute(bundle, tol);
  }
  if (theorem_id == "identities") return check_section3_identities(bundle, tol);
  throw InvalidInputError("unknown theorem id '" + theorem_id + "'");
}

const std::array<const char*, 6>& MarginHistogram::bucket_names() {
  static const std::array<const char*, 6> names = {
      "<=1e-12", "1e-12..1e-9", "1e-9..1e-6", "1e-6..1e-3", "1e-3..1", ">1"};
  return names;
}

void MarginHistogram::add(double residual) {
  std::size_t bucket = 5;
  if (residual <= 1e-12) bucket = 0;
  else if (residual <= 1e-9) bucket = 1;
  else if (residual <= 1e-6) bucket = 2;
  else if (residual <= 1e-3) bucket = 3;
  else if (residual <= 1.0) bucket = 4;
  ++buckets[bucket];
}

namespace {

const std::vector<std::vector<std::size_t>>& square_grid() {
  static const std::vector<std::vector<std::size_t>> grid = {
      {2}, {3}, {2, 2}, {2, 3}, {3, 3}};
  return grid;
}

const std::vector<ShapeProfile>& general_grid() {
  static const std::vector<ShapeProfile> grid = {
      {{2}, {3}, {2}},       {{3}, {2}, {2, 2}},     {{2, 2}, {2}, {3}},
      {{2, 3}, {2, 2}, {3}}, {{2}, {2, 2}, {2, 3}},  {{3, 3}, {2, 3}, {2, 2}},
      {{2, 2}, {3}, {2}},    {{3}, {2, 3}, {3, 3}},
  };
  return grid;
}

ShapeProfile general_profile_for(Family family, std::size_t trial) {
  if (family == Family::invertible || family == Family::diagonal_commuting) {
    const auto& sq = square_grid()[trial % square_grid().size()];
    return ShapeProfile{sq, sq, sq};
  }
  return general_grid()[trial % general_grid().size()];
}

void accumulate(TheoremSummary& summary, const ConditionReport& report) {
  ++summary.trials;
  if (report.indeterminate) {
    ++summary.indeterminate;
  } else if (report.implication_consistent) {
    ++summary.consistent;
  } else {
    ++summary.inconsistent;
  }
  auto feed = [&](const ConditionEntry& entry) {
    summary.histogram.add(entry.residual);
    if (entry.verdict == Verdict::holds) {
      summary.worst_accepted_residual =
          std::max(summary.worst_accepted_residual, entry.residual);
    } else if (entry.verdict == Verdict::fails) {
      if (summary.min_rejected_residual < 0.0 ||
          entry.residual < summary.min_rejected_residual) {
        summary.min_rejected_residual = entry.residual;
      }
    }
  };
  for (const ConditionEntry& entry : report.conditions) feed(entry);
  feed(report.conclusion);
}

}  // namespace

SuiteSummary run_suite(const std::vector<std::string>& theorem_ids,
                       std::int64_t trial_count, std::uint64_t master_seed,
                       const CheckTolerance& tol) {
  tol.validate();
  if (trial_count < 1) throw InvalidInputError("suite needs at least one trial");
  const std::vector<std::string>& ids =
      theorem_ids.empty() ? all_theorem_ids() : theorem_ids;
  const auto& known = all_theorem_ids();
  for (const std::string& id : ids) {
    if (std::find(known.begin(), known.end(), id) == known.end()) {
      throw InvalidInputError("unknown theorem id '" + id + "'");
    }
  }

  SuiteSummary summary;
  summary.seed = master_seed;
  summary.trials = trial_count;
  summary.tolerance = tol;
  summary.theorems.reserve(ids.size());
  for (const std::string& id : ids) {
    TheoremSummary ts;
    ts.theorem_id = id;
    summary.theorems.push_back(std::move(ts));
  }

  static const Family kFamilies[] = {
      Family::invertible, Family::diagonal_commuting, Family::pinv_pair,
      Family::random_deficient, Family::random_full};

  const bool wants_square =
      std::any_of(ids.begin(), ids.end(),
                  [](const std::string& id) { return is_square_theorem(id); });
  const bool wants_general =
      std::any_of(ids.begin(), ids.end(),
                  [](const std::string& id) { return !is_square_theorem(id); });

  for (std::int64_t trial = 0; trial < trial_count; ++trial) {
    const std::uint64_t trial_seed = derive_seed(master_seed, static_cast<std::uint64_t>(trial));
    const Family family = kFamilies[trial % 5];
    WeightProfile wp;
    wp.kind = ((trial / 5) % 2 == 0) ? WeightKind::identity : WeightKind::random_dense;
    wp.condition_number = 10.0;

    std::optional<InstanceBundle> general_bundle;
    if (wants_general) {
      general_bundle = generate_instance(
          family, general_profile_for(family, static_cast<std::size_t>(trial)),
          wp, derive_seed(trial_seed, 1));
    }
    std::optional<InstanceBundle> square_bundle;
    if (wants_square) {
      const auto& sq = square_grid()[static_cast<std::size_t>(trial) % square_grid().size()];
      square_bundle = generate_instance(family, ShapeProfile{sq, sq, sq}, wp,
                                        derive_seed(trial_seed, 2));
    }

    // Hypothesis verdicts of the determinate iff characterizations must agree
    // bundle-by-bundle (they all characterize the same law).
    bool saw_holds = false;
    bool saw_fails = false;

    for (std::size_t k = 0; k < ids.size(); ++k) {
      const InstanceBundle& bundle =
          is_square_theorem(ids[k]) ? *square_bundle : *general_bundle;
      ConditionReport report = run_checker(ids[k], bundle, tol);
      accumulate(summary.theorems[k], report);
      if (is_iff_theorem(ids[k])) {
        switch (conjunction(report.conditions)) {
          case Verdict::holds: saw_holds = true; break;
          case Verdict::fails: saw_fails = true; break;
          case Verdict::indeterminate: break;
        }
      }
    }
    if (saw_holds && saw_fails) ++summary.iff_agreement_failures;
  }

  summary.total_inconsistent = 0;
  for (const TheoremSummary& ts : summary.theorems) {
    summary.total_inconsistent += ts.inconsistent;
  }
  summary.pass = summary.total_inconsistent == 0 && summary.iff_agreement_failures == 0;
  return summary;
}

}  // namespace einvert::rol
