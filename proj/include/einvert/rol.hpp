#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "einvert/geninv.hpp"
#include "einvert/tensor.hpp"
#include "einvert/weights.hpp"

namespace einvert::rol {

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

/// Construction family of a test instance. Determines the rank / commutation
/// structure of the pair (A, B) and, with it, whether the reverse-order law
/// (A∘B)⁺ = B⁺∘A⁺ is expected to hold.
enum class Family {
  invertible,          // square, well-conditioned flattened factors; law holds
  diagonal_commuting,  // diagonal A, B with unit-modulus-or-zero entries; law holds
  pinv_pair,           // B = A⁺ (weighted); law holds
  random_deficient,    // independent rank-deficient factors; law fails generically
  random_full,         // independent dense Gaussian factors; law fails generically
};

std::string family_name(Family family);
Family family_from_name(const std::string& name);

/// How instance weights are drawn.
enum class WeightKind { identity, random_dense, random_diagonal };

struct WeightProfile {
  WeightKind kind = WeightKind::identity;
  double condition_number = 10.0;  // spectral condition of each random weight
};

/// Mode extents of the three blocks: A has signature (rows | mids),
/// B has (mids | cols), so A∘B has (rows | cols).
struct ShapeProfile {
  std::vector<std::size_t> row_modes;
  std::vector<std::size_t> mid_modes;
  std::vector<std::size_t> col_modes;
};

/// A fully materialized test instance: the pair, its three weights
/// (M on rows, N on mids, L on cols), and its provenance.
struct InstanceBundle {
  DenseTensor a;
  DenseTensor b;
  HpdWeight m;
  HpdWeight n;
  HpdWeight l;
  Family family = Family::random_full;
  std::uint64_t seed = 0;
  std::optional<bool> expected_rol;
};

/// Deterministically generates an instance. Family-specific shape rules:
///  - invertible requires prod(rows) == prod(mids) == prod(cols);
///  - diagonal_commuting requires rows == mids == cols (exact extents) and
///    coerces a random_dense weight request to random_diagonal so the
///    diagonal structure survives weighting;
///  - pinv_pair ignores `col_modes` (the col block must equal the row block
///    because B = A⁺) and reuses M as L.
/// Same arguments => bit-identical bundle.
InstanceBundle generate_instance(Family family, const ShapeProfile& shape,
                                 const WeightProfile& weights,
                                 std::uint64_t seed);

// ---------------------------------------------------------------------------
// Verdicts and reports
// ---------------------------------------------------------------------------

/// Two-threshold decision: residuals at or below `accept` count as "holds",
/// at or above `reject` as "fails", anything between is indeterminate and
/// excluded from implication accounting.
struct CheckTolerance {
  double accept = 1e-9;
  double reject = 1e-6;

  void validate() const;  // requires 0 < accept < reject
};

enum class Verdict { holds, fails, indeterminate };

std::string verdict_name(Verdict v);

/// One checked condition or conclusion: a label in plain math notation
/// ("+" = pseudo-inverse, "#" = weighted conjugate transpose), its relative
/// residual, and the verdict under the two-threshold rule.
struct ConditionEntry {
  std::string label;
  double residual = 0.0;
  Verdict verdict = Verdict::indeterminate;
};

/// Outcome of one theorem checker on one bundle.
///
/// `implication_consistent` states that the observed verdicts do not
/// contradict the theorem's logical form (sufficient: not all-hypotheses-hold
/// with conclusion-fails; iff: hypothesis conjunction and conclusion agree).
/// `indeterminate` is set when any verdict involved fell between the
/// thresholds; such reports are consistent by convention and excluded from
/// pass/fail counting.
struct ConditionReport {
  std::string theorem_id;
  std::vector<ConditionEntry> conditions;
  ConditionEntry conclusion;
  bool implication_consistent = true;
  bool indeterminate = false;
};

// ---------------------------------------------------------------------------
// Checkers
// ---------------------------------------------------------------------------

/// Residual and verdict of the reverse-order law itself:
/// (A∘B)⁺_{M,L} vs B⁺_{N,L} ∘ A⁺_{M,N}.
std::pair<bool, double> rol_holds(const InstanceBundle& bundle,
                                  const CheckTolerance& tol = {});

/// Variants of the square-case sufficient theorems. All blocks must carry
/// identical extents and the single weight pair (M, N) is used for every
/// pseudo-inverse. The four commutation hypotheses are
///   c1: A ∘ (B∘B⁺) = (B∘B⁺) ∘ A        c2: A⁺ ∘ (B∘B⁺) = (B∘B⁺) ∘ A⁺
///   c3: B ∘ (A⁺∘A) = (A⁺∘A) ∘ B        c4: B⁺ ∘ (A⁺∘A) = (A⁺∘A) ∘ B⁺
/// and the adjoint side conditions are
///   sa: M∘A⁺ = (M∘A)^H                 sb: N∘B⁺ = (N∘B)^H.
enum class SquareVariant {
  four_commutations,     // c1..c4                      => law
  herm_image_product,    // hermitian(M∘A∘B∘B⁺∘A⁺), c3, c4 => law
  herm_coimage_product,  // c1, c2, hermitian(N∘B⁺∘A⁺∘A∘B) => law
  adjoint_a_two,         // sa, then c3, c4             => law
  adjoint_b_two,         // sb, then c1, c2             => law
  adjoint_both_one,      // sa, sb, then any one of c1..c4 => law
};

std::string square_variant_name(SquareVariant variant);

ConditionReport check_square_sufficient(const InstanceBundle& bundle,
                                        SquareVariant variant,
                                        const CheckTolerance& tol = {});

// Arbitrary-order characterizations (A: rows x mids, B: mids x cols,
// weights M, N, L). Each is an "iff": hypothesis conjunction must match the
// law's verdict.

/// Two product identities:
///   h1: A⁺∘A∘B∘B#∘A# = B∘B#∘A#
///   h2: B∘B⁺∘A#∘A∘B  = A#∘A∘B
ConditionReport check_iff_two_condition(const InstanceBundle& bundle,
                                        const CheckTolerance& tol = {});

/// Two weighted-transpose fixed points over the mid block:
///   h1: (A⁺∘A∘B∘B#)# = A⁺∘A∘B∘B#      (weights (N, N))
///   h2: (A#∘A∘B∘B⁺)# = A#∘A∘B∘B⁺      (weights (N, N))
ConditionReport check_iff_weighted_adjoint(const InstanceBundle& bundle,
                                           const CheckTolerance& tol = {});

/// Single product identity:
///   h: A⁺∘A∘B∘B#∘A#∘A∘B∘B⁺ = B∘B#∘A#∘A
ConditionReport check_iff_single(const InstanceBundle& bundle,
                                 const CheckTolerance& tol = {});

/// Projector form:
///   h1: A⁺∘A∘B = B∘(A∘B)⁺∘A∘B
///   h2: B∘B⁺∘A# = A#∘A∘B∘(A∘B)⁺
ConditionReport check_iff_projector_form(const InstanceBundle& bundle,
                                         const CheckTolerance& tol = {});

/// Mixed pair #1:
///   h1: hermitian(L∘B⁺∘A⁺∘A∘B)
///   h2: B∘B⁺∘A#∘A∘B = A#∘A∘B
ConditionReport check_iff_mixed_first(const InstanceBundle& bundle,
                                      const CheckTolerance& tol = {});

/// Mixed pair #2:
///   h1: A⁺∘A∘B∘B#∘A# = B∘B#∘A#
///   h2: hermitian(M∘A∘B∘B⁺∘A⁺)
ConditionReport check_iff_mixed_second(const InstanceBundle& bundle,
                                       const CheckTolerance& tol = {});

/// One-way necessity: law holds => A⁺∘A commutes with B∘B⁺ (both live on
/// the mid block).
ConditionReport check_rol_implies_commute(const InstanceBundle& bundle,
                                          const CheckTolerance& tol = {});

/// Identity battery for the weighted conjugate transpose and the weighted
/// pseudo-inverse on one bundle: additivity, conjugation/involution/reverse
/// laws of #, the zero-product contrapositive, self-adjointness of the two
/// projectors, constructed cancellation and absorption instances, the two
/// premise->commutation lemmas, and the three-way commutation equivalence.
ConditionReport check_section3_identities(const InstanceBundle& bundle,
                                          const CheckTolerance& tol = {});

// ---------------------------------------------------------------------------
// Theorem registry and suite driver
// ---------------------------------------------------------------------------

/// Stable checker identifiers, used by the CLI and the suite summary:
///   sq.four_commutations, sq.herm_image_product, sq.herm_coimage_product,
///   sq.adjoint_a_two, sq.adjoint_b_two, sq.adjoint_both_one,
///   iff.two_condition, iff.weighted_adjoint, iff.single, iff.projector_form,
///   iff.mixed_first, iff.mixed_second, rol.implies_commute, identities.
const std::vector<std::string>& all_theorem_ids();
bool is_square_theorem(const std::string& theorem_id);
bool is_iff_theorem(const std::string& theorem_id);

/// Runs one checker by id (throws InvalidInputError for an unknown id, or
/// ShapeMismatchError when a square checker meets a non-square bundle).
ConditionReport run_checker(const std::string& theorem_id,
                            const InstanceBundle& bundle,
                            const CheckTolerance& tol = {});

/// log10 residual histogram over all condition/conclusion entries.
/// Buckets: <=1e-12, (1e-12,1e-9], (1e-9,1e-6], (1e-6,1e-3], (1e-3,1], >1.
struct MarginHistogram {
  std::array<std::int64_t, 6> buckets{};
  static const std::array<const char*, 6>& bucket_names();
  void add(double residual);
};

struct TheoremSummary {
  std::string theorem_id;
  std::int64_t trials = 0;
  std::int64_t consistent = 0;
  std::int64_t inconsistent = 0;
  std::int64_t indeterminate = 0;
  double worst_accepted_residual = 0.0;  // max residual among "holds" entries
  double min_rejected_residual = -1.0;   // min residual among "fails" entries, -1 if none
  MarginHistogram histogram;
};

struct SuiteSummary {
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  CheckTolerance tolerance;
  std::vector<TheoremSummary> theorems;
  /// Bundles where two determinate iff checkers disagreed on whether their
  /// hypothesis conjunction holds.
  std::int64_t iff_agreement_failures = 0;
  std::int64_t total_inconsistent = 0;
  bool pass = false;  // <=> total_inconsistent == 0 and agreement failures == 0
};

/// Serial, deterministic sweep: for each trial a family (round-robin over
/// all five), a weight profile (alternating identity / random kappa=10) and
/// a shape from a fixed grid (mode extents in {2,3}, block orders in {1,2},
/// flattened dimensions <= 9) are derived from the master seed; every
/// requested checker runs on a compatible bundle (square checkers get a
/// square bundle generated from the same trial seed). Same arguments =>
/// identical summary.
SuiteSummary run_suite(const std::vector<std::string>& theorem_ids,
                       std::int64_t trial_count, std::uint64_t master_seed,
                       const CheckTolerance& tol = {});

}  // namespace einvert::rol
