#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "einvert/matricize.hpp"
#include "einvert/rol.hpp"

using namespace einvert;
using namespace einvert::rol;

namespace {

const CheckTolerance kTol{};  // accept 1e-9, reject 1e-6

double offdiag_norm(const DenseTensor& t) {
  DenseMatrix f = flatten(t);
  double sum = 0.0;
  for (std::size_t r = 0; r < f.rows; ++r)
    for (std::size_t c = 0; c < f.cols; ++c)
      if (r != c) sum += std::norm(f.at(r, c));
  return std::sqrt(sum);
}

void check_consistent_and_holds(const ConditionReport& report) {
  CAPTURE(report.theorem_id);
  CAPTURE(report.conclusion.residual);
  CHECK(report.implication_consistent);
  CHECK_FALSE(report.indeterminate);
  CHECK(report.conclusion.verdict == Verdict::holds);
}

}  // namespace

TEST_CASE("names round trip") {
  for (Family f : {Family::invertible, Family::diagonal_commuting,
                   Family::pinv_pair, Family::random_deficient,
                   Family::random_full}) {
    CHECK(family_from_name(family_name(f)) == f);
  }
  CHECK_THROWS_AS(family_from_name("bogus"), InvalidInputError);

  CHECK(verdict_name(Verdict::holds) == "holds");
  CHECK(verdict_name(Verdict::fails) == "fails");
  CHECK(verdict_name(Verdict::indeterminate) == "indeterminate");

  std::set<std::string> variant_names;
  for (SquareVariant v :
       {SquareVariant::four_commutations, SquareVariant::herm_image_product,
        SquareVariant::herm_coimage_product, SquareVariant::adjoint_a_two,
        SquareVariant::adjoint_b_two, SquareVariant::adjoint_both_one}) {
    variant_names.insert(square_variant_name(v));
  }
  CHECK(variant_names.size() == 6);
}

TEST_CASE("check tolerance validation") {
  CHECK_NOTHROW(kTol.validate());
  CHECK_THROWS_AS((CheckTolerance{0.0, 1e-6}.validate()), InvalidInputError);
  CHECK_THROWS_AS((CheckTolerance{1e-6, 1e-6}.validate()), InvalidInputError);
  CHECK_THROWS_AS((CheckTolerance{1e-6, 1e-9}.validate()), InvalidInputError);
}

TEST_CASE("instance generation is deterministic and seed-sensitive") {
  ShapeProfile shape{{2}, {3}, {2, 2}};
  WeightProfile weights{WeightKind::random_dense, 10.0};
  InstanceBundle one = generate_instance(Family::random_full, shape, weights, 5);
  InstanceBundle two = generate_instance(Family::random_full, shape, weights, 5);
  CHECK(one.a == two.a);
  CHECK(one.b == two.b);
  CHECK(one.m.tensor() == two.m.tensor());
  CHECK(one.n.tensor() == two.n.tensor());
  CHECK(one.l.tensor() == two.l.tensor());
  CHECK(one.seed == 5);
  CHECK_FALSE(one.expected_rol.has_value());

  InstanceBundle other = generate_instance(Family::random_full, shape, weights, 6);
  CHECK_FALSE(one.a == other.a);
}

TEST_CASE("invertible family satisfies the reverse-order law") {
  // Equal flattened products are enough; the extents may differ.
  InstanceBundle bundle = generate_instance(
      Family::invertible, ShapeProfile{{2, 2}, {4}, {2, 2}},
      WeightProfile{WeightKind::random_dense, 10.0}, 11);
  REQUIRE(bundle.expected_rol.has_value());
  CHECK(*bundle.expected_rol);
  auto [ok, residual] = rol_holds(bundle);
  CAPTURE(residual);
  CHECK(ok);
  CHECK(residual <= 1e-9);

  CHECK_THROWS_AS(generate_instance(Family::invertible,
                                    ShapeProfile{{2}, {3}, {2}},
                                    WeightProfile{}, 1),
                  InvalidInputError);
}

TEST_CASE("diagonal commuting family") {
  InstanceBundle bundle = generate_instance(
      Family::diagonal_commuting, ShapeProfile{{2, 2}, {2, 2}, {2, 2}},
      WeightProfile{WeightKind::random_dense, 10.0}, 12);

  // Both factors are diagonal with unit-modulus-or-zero entries.
  CHECK(offdiag_norm(bundle.a) == 0.0);
  CHECK(offdiag_norm(bundle.b) == 0.0);
  DenseMatrix fa = flatten(bundle.a), fb = flatten(bundle.b);
  bool common_zero = false, common_support = false;
  for (std::size_t i = 0; i < fa.rows; ++i) {
    const double ma = std::abs(fa.at(i, i)), mb = std::abs(fb.at(i, i));
    CHECK((std::abs(ma) <= 1e-15 || std::abs(ma - 1.0) <= 1e-15));
    CHECK((std::abs(mb) <= 1e-15 || std::abs(mb - 1.0) <= 1e-15));
    if (ma == 0.0 && mb == 0.0) common_zero = true;
    if (ma > 0.5 && mb > 0.5) common_support = true;
  }
  CHECK(common_zero);
  CHECK(common_support);

  // The pair commutes and a dense weight request was coerced to diagonal.
  CHECK(einstein_product(bundle.a, bundle.b) ==
        einstein_product(bundle.b, bundle.a));
  CHECK(offdiag_norm(bundle.m.tensor()) == 0.0);
  CHECK(offdiag_norm(bundle.n.tensor()) == 0.0);

  REQUIRE(bundle.expected_rol.has_value());
  CHECK(*bundle.expected_rol);
  auto [ok, residual] = rol_holds(bundle);
  CAPTURE(residual);
  CHECK(ok);

  // The three blocks must carry identical extents, not just equal products.
  CHECK_THROWS_AS(generate_instance(Family::diagonal_commuting,
                                    ShapeProfile{{4}, {2, 2}, {4}},
                                    WeightProfile{}, 1),
                  InvalidInputError);
}

TEST_CASE("pseudo-inverse pair family") {
  // col_modes is ignored: B = A+ forces the col block to equal the row block.
  InstanceBundle bundle = generate_instance(
      Family::pinv_pair, ShapeProfile{{2, 3}, {2}, {7}},
      WeightProfile{WeightKind::random_dense, 10.0}, 13);
  CHECK(bundle.b.signature().row_extents == std::vector<std::size_t>{2});
  CHECK(bundle.b.signature().col_extents == std::vector<std::size_t>{2, 3});
  CHECK(bundle.b == weighted_mpinverse(bundle.a, bundle.m, bundle.n));
  CHECK(bundle.l.tensor() == bundle.m.tensor());

  REQUIRE(bundle.expected_rol.has_value());
  CHECK(*bundle.expected_rol);
  auto [ok, residual] = rol_holds(bundle);
  CAPTURE(residual);
  CHECK(ok);
}

TEST_CASE("iff checkers agree with the law on law-abiding families") {
  const std::vector<InstanceBundle> bundles = {
      generate_instance(Family::invertible, ShapeProfile{{2}, {2}, {2}},
                        WeightProfile{WeightKind::random_dense, 10.0}, 21),
      generate_instance(Family::diagonal_commuting,
                        ShapeProfile{{3}, {3}, {3}},
                        WeightProfile{WeightKind::random_diagonal, 10.0}, 22),
      generate_instance(Family::pinv_pair, ShapeProfile{{2, 2}, {3}, {}},
                        WeightProfile{WeightKind::random_dense, 10.0}, 23),
  };
  for (const InstanceBundle& bundle : bundles) {
    CAPTURE(family_name(bundle.family));
    for (const auto& checker :
         {check_iff_two_condition, check_iff_weighted_adjoint, check_iff_single,
          check_iff_projector_form, check_iff_mixed_first,
          check_iff_mixed_second}) {
      ConditionReport report = checker(bundle, kTol);
      check_consistent_and_holds(report);
      for (const ConditionEntry& entry : report.conditions) {
        CAPTURE(entry.label);
        CHECK(entry.verdict == Verdict::holds);
      }
    }
  }
}

TEST_CASE("iff checkers detect a failing law") {
  InstanceBundle bundle = generate_instance(
      Family::random_full, ShapeProfile{{2, 2}, {3}, {2}},
      WeightProfile{WeightKind::random_dense, 10.0}, 12345);
  auto [ok, residual] = rol_holds(bundle);
  CHECK_FALSE(ok);
  CHECK(residual >= 1e-6);

  for (const auto& checker :
       {check_iff_two_condition, check_iff_weighted_adjoint, check_iff_single,
        check_iff_projector_form, check_iff_mixed_first,
        check_iff_mixed_second}) {
    ConditionReport report = checker(bundle, kTol);
    CAPTURE(report.theorem_id);
    CHECK(report.implication_consistent);
    CHECK_FALSE(report.indeterminate);
    CHECK(report.conclusion.verdict == Verdict::fails);
    // Consistency of a determinate iff with a failing conclusion requires a
    // failing hypothesis conjunction.
    bool some_hypothesis_fails = false;
    for (const ConditionEntry& entry : report.conditions)
      if (entry.verdict == Verdict::fails) some_hypothesis_fails = true;
    CHECK(some_hypothesis_fails);
  }
}

TEST_CASE("square sufficient variants") {
  InstanceBundle diagonal = generate_instance(
      Family::diagonal_commuting, ShapeProfile{{2, 2}, {2, 2}, {2, 2}},
      WeightProfile{WeightKind::random_diagonal, 10.0}, 31);
  for (SquareVariant v :
       {SquareVariant::four_commutations, SquareVariant::herm_image_product,
        SquareVariant::herm_coimage_product, SquareVariant::adjoint_a_two,
        SquareVariant::adjoint_b_two, SquareVariant::adjoint_both_one}) {
    ConditionReport report = check_square_sufficient(diagonal, v, kTol);
    CAPTURE(square_variant_name(v));
    check_consistent_and_holds(report);
    for (const ConditionEntry& entry : report.conditions) {
      CAPTURE(entry.label);
      CHECK(entry.verdict == Verdict::holds);
    }
  }

  // Invertible square pair: the commutation hypotheses hold exactly
  // (both projectors are the identity), so the strongest variant fires.
  InstanceBundle invertible = generate_instance(
      Family::invertible, ShapeProfile{{3}, {3}, {3}},
      WeightProfile{WeightKind::random_dense, 10.0}, 32);
  ConditionReport four =
      check_square_sufficient(invertible, SquareVariant::four_commutations, kTol);
  check_consistent_and_holds(four);
  for (const ConditionEntry& entry : four.conditions)
    CHECK(entry.verdict == Verdict::holds);

  // A rank-deficient square pair fails the law, so the hypotheses must fail
  // too: a sufficient implication stays consistent only vacuously here.
  InstanceBundle deficient = generate_instance(
      Family::random_deficient, ShapeProfile{{3}, {3}, {3}},
      WeightProfile{WeightKind::random_dense, 10.0}, 33);
  for (SquareVariant v :
       {SquareVariant::four_commutations, SquareVariant::adjoint_both_one}) {
    ConditionReport report = check_square_sufficient(deficient, v, kTol);
    CAPTURE(square_variant_name(v));
    CHECK(report.implication_consistent);
    CHECK_FALSE(report.indeterminate);
    CHECK(report.conclusion.verdict == Verdict::fails);
  }

  // Non-square bundles are rejected.
  InstanceBundle rect = generate_instance(Family::random_full,
                                          ShapeProfile{{2}, {3}, {2}},
                                          WeightProfile{}, 34);
  CHECK_THROWS_AS(
      check_square_sufficient(rect, SquareVariant::four_commutations, kTol),
      ShapeMismatchError);
}

TEST_CASE("law implies projector commutation") {
  InstanceBundle good = generate_instance(
      Family::pinv_pair, ShapeProfile{{2, 2}, {3}, {}},
      WeightProfile{WeightKind::random_dense, 10.0}, 41);
  ConditionReport report = check_rol_implies_commute(good, kTol);
  check_consistent_and_holds(report);
  REQUIRE(report.conditions.size() == 1);
  CHECK(report.conditions[0].verdict == Verdict::holds);

  InstanceBundle bad = generate_instance(
      Family::random_full, ShapeProfile{{2, 2}, {3}, {2}},
      WeightProfile{WeightKind::random_dense, 10.0}, 12345);
  ConditionReport vacuous = check_rol_implies_commute(bad, kTol);
  CHECK(vacuous.implication_consistent);
  CHECK(vacuous.conditions[0].verdict == Verdict::fails);
}

TEST_CASE("identity battery holds on arbitrary bundles") {
  for (std::uint64_t seed : {51, 52, 53}) {
    InstanceBundle bundle = generate_instance(
        Family::random_full, ShapeProfile{{2, 2}, {3}, {2}},
        WeightProfile{WeightKind::random_dense, 10.0}, seed);
    ConditionReport report = check_section3_identities(bundle, kTol);
    CAPTURE(seed);
    check_consistent_and_holds(report);
  }
}

TEST_CASE("identity battery is sharp on an identity bundle") {
  DenseTensor eye = identity_tensor({3});
  HpdWeight w = HpdWeight::identity({3});
  InstanceBundle bundle{eye, eye, w, w, w, Family::invertible, 0, true};
  ConditionReport report = check_section3_identities(bundle, kTol);
  check_consistent_and_holds(report);
  for (const ConditionEntry& entry : report.conditions) {
    CAPTURE(entry.label);
    CHECK(entry.residual <= 1e-12);
  }
}

TEST_CASE("margin histogram buckets") {
  MarginHistogram h;
  h.add(1e-13);
  h.add(1e-12);  // boundary: still the first bucket
  h.add(5e-10);
  h.add(1e-7);
  h.add(1e-4);
  h.add(0.5);
  h.add(2.0);
  CHECK(h.buckets == std::array<std::int64_t, 6>{2, 1, 1, 1, 1, 1});
  CHECK(MarginHistogram::bucket_names().size() == 6);
}

TEST_CASE("theorem registry and dispatch") {
  const std::vector<std::string>& ids = all_theorem_ids();
  CHECK(ids.size() == 14);
  CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == 14);
  CHECK(is_square_theorem("sq.four_commutations"));
  CHECK_FALSE(is_square_theorem("iff.single"));
  CHECK(is_iff_theorem("iff.single"));
  CHECK_FALSE(is_iff_theorem("identities"));
  CHECK_FALSE(is_iff_theorem("rol.implies_commute"));

  InstanceBundle bundle = generate_instance(
      Family::invertible, ShapeProfile{{2}, {2}, {2}}, WeightProfile{}, 61);
  for (const std::string& id : ids) {
    ConditionReport report = run_checker(id, bundle, kTol);
    CHECK(report.theorem_id == id);
    CHECK(report.implication_consistent);
  }
  CHECK_THROWS_AS(run_checker("no.such.theorem", bundle, kTol),
                  InvalidInputError);
}

TEST_CASE("suite smoke run") {
  SuiteSummary summary = run_suite(all_theorem_ids(), 10, 99, kTol);
  CHECK(summary.trials == 10);
  CHECK(summary.seed == 99);
  CHECK(summary.theorems.size() == 14);
  CHECK(summary.total_inconsistent == 0);
  CHECK(summary.iff_agreement_failures == 0);
  CHECK(summary.pass);
  for (const TheoremSummary& ts : summary.theorems) {
    CAPTURE(ts.theorem_id);
    CHECK(ts.trials == 10);
    CHECK(ts.consistent + ts.inconsistent + ts.indeterminate == ts.trials);
    CHECK(ts.inconsistent == 0);
  }

  SuiteSummary again = run_suite(all_theorem_ids(), 10, 99, kTol);
  for (std::size_t i = 0; i < summary.theorems.size(); ++i) {
    CHECK(again.theorems[i].worst_accepted_residual ==
          summary.theorems[i].worst_accepted_residual);
    CHECK(again.theorems[i].min_rejected_residual ==
          summary.theorems[i].min_rejected_residual);
    CHECK(again.theorems[i].histogram.buckets ==
          summary.theorems[i].histogram.buckets);
  }

  CHECK_THROWS_AS(run_suite({"bogus"}, 1, 1, kTol), InvalidInputError);
}
