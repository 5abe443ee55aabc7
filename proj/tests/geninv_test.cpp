#include <doctest.h>

#include <vector>

#include "einvert/geninv.hpp"
#include "einvert/kernels.hpp"
#include "einvert/matricize.hpp"
#include "einvert/rng.hpp"

using namespace einvert;

namespace {

DenseTensor random_tensor(const ShapeSignature& sig, Rng& rng) {
  std::vector<Complex> entries(sig.element_count());
  for (Complex& z : entries) z = rng.cgaussian();
  return DenseTensor(sig, entries);
}

DenseTensor deficient_tensor(const ShapeSignature& sig, std::size_t rank, Rng& rng) {
  const std::size_t p = sig.row_count(), q = sig.col_count();
  std::vector<Complex> g1(p * rank), g2(rank * q);
  for (Complex& z : g1) z = rng.cgaussian();
  for (Complex& z : g2) z = rng.cgaussian();
  return unflatten(multiply(DenseMatrix(p, rank, g1), DenseMatrix(rank, q, g2)), sig);
}

}  // namespace

TEST_CASE("pseudo-inverse of simple tensors") {
  DenseTensor diag(ShapeSignature({2}, {2}),
                   {Complex(2), Complex(0), Complex(0), Complex(0)});
  DenseTensor x = mpinverse(diag);
  CHECK(x.signature() == diag.signature());
  CHECK(x.entry(0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(x.entry(3)) <= 1e-16);

  DenseTensor zero = zero_tensor(ShapeSignature({2}, {3}));
  CHECK(frobenius_norm(mpinverse(zero)) == 0.0);

  // Vector-shaped tensor (empty col block): pinv([1,1]) = [0.5, 0.5].
  DenseTensor ones(ShapeSignature({2}, {}), {Complex(1), Complex(1)});
  DenseTensor ones_pinv = mpinverse(ones);
  CHECK(ones_pinv.signature().row_extents.empty());
  CHECK(ones_pinv.signature().col_extents == std::vector<std::size_t>{2});
  CHECK(ones_pinv.entry(0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(ones_pinv.entry(1).real() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("pseudo-inverse signature is the swap of the input") {
  Rng rng(41);
  DenseTensor a = random_tensor(ShapeSignature({2, 3}, {2}), rng);
  DenseTensor x = mpinverse(a);
  CHECK(x.signature() == a.signature().swapped());
}

TEST_CASE("unweighted residual report") {
  Rng rng(42);
  DenseTensor a = deficient_tensor(ShapeSignature({2, 2}, {3}), 2, rng);
  PenroseReport good = penrose_residuals(a, mpinverse(a));
  CHECK(good.verdict);
  CHECK(good.max_residual() <= 1e-10);
  CHECK(good.tolerance == 1e-10);

  // The raw transpose is generically not the pseudo-inverse.
  PenroseReport bad = penrose_residuals(a, conj_transpose(a));
  CHECK_FALSE(bad.verdict);
  CHECK(bad.max_residual() > 1e-3);

  DenseTensor wrong_sig = random_tensor(a.signature(), rng);
  CHECK_THROWS_AS(penrose_residuals(a, wrong_sig), ShapeMismatchError);
}

TEST_CASE("weighted pseudo-inverse satisfies the four weighted equations") {
  Rng rng(43);
  const char* tags[] = {"full", "deficient"};
  for (int deficient = 0; deficient < 2; ++deficient) {
    CAPTURE(tags[deficient]);
    ShapeSignature sig({2, 3}, {4});
    DenseTensor a = deficient ? deficient_tensor(sig, 2, rng) : random_tensor(sig, rng);
    HpdWeight m = random_hpd({2, 3}, 10.0, 1000 + deficient);
    HpdWeight n = random_hpd({4}, 10.0, 2000 + deficient);
    DenseTensor x = weighted_mpinverse(a, m, n);
    PenroseReport report = weighted_penrose_residuals(a, x, m, n);
    CHECK(report.verdict);
    CHECK(report.max_residual() <= 1e-9);
  }
}

TEST_CASE("identity weights reduce to the unweighted operations") {
  Rng rng(44);
  DenseTensor a = random_tensor(ShapeSignature({2, 2}, {3}), rng);
  HpdWeight m = HpdWeight::identity({2, 2});
  HpdWeight n = HpdWeight::identity({3});
  CHECK(rel_distance(weighted_mpinverse(a, m, n), mpinverse(a)) <= 1e-13);
  CHECK(weighted_conj_transpose(a, m, n) == conj_transpose(a));
}

TEST_CASE("weighted pseudo-inverse against the full-rank closed forms") {
  // For full column rank the weighted pseudo-inverse is
  //   (A^H M A)^{-1} A^H M  (the col-side weight drops out);
  // for full row rank it is
  //   N^{-1} A^H (A N^{-1} A^H)^{-1}  (the row-side weight drops out).
  // Both are computed here directly at the matrix level, giving a second
  // route that never touches the square-root transform.
  Rng rng(45);

  DenseTensor tall = random_tensor(ShapeSignature({2, 3}, {3}), rng);  // 6 x 3
  HpdWeight m = random_hpd({2, 3}, 10.0, 901);
  HpdWeight n = random_hpd({3}, 10.0, 902);
  {
    DenseMatrix af = flatten(tall);
    DenseMatrix mf = flatten(m.tensor());
    DenseMatrix ahm = multiply(adjoint(af), mf);
    DenseMatrix closed = multiply(matrix_inverse(multiply(ahm, af)), ahm);
    DenseTensor expected = unflatten(closed, tall.signature().swapped());
    CHECK(rel_distance(weighted_mpinverse(tall, m, n), expected) <= 1e-10);
  }

  DenseTensor wide = conj_transpose(tall);  // 3 x 6, full row rank
  {
    DenseMatrix af = flatten(wide);
    DenseMatrix n_inv = flatten(m.inverse());  // col block of `wide` is {2,3}
    DenseMatrix an = multiply(af, multiply(n_inv, adjoint(af)));
    DenseMatrix closed = multiply(multiply(n_inv, adjoint(af)), matrix_inverse(an));
    DenseTensor expected = unflatten(closed, wide.signature().swapped());
    CHECK(rel_distance(weighted_mpinverse(wide, n, m), expected) <= 1e-10);
  }
}

TEST_CASE("weighted transpose formula on a hand example") {
  // A = [1+i], M = [2], N = [4]: N^{-1} A^H M = (1-i)/2.
  DenseTensor a(ShapeSignature({1}, {1}), {Complex(1, 1)});
  HpdWeight m = HpdWeight::from_spectral(identity_tensor({1}), {2.0});
  HpdWeight n = HpdWeight::from_spectral(identity_tensor({1}), {4.0});
  DenseTensor t = weighted_conj_transpose(a, m, n);
  CHECK(t.entry(0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(t.entry(0).imag() == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("weight blocks must match the tensor blocks") {
  Rng rng(46);
  DenseTensor a = random_tensor(ShapeSignature({2}, {3}), rng);
  HpdWeight wrong = HpdWeight::identity({3});
  HpdWeight right_n = HpdWeight::identity({3});
  HpdWeight right_m = HpdWeight::identity({2});
  CHECK_THROWS_AS(weighted_mpinverse(a, wrong, right_n), ShapeMismatchError);
  CHECK_THROWS_AS(weighted_mpinverse(a, right_m, right_m), ShapeMismatchError);
  CHECK_THROWS_AS(weighted_conj_transpose(a, wrong, right_n), ShapeMismatchError);
  CHECK_THROWS_AS(
      weighted_penrose_residuals(a, conj_transpose(a), wrong, right_n),
      ShapeMismatchError);
}

TEST_CASE("weighted report flags a wrong candidate") {
  Rng rng(47);
  DenseTensor a = random_tensor(ShapeSignature({2}, {2, 2}), rng);
  HpdWeight m = random_hpd({2}, 5.0, 48);
  HpdWeight n = random_hpd({2, 2}, 5.0, 49);
  // The unweighted pseudo-inverse fails the weighted symmetry equations
  // whenever the weights are genuinely non-identity.
  PenroseReport report = weighted_penrose_residuals(a, mpinverse(a), m, n);
  CHECK_FALSE(report.verdict);
}
