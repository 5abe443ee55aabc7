#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "einvert/rng.hpp"
#include "einvert/tensor.hpp"

using namespace einvert;

namespace {

DenseTensor random_tensor(const ShapeSignature& sig, Rng& rng) {
  std::vector<Complex> entries(sig.element_count());
  for (Complex& z : entries) z = rng.cgaussian();
  return DenseTensor(sig, entries);
}

}  // namespace

TEST_CASE("construction validates count and finiteness") {
  ShapeSignature sig({2}, {2});
  CHECK_THROWS_AS(DenseTensor(sig, std::vector<Complex>(3)), ShapeMismatchError);
  std::vector<Complex> bad(4);
  bad[2] = Complex(std::numeric_limits<double>::infinity(), 0.0);
  CHECK_THROWS_AS(DenseTensor(sig, bad), InvalidInputError);
  std::vector<Complex> nan_entries(4);
  nan_entries[0] = Complex(0.0, std::nan(""));
  CHECK_THROWS_AS(DenseTensor(sig, nan_entries), InvalidInputError);
}

TEST_CASE("entry addressing is row-major over the concatenated index") {
  // Signature ({2, 2} | {2}): flat index ((r1*2 + r2)*2 + c).
  ShapeSignature sig({2, 2}, {2});
  std::vector<Complex> entries(8);
  for (std::size_t i = 0; i < 8; ++i) entries[i] = Complex(double(i), 0.0);
  DenseTensor t(sig, entries);
  CHECK(t.entry_at(std::vector<std::size_t>{0, 0}, std::vector<std::size_t>{1}) ==
        Complex(1.0, 0.0));
  CHECK(t.entry_at(std::vector<std::size_t>{1, 0}, std::vector<std::size_t>{1}) ==
        Complex(5.0, 0.0));
  CHECK(t.entry_at(std::vector<std::size_t>{1, 1}, std::vector<std::size_t>{0}) ==
        Complex(6.0, 0.0));
}

TEST_CASE("identity and diagonal constructors") {
  DenseTensor id = identity_tensor({2, 2});
  CHECK(id.signature().row_count() == 4);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      CHECK(id.entry(r * 4 + c) == (r == c ? Complex(1.0, 0.0) : Complex(0.0, 0.0)));
    }
  }

  DenseTensor diag = diagonal_tensor({3}, {Complex(1, 1), Complex(2, 0), Complex(0, -1)});
  CHECK(diag.entry(0) == Complex(1, 1));
  CHECK(diag.entry(4) == Complex(2, 0));
  CHECK(diag.entry(8) == Complex(0, -1));
  CHECK(diag.entry(1) == Complex(0, 0));
  CHECK_THROWS_AS(diagonal_tensor({3}, {Complex(1, 0)}), ShapeMismatchError);
}

TEST_CASE("order-2 contraction against hand arithmetic") {
  // [[1,2],[3,4]] * [[5,6],[7,8]] = [[19,22],[43,50]]
  DenseTensor a(ShapeSignature({2}, {2}), {Complex(1), Complex(2), Complex(3), Complex(4)});
  DenseTensor b(ShapeSignature({2}, {2}), {Complex(5), Complex(6), Complex(7), Complex(8)});
  DenseTensor c = einstein_product(a, b);
  CHECK(c.entry(0) == Complex(19.0, 0.0));
  CHECK(c.entry(1) == Complex(22.0, 0.0));
  CHECK(c.entry(2) == Complex(43.0, 0.0));
  CHECK(c.entry(3) == Complex(50.0, 0.0));

  DenseTensor i_times_i = einstein_product(
      DenseTensor(ShapeSignature({1}, {1}), {Complex(0, 1)}),
      DenseTensor(ShapeSignature({1}, {1}), {Complex(0, 1)}));
  CHECK(i_times_i.entry(0) == Complex(-1.0, 0.0));
}

TEST_CASE("contraction rejects mismatched shared blocks") {
  DenseTensor a(ShapeSignature({2}, {3}), std::vector<Complex>(6));
  DenseTensor b(ShapeSignature({2}, {2}), std::vector<Complex>(4));
  CHECK_THROWS_AS(einstein_product(a, b), ShapeMismatchError);

  // Equal flattened dimension is not enough: blocks match mode-for-mode.
  DenseTensor c(ShapeSignature({2}, {2, 2}), std::vector<Complex>(8));
  DenseTensor d(ShapeSignature({4}, {2}), std::vector<Complex>(8));
  CHECK_THROWS_AS(einstein_product(c, d), ShapeMismatchError);
}

TEST_CASE("contraction result signature concatenates outer blocks") {
  Rng rng(5);
  DenseTensor a = random_tensor(ShapeSignature({2, 3}, {2, 2}), rng);
  DenseTensor b = random_tensor(ShapeSignature({2, 2}, {3}), rng);
  DenseTensor c = einstein_product(a, b);
  CHECK(c.signature().row_extents == (std::vector<std::size_t>{2, 3}));
  CHECK(c.signature().col_extents == (std::vector<std::size_t>{3}));
}

TEST_CASE("conjugate transpose is exact and involutive") {
  Rng rng(6);
  DenseTensor a = random_tensor(ShapeSignature({3}, {2, 2}), rng);
  DenseTensor ah = conj_transpose(a);
  CHECK(ah.signature() == a.signature().swapped());
  CHECK(conj_transpose(ah) == a);  // bit-exact round trip

  CHECK(ah.entry_at(std::vector<std::size_t>{1, 0}, std::vector<std::size_t>{2}) ==
        std::conj(a.entry_at(std::vector<std::size_t>{2}, std::vector<std::size_t>{1, 0})));
}

TEST_CASE("transpose reverses products") {
  Rng rng(7);
  DenseTensor a = random_tensor(ShapeSignature({2}, {2, 2}), rng);
  DenseTensor b = random_tensor(ShapeSignature({2, 2}, {3}), rng);
  CHECK(rel_distance(conj_transpose(einstein_product(a, b)),
                     einstein_product(conj_transpose(b), conj_transpose(a))) <=
        1e-14);
}

TEST_CASE("contraction is associative and bilinear") {
  Rng rng(8);
  DenseTensor a = random_tensor(ShapeSignature({2}, {3}), rng);
  DenseTensor a2 = random_tensor(ShapeSignature({2}, {3}), rng);
  DenseTensor b = random_tensor(ShapeSignature({3}, {2, 2}), rng);
  DenseTensor c = random_tensor(ShapeSignature({2, 2}, {2}), rng);

  CHECK(rel_distance(einstein_product(einstein_product(a, b), c),
                     einstein_product(a, einstein_product(b, c))) <= 1e-13);

  Complex alpha(0.5, -1.25), beta(-2.0, 0.75);
  CHECK(rel_distance(
            einstein_product(linear_combine(alpha, a, beta, a2), b),
            linear_combine(alpha, einstein_product(a, b), beta,
                           einstein_product(a2, b))) <= 1e-13);
}

TEST_CASE("identity tensor is neutral") {
  Rng rng(9);
  DenseTensor a = random_tensor(ShapeSignature({2, 2}, {3}), rng);
  CHECK(rel_distance(einstein_product(identity_tensor({2, 2}), a), a) <= 1e-14);
  CHECK(rel_distance(einstein_product(a, identity_tensor({3})), a) <= 1e-14);
}

TEST_CASE("linear combine and scale") {
  DenseTensor a(ShapeSignature({2}, {}), {Complex(1, 0), Complex(0, 1)});
  DenseTensor b(ShapeSignature({2}, {}), {Complex(2, 0), Complex(1, -1)});
  DenseTensor sum = linear_combine(Complex(1), a, Complex(1), b);
  CHECK(sum.entry(0) == Complex(3, 0));
  CHECK(sum.entry(1) == Complex(1, 0));
  CHECK(scale(Complex(2), a) == linear_combine(Complex(1), a, Complex(1), a));

  DenseTensor other(ShapeSignature({3}, {}), std::vector<Complex>(3));
  CHECK_THROWS_AS(linear_combine(Complex(1), a, Complex(1), other),
                  ShapeMismatchError);
}

TEST_CASE("norms and distances") {
  DenseTensor t(ShapeSignature({2}, {}), {Complex(3, 0), Complex(0, 4)});
  CHECK(frobenius_norm(t) == doctest::Approx(5.0));

  DenseTensor z = zero_tensor(ShapeSignature({2}, {}));
  CHECK(frobenius_norm(z) == 0.0);
  CHECK(rel_distance(t, t) == 0.0);
  // Norms below 1 fall back to the absolute scale (denominator 1).
  DenseTensor small_a(ShapeSignature({1}, {}), {Complex(1e-3, 0)});
  DenseTensor small_b(ShapeSignature({1}, {}), {Complex(-1e-3, 0)});
  CHECK(rel_distance(small_a, small_b) == doctest::Approx(2e-3));

  CHECK(approx_equal(t, t));
  CHECK_FALSE(approx_equal(t, scale(Complex(2), t)));
  DenseTensor wrong_shape(ShapeSignature({1, 2}, {}), std::vector<Complex>(2));
  CHECK_THROWS_AS(rel_distance(t, wrong_shape), ShapeMismatchError);
}
