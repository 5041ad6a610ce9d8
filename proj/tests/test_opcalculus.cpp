#include "oscillade/opcalculus.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace oscillade;
using testing::max_abs;

namespace {

struct Pair {
  GridPtr grid;
  OperatorMatrix L;
  OperatorMatrix A;
};

Pair random_pair(unsigned seed, int n = 6, bool diagonal = true) {
  std::mt19937 rng(seed);
  GridPtr grid = build_grid(0.0, 1.0, n, Boundary::none);
  Matrix l = testing::random_matrix(rng, n, 0.4);
  Matrix a = diagonal ? Matrix(testing::random_vector(rng, n).asDiagonal())
                      : testing::random_matrix(rng, n, 0.4);
  return {grid, OperatorMatrix(grid, l, "L"), OperatorMatrix(grid, a, "A")};
}

Matrix ad(const Pair& p, const Matrix& x, int k) {
  return ad_power(p.L, OperatorMatrix(p.grid, x, "x"), k).entries();
}

}  // namespace

TEST_CASE("N operator base cases") {
  const Pair p = random_pair(1);
  WordBuilder words(p.L, p.A);
  const MultiIndex k{2};
  CHECK(max_abs(words.n_operator(k, 1, 1).value.entries() -
                commutator(p.L, commutator(p.L, p.A)).entries()) < 1e-13);
  const auto id = words.n_operator(MultiIndex{1, 2}, 2, 1);
  CHECK(id.provenance == "Id");
  CHECK(id.value.entries() == Matrix::Identity(6, 6));
  CHECK(words.n_operator(MultiIndex{1, 2}, 3, 2).value.entries() == Matrix::Identity(6, 6));
  CHECK_THROWS_AS(words.n_operator(MultiIndex{1, 2}, 1, 3), std::out_of_range);
  CHECK_THROWS_AS(words.n_operator(MultiIndex{1, 2}, 0, 1), std::out_of_range);
}

TEST_CASE("N of two entries nests ad around A") {
  const Pair p = random_pair(2);
  WordBuilder words(p.L, p.A);
  for (int k1 = 0; k1 <= 2; ++k1) {
    for (int k2 = 0; k2 <= 2; ++k2) {
      const Matrix expected = ad(p, p.A.entries() * ad(p, p.A.entries(), k1), k2);
      CHECK(max_abs(words.n_operator(MultiIndex{k1, k2}, 1, 2).value.entries() - expected) < 1e-12);
    }
  }
}

TEST_CASE("N with identity multiplier vanishes once an outer ad acts") {
  const Pair p = random_pair(3);
  const OperatorMatrix id = OperatorMatrix::identity(p.grid);
  WordBuilder words(p.L, id);
  CHECK(max_abs(words.n_operator(MultiIndex{0, 1}, 1, 2).value.entries()) == 0.0);
  CHECK(max_abs(words.n_operator(MultiIndex{2, 3}, 1, 2).value.entries()) == 0.0);
  CHECK(words.n_operator(MultiIndex{0, 0}, 1, 2).value.entries() == Matrix::Identity(6, 6));
}

TEST_CASE("F_0 is the identity and F_1 = -ad^{k1}(A)") {
  const Pair p = random_pair(4);
  WordBuilder words(p.L, p.A);
  CHECK(words.f_function(0, MultiIndex{3}).value.entries() == Matrix::Identity(6, 6));
  for (int k1 = 0; k1 <= 3; ++k1) {
    CHECK(max_abs(words.f_function(1, MultiIndex{k1}).value.entries() + ad(p, p.A.entries(), k1)) <
          1e-13);
  }
  CHECK_THROWS_AS(words.f_function(2, MultiIndex{1}), std::out_of_range);
}

TEST_CASE("F_2 matches its explicit form") {
  const Pair p = random_pair(5, 6, false);
  WordBuilder words(p.L, p.A);
  const Matrix& a = p.A.entries();
  for (int k1 = 0; k1 <= 3; ++k1) {
    for (int k2 = 0; k1 + k2 <= 3; ++k2) {
      const Matrix expected = -ad(p, a * ad(p, a, k1), k2) / std::pow(2.0, k2 + 1) +
                              ad(p, a, k2) * ad(p, a, k1);
      const Matrix built = words.f_function(2, MultiIndex{k1, k2}).value.entries();
      CHECK(max_abs(built - expected) <= 1e-12 * std::max(1.0, max_abs(expected)));
    }
  }
}

TEST_CASE("with A = Id and k = 0, F_l = (-1)^l / l!") {
  const Pair p = random_pair(6);
  WordBuilder words(p.L, OperatorMatrix::identity(p.grid));
  // Unrolled scalar recursion F_l = -sum_m F_m / (l - m)!.
  const double expected[] = {1.0, -1.0, 0.5, -1.0 / 6.0, 1.0 / 24.0};
  const MultiIndex zero{0, 0, 0, 0};
  for (int l = 0; l <= 4; ++l) {
    const Matrix f = words.f_function(l, zero).value.entries();
    CHECK(max_abs(f - expected[l] * Matrix::Identity(6, 6)) < 1e-14);
  }
}

TEST_CASE("a corrupted coefficient rule changes F_2") {
  const Pair p = random_pair(7);
  CoefficientRule broken;
  broken.a = [](int j, int level, const MultiIndex& k) {
    Rational product = 1;
    for (int r = 0; r < j; ++r) {
      for (int e = 0; e < k.at(level - r) + 2; ++e) product *= (j - r);
    }
    return 1 / product;
  };
  WordBuilder good(p.L, p.A);
  WordBuilder bad(p.L, p.A, broken);
  const MultiIndex k{0, 1};
  CHECK(max_abs(good.f_function(1, k).value.entries() - bad.f_function(1, k).value.entries()) == 0.0);
  CHECK(max_abs(good.f_function(2, k).value.entries() - bad.f_function(2, k).value.entries()) > 1e-3);
}

TEST_CASE("caches return equal words and record provenance") {
  const Pair p = random_pair(8);
  WordBuilder words(p.L, p.A);
  const auto first = words.f_function(2, MultiIndex{1, 0});
  const auto second = words.f_function(2, MultiIndex{1, 0, 5});
  CHECK(&first.value.entries() == &second.value.entries());
  CHECK(first.provenance == "F_2(1,0)");
  CHECK(words.ad(2).provenance == "ad^2(A)");
}
