#include "oscillade/combinatorics.hpp"

#include <doctest.h>

#include <random>

using namespace oscillade;

namespace {

long long binomial(int n, int k) {
  long long out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

Rational factorial(int n) {
  Rational out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

}  // namespace

TEST_CASE("multi-index accessors") {
  const MultiIndex k{3, 1, 4};
  CHECK(k.length() == 3);
  CHECK(k.norm() == 8);
  for (int i = 1; i <= 3; ++i) CHECK(k.at(i) == k[static_cast<std::size_t>(i - 1)]);
  CHECK(k.slice(2, 3) == std::vector<int>{1, 4});
  CHECK(k.slice(3, 2).empty());
  CHECK_THROWS(k.at(0));
  CHECK_THROWS(k.at(4));
  CHECK_THROWS(MultiIndex{-1});
}

TEST_CASE("enumeration examples") {
  CHECK(enumerate_multi_indices(1, 3) == std::vector<MultiIndex>{MultiIndex{3}});
  CHECK(enumerate_multi_indices(2, 2) ==
        std::vector<MultiIndex>{MultiIndex{0, 2}, MultiIndex{1, 1}, MultiIndex{2, 0}});
  CHECK(enumerate_multi_indices(3, 0) == std::vector<MultiIndex>{MultiIndex{0, 0, 0}});
}

TEST_CASE("enumeration counts follow stars and bars") {
  for (int d = 1; d <= 5; ++d) {
    for (int m = 0; m <= 6; ++m) {
      const auto all = enumerate_multi_indices(d, m);
      CHECK(static_cast<long long>(all.size()) == binomial(m + d - 1, d - 1));
      for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(all[i].norm() == m);
        if (i) CHECK(all[i - 1] < all[i]);
      }
    }
  }
}

TEST_CASE("coefficient examples") {
  for (int k1 = 0; k1 <= 4; ++k1) {
    CHECK(coeff_a(1, 1, MultiIndex{k1}) == 1);
    CHECK(coeff_b(1, 1, MultiIndex{k1}) == 1);
    CHECK(coeff_a(0, 1, MultiIndex{k1}) == 1);
    CHECK(coeff_b(0, 1, MultiIndex{k1}) == 1);
  }
  for (int k1 = 0; k1 <= 3; ++k1) {
    for (int k2 = 0; k2 <= 3; ++k2) {
      const MultiIndex k{k1, k2};
      CHECK(coeff_a(2, 2, k) == Rational(1, 1 << (k2 + 1)));
      CHECK(coeff_b(2, 2, k) == Rational(1, 1 << k2));
      for (int k3 = 0; k3 <= 3; ++k3) {
        Rational pow3 = 1;
        for (int i = 0; i < k3; ++i) pow3 *= 3;
        CHECK(coeff_b(3, 3, MultiIndex{k1, k2, k3}) == 1 / (pow3 * (1 << (k2 + 1))));
      }
    }
  }
}

TEST_CASE("at k = 0 the coefficients are inverse factorials and a/b = 1/j") {
  for (int level = 1; level <= 6; ++level) {
    const MultiIndex zero(std::vector<int>(static_cast<std::size_t>(level), 0));
    for (int j = 1; j <= level; ++j) {
      CHECK(coeff_a(j, level, zero) == 1 / factorial(j));
      CHECK(coeff_a(j, level, zero) / coeff_b(j, level, zero) == Rational(1, j));
    }
  }
}

TEST_CASE("coefficient preconditions") {
  CHECK_THROWS(coeff_a(3, 2, MultiIndex{0, 0}));
  CHECK_THROWS(coeff_a(1, 3, MultiIndex{0, 0}));
  CHECK_THROWS(coeff_b(-1, 1, MultiIndex{0}));
}

TEST_CASE("formal series drop zero coefficients") {
  FormalSeries s;
  accumulate(s, 2, Rational(1, 3));
  accumulate(s, 2, Rational(-1, 3));
  CHECK(s.empty());
  accumulate(s, 1, 5);
  CHECK(s.at(1) == 5);
}

TEST_CASE("Cauchy reindexing small cases") {
  const std::vector<Rational> a = {1, 2, 3};
  const std::vector<Rational> b = {Rational(1, 2), 4, -1};
  CHECK(nested_cauchy_sum(a, b, 0).empty());
  CHECK(merged_cauchy_sum(a, b, 0).empty());
  // n = 2: x^2 (a0 b0 + ...) ; terms with k1 + k2 <= 1.
  const FormalSeries expected = {{2, Rational(1, 2)}, {3, Rational(1 * 4) + Rational(2, 2)}};
  CHECK(nested_cauchy_sum(a, b, 2) == expected);
  CHECK(merged_cauchy_sum(a, b, 2) == expected);
}

TEST_CASE("Cauchy reindexing on random rational draws") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> num(-50, 50);
  std::uniform_int_distribution<int> den(1, 30);
  for (int draw = 0; draw < 100; ++draw) {
    for (int n = 0; n <= 6; ++n) {
      std::vector<Rational> a;
      std::vector<Rational> b;
      for (int i = 0; i <= n; ++i) {
        a.emplace_back(num(rng), den(rng));
        b.emplace_back(num(rng), den(rng));
      }
      CHECK(nested_cauchy_sum(a, b, n) == merged_cauchy_sum(a, b, n));
    }
  }
}
