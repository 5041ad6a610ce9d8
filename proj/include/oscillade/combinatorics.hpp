#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace oscillade {

/// Exact rational with arbitrary-precision numerator and denominator, always
/// kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// Multi-index (k_1, ..., k_d) of naturals.
///
/// The mathematical entries are 1-based; `at(i)` takes that index directly
/// while `operator[]` is the 0-based storage accessor (`at(i) == (*this)[i-1]`).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries);

  int length() const { return static_cast<int>(entries_.size()); }
  /// |k| = k_1 + ... + k_d.
  int norm() const;
  int at(int one_based) const;
  int operator[](std::size_t zero_based) const { return entries_[zero_based]; }
  /// (k_first, ..., k_last), 1-based inclusive; empty when first > last.
  std::vector<int> slice(int first, int last) const;
  const std::vector<int>& entries() const { return entries_; }
  std::string to_string() const;

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<int> entries_;
};

/// All k in N^d with |k| = m in lexicographic order; there are C(m+d-1, d-1).
std::vector<MultiIndex> enumerate_multi_indices(int d, int m);

/// a_j^l = 1 / prod_{r=0}^{j-1} (j-r)^{k_{l-r}+1}, a_0^l = 1.
Rational coeff_a(int j, int level, const MultiIndex& k);

/// b_j^l = 1 / (j^{k_l} prod_{r=1}^{j-1} (j-r)^{k_{l-r}+1}), b_0^l = 1.
Rational coeff_b(int j, int level, const MultiIndex& k);

/// The pair of coefficient formulas used by the operator recursion. Kept
/// swappable so sensitivity tests can inject a corrupted rule.
struct CoefficientRule {
  std::function<Rational(int, int, const MultiIndex&)> a = coeff_a;
  std::function<Rational(int, int, const MultiIndex&)> b = coeff_b;

  static const CoefficientRule& standard();
};

/// Polynomial in the formal variable x = (i omega)^{-1}: degree -> coefficient.
/// Zero coefficients are never stored.
using FormalSeries = std::map<int, Rational>;

void accumulate(FormalSeries& series, int degree, const Rational& value);

/// sum_{k1=0}^{n} x^{k1+1} a_{k1} sum_{k2=0}^{n-k1-1} x^{k2+1} b_{k2}, with empty
/// inner sums when the upper limit is negative.
FormalSeries nested_cauchy_sum(std::span<const Rational> a, std::span<const Rational> b, int n);

/// sum_{k1+k2 <= n-1} x^{k1+k2+2} a_{k1} b_{k2}.
FormalSeries merged_cauchy_sum(std::span<const Rational> a, std::span<const Rational> b, int n);

}  // namespace oscillade
