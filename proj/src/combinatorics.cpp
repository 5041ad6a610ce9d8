#include "oscillade/combinatorics.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace oscillade {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_) {
    if (e < 0) throw std::invalid_argument("multi-index entries must be non-negative");
  }
}

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::vector<int>(entries)) {}

int MultiIndex::norm() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

int MultiIndex::at(int one_based) const {
  if (one_based < 1 || one_based > length()) {
    throw std::out_of_range("multi-index position " + std::to_string(one_based) +
                            " outside 1.." + std::to_string(length()));
  }
  return entries_[static_cast<std::size_t>(one_based - 1)];
}

std::vector<int> MultiIndex::slice(int first, int last) const {
  std::vector<int> out;
  for (int i = first; i <= last; ++i) out.push_back(at(i));
  return out;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(entries_[i]);
  }
  return s + ")";
}

namespace {

void enumerate_into(std::vector<int>& prefix, int remaining_slots, int remaining_norm,
                    std::vector<MultiIndex>& out) {
  if (remaining_slots == 1) {
    prefix.push_back(remaining_norm);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int v = 0; v <= remaining_norm; ++v) {
    prefix.push_back(v);
    enumerate_into(prefix, remaining_slots - 1, remaining_norm - v, out);
    prefix.pop_back();
  }
}

void check_levels(int j, int level, const MultiIndex& k) {
  if (j < 0 || j > level || level > k.length()) {
    throw std::out_of_range("coefficient index out of range: j=" + std::to_string(j) +
                            ", level=" + std::to_string(level) +
                            ", d=" + std::to_string(k.length()));
  }
}

Rational power(int base, int exponent) {
  boost::multiprecision::cpp_int value = 1;
  for (int i = 0; i < exponent; ++i) value *= base;
  return Rational(value);
}

}  // namespace

std::vector<MultiIndex> enumerate_multi_indices(int d, int m) {
  if (d < 1) throw std::invalid_argument("multi-index length must be at least 1");
  if (m < 0) throw std::invalid_argument("multi-index norm must be non-negative");
  std::vector<MultiIndex> out;
  std::vector<int> prefix;
  enumerate_into(prefix, d, m, out);
  return out;
}

Rational coeff_a(int j, int level, const MultiIndex& k) {
  check_levels(j, level, k);
  Rational denominator = 1;
  for (int r = 0; r < j; ++r) denominator *= power(j - r, k.at(level - r) + 1);
  return 1 / denominator;
}

Rational coeff_b(int j, int level, const MultiIndex& k) {
  check_levels(j, level, k);
  if (j == 0) return 1;
  Rational denominator = power(j, k.at(level));
  for (int r = 1; r < j; ++r) denominator *= power(j - r, k.at(level - r) + 1);
  return 1 / denominator;
}

const CoefficientRule& CoefficientRule::standard() {
  static const CoefficientRule rule{};
  return rule;
}

void accumulate(FormalSeries& series, int degree, const Rational& value) {
  Rational& slot = series[degree];
  slot += value;
  if (slot == 0) series.erase(degree);
}

FormalSeries nested_cauchy_sum(std::span<const Rational> a, std::span<const Rational> b, int n) {
  FormalSeries out;
  for (int k1 = 0; k1 <= n; ++k1) {
    for (int k2 = 0; k2 <= n - k1 - 1; ++k2) {
      accumulate(out, k1 + 1 + k2 + 1,
                 a[static_cast<std::size_t>(k1)] * b[static_cast<std::size_t>(k2)]);
    }
  }
  return out;
}

FormalSeries merged_cauchy_sum(std::span<const Rational> a, std::span<const Rational> b, int n) {
  FormalSeries out;
  for (int total = 0; total <= n - 1; ++total) {
    for (int k1 = 0; k1 <= total; ++k1) {
      const int k2 = total - k1;
      accumulate(out, total + 2,
                 a[static_cast<std::size_t>(k1)] * b[static_cast<std::size_t>(k2)]);
    }
  }
  return out;
}

}  // namespace oscillade
