#include "oscillade/opcalculus.hpp"

#include <stdexcept>
#include <utility>

namespace oscillade {

namespace {

std::string sequence_string(const std::vector<int>& values) {
  std::string s = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(values[i]);
  }
  return s + ")";
}

}  // namespace

WordBuilder::WordBuilder(OperatorMatrix generator, OperatorMatrix multiplier, CoefficientRule rule)
    : generator_(std::move(generator)), multiplier_(std::move(multiplier)), rule_(std::move(rule)) {
  require_compatible(generator_, multiplier_);
}

OperatorWord WordBuilder::ad(int k) {
  std::lock_guard lock(mutex_);
  if (auto it = ad_cache_.find(k); it != ad_cache_.end()) return it->second;
  const std::string provenance = "ad^" + std::to_string(k) + "(" + multiplier_.label() + ")";
  OperatorMatrix value =
      k == 0 ? multiplier_ : commutator(generator_, ad(k - 1).value);
  OperatorWord word{value.relabeled(provenance), provenance};
  return ad_cache_.emplace(k, std::move(word)).first->second;
}

OperatorWord WordBuilder::n_slice(const std::vector<int>& slice) {
  std::lock_guard lock(mutex_);
  if (auto it = n_cache_.find(slice); it != n_cache_.end()) return it->second;
  OperatorWord word = [&] {
    if (slice.size() == 1) return ad(slice.front());
    const std::vector<int> inner(slice.begin(), slice.end() - 1);
    const OperatorWord previous = n_slice(inner);
    const int power = slice.back();
    const std::string provenance = "ad^" + std::to_string(power) + "(" + multiplier_.label() +
                                   " " + previous.provenance + ")";
    OperatorMatrix value = ad_power(generator_, multiplier_ * previous.value, power);
    return OperatorWord{value.relabeled(provenance), provenance};
  }();
  return n_cache_.emplace(slice, std::move(word)).first->second;
}

OperatorWord WordBuilder::n_operator(const MultiIndex& k, int l, int r) {
  // l = r + 1 is the empty word, which may sit just past either end of k.
  const bool empty = l == r + 1 && l >= 1 && l <= k.length() + 1;
  if (!empty && (l < 1 || r < 1 || l > k.length() || r > k.length())) {
    throw std::out_of_range("N operator index out of range: l=" + std::to_string(l) +
                            ", r=" + std::to_string(r) + ", d=" + std::to_string(k.length()));
  }
  if (l > r) {
    OperatorMatrix id = OperatorMatrix::identity(generator_.grid());
    return {id, "Id"};
  }
  return n_slice(k.slice(l, r));
}

OperatorWord WordBuilder::f_prefix(const MultiIndex& prefix) {
  std::lock_guard lock(mutex_);
  if (auto it = f_cache_.find(prefix.entries()); it != f_cache_.end()) return it->second;
  const int level = prefix.length();
  const std::string provenance = "F_" + std::to_string(level) + sequence_string(prefix.entries());
  OperatorWord word = [&] {
    if (level == 0) return OperatorWord{OperatorMatrix::identity(generator_.grid()), provenance};
    Matrix sum = Matrix::Zero(generator_.size(), generator_.size());
    for (int m = 0; m < level; ++m) {
      const Rational coefficient = rule_.a(level - m, level, prefix);
      const OperatorWord lower = f_prefix(MultiIndex(prefix.slice(1, m)));
      const OperatorWord outer = n_operator(prefix, m + 1, level);
      sum.noalias() -= coefficient.convert_to<double>() * (outer.value.entries() * lower.value.entries());
    }
    return OperatorWord{OperatorMatrix(generator_.grid(), std::move(sum), provenance), provenance};
  }();
  return f_cache_.emplace(prefix.entries(), std::move(word)).first->second;
}

OperatorWord WordBuilder::f_function(int level, const MultiIndex& k) {
  if (level < 0 || level > k.length()) {
    throw std::out_of_range("F level " + std::to_string(level) + " outside 0.." +
                            std::to_string(k.length()));
  }
  return f_prefix(MultiIndex(k.slice(1, level)));
}

OperatorWord n_operator(const MultiIndex& k, int l, int r, const OperatorMatrix& generator,
                        const OperatorMatrix& multiplier) {
  WordBuilder builder(generator, multiplier);
  return builder.n_operator(k, l, r);
}

OperatorWord f_function(int level, const MultiIndex& k, const OperatorMatrix& generator,
                        const OperatorMatrix& multiplier) {
  WordBuilder builder(generator, multiplier);
  return builder.f_function(level, k);
}

}  // namespace oscillade
