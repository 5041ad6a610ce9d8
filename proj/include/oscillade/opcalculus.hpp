#pragma once

#include "oscillade/combinatorics.hpp"
#include "oscillade/operators.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace oscillade {

/// A materialised operator together with the recursion path that built it.
struct OperatorWord {
  OperatorMatrix value;
  std::string provenance;
};

/// Builds the nested words N_{k_l}^{k_r}[L, A] and the boundary operators
/// F_l[L, A] for one fixed pair (L, A), memoising everything it computes.
///
/// N depends only on the slice (k_l, ..., k_r) and F_l only on the prefix
/// (k_1, ..., k_l), so both caches are keyed by those integer sequences and
/// are shared across every multi-index enumerated by a caller. Thread-safe:
/// concurrent requests for equal keys return equal values.
class WordBuilder {
 public:
  WordBuilder(OperatorMatrix generator, OperatorMatrix multiplier,
              CoefficientRule rule = CoefficientRule::standard());

  const OperatorMatrix& generator() const { return generator_; }
  const OperatorMatrix& multiplier() const { return multiplier_; }
  const CoefficientRule& rule() const { return rule_; }

  /// ad_L^k(A).
  OperatorWord ad(int k);

  /// Identity for l > r, ad_L^{k_l}(A) for l = r, and
  /// ad_L^{k_r}(A N_{k_l}^{k_{r-1}}) for l < r. Indices are 1-based; the
  /// empty word l = r + 1 is accepted for r = 0 and l = d + 1 as well.
  OperatorWord n_operator(const MultiIndex& k, int l, int r);

  /// F_0 = Id, F_l = -sum_{m=0}^{l-1} a_{l-m}^l N_{k_{m+1}}^{k_l} F_m.
  OperatorWord f_function(int level, const MultiIndex& k);

 private:
  OperatorWord n_slice(const std::vector<int>& slice);
  OperatorWord f_prefix(const MultiIndex& prefix);

  OperatorMatrix generator_;
  OperatorMatrix multiplier_;
  CoefficientRule rule_;

  std::recursive_mutex mutex_;
  std::map<int, OperatorWord> ad_cache_;
  std::map<std::vector<int>, OperatorWord> n_cache_;
  std::map<std::vector<int>, OperatorWord> f_cache_;
};

/// One-shot forms that build a private WordBuilder.
OperatorWord n_operator(const MultiIndex& k, int l, int r, const OperatorMatrix& generator,
                        const OperatorMatrix& multiplier);
OperatorWord f_function(int level, const MultiIndex& k, const OperatorMatrix& generator,
                        const OperatorMatrix& multiplier);

}  // namespace oscillade
