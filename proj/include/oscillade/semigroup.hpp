#pragma once

#include "oscillade/operators.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace oscillade {

/// Evaluates e^{tL} for a fixed generator L.
///
/// Eigendecomposition mode uses the generator's attached eigenbasis when it
/// has one, otherwise a numerical eigendecomposition whose eigenvector matrix
/// must have condition number below `condition_limit`. When that fails the
/// evaluator falls back to scaling-and-squaring with Pade approximants;
/// matrices computed in that mode are cached per time value.
class SemigroupEvaluator {
 public:
  enum class Mode { eigendecomposition, scaling_and_squaring };

  explicit SemigroupEvaluator(OperatorMatrix generator, double condition_limit = 1e8);

  /// Forces scaling-and-squaring regardless of the eigenbasis quality.
  static SemigroupEvaluator pade_only(OperatorMatrix generator);

  Mode mode() const { return mode_; }
  const OperatorMatrix& generator() const { return generator_; }
  int size() const { return generator_.size(); }
  /// Condition number of the eigenvector matrix (infinity when unavailable).
  double eigenvector_condition() const { return condition_; }

  Matrix matrix(double t) const;
  Vector apply(double t, const Vector& v) const;
  Matrix apply(double t, const Matrix& block) const;

 private:
  struct PadeCache {
    std::mutex mutex;
    std::map<double, Matrix> matrices;
  };

  SemigroupEvaluator(OperatorMatrix generator, Mode forced);
  void check_time(double t) const;

  OperatorMatrix generator_;
  Mode mode_ = Mode::scaling_and_squaring;
  double condition_ = 0.0;
  std::shared_ptr<const Eigenbasis> basis_;
  std::shared_ptr<PadeCache> cache_;
};

using SemigroupPtr = std::shared_ptr<const SemigroupEvaluator>;

Vector semigroup_apply(const SemigroupEvaluator& semigroup, double t, const Vector& v);

}  // namespace oscillade
