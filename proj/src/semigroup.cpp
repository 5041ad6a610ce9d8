#include "oscillade/semigroup.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace oscillade {

namespace {

double condition_number(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[s.size() - 1] == 0.0) return std::numeric_limits<double>::infinity();
  return s[0] / s[s.size() - 1];
}

}  // namespace

SemigroupEvaluator::SemigroupEvaluator(OperatorMatrix generator, double condition_limit)
    : generator_(std::move(generator)), cache_(std::make_shared<PadeCache>()) {
  if (const Eigenbasis* known = generator_.eigenbasis()) {
    basis_ = std::make_shared<const Eigenbasis>(*known);
    condition_ = condition_number(known->vectors);
    mode_ = Mode::eigendecomposition;
    return;
  }
  Eigen::ComplexEigenSolver<Matrix> solver(generator_.entries(), true);
  condition_ = std::numeric_limits<double>::infinity();
  if (solver.info() == Eigen::Success) {
    condition_ = condition_number(solver.eigenvectors());
  }
  if (condition_ < condition_limit) {
    auto basis = std::make_shared<Eigenbasis>();
    basis->vectors = solver.eigenvectors();
    basis->inverse = basis->vectors.inverse();
    basis->values = solver.eigenvalues();
    basis_ = std::move(basis);
    mode_ = Mode::eigendecomposition;
  } else {
    mode_ = Mode::scaling_and_squaring;
  }
}

SemigroupEvaluator::SemigroupEvaluator(OperatorMatrix generator, Mode forced)
    : generator_(std::move(generator)),
      mode_(forced),
      condition_(std::numeric_limits<double>::infinity()),
      cache_(std::make_shared<PadeCache>()) {}

SemigroupEvaluator SemigroupEvaluator::pade_only(OperatorMatrix generator) {
  return SemigroupEvaluator(std::move(generator), Mode::scaling_and_squaring);
}

void SemigroupEvaluator::check_time(double t) const {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("semigroup evaluated at invalid time " + std::to_string(t));
  }
}

Matrix SemigroupEvaluator::matrix(double t) const {
  check_time(t);
  if (mode_ == Mode::eigendecomposition) {
    const Vector growth = (t * basis_->values).array().exp();
    return basis_->vectors * growth.asDiagonal() * basis_->inverse;
  }
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->matrices.find(t); it != cache_->matrices.end()) return it->second;
  }
  Matrix scaled = t * generator_.entries();
  Matrix result = scaled.exp();
  // Bounded at roughly 2^24 stored entries.
  const std::size_t capacity =
      std::max<std::size_t>(16, (std::size_t{1} << 24) / static_cast<std::size_t>(size() * size()));
  std::lock_guard lock(cache_->mutex);
  if (cache_->matrices.size() >= capacity) return result;
  return cache_->matrices.emplace(t, std::move(result)).first->second;
}

Vector SemigroupEvaluator::apply(double t, const Vector& v) const {
  if (v.size() != size()) throw std::invalid_argument("semigroup: vector dimension mismatch");
  check_time(t);
  if (t == 0.0) return v;
  if (mode_ == Mode::eigendecomposition) {
    Vector coeffs = basis_->inverse * v;
    coeffs.array() *= (t * basis_->values).array().exp();
    return basis_->vectors * coeffs;
  }
  return matrix(t) * v;
}

Matrix SemigroupEvaluator::apply(double t, const Matrix& block) const {
  if (block.rows() != size()) throw std::invalid_argument("semigroup: block dimension mismatch");
  check_time(t);
  if (t == 0.0) return block;
  if (mode_ == Mode::eigendecomposition) {
    Matrix coeffs = basis_->inverse * block;
    const Vector growth = (t * basis_->values).array().exp();
    coeffs = growth.asDiagonal() * coeffs;
    return basis_->vectors * coeffs;
  }
  return matrix(t) * block;
}

Vector semigroup_apply(const SemigroupEvaluator& semigroup, double t, const Vector& v) {
  return semigroup.apply(t, v);
}

}  // namespace oscillade
