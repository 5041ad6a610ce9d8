#pragma once

#include "oscillade/grid.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <string>

namespace oscillade {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// A known diagonalisation L = vectors * diag(values) * inverse.
struct Eigenbasis {
  Matrix vectors;
  Matrix inverse;
  Vector values;
};

/// Dense complex matrix acting on samples of a Grid. Immutable after
/// construction, so copies share storage; `label` records how the operator
/// was assembled.
class OperatorMatrix {
 public:
  OperatorMatrix(GridPtr grid, Matrix entries, std::string label,
                 std::shared_ptr<const Eigenbasis> basis = nullptr);

  static OperatorMatrix identity(GridPtr grid);
  static OperatorMatrix zero(GridPtr grid);

  const Matrix& entries() const { return *entries_; }
  const GridPtr& grid() const { return grid_; }
  const std::string& label() const { return label_; }
  int size() const { return static_cast<int>(entries_->rows()); }

  /// Exact diagonalisation attached by spectral constructors, or nullptr.
  const Eigenbasis* eigenbasis() const { return basis_.get(); }

  bool is_diagonal() const;
  /// Same entries (shared, not copied) under a new label.
  OperatorMatrix relabeled(std::string label) const;

 private:
  OperatorMatrix(GridPtr grid, std::shared_ptr<const Matrix> entries, std::string label,
                 std::shared_ptr<const Eigenbasis> basis);

  GridPtr grid_;
  std::shared_ptr<const Matrix> entries_;
  std::string label_;
  std::shared_ptr<const Eigenbasis> basis_;
};

/// Throws std::invalid_argument unless both operators live on the same grid.
void require_compatible(const OperatorMatrix& a, const OperatorMatrix& b);

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(Complex scale, const OperatorMatrix& a);
Vector operator*(const OperatorMatrix& a, const Vector& v);

enum class Scheme { spectral, finite_difference };

/// One summand a(x) * d^order/dx^order of a linear differential operator.
struct DerivativeTerm {
  int order = 0;
  std::function<Complex(double)> coefficient;
};

/// Assembles sum_p a_p(x) d^p/dx^p on `grid`.
///
/// Spectral: sine basis on dirichlet grids (orders 0 and 2), Fourier basis on
/// periodic grids (orders 0..2). When every coefficient is constant the exact
/// eigenbasis is attached. Finite differences: fourth-order stencils; the
/// dirichlet grid reflects oddly across the boundary, the `none` grid switches
/// to one-sided stencils, the periodic grid wraps.
OperatorMatrix discretize_operator(std::span<const DerivativeTerm> terms, GridPtr grid,
                                   Scheme scheme);

/// diag(f(x_i)); throws std::invalid_argument on a non-finite sample.
OperatorMatrix multiplication_operator(const std::function<Complex(double)>& f, GridPtr grid,
                                       std::string label = "f");

/// Samples f at the grid points.
Vector sample(const std::function<Complex(double)>& f, const Grid& grid);

/// [a, b] = ab - ba.
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

/// ad_L^0(A) = A, ad_L^k(A) = [L, ad_L^{k-1}(A)].
OperatorMatrix ad_power(const OperatorMatrix& generator, const OperatorMatrix& a, int k);

/// Finite-difference weights for the derivative of order `order` at `x0`
/// from the stencil nodes (Fornberg's recursion).
Eigen::VectorXd fd_weights(double x0, std::span<const double> nodes, int order);

}  // namespace oscillade
