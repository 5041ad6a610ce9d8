#pragma once

#include "oscillade/operators.hpp"
#include "oscillade/oracle.hpp"
#include "oscillade/semigroup.hpp"

#include <functional>
#include <string>
#include <vector>

namespace oscillade {

/// A discretised test problem together with its reference solution.
///
/// The initial value may depend on omega through a scalar factor:
/// u0 = u0_scale(omega) * u0_shape.
struct Example {
  std::string name;
  GridPtr grid;
  OperatorMatrix generator;
  OperatorMatrix alpha;
  SemigroupPtr flow;
  Vector u0_shape;
  std::function<Complex(double)> u0_scale;
  Eigen::VectorXd weights;
  double t_star = 1.0;
  /// Reference solution on the grid at the requested times. Entries at
  /// points of zero weight are unspecified.
  std::function<std::vector<Vector>(double omega, const std::vector<double>& times)> reference;

  Vector u0(double omega) const { return u0_scale(omega) * u0_shape; }
  ProblemSpec problem(double omega) const;
};

/// u_t = u_xx + e^{i omega t} u on [0, pi], homogeneous Dirichlet data,
/// u0 = sin(x) e^{-i/omega}; sine-spectral grid of M points.
Example heat_example(int M = 64);

/// Same operator with alpha(x) = cos(x) and u0 = sin(x). Every commutator is
/// non-trivial here; the reference is direct_solve.
Example cosine_heat_setup(int M = 16);

/// Resolution of the windowed periodic transport grid.
struct TransportResolution {
  double spacing;
  double sigma;
};

TransportResolution transport_resolution(double c);

/// u_t = u_x + cos(c(x^2 + x)) e^{i omega t} u, u0 = x, observed on [-1, 1].
///
/// The data are multiplied by a smooth window equal to one on [-1, 1 + t*]
/// and the operator is the Fourier-spectral derivative on a periodic grid
/// covering the window's support, so e^{tL} is an exact shift of the
/// windowed data. Errors are weighted only on [-1, 1].
Example transport_example(double c = 1.0);
Example transport_example(double c, TransportResolution resolution);

/// Window used by the transport grid: equal to one on [a, b] to machine
/// precision, decaying over a few sigma outside.
double smooth_window(double x, double a, double b, double sigma);

/// User-assembled problem for the command-line driver.
struct CustomSpec {
  std::string operator_name = "laplacian";  // laplacian | gradient
  std::string scheme = "spectral";          // spectral | finite_difference
  std::string boundary = "dirichlet";       // dirichlet | none | periodic
  double lower = 0.0;
  double upper = 3.141592653589793;
  int M = 32;
  std::string alpha = "one";  // zero | one | cos | cos_quadratic
  std::string u0 = "sin";     // sin | x | one
  double c = 1.0;
  double t_star = 1.0;
  int steps_per_period = 256;
};

Example custom_example(const CustomSpec& spec);

}  // namespace oscillade
