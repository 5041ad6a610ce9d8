#pragma once

#include "oscillade/operators.hpp"
#include "oscillade/semigroup.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oscillade {

/// Composite Gauss-Legendre settings for integrals against e^{i omega t}.
/// Panel width never exceeds min(horizon/16, 2 pi/(omega * panels_per_period)).
struct QuadratureSpec {
  int panels_per_period = 8;
  int points_per_panel = 10;
  double rel_tol = 1e-10;
};

/// Gauss-Legendre nodes and weights mapped to [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  static const GaussRule& legendre(int points);
};

double panel_width_limit(double horizon, double frequency, const QuadratureSpec& spec);

/// Uniform partition of [0, horizon] into `panels` panels.
struct TimeMesh {
  double horizon = 1.0;
  int panels = 1;

  double width() const { return horizon / panels; }
  double time(int node) const { return node == panels ? horizon : node * width(); }

  /// Smallest panel count honouring the width limit for `frequency`,
  /// rounded up to a multiple of `multiple_of` so that sampling grids of
  /// multiple_of + 1 uniform times fall on panel boundaries.
  static TimeMesh resolving(double horizon, double frequency, const QuadratureSpec& spec,
                            int multiple_of = 1);
};

/// A time inside panel `panel` at relative position `fraction` in [0, 1].
struct MeshPoint {
  int panel = 0;
  double fraction = 0.0;
};

MeshPoint locate(const TimeMesh& mesh, double t);
double time_of(const TimeMesh& mesh, const MeshPoint& p);

using TimeFunction = std::function<Vector(double)>;
using MeshFunction = std::function<Vector(const MeshPoint&)>;

namespace detail {
inline double magnitude(const Vector& v) { return v.norm(); }
inline double magnitude(const Complex& z) { return std::abs(z); }
inline double magnitude(double x) { return std::abs(x); }
}  // namespace detail

/// Composite Gauss quadrature of g over [a, b] with panels resolving
/// e^{i omega t}; the panel count doubles until two successive values agree
/// to spec.rel_tol. Returns zero when b <= a.
template <class F>
auto oscillatory_integral(F&& g, double a, double b, double omega, const QuadratureSpec& spec) {
  using Value = std::decay_t<decltype(g(a))>;
  const GaussRule& rule = GaussRule::legendre(spec.points_per_panel);
  auto zero = [&] {
    Value z = g(a);
    z *= 0.0;
    return z;
  };
  auto composite = [&](int panels) {
    const double h = (b - a) / panels;
    Value sum = zero();
    for (int p = 0; p < panels; ++p) {
      const double left = a + p * h;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        sum += (rule.weights[q] * h) * g(left + rule.nodes[q] * h);
      }
    }
    return sum;
  };
  if (!(b > a)) return zero();
  const double limit = panel_width_limit(b - a, omega, spec);
  int panels = static_cast<int>(std::ceil((b - a) / limit - 1e-9));
  Value previous = composite(panels);
  for (int refinement = 0; refinement < 8; ++refinement) {
    panels *= 2;
    Value current = composite(panels);
    const double scale = std::max(detail::magnitude(current), 1e-300);
    if (detail::magnitude(current - previous) <= spec.rel_tol * scale) return current;
    previous = std::move(current);
  }
  return previous;
}

/// t -> e^{tL} v, stored at mesh nodes and extended inside panels by one
/// semigroup step from the panel's left node.
class FlowPath {
 public:
  FlowPath(SemigroupPtr flow, TimeMesh mesh, const Vector& start);

  Vector operator()(const MeshPoint& p) const;
  Vector operator()(double t) const { return (*this)(locate(mesh_, t)); }
  const TimeMesh& mesh() const { return mesh_; }

 private:
  SemigroupPtr flow_;
  TimeMesh mesh_;
  std::vector<Vector> nodes_;
};

/// y(t) = int_0^t e^{(t - s)L} g(s) ds, accumulated panel by panel:
/// y(t_{j+1}) = e^{hL} y(t_j) + Gauss over [t_j, t_{j+1}]. Evaluation inside a
/// panel integrates the partial panel with a fresh Gauss rule, calling the
/// integrand at mesh points, which is what makes nested integrals exact up to
/// quadrature error.
class DuhamelIntegral {
 public:
  DuhamelIntegral(SemigroupPtr flow, TimeMesh mesh, MeshFunction integrand,
                  int points_per_panel = 10);

  Vector operator()(const MeshPoint& p) const;
  Vector operator()(double t) const { return (*this)(locate(mesh_, t)); }
  const TimeMesh& mesh() const { return mesh_; }
  const std::vector<Vector>& node_values() const { return nodes_; }

 private:
  SemigroupPtr flow_;
  TimeMesh mesh_;
  MeshFunction integrand_;
  const GaussRule* rule_;
  std::vector<Vector> nodes_;
};

/// Uniform samples of a vector-valued path with cubic (four-point Lagrange)
/// interpolation between them.
class SampledPath {
 public:
  SampledPath(double horizon, std::vector<Vector> samples);

  Vector operator()(double t) const;
  double horizon() const { return horizon_; }
  const std::vector<Vector>& samples() const { return samples_; }
  double spacing() const { return horizon_ / (static_cast<double>(samples_.size()) - 1.0); }

 private:
  double horizon_;
  std::vector<Vector> samples_;
};

}  // namespace oscillade
