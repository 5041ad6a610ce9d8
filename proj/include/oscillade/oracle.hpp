#pragma once

#include "oscillade/operators.hpp"
#include "oscillade/quadrature.hpp"
#include "oscillade/semigroup.hpp"

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <vector>

namespace oscillade {

/// Data of u_t = L u + alpha(x) e^{i omega t} u, u(0) = u0 on [0, t_star].
struct ProblemSpec {
  SemigroupPtr flow;
  OperatorMatrix alpha;
  Vector u0;
  double omega = 1.0;
  double t_star = 1.0;
  /// Weights of the discrete L2 norm used for error measurement. Points
  /// outside the observed region carry weight zero.
  Eigen::VectorXd weights;

  const OperatorMatrix& generator() const { return flow->generator(); }
  /// alpha e^{i omega t} v.
  Vector forcing(double t, const Vector& v) const;
};

/// Validates omega > 0, t_star > 0 and matching dimensions. Empty weights
/// default to the grid's quadrature weights.
ProblemSpec make_problem(SemigroupPtr flow, OperatorMatrix alpha, Vector u0, double omega,
                         double t_star = 1.0, Eigen::VectorXd weights = {});

/// sqrt(sum_i w_i |v_i|^2).
double weighted_l2(const Vector& v, const Eigen::VectorXd& weights);

/// The 201 (by default) uniform times used for the discrete Y-norm.
std::vector<double> sample_times(double t_star, int intervals = 200);

/// max_t of weighted_l2 over sample_times(t_star, intervals).
double y_norm(const TimeFunction& path, const Eigen::VectorXd& weights, double t_star,
              int intervals = 200);
double y_norm(const std::vector<Vector>& samples, const Eigen::VectorXd& weights);

/// (K v)(t) = int_0^t e^{(t-s)L} alpha e^{i omega s} v(s) ds, each value
/// computed by oscillatory_integral.
TimeFunction apply_K(TimeFunction v, const QuadratureSpec& spec, const ProblemSpec& prob);

/// K^d e^{tL} u0 by d nested panel-wise Duhamel integrals on a mesh resolving
/// the highest frequency d * omega; cost grows like panels * points^d.
class NestedDuhamel {
 public:
  NestedDuhamel(int depth, const ProblemSpec& prob, const QuadratureSpec& spec = {});

  int depth() const { return static_cast<int>(levels_.size()); }
  const TimeMesh& mesh() const { return mesh_; }
  Vector operator()(double t) const;
  Vector operator()(const MeshPoint& p) const;

 private:
  TimeMesh mesh_;
  std::shared_ptr<FlowPath> base_;
  std::vector<std::shared_ptr<DuhamelIntegral>> levels_;
};

/// Iterates u^{[k]} = e^{tL}u0 + K u^{[k-1]} from u^{[0]} = e^{tL}u0, each
/// iterate sampled on a uniform mesh and interpolated cubically for the next
/// K application. Returns u^{[0]}, ..., u^{[n]}.
std::vector<SampledPath> neumann_iterates(int n, const QuadratureSpec& spec,
                                          const ProblemSpec& prob);
SampledPath neumann_solve(int n, const QuadratureSpec& spec, const ProblemSpec& prob);

/// Sample count of the Neumann mesh: 64 per period, capped at 2^16, rounded
/// up to a multiple of 200.
int neumann_intervals(double omega, double t_star);

/// Strang splitting u_{k+1} = e^{hL/2} e^{h alpha e^{i omega t_{k+1/2}}} e^{hL/2} u_k.
/// The step count is steps_per_period per forcing period, rounded up to a
/// multiple of `intervals`; the solution is stored at intervals + 1 uniform
/// times and interpolated cubically between them. A zero alpha reduces to
/// sampling e^{tL} u0 directly.
SampledPath direct_solve(const ProblemSpec& prob, int steps_per_period, int intervals = 200);

/// sin(x) exp(-t - i e^{i omega t}/omega).
Complex exact_heat(double x, double t, double omega);

/// (x+t) exp(int_0^t cos(c((x+t-s)^2 + (x+t-s))) e^{i omega s} ds), the
/// solution of u_t = u_x + cos(c(x^2+x)) e^{i omega t} u with u(x,0) = x.
Complex exact_transport(double x, double t, double omega, double c,
                        const QuadratureSpec& spec = {});

}  // namespace oscillade
