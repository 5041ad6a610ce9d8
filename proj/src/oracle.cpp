#include "oscillade/oracle.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace oscillade {

namespace {

constexpr Complex kI{0.0, 1.0};

int periods_in(double omega, double t_star) {
  return std::max(1, static_cast<int>(std::ceil(omega * t_star / (2.0 * std::numbers::pi) - 1e-9)));
}

int round_up(int value, int multiple) { return ((value + multiple - 1) / multiple) * multiple; }

}  // namespace

Vector ProblemSpec::forcing(double t, const Vector& v) const {
  return std::exp(kI * (omega * t)) * (alpha * v);
}

ProblemSpec make_problem(SemigroupPtr flow, OperatorMatrix alpha, Vector u0, double omega,
                         double t_star, Eigen::VectorXd weights) {
  if (!flow) throw std::invalid_argument("problem without semigroup");
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("omega must be positive, got " + std::to_string(omega));
  }
  if (!(t_star > 0.0)) throw std::invalid_argument("t_star must be positive");
  require_compatible(flow->generator(), alpha);
  if (u0.size() != alpha.size()) throw std::invalid_argument("u0 dimension mismatch");
  if (weights.size() == 0) weights = alpha.grid()->weights();
  if (weights.size() != alpha.size()) throw std::invalid_argument("weights dimension mismatch");
  return {std::move(flow), std::move(alpha), std::move(u0), omega, t_star, std::move(weights)};
}

double weighted_l2(const Vector& v, const Eigen::VectorXd& weights) {
  if (v.size() != weights.size()) throw std::invalid_argument("norm: dimension mismatch");
  return std::sqrt((weights.array() * v.array().abs2()).sum());
}

std::vector<double> sample_times(double t_star, int intervals) {
  if (intervals < 1) throw std::invalid_argument("need at least one sampling interval");
  std::vector<double> times(static_cast<std::size_t>(intervals) + 1);
  for (int i = 0; i <= intervals; ++i) times[static_cast<std::size_t>(i)] = t_star * i / intervals;
  times.back() = t_star;
  return times;
}

double y_norm(const TimeFunction& path, const Eigen::VectorXd& weights, double t_star,
              int intervals) {
  double worst = 0.0;
  for (double t : sample_times(t_star, intervals)) worst = std::max(worst, weighted_l2(path(t), weights));
  return worst;
}

double y_norm(const std::vector<Vector>& samples, const Eigen::VectorXd& weights) {
  double worst = 0.0;
  for (const Vector& v : samples) worst = std::max(worst, weighted_l2(v, weights));
  return worst;
}

TimeFunction apply_K(TimeFunction v, const QuadratureSpec& spec, const ProblemSpec& prob) {
  return [v = std::move(v), spec, prob](double t) -> Vector {
    if (t == 0.0) return Vector::Zero(prob.u0.size());
    auto integrand = [&](double s) -> Vector {
      return prob.flow->apply(t - s, prob.forcing(s, v(s)));
    };
    return oscillatory_integral(integrand, 0.0, t, prob.omega, spec);
  };
}

NestedDuhamel::NestedDuhamel(int depth, const ProblemSpec& prob, const QuadratureSpec& spec)
    : mesh_(TimeMesh::resolving(prob.t_star, prob.omega, spec, 200)) {
  if (depth < 0) throw std::invalid_argument("nesting depth must be non-negative");
  base_ = std::make_shared<FlowPath>(prob.flow, mesh_, prob.u0);
  for (int level = 1; level <= depth; ++level) {
    MeshFunction integrand;
    if (level == 1) {
      integrand = [prob, mesh = mesh_, inner = base_](const MeshPoint& p) {
        return prob.forcing(time_of(mesh, p), (*inner)(p));
      };
    } else {
      integrand = [prob, mesh = mesh_, inner = levels_.back()](const MeshPoint& p) {
        return prob.forcing(time_of(mesh, p), (*inner)(p));
      };
    }
    levels_.push_back(std::make_shared<DuhamelIntegral>(prob.flow, mesh_, std::move(integrand),
                                                        spec.points_per_panel));
  }
}

Vector NestedDuhamel::operator()(const MeshPoint& p) const {
  return levels_.empty() ? (*base_)(p) : (*levels_.back())(p);
}

Vector NestedDuhamel::operator()(double t) const { return (*this)(locate(mesh_, t)); }

int neumann_intervals(double omega, double t_star) {
  const int samples = std::min(64 * periods_in(omega, t_star), 1 << 16);
  return round_up(samples, 200);
}

std::vector<SampledPath> neumann_iterates(int n, const QuadratureSpec& spec,
                                          const ProblemSpec& prob) {
  if (n < 0) throw std::invalid_argument("iteration count must be non-negative");
  const TimeMesh mesh{prob.t_star, neumann_intervals(prob.omega, prob.t_star)};
  const FlowPath flow(prob.flow, mesh, prob.u0);
  std::vector<Vector> base;
  base.reserve(static_cast<std::size_t>(mesh.panels) + 1);
  for (int j = 0; j <= mesh.panels; ++j) base.push_back(flow(mesh.time(j)));

  std::vector<SampledPath> iterates;
  iterates.emplace_back(prob.t_star, base);
  for (int k = 1; k <= n; ++k) {
    const SampledPath& previous = iterates.back();
    auto integrand = [&](const MeshPoint& p) {
      const double t = time_of(mesh, p);
      return prob.forcing(t, previous(t));
    };
    const DuhamelIntegral duhamel(prob.flow, mesh, integrand, spec.points_per_panel);
    std::vector<Vector> samples = base;
    for (std::size_t j = 0; j < samples.size(); ++j) samples[j] += duhamel.node_values()[j];
    iterates.emplace_back(prob.t_star, std::move(samples));
  }
  return iterates;
}

SampledPath neumann_solve(int n, const QuadratureSpec& spec, const ProblemSpec& prob) {
  return neumann_iterates(n, spec, prob).back();
}

SampledPath direct_solve(const ProblemSpec& prob, int steps_per_period, int intervals) {
  if (steps_per_period < 32) throw std::invalid_argument("steps_per_period must be at least 32");
  if (intervals < 3) throw std::invalid_argument("need at least three output intervals");
  const long long wanted =
      static_cast<long long>(steps_per_period) * periods_in(prob.omega, prob.t_star);
  if (wanted > (1LL << 24)) throw std::overflow_error("direct_solve: step count overflow");
  const int steps = round_up(static_cast<int>(wanted), intervals);
  const int stride = steps / intervals;
  const double h = prob.t_star / steps;

  const Matrix half = prob.flow->matrix(0.5 * h);
  const bool diagonal = prob.alpha.is_diagonal();
  const Vector a = prob.alpha.entries().diagonal();

  std::vector<Vector> samples;
  samples.reserve(static_cast<std::size_t>(intervals) + 1);
  if (prob.alpha.entries().isZero(0.0)) {
    for (int j = 0; j <= intervals; ++j) {
      samples.push_back(prob.flow->apply(prob.t_star * j / intervals, prob.u0));
    }
    return SampledPath(prob.t_star, std::move(samples));
  }
  Vector u = prob.u0;
  samples.push_back(u);
  for (int k = 0; k < steps; ++k) {
    const Complex phase = h * std::exp(kI * (prob.omega * (k + 0.5) * h));
    u = half * u;
    if (diagonal) {
      u.array() *= (phase * a.array()).exp();
    } else {
      const Matrix kick = phase * prob.alpha.entries();
      u = Matrix(kick.exp()) * u;
    }
    u = half * u;
    if ((k + 1) % stride == 0) samples.push_back(u);
  }
  return SampledPath(prob.t_star, std::move(samples));
}

Complex exact_heat(double x, double t, double omega) {
  return std::sin(x) * std::exp(-t - kI * std::exp(kI * (omega * t)) / omega);
}

Complex exact_transport(double x, double t, double omega, double c, const QuadratureSpec& spec) {
  if (t == 0.0) return x;
  auto integrand = [&](double s) -> Complex {
    const double y = x + t - s;
    return std::cos(c * (y * y + y)) * std::exp(kI * (omega * s));
  };
  return (x + t) * std::exp(oscillatory_integral(integrand, 0.0, t, omega, spec));
}

}  // namespace oscillade
