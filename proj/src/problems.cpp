#include "oscillade/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace oscillade {

namespace {

constexpr Complex kI{0.0, 1.0};

std::function<std::vector<Vector>(double, const std::vector<double>&)> direct_reference(
    Example example, int steps_per_period) {
  return [example = std::move(example), steps_per_period](double omega,
                                                          const std::vector<double>& times) {
    const SampledPath path = direct_solve(example.problem(omega), steps_per_period);
    std::vector<Vector> out;
    out.reserve(times.size());
    for (double t : times) out.push_back(path(t));
    return out;
  };
}

}  // namespace

ProblemSpec Example::problem(double omega) const {
  return make_problem(flow, alpha, u0(omega), omega, t_star, weights);
}

Example heat_example(int M) {
  GridPtr grid = build_grid(0.0, std::numbers::pi, M, Boundary::dirichlet);
  const DerivativeTerm laplacian[] = {{2, [](double) { return Complex(1.0); }}};
  OperatorMatrix generator = discretize_operator(laplacian, grid, Scheme::spectral).relabeled("L");
  Example ex{.name = "heat",
             .grid = grid,
             .generator = generator,
             .alpha = multiplication_operator([](double) { return Complex(1.0); }, grid, "alpha"),
             .flow = std::make_shared<const SemigroupEvaluator>(generator),
             .u0_shape = sample([](double x) { return Complex(std::sin(x)); }, *grid),
             .u0_scale = [](double omega) { return std::exp(-kI / omega); },
             .weights = grid->weights(),
             .t_star = 1.0,
             .reference = nullptr};
  ex.reference = [grid](double omega, const std::vector<double>& times) {
    std::vector<Vector> out;
    for (double t : times) {
      out.push_back(sample([&](double x) { return exact_heat(x, t, omega); }, *grid));
    }
    return out;
  };
  return ex;
}

Example cosine_heat_setup(int M) {
  Example ex = heat_example(M);
  ex.name = "heat-cos";
  ex.alpha = multiplication_operator([](double x) { return Complex(std::cos(x)); }, ex.grid, "alpha");
  ex.u0_scale = [](double) { return Complex(1.0); };
  ex.reference = direct_reference(ex, 256);
  return ex;
}

double smooth_window(double x, double a, double b, double sigma) {
  const double delta = 6.0 * sigma;
  return 0.25 * std::erfc(-(x - (a - delta)) / sigma) * std::erfc((x - (b + delta)) / sigma);
}

TransportResolution transport_resolution(double c) {
  const double sigma = c <= 4.0 ? 0.12 : 0.05;
  const double reach = 2.0 + 12.0 * sigma;
  const double bandwidth = std::abs(c) * (2.0 * reach + 1.0) + 10.0 / sigma;
  return {std::numbers::pi / bandwidth, sigma};
}

Example transport_example(double c) { return transport_example(c, transport_resolution(c)); }

Example transport_example(double c, TransportResolution resolution) {
  const double t_star = 1.0;
  const double a = -1.0;
  const double b = 1.0 + t_star;
  const double sigma = resolution.sigma;
  // Nodes land on -1 and 1 so the observed interval gets trapezoid weights.
  const double h = 2.0 / std::ceil(2.0 / resolution.spacing);
  const double lower = a - h * std::ceil(12.0 * sigma / h);
  int M = static_cast<int>(std::ceil((b + 12.0 * sigma - lower) / h - 1e-9));
  M += M % 2;
  const double upper = lower + M * h;
  GridPtr grid = build_grid(lower, upper, M, Boundary::periodic);

  auto window = [=](double x) { return smooth_window(x, a, b, sigma); };
  const DerivativeTerm gradient[] = {{1, [](double) { return Complex(1.0); }}};
  OperatorMatrix generator = discretize_operator(gradient, grid, Scheme::spectral).relabeled("L");
  OperatorMatrix alpha = multiplication_operator(
      [=](double x) { return Complex(std::cos(c * (x * x + x)) * window(x)); }, grid, "alpha");

  Eigen::VectorXd weights = Eigen::VectorXd::Zero(M);
  for (int j = 0; j < M; ++j) {
    const double x = grid->points()[j];
    if (x >= -1.0 - 0.25 * h && x <= 1.0 + 0.25 * h) {
      weights[j] = std::abs(std::abs(x) - 1.0) < 0.25 * h ? 0.5 * h : h;
    }
  }

  Example ex{.name = "transport",
             .grid = grid,
             .generator = generator,
             .alpha = alpha,
             .flow = std::make_shared<const SemigroupEvaluator>(generator),
             .u0_shape = sample([=](double x) { return Complex(x * window(x)); }, *grid),
             .u0_scale = [](double) { return Complex(1.0); },
             .weights = weights,
             .t_star = t_star,
             .reference = nullptr};
  ex.reference = [grid, weights, c](double omega, const std::vector<double>& times) {
    std::vector<Vector> out;
    for (double t : times) {
      Vector v = Vector::Zero(grid->size());
      for (int j = 0; j < grid->size(); ++j) {
        if (weights[j] > 0.0) v[j] = exact_transport(grid->points()[j], t, omega, c);
      }
      out.push_back(std::move(v));
    }
    return out;
  };
  return ex;
}

Example custom_example(const CustomSpec& spec) {
  const Boundary bc = boundary_from_string(spec.boundary);
  GridPtr grid = build_grid(spec.lower, spec.upper, spec.M, bc);

  Scheme scheme;
  if (spec.scheme == "spectral") {
    scheme = Scheme::spectral;
  } else if (spec.scheme == "finite_difference") {
    scheme = Scheme::finite_difference;
  } else {
    throw std::invalid_argument("unknown scheme '" + spec.scheme + "'");
  }

  int order;
  if (spec.operator_name == "laplacian") {
    order = 2;
  } else if (spec.operator_name == "gradient") {
    order = 1;
  } else {
    throw std::invalid_argument("unknown operator '" + spec.operator_name + "'");
  }
  const DerivativeTerm term[] = {{order, [](double) { return Complex(1.0); }}};
  OperatorMatrix generator = discretize_operator(term, grid, scheme).relabeled("L");

  const double c = spec.c;
  std::function<Complex(double)> alpha;
  if (spec.alpha == "zero") {
    alpha = [](double) { return Complex(0.0); };
  } else if (spec.alpha == "one") {
    alpha = [](double) { return Complex(1.0); };
  } else if (spec.alpha == "cos") {
    alpha = [](double x) { return Complex(std::cos(x)); };
  } else if (spec.alpha == "cos_quadratic") {
    alpha = [c](double x) { return Complex(std::cos(c * (x * x + x))); };
  } else {
    throw std::invalid_argument("unknown alpha '" + spec.alpha + "'");
  }

  std::function<Complex(double)> u0;
  if (spec.u0 == "sin") {
    u0 = [](double x) { return Complex(std::sin(x)); };
  } else if (spec.u0 == "x") {
    u0 = [](double x) { return Complex(x); };
  } else if (spec.u0 == "one") {
    u0 = [](double) { return Complex(1.0); };
  } else {
    throw std::invalid_argument("unknown u0 '" + spec.u0 + "'");
  }

  Example ex{.name = "custom",
             .grid = grid,
             .generator = generator,
             .alpha = multiplication_operator(alpha, grid, "alpha"),
             .flow = std::make_shared<const SemigroupEvaluator>(generator),
             .u0_shape = sample(u0, *grid),
             .u0_scale = [](double) { return Complex(1.0); },
             .weights = grid->weights(),
             .t_star = spec.t_star,
             .reference = nullptr};
  ex.reference = direct_reference(ex, spec.steps_per_period);
  return ex;
}

}  // namespace oscillade
