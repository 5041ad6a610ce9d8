#include "oscillade/oracle.hpp"
#include "oscillade/problems.hpp"
#include "oscillade/quadrature.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace oscillade;
using testing::I;

namespace {

constexpr double pi = std::numbers::pi;

double sampled_error(const SampledPath& path, const Example& ex, double omega) {
  const std::vector<double> times = sample_times(ex.t_star, 8);
  const std::vector<Vector> reference = ex.reference(omega, times);
  double worst = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    worst = std::max(worst, weighted_l2(reference[i] - path(times[i]), ex.weights));
  }
  return worst;
}

}  // namespace

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  for (int points : {2, 5, 10}) {
    const GaussRule& rule = GaussRule::legendre(points);
    for (int degree = 0; degree < 2 * points; ++degree) {
      double sum = 0.0;
      for (int q = 0; q < points; ++q) sum += rule.weights[q] * std::pow(rule.nodes[q], degree);
      CHECK(sum == doctest::Approx(1.0 / (degree + 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("oscillatory integrals against closed forms") {
  const QuadratureSpec spec;
  const double w10 = 10.0;
  const Complex exact10 = (std::exp(I * w10) - 1.0) / (I * w10);
  const Complex got10 =
      oscillatory_integral([&](double t) { return std::exp(I * (w10 * t)); }, 0.0, 1.0, w10, spec);
  CHECK(std::abs(got10 - exact10) < 1e-12);

  const double half = oscillatory_integral([](double) { return 1.0; }, 0.0, 0.5, 1.0, spec);
  CHECK(half == doctest::Approx(0.5).epsilon(1e-14));

  const double w = 100.0;
  const Complex exact = std::exp(I * w) / (I * w) - (std::exp(I * w) - 1.0) / ((I * w) * (I * w));
  const Complex got =
      oscillatory_integral([&](double t) { return t * std::exp(I * (w * t)); }, 0.0, 1.0, w, spec);
  CHECK(std::abs(got - exact) < 1e-12);

  CHECK(oscillatory_integral([](double) { return 1.0; }, 1.0, 1.0, 1.0, spec) == 0.0);
}

TEST_CASE("time meshes") {
  const QuadratureSpec spec;
  const TimeMesh mesh = TimeMesh::resolving(1.0, 100.0, spec, 200);
  CHECK(mesh.panels % 200 == 0);
  CHECK(mesh.width() <= panel_width_limit(1.0, 100.0, spec) + 1e-15);
  CHECK(mesh.time(mesh.panels) == 1.0);
  for (double t : {0.0, 0.123, 0.5, 1.0}) {
    CHECK(time_of(mesh, locate(mesh, t)) == doctest::Approx(t).epsilon(1e-14));
  }
}

TEST_CASE("sampled paths interpolate cubics exactly") {
  std::vector<Vector> samples;
  auto cubic = [](double t) { return Complex(1.0 - 2.0 * t + t * t * t, t * t); };
  for (int j = 0; j <= 10; ++j) samples.push_back(Vector::Constant(2, cubic(j / 10.0)));
  const SampledPath path(1.0, samples);
  for (double t : {0.0, 0.03, 0.51, 0.97, 1.0}) CHECK(std::abs(path(t)(1) - cubic(t)) < 1e-13);
}

TEST_CASE("Duhamel integral of the flow itself is t e^{tL} u0") {
  const Example heat = heat_example(16);
  const TimeMesh mesh{1.0, 20};
  const FlowPath flow(heat.flow, mesh, heat.u0_shape);
  const DuhamelIntegral y(heat.flow, mesh, [&](const MeshPoint& p) { return flow(p); });
  for (double t : {0.25, 0.61, 1.0}) {
    const Vector expected = t * heat.flow->apply(t, heat.u0_shape);
    CHECK((y(t) - expected).norm() < 1e-12 * expected.norm());
  }
}

TEST_CASE("problem validation and norms") {
  const Example heat = heat_example(16);
  CHECK_THROWS_AS(make_problem(heat.flow, heat.alpha, heat.u0_shape, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_problem(heat.flow, heat.alpha, heat.u0_shape, 10.0, -1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_problem(heat.flow, heat.alpha, Vector::Ones(3), 10.0), std::invalid_argument);
  const ProblemSpec prob = make_problem(heat.flow, heat.alpha, heat.u0_shape, 10.0);
  CHECK(prob.weights.size() == 16);

  const auto times = sample_times(1.0);
  CHECK(times.size() == 201);
  CHECK(times.front() == 0.0);
  CHECK(times.back() == 1.0);
  // ||sin||_{L2(0, pi)} = sqrt(pi / 2).
  CHECK(weighted_l2(heat.u0_shape, heat.weights) == doctest::Approx(std::sqrt(pi / 2)).epsilon(1e-12));
}

TEST_CASE("K vanishes on zero input and zero alpha") {
  const Example ex = cosine_heat_setup(8);
  const ProblemSpec prob = ex.problem(10.0);
  const QuadratureSpec spec;
  const TimeFunction zero = [&](double) { return Vector(Vector::Zero(8)); };
  CHECK(apply_K(zero, spec, prob)(0.7).norm() == 0.0);

  const ProblemSpec quiet = make_problem(ex.flow, OperatorMatrix::zero(ex.grid), prob.u0, 10.0);
  const TimeFunction flow = [&](double t) { return ex.flow->apply(t, prob.u0); };
  CHECK(apply_K(flow, spec, quiet)(0.7).norm() == 0.0);
}

TEST_CASE("K applied to the flow equals the first nested integral") {
  const Example ex = cosine_heat_setup(8);
  const ProblemSpec prob = ex.problem(10.0);
  const TimeFunction flow = [&](double t) { return ex.flow->apply(t, prob.u0); };
  const TimeFunction k = apply_K(flow, {}, prob);
  const NestedDuhamel t1(1, prob);
  for (double t : {0.2, 0.55, 1.0}) CHECK((k(t) - t1(t)).norm() < 1e-9 * t1(t).norm());
}

TEST_CASE("Neumann iterates") {
  const Example heat = heat_example(16);
  const ProblemSpec prob = heat.problem(10.0);
  const auto iterates = neumann_iterates(4, {}, prob);
  REQUIRE(iterates.size() == 5);
  for (double t : {0.0, 0.4, 1.0}) {
    CHECK((iterates[0](t) - heat.flow->apply(t, prob.u0)).norm() < 1e-12);
  }
  // Successive corrections shrink.
  double previous = INFINITY;
  for (int n = 1; n <= 4; ++n) {
    double step = 0.0;
    for (double t : sample_times(1.0, 20)) {
      step = std::max(step, weighted_l2(iterates[n](t) - iterates[n - 1](t), prob.weights));
    }
    CHECK(step < previous);
    previous = step;
  }

  const ProblemSpec quiet = make_problem(heat.flow, OperatorMatrix::zero(heat.grid), prob.u0, 10.0);
  const SampledPath still = neumann_solve(3, {}, quiet);
  CHECK((still(0.8) - heat.flow->apply(0.8, prob.u0)).norm() < 1e-12);
}

TEST_CASE("exact heat solution limits") {
  for (double omega : {10.0, 100.0, 1000.0}) {
    for (double x : {0.3, 1.2, 2.9}) {
      CHECK(std::abs(exact_heat(x, 0.0, omega) - std::sin(x) * std::exp(-I / omega)) < 1e-15);
      for (double t : {0.2, 1.0}) {
        CHECK(std::abs(exact_heat(x, t, omega) - std::exp(-t) * std::sin(x)) <= 2.0 / omega);
      }
    }
    CHECK(std::abs(exact_heat(0.0, 0.5, omega)) == 0.0);
    CHECK(std::abs(exact_heat(pi, 0.5, omega)) < 1e-15);
  }
}

TEST_CASE("exact transport solution") {
  CHECK(exact_transport(0.4, 0.0, 100.0, 1.0) == Complex(0.4));
  for (double x : {-1.0, 0.0, 0.7}) {
    const Complex far = exact_transport(x, 1.0, 1000.0, 1.0);
    CHECK(std::abs(far - (x + 1.0)) <= 5.0 / 1000.0);
    QuadratureSpec fine;
    fine.points_per_panel = 16;
    fine.panels_per_period = 16;
    fine.rel_tol = 1e-13;
    const Complex a = exact_transport(x, 0.8, 100.0, 31.0);
    const Complex b = exact_transport(x, 0.8, 100.0, 31.0, fine);
    CHECK(std::abs(a - b) < 1e-10);
  }
}

TEST_CASE("direct solver") {
  const Example heat = heat_example(16);
  const ProblemSpec prob = heat.problem(10.0);
  CHECK_THROWS_AS(direct_solve(prob, 16), std::invalid_argument);

  SUBCASE("zero alpha is the flow") {
    const ProblemSpec quiet = make_problem(heat.flow, OperatorMatrix::zero(heat.grid), prob.u0, 10.0);
    const SampledPath path = direct_solve(quiet, 32);
    CHECK((path(1.0) - heat.flow->apply(1.0, prob.u0)).norm() < 1e-13);
  }

  SUBCASE("second order under step halving") {
    std::vector<double> errors;
    for (int steps : {32, 64, 128}) errors.push_back(sampled_error(direct_solve(prob, steps, 8), heat, 10.0));
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
      CHECK(std::log2(errors[i] / errors[i + 1]) == doctest::Approx(2.0).epsilon(0.1));
    }
  }

  SUBCASE("transport agrees with the characteristics solution") {
    const Example transport = transport_example(1.0);
    const ProblemSpec tp = transport.problem(100.0);
    const SampledPath path = direct_solve(tp, 256);
    Eigen::Index centre = 0;
    transport.grid->points().cwiseAbs().minCoeff(&centre);
    const double x = transport.grid->points()(centre);
    CHECK(std::abs(path(1.0)(centre) - exact_transport(x, 1.0, 100.0, 1.0)) < 1e-6);
  }
}
