#include "oscillade/problems.hpp"
#include "oscillade/semigroup.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace oscillade;

TEST_CASE("semigroup at t = 0 is the identity") {
  const Example heat = heat_example(32);
  const Vector v = heat.u0_shape;
  CHECK((heat.flow->apply(0.0, v) - v).norm() < 1e-14);
}

TEST_CASE("heat kernel eigenmode decays as e^{-t}") {
  const Example heat = heat_example(32);
  const Vector v = heat.u0_shape;
  for (double t : {0.1, 0.5, 1.0}) {
    CHECK((heat.flow->apply(t, v) - std::exp(-t) * v).norm() < 1e-12 * v.norm());
  }
}

TEST_CASE("semigroup property and commutation with the generator") {
  std::mt19937 rng(11);
  const GridPtr grid = build_grid(0.0, 1.0, 8, Boundary::none);
  const Matrix l = testing::random_matrix(rng, 8, 0.3) - 1.5 * Matrix::Identity(8, 8);
  const OperatorMatrix generator(grid, l, "L");
  const SemigroupEvaluator eig(generator);
  const SemigroupEvaluator pade = SemigroupEvaluator::pade_only(generator);
  CHECK(eig.mode() == SemigroupEvaluator::Mode::eigendecomposition);
  CHECK(pade.mode() == SemigroupEvaluator::Mode::scaling_and_squaring);

  const Vector v = testing::random_vector(rng, 8);
  for (const SemigroupEvaluator* s : {&eig, &pade}) {
    const Vector composed = s->apply(0.3, s->apply(0.4, v));
    const Vector direct = s->apply(0.7, v);
    CHECK((composed - direct).norm() < 1e-10 * direct.norm());
    const Vector lhs = s->apply(0.6, Vector(l * v));
    const Vector rhs = l * s->apply(0.6, v);
    CHECK((lhs - rhs).norm() < 1e-10 * rhs.norm());
  }
  CHECK((eig.matrix(0.9) - pade.matrix(0.9)).norm() < 1e-11);
}

TEST_CASE("ill-conditioned generators fall back to scaling and squaring") {
  const GridPtr grid = build_grid(0.0, 1.0, 4, Boundary::none);
  Matrix jordan = -Matrix::Identity(4, 4);
  for (int i = 0; i + 1 < 4; ++i) jordan(i, i + 1) = 1.0;
  const SemigroupEvaluator s(OperatorMatrix(grid, jordan, "J"));
  CHECK(s.mode() == SemigroupEvaluator::Mode::scaling_and_squaring);
  const Vector e0 = Vector::Unit(4, 1);
  const Vector out = s.apply(1.0, e0);
  CHECK(std::abs(out(0) - std::exp(-1.0)) < 1e-13);
  CHECK(std::abs(out(1) - std::exp(-1.0)) < 1e-13);
}

TEST_CASE("negative time is rejected") {
  const Example heat = heat_example(16);
  CHECK_THROWS(heat.flow->apply(-0.1, heat.u0_shape));
}
