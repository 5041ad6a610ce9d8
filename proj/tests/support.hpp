#pragma once

#include "oscillade/operators.hpp"

#include <random>

namespace testing {

using oscillade::Complex;
using oscillade::Matrix;
using oscillade::Vector;

inline constexpr Complex I{0.0, 1.0};

inline Matrix random_matrix(std::mt19937& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> normal;
  Matrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = scale * Complex(normal(rng), normal(rng));
  return m;
}

inline Vector random_vector(std::mt19937& rng, int n) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testing
