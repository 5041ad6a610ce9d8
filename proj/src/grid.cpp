#include "oscillade/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace oscillade {

std::string_view to_string(Boundary bc) {
  switch (bc) {
    case Boundary::dirichlet:
      return "dirichlet";
    case Boundary::none:
      return "none";
    case Boundary::periodic:
      return "periodic";
  }
  return "unknown";
}

Boundary boundary_from_string(std::string_view name) {
  if (name == "dirichlet") return Boundary::dirichlet;
  if (name == "none" || name == "extended") return Boundary::none;
  if (name == "periodic") return Boundary::periodic;
  throw std::invalid_argument("unknown boundary tag '" + std::string(name) + "'");
}

Grid::Grid(double lower, double upper, int count, Boundary bc)
    : lower_(lower), upper_(upper), bc_(bc) {
  if (count < 4) throw std::invalid_argument("M too small");
  if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper)) {
    throw std::invalid_argument("degenerate interval");
  }
  spacing_ = (upper - lower) / count;
  const double shift = bc == Boundary::dirichlet ? 0.5 : 0.0;
  points_.resize(count);
  for (int j = 0; j < count; ++j) points_[j] = lower + (j + shift) * spacing_;
  weights_ = Eigen::VectorXd::Constant(count, spacing_);
}

GridPtr build_grid(double lower, double upper, int count, Boundary bc) {
  return std::make_shared<const Grid>(lower, upper, count, bc);
}

}  // namespace oscillade
