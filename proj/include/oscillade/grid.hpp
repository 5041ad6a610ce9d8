#pragma once

#include <Eigen/Dense>

#include <memory>
#include <string_view>

namespace oscillade {

/// Boundary treatment attached to a spatial mesh.
///
/// `dirichlet` places M cell-centred points strictly inside the interval
/// (homogeneous data on both ends). `none` and `periodic` place M points at
/// lower + j*h, j = 0..M-1, with h = (upper - lower)/M; `periodic` identifies
/// the two ends, `none` uses one-sided stencils there.
enum class Boundary { dirichlet, none, periodic };

std::string_view to_string(Boundary bc);
Boundary boundary_from_string(std::string_view name);

class Grid {
 public:
  Grid(double lower, double upper, int count, Boundary bc);

  double lower() const { return lower_; }
  double upper() const { return upper_; }
  double length() const { return upper_ - lower_; }
  int size() const { return static_cast<int>(points_.size()); }
  double spacing() const { return spacing_; }
  Boundary boundary() const { return bc_; }

  const Eigen::VectorXd& points() const { return points_; }
  /// Quadrature weights of the discrete L2 inner product; they sum to length().
  const Eigen::VectorXd& weights() const { return weights_; }

 private:
  double lower_;
  double upper_;
  double spacing_;
  Boundary bc_;
  Eigen::VectorXd points_;
  Eigen::VectorXd weights_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Uniform mesh of `count` points; throws std::invalid_argument when
/// count < 4 ("M too small") or lower >= upper ("degenerate interval").
GridPtr build_grid(double lower, double upper, int count, Boundary bc);

}  // namespace oscillade
