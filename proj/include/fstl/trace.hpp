#pragma once

#include <Eigen/Dense>

#include <vector>

namespace fstl {

/// Uniformly sampled planar positions; the signal predicates are evaluated on.
struct PositionTrace {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<Eigen::Vector2d> points;

  int size() const { return static_cast<int>(points.size()); }
  double time_at(int k) const { return t0 + k * dt; }
  double span() const { return points.empty() ? 0.0 : (size() - 1) * dt; }
};

}  // namespace fstl
