// Fixed-step closed-loop integration with seeded process noise and full trace
// recording.
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "fstl/combiner.hpp"
#include "fstl/robustness.hpp"
#include "fstl/trace.hpp"

namespace fstl {

struct SimulationError : std::runtime_error {
  SimulationError(double t, const std::string& msg)
      : std::runtime_error("t=" + std::to_string(t) + ": " + msg), t(t) {}
  double t;
};

struct SimConfig {
  double dt = 0.005;
  double horizon = 10.0;
  std::uint64_t seed = 1;
  Eigen::VectorXd input_limits;  // per-channel |u| caps; empty = unlimited
  int record_stride = 2;
  bool noise_on = true;
};

struct TaskSample {
  double rho = 0.0;
  double gamma = 0.0;
  double Gamma = 0.0;
  double alpha = 0.0;
  RegionLabel::Kind label = RegionLabel::Kind::Interest;
};

struct Trajectory {
  double dt = 0.0;  // recorded grid spacing (sim dt * record_stride)
  std::vector<double> t;
  std::vector<Eigen::VectorXd> state;
  std::vector<Eigen::VectorXd> input;
  std::vector<Eigen::VectorXd> noise;
  std::vector<std::vector<TaskSample>> tasks;  // [row][task]

  int rows() const { return static_cast<int>(t.size()); }

  /// Planar positions (state coordinates 0,1) as a robustness-ready trace.
  PositionTrace positions() const;

  /// Smallest recorded robustness of task i.
  double min_rho(size_t task) const;

  /// True if task i ever dipped below its lower curve.
  bool violated(size_t task) const;
};

/// One classical RK4 step of xdot = f + g u(x,t) + w; the control callback is
/// re-evaluated at the internal stages, w is held constant, and angle
/// coordinates are wrapped afterwards. Throws SimulationError on non-finite
/// states.
Eigen::VectorXd rk4_step(const SystemModel& model,
                         const std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)>& control,
                         const Eigen::VectorXd& x, double t, double dt, const Eigen::VectorXd& w);

/// Closed-loop run of the bundle under the combined controller. Deterministic
/// given the seed; funnel violations are recorded, never fatal.
Trajectory simulate(const TaskBundle& bundle, const SimConfig& config, const Eigen::VectorXd& x0);

/// Discrete robustness of f at t = t[0] over the recorded grid.
RobustnessValue check_satisfaction(const Trajectory& traj, const Formula& f,
                                   const PredicateTable& table);

}  // namespace fstl
