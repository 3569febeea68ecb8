// Funnel-priority weighted blending of elementary controllers.
#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "fstl/controllers.hpp"
#include "fstl/formula.hpp"
#include "fstl/funnel.hpp"
#include "fstl/predicate.hpp"
#include "fstl/system.hpp"

namespace fstl {

struct Task {
  std::string name;
  FormulaPtr psi;  // non-temporal
  FunnelSpec funnel;
  ControllerSpec ctrl;
};

struct TaskBundle {
  SystemModel model;
  PredicateTable predicates;
  std::vector<Task> tasks;
  bool saturate_after_combine = true;
};

/// Funnel-priority weight: (Gamma - rho)/(Gamma - gamma) for rho <= Gamma,
/// else 0. Extends continuously above 1 below the funnel so the most
/// violating task dominates.
double weight(const FunnelSpec& funnel, double rho, double t);

struct TaskDiag {
  double rho = 0.0;
  double alpha = 0.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double v_norm = 0.0;
  RegionLabel region;
  bool singular = false;
};

struct ControlOutput {
  Eigen::VectorXd u;
  std::vector<TaskDiag> tasks;
  bool saturated = false;
};

/// Weighted average of the elementary controls. For structured kinds the u1
/// consensus is formed first, saturated, and fed to the per-task second-input
/// laws, whose outputs are averaged with the same weights. All weights zero
/// yields u = 0. A singular elementary law contributes zero control but keeps
/// its weight. `input_limits` (optional, per channel) is applied after each
/// combination stage when the bundle asks for saturation.
ControlOutput combine(const TaskBundle& bundle, const Eigen::VectorXd& x, double t,
                      const Eigen::VectorXd& input_limits = Eigen::VectorXd());

}  // namespace fstl
