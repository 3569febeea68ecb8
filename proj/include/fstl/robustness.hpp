#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>

#include "fstl/formula.hpp"
#include "fstl/predicate.hpp"
#include "fstl/trace.hpp"

namespace fstl {

struct HorizonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Robustness plus the leaf that realized the min/max chain. `sign` is the
/// negation parity along the chain: value == sign * h(predicate, sample)
/// whenever the leaf is a predicate.
struct RobustnessValue {
  double value = 0.0;
  int predicate = -1;     // -1 for a True leaf
  int sample = -1;        // grid index of the realizing evaluation
  int leaf_preorder = 0;  // preorder position of the leaf in the tree
  int sign = 1;
};

/// Inclusive sample-offset window for bounds [a,b] on grid spacing dt.
/// May be empty (lo > hi) when no grid point falls in the window.
struct WindowOffsets {
  int lo;
  int hi;
};
WindowOffsets window_offsets(double a, double b, double dt);

double eval_predicate(const Predicate& p, const Eigen::Vector2d& state_proj);

/// Discrete-time spatial robustness of f over the trace at time t (t must lie
/// on the grid). Temporal min/max range over grid samples inside the closed
/// windows. Throws HorizonError when the trace is too short and
/// std::invalid_argument when a window contains no grid sample.
RobustnessValue eval_robustness(const Formula& f, const PredicateTable& table,
                                const PositionTrace& trace, double t);

/// Robustness of a non-temporal formula at a single planar point, with the
/// gradient and Hessian of the active leaf. nullopt when the active leaf's
/// gradient is undefined (circle predicate evaluated at its center).
struct PsiLocal {
  double rho = 0.0;
  Eigen::Vector2d grad = Eigen::Vector2d::Zero();
  Eigen::Matrix2d hess = Eigen::Matrix2d::Zero();
  int predicate = -1;
  int leaf_preorder = 0;
  int sign = 1;
};
std::optional<PsiLocal> psi_local(const Formula& psi, const PredicateTable& table,
                                  const Eigen::Vector2d& p);

/// Plain robustness of a non-temporal formula at a point (no gradient demand).
double eval_nontemporal(const Formula& psi, const PredicateTable& table, const Eigen::Vector2d& p);

/// Gradient of the active leaf with respect to an n-dimensional state whose
/// first two coordinates carry the planar position; remaining entries are 0.
/// Throws std::invalid_argument if psi contains a temporal operator and
/// std::domain_error if the gradient is singular at the state.
Eigen::VectorXd robustness_gradient(const Formula& psi, const PredicateTable& table,
                                    const Eigen::VectorXd& state);

}  // namespace fstl
