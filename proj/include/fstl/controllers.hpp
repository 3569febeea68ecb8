// Elementary gradient controllers: the general law, the structured first-input
// law, and the two second-input laws (augmented-task and practical).
#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "fstl/coupling.hpp"
#include "fstl/funnel.hpp"
#include "fstl/gains.hpp"

namespace fstl {

struct ControllerSpec {
  enum class Kind { General, UnicycleAug, UnicyclePrac };

  Kind kind = Kind::General;
  double K = 1.0;
  double delta = 0.0;
  GainSchedule kappa1;
  GainSchedule kappa2;       // augmented-law or practical-law gain per kind
  double K2 = 1.0;           // K_aug for the augmented law
  double delta2 = 0.0;       // Delta_aug / Delta_2
  double v_min = 1e-3;
  double alpha_band = 0.5;   // Gamma_aug; gamma_aug is 0

  /// Augmented-task funnel implied by alpha_band.
  FunnelSpec aug_funnel() const {
    return FunnelSpec{Curve::constant(0.0), Curve::constant(alpha_band), 1e-3};
  }

  /// Validates parameter ranges. Conditions the theory needs but the practical
  /// setup deliberately violates are reported as warnings, not errors.
  static ControllerSpec checked(ControllerSpec spec, std::vector<std::string>* warnings = nullptr);
};

/// One elementary law evaluation. On a singular configuration the control is
/// zero and `singular` is set; callers decide how to blend that.
struct LawOutput {
  Eigen::VectorXd u;
  RegionLabel region;
  double rho = 0.0;
  double kappa = 0.0;
  double v_norm = 0.0;
  bool singular = false;
};

/// General law u = kappa K v / (|v|^2 + delta) on the whole input, zero in the
/// uncontrolled region.
LawOutput general_control(const ControllerSpec& spec, const Formula& psi,
                          const PredicateTable& table, const FunnelSpec& funnel,
                          const SystemModel& model, const Eigen::VectorXd& x, double t);

/// Structured first-input law (same shape, v from the g11 block, gain kappa1).
LawOutput u1_control(const ControllerSpec& spec, const Formula& psi, const PredicateTable& table,
                     const FunnelSpec& funnel, const SystemModel& model, const Eigen::VectorXd& x,
                     double t);

/// rho_aug = |v(x)| - v_min. nullopt when the psi gradient is singular at x.
std::optional<double> augmented_robustness(const SystemModel& model, const Formula& psi,
                                           const PredicateTable& table, const Eigen::VectorXd& x,
                                           double v_min);

/// Second-input law serving the augmented task; kappa2 may consume the
/// feedthrough -G(x) u1 (exp-funnel-offset schedule).
LawOutput u2_aug_control(const ControllerSpec& spec, const Formula& psi,
                         const PredicateTable& table, const SystemModel& model,
                         const Eigen::VectorXd& x, double t, const Eigen::VectorXd& u1);

/// Practical second-input law driving the u1-law-induced second derivative of
/// the task robustness; gated by the task funnel, not the augmented one.
LawOutput u2_practical_control(const ControllerSpec& spec, const Formula& psi,
                               const PredicateTable& table, const FunnelSpec& funnel,
                               const SystemModel& model, const Eigen::VectorXd& x, double t,
                               const Eigen::VectorXd& u1);

}  // namespace fstl
