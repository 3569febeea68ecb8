// Input-coupling terms of the robustness derivatives: the v vector, its state
// partials, and the coefficients entering the augmented and practical laws.
#pragma once

#include <Eigen/Dense>

#include <optional>

#include "fstl/robustness.hpp"
#include "fstl/system.hpp"

namespace fstl {

/// v so that the input-driven part of rho-dot is v.u (u1 for structured
/// models, the full input otherwise). nullopt when the psi gradient is
/// singular at the state.
std::optional<Eigen::VectorXd> v_term(const SystemModel& model, const Formula& psi,
                                      const PredicateTable& table, const Eigen::VectorXd& x);

/// Everything the second-input laws need at one state. The unit-v terms (G,
/// v_aug, F) divide by |v| and are absent when |v| is below the singularity
/// floor; v2 never divides by |v| alone and is always available.
struct Coupling {
  double rho = 0.0;          // rho_psi(x1)
  Eigen::VectorXd v;         // m1
  double v_norm = 0.0;
  Eigen::MatrixXd dv_dx1;    // m1 x n1
  Eigen::MatrixXd dv_dx2;    // m1 x n2
  Eigen::MatrixXd g22;       // n2 x m2
  Eigen::VectorXd f1_val;    // n1
  Eigen::VectorXd f2_val;    // n2

  std::optional<Eigen::RowVectorXd> G;      // 1 x m1, coefficient of u1 in rho_aug-dot
  std::optional<Eigen::VectorXd> v_aug;     // m2,     coefficient of u2 in rho_aug-dot
  std::optional<Eigen::RowVectorXd> a1;     // vhat' dv/dx1 (1 x n1)
  std::optional<Eigen::RowVectorXd> a2;     // vhat' dv/dx2 (1 x n2)

  /// Drift-plus-noise term F(x, w) of rho_aug-dot; requires the unit-v terms.
  double F(const Eigen::VectorXd& w) const;

  /// Coefficient of u2 in the u1-law-induced second derivative of rho:
  ///   v2 = 2 delta / (|v|^2 + delta) * (u1' dv/dx2 g22)'.
  /// Identically zero when the u1 law runs without regularization.
  Eigen::VectorXd v2(const Eigen::VectorXd& u1, double delta) const;
};

/// nullopt when the psi gradient is singular at x (e.g. a circle predicate
/// evaluated at its center). Requires a structured model.
std::optional<Coupling> coupling_coeffs(const SystemModel& model, const Formula& psi,
                                        const PredicateTable& table, const Eigen::VectorXd& x);

}  // namespace fstl
