#include "fstl/coupling.hpp"

#include <stdexcept>

namespace fstl {

std::optional<Eigen::VectorXd> v_term(const SystemModel& model, const Formula& psi,
                                      const PredicateTable& table, const Eigen::VectorXd& x) {
  if (contains_temporal(psi)) throw std::invalid_argument("v_term: psi must be non-temporal");
  if (model.structure) {
    const StructuredSplit& s = *model.structure;
    const auto local = psi_local(psi, table, x.head<2>());
    if (!local) return std::nullopt;
    // v' = d rho/d x1 * g11(x2); rho depends on x1 through its first two coords.
    Eigen::RowVectorXd drho = Eigen::RowVectorXd::Zero(s.n1);
    drho.head<2>() = local->grad.transpose();
    return Eigen::VectorXd((drho * s.g11(x.tail(s.n2))).transpose());
  }
  const auto local = psi_local(psi, table, x.head<2>());
  if (!local) return std::nullopt;
  Eigen::RowVectorXd drho = Eigen::RowVectorXd::Zero(model.n);
  drho.head<2>() = local->grad.transpose();
  return Eigen::VectorXd((drho * model.g(x)).transpose());
}

double Coupling::F(const Eigen::VectorXd& w) const {
  if (!a1 || !a2) throw std::domain_error("Coupling::F: |v| singular, unit-v terms unavailable");
  const int n1 = static_cast<int>(f1_val.size());
  const int n2 = static_cast<int>(f2_val.size());
  return (*a1 * (f1_val + w.head(n1)))(0) + (*a2 * (f2_val + w.tail(n2)))(0);
}

Eigen::VectorXd Coupling::v2(const Eigen::VectorXd& u1, double delta) const {
  const int m2 = static_cast<int>(g22.cols());
  if (delta <= 0.0) return Eigen::VectorXd::Zero(m2);
  const double scale = 2.0 * delta / (v.squaredNorm() + delta);
  return scale * (g22.transpose() * dv_dx2.transpose() * u1);
}

std::optional<Coupling> coupling_coeffs(const SystemModel& model, const Formula& psi,
                                        const PredicateTable& table, const Eigen::VectorXd& x) {
  if (!model.structure)
    throw std::invalid_argument("coupling_coeffs: model has no structured split");
  const StructuredSplit& s = *model.structure;
  const Eigen::VectorXd x1 = x.head(s.n1);
  const Eigen::VectorXd x2 = x.tail(s.n2);

  const auto local = psi_local(psi, table, x1.head<2>());
  if (!local) return std::nullopt;

  Coupling c;
  c.rho = local->rho;
  Eigen::RowVectorXd drho = Eigen::RowVectorXd::Zero(s.n1);
  drho.head<2>() = local->grad.transpose();
  Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(s.n1, s.n1);
  hess.topLeftCorner<2, 2>() = local->hess;

  const Eigen::MatrixXd g11 = s.g11(x2);
  c.v = (drho * g11).transpose();
  c.v_norm = c.v.norm();
  // dv/dx1 = g11' * hess(rho); dv/dx2 column j = drho * d g11/d x2_j.
  c.dv_dx1 = g11.transpose() * hess;
  c.dv_dx2.resize(s.m1, s.n2);
  for (int j = 0; j < s.n2; ++j) c.dv_dx2.col(j) = (drho * s.dg11_dx2(x2, j)).transpose();
  c.g22 = s.g22(x);
  c.f1_val = s.f1(x1);
  c.f2_val = s.f2(x);

  if (c.v_norm >= kSingularFloor) {
    const Eigen::RowVectorXd vhat = c.v.transpose() / c.v_norm;
    c.a1 = vhat * c.dv_dx1;
    c.a2 = vhat * c.dv_dx2;
    c.G = *c.a1 * g11 + *c.a2 * s.g21(x);
    c.v_aug = (*c.a2 * c.g22).transpose();
  }
  return c;
}

}  // namespace fstl
