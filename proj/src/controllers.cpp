#include "fstl/controllers.hpp"

#include <stdexcept>

namespace fstl {

namespace {

constexpr double kDenomFloor = 1e-18;

LawOutput zero_output(int dim, RegionLabel region, double rho, double v_norm = 0.0,
                      bool singular = false) {
  LawOutput out;
  out.u = Eigen::VectorXd::Zero(dim);
  out.region = region;
  out.rho = rho;
  out.v_norm = v_norm;
  out.singular = singular;
  return out;
}

}  // namespace

ControllerSpec ControllerSpec::checked(ControllerSpec spec, std::vector<std::string>* warnings) {
  if (!(spec.K >= 1.0)) throw std::invalid_argument("controller: K must be >= 1");
  if (!(spec.delta >= 0.0)) throw std::invalid_argument("controller: delta must be >= 0");
  if (!(spec.K2 >= 1.0)) throw std::invalid_argument("controller: K2 must be >= 1");
  if (!(spec.delta2 >= 0.0)) throw std::invalid_argument("controller: delta2 must be >= 0");
  if (spec.kind != Kind::General) {
    if (!(spec.v_min > 0.0)) throw std::invalid_argument("controller: v_min must be > 0");
    if (!(spec.v_min < spec.alpha_band && spec.alpha_band < 1.0 - spec.v_min))
      throw std::invalid_argument("controller: need v_min < alpha_band < 1 - v_min");
  }
  // The satisfaction proof needs (K - 1) v_min^2 >= delta; the practical setup
  // runs outside that regime on purpose, so flag it but do not reject it.
  if (spec.delta > 0.0 && (spec.K - 1.0) * spec.v_min * spec.v_min < spec.delta && warnings)
    warnings->push_back("controller: (K-1) v_min^2 < delta; outside the guarantee regime");
  return spec;
}

LawOutput general_control(const ControllerSpec& spec, const Formula& psi,
                          const PredicateTable& table, const FunnelSpec& funnel,
                          const SystemModel& model, const Eigen::VectorXd& x, double t) {
  const double rho = eval_nontemporal(psi, table, x.head<2>());
  const RegionLabel region = classify(funnel, rho, t);
  if (region.kind == RegionLabel::Kind::Uncontrolled)
    return zero_output(model.m, region, rho);

  const auto v = v_term(model, psi, table, x);
  if (!v) return zero_output(model.m, region, rho, 0.0, true);
  const double vv = v->squaredNorm();
  const double denom = vv + spec.delta;
  if (denom < kDenomFloor) return zero_output(model.m, region, rho, std::sqrt(vv), true);

  LawOutput out;
  out.region = region;
  out.rho = rho;
  out.v_norm = std::sqrt(vv);
  out.kappa = spec.kappa1.evaluate(rho, funnel, t);
  out.u = out.kappa * spec.K / denom * (*v);
  return out;
}

LawOutput u1_control(const ControllerSpec& spec, const Formula& psi, const PredicateTable& table,
                     const FunnelSpec& funnel, const SystemModel& model, const Eigen::VectorXd& x,
                     double t) {
  if (!model.structure) throw std::invalid_argument("u1_control: model has no structured split");
  const int m1 = model.structure->m1;
  const double rho = eval_nontemporal(psi, table, x.head<2>());
  const RegionLabel region = classify(funnel, rho, t);
  if (region.kind == RegionLabel::Kind::Uncontrolled) return zero_output(m1, region, rho);

  const auto v = v_term(model, psi, table, x);
  if (!v) return zero_output(m1, region, rho, 0.0, true);
  const double vv = v->squaredNorm();
  const double denom = vv + spec.delta;
  if (denom < kDenomFloor) return zero_output(m1, region, rho, std::sqrt(vv), true);

  LawOutput out;
  out.region = region;
  out.rho = rho;
  out.v_norm = std::sqrt(vv);
  out.kappa = spec.kappa1.evaluate(rho, funnel, t);
  out.u = out.kappa * spec.K / denom * (*v);
  return out;
}

std::optional<double> augmented_robustness(const SystemModel& model, const Formula& psi,
                                           const PredicateTable& table, const Eigen::VectorXd& x,
                                           double v_min) {
  const auto v = v_term(model, psi, table, x);
  if (!v) return std::nullopt;
  return v->norm() - v_min;
}

LawOutput u2_aug_control(const ControllerSpec& spec, const Formula& psi,
                         const PredicateTable& table, const SystemModel& model,
                         const Eigen::VectorXd& x, double t, const Eigen::VectorXd& u1) {
  if (!model.structure) throw std::invalid_argument("u2_aug_control: model has no structured split");
  const int m2 = model.structure->m2;
  const FunnelSpec aug = spec.aug_funnel();

  const auto coupling = coupling_coeffs(model, psi, table, x);
  if (!coupling)
    return zero_output(m2, RegionLabel{RegionLabel::Kind::Violation, 0.0}, 0.0, 0.0, true);

  const double rho_aug = coupling->v_norm - spec.v_min;
  const RegionLabel region = classify(aug, rho_aug, t);
  if (region.kind == RegionLabel::Kind::Uncontrolled)
    return zero_output(m2, region, rho_aug, coupling->v_norm);
  if (!coupling->v_aug)  // |v| at the singularity floor: v_aug unavailable
    return zero_output(m2, region, rho_aug, coupling->v_norm, true);

  const Eigen::VectorXd& v_aug = *coupling->v_aug;
  const double denom = v_aug.squaredNorm() + spec.delta2;
  if (denom < kDenomFloor) return zero_output(m2, region, rho_aug, coupling->v_norm, true);

  const double feedthrough = -((*coupling->G) * u1)(0);
  LawOutput out;
  out.region = region;
  out.rho = rho_aug;
  out.v_norm = coupling->v_norm;
  out.kappa = spec.kappa2.evaluate(rho_aug, aug, t, feedthrough);
  out.u = out.kappa * spec.K2 / denom * v_aug;
  return out;
}

LawOutput u2_practical_control(const ControllerSpec& spec, const Formula& psi,
                               const PredicateTable& table, const FunnelSpec& funnel,
                               const SystemModel& model, const Eigen::VectorXd& x, double t,
                               const Eigen::VectorXd& u1) {
  if (!model.structure)
    throw std::invalid_argument("u2_practical_control: model has no structured split");
  const int m2 = model.structure->m2;
  const double rho = eval_nontemporal(psi, table, x.head<2>());
  const RegionLabel region = classify(funnel, rho, t);
  if (region.kind == RegionLabel::Kind::Uncontrolled) return zero_output(m2, region, rho);

  const auto coupling = coupling_coeffs(model, psi, table, x);
  if (!coupling) return zero_output(m2, region, rho, 0.0, true);

  const Eigen::VectorXd v2 = coupling->v2(u1, spec.delta);
  const double denom = v2.squaredNorm() + spec.delta2;
  LawOutput out;
  out.region = region;
  out.rho = rho;
  out.v_norm = coupling->v_norm;
  out.kappa = spec.kappa2.evaluate(rho, funnel, t);
  // v2 may legitimately vanish (e.g. delta == 0); the law then outputs zero.
  out.u = denom < kDenomFloor ? Eigen::VectorXd::Zero(m2)
                              : Eigen::VectorXd(out.kappa * spec.K2 / denom * v2);
  return out;
}

}  // namespace fstl
