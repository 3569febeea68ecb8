#include "fstl/combiner.hpp"

#include <stdexcept>

namespace fstl {

namespace {

bool clamp_channels(Eigen::VectorXd& u, const Eigen::VectorXd& limits, int offset) {
  bool clipped = false;
  for (int i = 0; i < u.size(); ++i) {
    const int ch = offset + i;
    if (ch >= limits.size()) break;
    const double lim = limits[ch];
    if (!(lim > 0.0)) continue;
    if (u[i] > lim) {
      u[i] = lim;
      clipped = true;
    } else if (u[i] < -lim) {
      u[i] = -lim;
      clipped = true;
    }
  }
  return clipped;
}

}  // namespace

double weight(const FunnelSpec& funnel, double rho, double t) {
  const double hi = funnel.Gamma_value(t);
  if (rho > hi) return 0.0;
  return (hi - rho) / (hi - funnel.gamma_value(t));
}

ControlOutput combine(const TaskBundle& bundle, const Eigen::VectorXd& x, double t,
                      const Eigen::VectorXd& input_limits) {
  const SystemModel& model = bundle.model;
  const size_t M = bundle.tasks.size();
  if (M == 0) throw std::invalid_argument("combine: empty task bundle");
  const ControllerSpec::Kind kind = bundle.tasks.front().ctrl.kind;
  for (const Task& task : bundle.tasks)
    if (task.ctrl.kind != kind)
      throw std::invalid_argument("combine: tasks mix controller kinds");

  ControlOutput out;
  out.tasks.resize(M);

  if (kind == ControllerSpec::Kind::General) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(model.m);
    double wsum = 0.0;
    for (size_t i = 0; i < M; ++i) {
      const Task& task = bundle.tasks[i];
      const LawOutput law = general_control(task.ctrl, *task.psi, bundle.predicates, task.funnel,
                                            model, x, t);
      TaskDiag& d = out.tasks[i];
      d.rho = law.rho;
      d.region = law.region;
      d.kappa1 = law.kappa;
      d.v_norm = law.v_norm;
      d.singular = law.singular;
      d.alpha = weight(task.funnel, law.rho, t);
      acc += d.alpha * law.u;
      wsum += d.alpha;
    }
    out.u = wsum > 0.0 ? Eigen::VectorXd(acc / wsum) : Eigen::VectorXd::Zero(model.m);
    if (bundle.saturate_after_combine && input_limits.size() > 0)
      out.saturated = clamp_channels(out.u, input_limits, 0);
    return out;
  }

  if (!model.structure) throw std::invalid_argument("combine: structured controller kinds need a structured model");
  const int m1 = model.structure->m1;
  const int m2 = model.structure->m2;

  // Stage 1: consensus over the first input.
  Eigen::VectorXd acc1 = Eigen::VectorXd::Zero(m1);
  double wsum = 0.0;
  for (size_t i = 0; i < M; ++i) {
    const Task& task = bundle.tasks[i];
    const LawOutput law = u1_control(task.ctrl, *task.psi, bundle.predicates, task.funnel, model,
                                     x, t);
    TaskDiag& d = out.tasks[i];
    d.rho = law.rho;
    d.region = law.region;
    d.kappa1 = law.kappa;
    d.v_norm = law.v_norm;
    d.singular = law.singular;
    d.alpha = weight(task.funnel, law.rho, t);
    acc1 += d.alpha * law.u;
    wsum += d.alpha;
  }

  out.u = Eigen::VectorXd::Zero(m1 + m2);
  if (wsum <= 0.0) return out;  // every task uncontrolled

  Eigen::VectorXd u1 = acc1 / wsum;
  if (bundle.saturate_after_combine && input_limits.size() > 0)
    out.saturated = clamp_channels(u1, input_limits, 0);

  // Stage 2: per-task second-input laws at the consensus u1, then averaged
  // with the same weights.
  Eigen::VectorXd acc2 = Eigen::VectorXd::Zero(m2);
  for (size_t i = 0; i < M; ++i) {
    const Task& task = bundle.tasks[i];
    const LawOutput law =
        kind == ControllerSpec::Kind::UnicycleAug
            ? u2_aug_control(task.ctrl, *task.psi, bundle.predicates, model, x, t, u1)
            : u2_practical_control(task.ctrl, *task.psi, bundle.predicates, task.funnel, model, x,
                                   t, u1);
    out.tasks[i].kappa2 = law.kappa;
    out.tasks[i].singular = out.tasks[i].singular || law.singular;
    acc2 += out.tasks[i].alpha * law.u;
  }
  Eigen::VectorXd u2 = acc2 / wsum;
  if (bundle.saturate_after_combine && input_limits.size() > 0)
    out.saturated = clamp_channels(u2, input_limits, m1) || out.saturated;

  out.u.head(m1) = u1;
  out.u.tail(m2) = u2;
  return out;
}

}  // namespace fstl
