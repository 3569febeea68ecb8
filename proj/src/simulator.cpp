#include "fstl/simulator.hpp"

#include <cmath>

namespace fstl {

PositionTrace Trajectory::positions() const {
  PositionTrace trace;
  trace.t0 = t.empty() ? 0.0 : t.front();
  trace.dt = dt;
  trace.points.reserve(state.size());
  for (const Eigen::VectorXd& x : state) trace.points.emplace_back(x[0], x[1]);
  return trace;
}

double Trajectory::min_rho(size_t task) const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& row : tasks) m = std::min(m, row.at(task).rho);
  return m;
}

bool Trajectory::violated(size_t task) const {
  for (const auto& row : tasks)
    if (row.at(task).label == RegionLabel::Kind::Violation) return true;
  return false;
}

Eigen::VectorXd rk4_step(const SystemModel& model,
                         const std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)>& control,
                         const Eigen::VectorXd& x, double t, double dt, const Eigen::VectorXd& w) {
  const auto rhs = [&](const Eigen::VectorXd& xs, double ts) -> Eigen::VectorXd {
    return model.f(xs) + model.g(xs) * control(xs, ts) + w;
  };
  const Eigen::VectorXd k1 = rhs(x, t);
  const Eigen::VectorXd k2 = rhs(x + 0.5 * dt * k1, t + 0.5 * dt);
  const Eigen::VectorXd k3 = rhs(x + 0.5 * dt * k2, t + 0.5 * dt);
  const Eigen::VectorXd k4 = rhs(x + dt * k3, t + dt);
  Eigen::VectorXd next = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  for (int idx : model.wrap_indices) next[idx] = wrap_angle(next[idx]);
  if (!next.allFinite()) throw SimulationError(t, "state became non-finite during integration");
  return next;
}

namespace {

std::vector<TaskSample> sample_tasks(const TaskBundle& bundle, const Eigen::VectorXd& x, double t) {
  std::vector<TaskSample> row;
  row.reserve(bundle.tasks.size());
  for (const Task& task : bundle.tasks) {
    TaskSample s;
    s.rho = eval_nontemporal(*task.psi, bundle.predicates, x.head<2>());
    s.gamma = task.funnel.gamma_value(t);
    s.Gamma = task.funnel.Gamma_value(t);
    s.alpha = weight(task.funnel, s.rho, t);
    s.label = classify(task.funnel, s.rho, t).kind;
    row.push_back(s);
  }
  return row;
}

}  // namespace

Trajectory simulate(const TaskBundle& bundle, const SimConfig& config, const Eigen::VectorXd& x0) {
  if (!(config.dt > 0.0)) throw std::invalid_argument("simulate: dt must be > 0");
  if (!(config.horizon >= config.dt)) throw std::invalid_argument("simulate: horizon must be >= dt");
  if (config.record_stride < 1) throw std::invalid_argument("simulate: record_stride must be >= 1");
  const long steps = std::lround(config.horizon / config.dt);
  if (std::abs(steps * config.dt - config.horizon) > 1e-9 * std::max(1.0, config.horizon))
    throw std::invalid_argument("simulate: horizon must be an integer multiple of dt");
  if (steps % config.record_stride != 0)
    throw std::invalid_argument("simulate: step count must be a multiple of record_stride");

  const auto control = [&](const Eigen::VectorXd& xs, double ts) {
    return combine(bundle, xs, ts, config.input_limits).u;
  };

  NoiseSampler sampler(bundle.model.noise, config.seed);
  const bool noisy = config.noise_on && bundle.model.noise.any();
  const Eigen::VectorXd zero_noise = Eigen::VectorXd::Zero(bundle.model.n);

  Trajectory traj;
  traj.dt = config.dt * config.record_stride;
  Eigen::VectorXd x = x0;
  if (!x.allFinite()) throw SimulationError(0.0, "initial state is non-finite");

  for (long k = 0; k <= steps; ++k) {
    const double t = k * config.dt;
    const Eigen::VectorXd w = (noisy && k < steps) ? sampler.sample() : zero_noise;
    if (k % config.record_stride == 0) {
      traj.t.push_back(t);
      traj.state.push_back(x);
      traj.input.push_back(combine(bundle, x, t, config.input_limits).u);
      traj.noise.push_back(k < steps ? w : zero_noise);
      traj.tasks.push_back(sample_tasks(bundle, x, t));
    }
    if (k < steps) x = rk4_step(bundle.model, control, x, t, config.dt, w);
  }
  return traj;
}

RobustnessValue check_satisfaction(const Trajectory& traj, const Formula& f,
                                   const PredicateTable& table) {
  const PositionTrace trace = traj.positions();
  return eval_robustness(f, table, trace, trace.t0);
}

}  // namespace fstl
