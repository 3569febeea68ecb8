#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fstl/scenario.hpp"
#include "fstl/simulator.hpp"
#include "fstl/trace.hpp"

namespace fstl {

/// Trace CSV: header t,x,y,theta,u1,u2, then rho_i,gamma_i,Gamma_i,alpha_i per
/// task, then w1,w2,w3; 9 significant digits, one row per recorded sample.
void write_trace_csv(const std::string& path, const Trajectory& traj,
                     const std::vector<std::string>& task_names);

/// Reads t,x,y columns back into a uniformly spaced position trace.
PositionTrace read_position_trace_csv(const std::string& path);

struct RunSummary {
  std::string scenario;
  std::string controller;
  std::uint64_t seed = 0;
  bool noise = false;
  double theta0 = 0.0;
  std::optional<double> robustness;     // of the scenario formula at t = 0
  std::optional<bool> satisfied;
  std::vector<std::pair<std::string, double>> min_rho;   // per task
  std::vector<std::pair<std::string, bool>> violated;    // per task funnel
  Eigen::VectorXd final_state;
};

RunSummary summarize(const Scenario& scenario, const Trajectory& traj);
void write_summary_json(const std::string& path, const RunSummary& summary);

}  // namespace fstl
