#include "fstl/trace_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fstl {

namespace {

std::string fmt9(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

std::string controller_name(const Scenario& sc) {
  if (sc.bundle.tasks.empty()) return "none";
  switch (sc.bundle.tasks.front().ctrl.kind) {
    case ControllerSpec::Kind::General: return "general";
    case ControllerSpec::Kind::UnicycleAug: return "aug";
    case ControllerSpec::Kind::UnicyclePrac: return "prac";
  }
  return "none";
}

}  // namespace

void write_trace_csv(const std::string& path, const Trajectory& traj,
                     const std::vector<std::string>& task_names) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);

  out << "t,x,y,theta,u1,u2";
  for (size_t i = 1; i <= task_names.size(); ++i)
    out << ",rho_" << i << ",gamma_" << i << ",Gamma_" << i << ",alpha_" << i;
  out << ",w1,w2,w3\n";

  for (int k = 0; k < traj.rows(); ++k) {
    const Eigen::VectorXd& x = traj.state[k];
    const Eigen::VectorXd& u = traj.input[k];
    const Eigen::VectorXd& w = traj.noise[k];
    out << fmt9(traj.t[k]);
    for (int i = 0; i < 3; ++i) out << ',' << fmt9(i < x.size() ? x[i] : 0.0);
    for (int i = 0; i < 2; ++i) out << ',' << fmt9(i < u.size() ? u[i] : 0.0);
    for (const TaskSample& s : traj.tasks[k])
      out << ',' << fmt9(s.rho) << ',' << fmt9(s.gamma) << ',' << fmt9(s.Gamma) << ','
          << fmt9(s.alpha);
    for (int i = 0; i < 3; ++i) out << ',' << fmt9(i < w.size() ? w[i] : 0.0);
    out << '\n';
  }
}

PositionTrace read_position_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty trace file");
  const std::vector<std::string> header = split_csv_line(line);
  int t_col = -1, x_col = -1, y_col = -1;
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "t") t_col = static_cast<int>(i);
    if (header[i] == "x") x_col = static_cast<int>(i);
    if (header[i] == "y") y_col = static_cast<int>(i);
  }
  if (t_col < 0 || x_col < 0 || y_col < 0)
    throw std::runtime_error(path + ": trace header must contain t, x, y columns");

  PositionTrace trace;
  std::vector<double> times;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    const int need = std::max(t_col, std::max(x_col, y_col));
    if (static_cast<int>(cells.size()) <= need)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": short row");
    try {
      times.push_back(std::stod(cells[t_col]));
      trace.points.emplace_back(std::stod(cells[x_col]), std::stod(cells[y_col]));
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed number");
    }
  }
  if (trace.points.empty()) throw std::runtime_error(path + ": no samples");
  trace.t0 = times.front();
  if (times.size() > 1) {
    trace.dt = times[1] - times[0];
    for (size_t k = 1; k < times.size(); ++k) {
      const double expect = trace.t0 + static_cast<double>(k) * trace.dt;
      if (std::abs(times[k] - expect) > 1e-6 * std::max(1.0, std::abs(expect)))
        throw std::runtime_error(path + ": time grid is not uniform near row " +
                                 std::to_string(k + 1));
    }
  }
  return trace;
}

RunSummary summarize(const Scenario& scenario, const Trajectory& traj) {
  RunSummary s;
  s.scenario = scenario.name;
  s.controller = controller_name(scenario);
  s.seed = scenario.sim.seed;
  s.noise = scenario.sim.noise_on && scenario.bundle.model.noise.any();
  s.theta0 = scenario.x0.size() > 2 ? scenario.x0[2] : 0.0;
  if (scenario.formula) {
    const RobustnessValue rv = check_satisfaction(traj, *scenario.formula, scenario.bundle.predicates);
    s.robustness = rv.value;
    s.satisfied = rv.value > 0.0;
  }
  for (size_t i = 0; i < scenario.bundle.tasks.size(); ++i) {
    s.min_rho.emplace_back(scenario.bundle.tasks[i].name, traj.min_rho(i));
    s.violated.emplace_back(scenario.bundle.tasks[i].name, traj.violated(i));
  }
  s.final_state = traj.state.empty() ? scenario.x0 : traj.state.back();
  return s;
}

void write_summary_json(const std::string& path, const RunSummary& s) {
  nlohmann::ordered_json j;
  j["scenario"] = s.scenario;
  j["controller"] = s.controller;
  j["seed"] = s.seed;
  j["noise"] = s.noise;
  j["theta0"] = s.theta0;
  if (s.robustness) j["robustness"] = *s.robustness;
  else j["robustness"] = nullptr;
  if (s.satisfied) j["satisfied"] = *s.satisfied;
  else j["satisfied"] = nullptr;
  nlohmann::ordered_json min_rho = nlohmann::ordered_json::object();
  for (const auto& [name, value] : s.min_rho) min_rho[name] = value;
  j["min_rho"] = min_rho;
  nlohmann::ordered_json violated = nlohmann::ordered_json::object();
  for (const auto& [name, value] : s.violated) violated[name] = value;
  j["funnel_violated"] = violated;
  std::vector<double> fs(s.final_state.data(), s.final_state.data() + s.final_state.size());
  j["final_state"] = fs;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace fstl
