// Command-line front end: simulate scenarios, monitor traces, run sweeps.
#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <thread>

#include "fstl/parser.hpp"
#include "fstl/scenario.hpp"
#include "fstl/svg.hpp"
#include "fstl/trace_io.hpp"

namespace fs = std::filesystem;
using namespace fstl;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct SimulateOptions {
  std::string config;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> theta0;
  std::optional<std::string> controller;
  bool no_noise = false;
};

void apply_overrides(Scenario& sc, const SimulateOptions& opt) {
  if (opt.seed) sc.sim.seed = *opt.seed;
  if (opt.no_noise) sc.sim.noise_on = false;
  if (opt.theta0) {
    if (sc.x0.size() < 3) throw SchemaError("--theta0 only applies to unicycle scenarios");
    sc.x0[2] = *opt.theta0;
  }
  if (opt.controller) apply_controller_kind(sc, *opt.controller);
}

std::vector<std::string> task_names(const Scenario& sc) {
  std::vector<std::string> names;
  for (const Task& task : sc.bundle.tasks) names.push_back(task.name);
  return names;
}

RunSummary run_and_write(const Scenario& sc, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  const Trajectory traj = simulate(sc.bundle, sc.sim, sc.x0);
  const std::vector<std::string> names = task_names(sc);
  write_trace_csv((out_dir / sc.output.csv).string(), traj, names);
  write_trajectory_svg((out_dir / sc.output.trajectory_svg).string(), {&traj}, {sc.name},
                       sc.bundle.predicates);
  write_robustness_svg((out_dir / sc.output.robustness_svg).string(), traj, names);
  const RunSummary summary = summarize(sc, traj);
  write_summary_json((out_dir / sc.output.summary).string(), summary);
  return summary;
}

int cmd_simulate(const SimulateOptions& opt) {
  Scenario sc = load_scenario(opt.config);
  apply_overrides(sc, opt);
  for (const std::string& w : sc.warnings) std::cerr << "warning: " << w << "\n";
  const RunSummary summary = run_and_write(sc, opt.out_dir);
  std::cout << "scenario " << summary.scenario << " (controller " << summary.controller << ", seed "
            << summary.seed << (summary.noise ? ", noisy" : ", noise-free") << ")\n";
  if (summary.robustness)
    std::cout << "robustness " << *summary.robustness << " -> "
              << (*summary.satisfied ? "satisfied" : "violated") << "\n";
  for (const auto& [name, value] : summary.min_rho)
    std::cout << "min rho[" << name << "] = " << value << "\n";
  std::cout << "outputs in " << opt.out_dir << "\n";
  return kExitOk;  // completed runs exit 0 regardless of satisfaction
}

int cmd_monitor(const std::string& trace_path, const std::string& formula_text,
                const std::string& predicates_path) {
  const PredicateTable table = load_predicates(predicates_path);
  const FormulaPtr formula = parse_formula(formula_text, table);
  const PositionTrace trace = read_position_trace_csv(trace_path);
  const RobustnessValue rv = eval_robustness(*formula, table, trace, trace.t0);
  const bool ok = rv.value > 0.0;
  std::cout << "robustness " << rv.value << "\n" << (ok ? "satisfied" : "violated") << "\n";
  return ok ? kExitOk : kExitViolated;
}

struct SweepAxis {
  enum class Kind { Theta0, Seeds, Controllers } kind;
  std::vector<double> theta0;
  int seed_count = 0;
  std::vector<std::string> controllers;
};

SweepAxis parse_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw SchemaError("--axis must look like name=value");
  const std::string name = text.substr(0, eq);
  const std::string rest = text.substr(eq + 1);
  SweepAxis axis{};
  if (name == "theta0") {
    axis.kind = SweepAxis::Kind::Theta0;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      size_t used = 0;
      axis.theta0.push_back(std::stod(item, &used));
      if (used != item.size()) throw SchemaError("bad theta0 value '" + item + "'");
    }
    if (axis.theta0.empty()) throw SchemaError("theta0 axis needs at least one angle");
  } else if (name == "seeds") {
    axis.kind = SweepAxis::Kind::Seeds;
    axis.seed_count = std::stoi(rest);
    if (axis.seed_count < 1) throw SchemaError("seeds axis needs a positive count");
  } else if (name == "controllers") {
    axis.kind = SweepAxis::Kind::Controllers;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) axis.controllers.push_back(item);
    if (axis.controllers.empty()) throw SchemaError("controllers axis needs at least one entry");
  } else {
    throw SchemaError("unknown sweep axis '" + name + "'");
  }
  return axis;
}

int cmd_sweep(const std::string& config, const std::string& out_dir_s, const std::string& axis_text) {
  const SweepAxis axis = parse_axis(axis_text);
  const Scenario base = load_scenario(config);
  for (const std::string& w : base.warnings) std::cerr << "warning: " << w << "\n";
  const fs::path out_dir(out_dir_s);
  fs::create_directories(out_dir);

  struct Run {
    std::string label;
    Scenario scenario;
  };
  std::vector<Run> runs;
  switch (axis.kind) {
    case SweepAxis::Kind::Theta0:
      for (double th : axis.theta0) {
        Run r{"theta0_" + std::to_string(th), base};
        r.scenario.x0[2] = th;
        runs.push_back(std::move(r));
      }
      break;
    case SweepAxis::Kind::Seeds:
      for (int i = 0; i < axis.seed_count; ++i) {
        Run r{"seed_" + std::to_string(base.sim.seed + i), base};
        r.scenario.sim.seed = base.sim.seed + i;
        runs.push_back(std::move(r));
      }
      break;
    case SweepAxis::Kind::Controllers:
      for (const std::string& kind : axis.controllers) {
        Run r{"controller_" + kind, base};
        apply_controller_kind(r.scenario, kind);
        runs.push_back(std::move(r));
      }
      break;
  }

  // Runs are independent; execute them concurrently and gather in run order.
  std::vector<std::future<Trajectory>> futures;
  futures.reserve(runs.size());
  for (const Run& run : runs)
    futures.push_back(std::async(std::launch::async, [&run]() {
      return simulate(run.scenario.bundle, run.scenario.sim, run.scenario.x0);
    }));

  std::vector<Trajectory> trajectories;
  trajectories.reserve(runs.size());
  for (auto& f : futures) trajectories.push_back(f.get());

  std::ofstream csv(out_dir / "sweep.csv", std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write sweep.csv");
  csv << "run,controller,seed,theta0,robustness,satisfied";
  for (const Task& task : base.bundle.tasks) csv << ",min_rho_" << task.name;
  csv << "\n";

  int satisfied_count = 0, with_formula = 0;
  for (size_t i = 0; i < runs.size(); ++i) {
    const RunSummary s = summarize(runs[i].scenario, trajectories[i]);
    csv << runs[i].label << ',' << s.controller << ',' << s.seed << ',' << s.theta0;
    if (s.robustness) {
      csv << ',' << *s.robustness << ',' << (*s.satisfied ? 1 : 0);
      ++with_formula;
      satisfied_count += *s.satisfied ? 1 : 0;
    } else {
      csv << ",,";
    }
    for (const auto& [_, value] : s.min_rho) csv << ',' << value;
    csv << "\n";
  }
  csv.close();

  std::vector<const Trajectory*> ptrs;
  std::vector<std::string> labels;
  for (size_t i = 0; i < runs.size(); ++i) {
    ptrs.push_back(&trajectories[i]);
    labels.push_back(runs[i].label);
  }
  write_trajectory_svg((out_dir / "sweep_overlay.svg").string(), ptrs, labels,
                       base.bundle.predicates);

  std::cout << runs.size() << " runs -> " << (out_dir / "sweep.csv").string() << "\n";
  if (with_formula > 0)
    std::cout << "satisfied " << satisfied_count << "/" << with_formula << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"STL funnel-control toolkit: simulate, monitor, sweep"};
  app.require_subcommand(1);

  SimulateOptions sim_opt;
  CLI::App* sim = app.add_subcommand("simulate", "run a scenario and write trace/plots/summary");
  sim->add_option("--config", sim_opt.config, "scenario JSON path")->required();
  sim->add_option("--out", sim_opt.out_dir, "output directory")->required();
  std::uint64_t seed_val = 0;
  double theta0_val = 0.0;
  std::string controller_val;
  CLI::Option* seed_opt = sim->add_option("--seed", seed_val, "override the RNG seed");
  CLI::Option* theta_opt = sim->add_option("--theta0", theta0_val, "override the initial heading (rad)");
  CLI::Option* ctrl_opt =
      sim->add_option("--controller", controller_val, "second-input law: aug or prac")
          ->check(CLI::IsMember({"aug", "prac"}));
  sim->add_flag("--no-noise", sim_opt.no_noise, "disable process noise");

  std::string mon_trace, mon_formula, mon_preds;
  CLI::App* mon = app.add_subcommand("monitor", "evaluate STL robustness over a trace CSV");
  mon->add_option("--trace", mon_trace, "trace CSV path")->required();
  mon->add_option("--formula", mon_formula, "STL formula text")->required();
  mon->add_option("--predicates", mon_preds, "predicate JSON path")->required();

  std::string sw_config, sw_out, sw_axis;
  CLI::App* sw = app.add_subcommand("sweep", "run a scenario across theta0/seeds/controllers");
  sw->add_option("--config", sw_config, "scenario JSON path")->required();
  sw->add_option("--out", sw_out, "output directory")->required();
  sw->add_option("--axis", sw_axis, "theta0=a,b,... | seeds=N | controllers=aug,prac")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sim->parsed()) {
      if (*seed_opt) sim_opt.seed = seed_val;
      if (*theta_opt) sim_opt.theta0 = theta0_val;
      if (*ctrl_opt) sim_opt.controller = controller_val;
      return cmd_simulate(sim_opt);
    }
    if (mon->parsed()) return cmd_monitor(mon_trace, mon_formula, mon_preds);
    if (sw->parsed()) return cmd_sweep(sw_config, sw_out, sw_axis);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
