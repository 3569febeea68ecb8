#include "fstl/scenario.hpp"

#include <json.hpp>

#include <fstream>
#include <set>

#include "fstl/parser.hpp"

namespace fstl {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& ctx, const std::string& msg) {
  throw SchemaError(ctx + ": " + msg);
}

void check_keys(const json& obj, const std::string& ctx, const std::set<std::string>& required,
                const std::set<std::string>& optional) {
  if (!obj.is_object()) fail(ctx, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!required.count(key) && !optional.count(key)) fail(ctx, "unknown key '" + key + "'");
  }
  for (const std::string& key : required)
    if (!obj.contains(key)) fail(ctx, "missing required key '" + key + "'");
}

double get_number(const json& obj, const std::string& ctx, const std::string& key) {
  if (!obj.at(key).is_number()) fail(ctx, "'" + key + "' must be a number");
  return obj.at(key).get<double>();
}

double get_number_or(const json& obj, const std::string& ctx, const std::string& key, double dflt) {
  if (!obj.contains(key)) return dflt;
  return get_number(obj, ctx, key);
}

std::string get_string(const json& obj, const std::string& ctx, const std::string& key) {
  if (!obj.at(key).is_string()) fail(ctx, "'" + key + "' must be a string");
  return obj.at(key).get<std::string>();
}

Eigen::VectorXd get_vector(const json& obj, const std::string& ctx, const std::string& key,
                           int expected = -1) {
  const json& arr = obj.at(key);
  if (!arr.is_array()) fail(ctx, "'" + key + "' must be an array of numbers");
  Eigen::VectorXd v(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) fail(ctx, "'" + key + "' must be an array of numbers");
    v[static_cast<int>(i)] = arr[i].get<double>();
  }
  if (expected >= 0 && v.size() != expected)
    fail(ctx, "'" + key + "' must have " + std::to_string(expected) + " entries");
  return v;
}

Curve parse_curve(const json& obj, const std::string& ctx) {
  if (!obj.is_object() || !obj.contains("kind")) fail(ctx, "curve needs a 'kind'");
  const std::string kind = get_string(obj, ctx, "kind");
  if (kind == "constant") {
    check_keys(obj, ctx, {"kind", "c"}, {});
    return Curve::constant(get_number(obj, ctx, "c"));
  }
  if (kind == "affine") {
    check_keys(obj, ctx, {"kind", "c0", "slope"}, {});
    return Curve::affine(get_number(obj, ctx, "c0"), get_number(obj, ctx, "slope"));
  }
  if (kind == "affine-capped") {
    check_keys(obj, ctx, {"kind", "c0", "slope", "cap"}, {});
    return Curve::affine_capped(get_number(obj, ctx, "c0"), get_number(obj, ctx, "slope"),
                                get_number(obj, ctx, "cap"));
  }
  fail(ctx, "unknown curve kind '" + kind + "'");
}

Predicate parse_predicate(const std::string& name, const json& obj, const std::string& ctx) {
  if (!obj.is_object() || !obj.contains("kind")) fail(ctx, "predicate needs a 'kind'");
  const std::string kind = get_string(obj, ctx, "kind");
  try {
    if (kind == "circle-inside") {
      check_keys(obj, ctx, {"kind", "center", "radius"}, {});
      const Eigen::VectorXd c = get_vector(obj, ctx, "center", 2);
      return Predicate::circle_inside(name, c.head<2>(), get_number(obj, ctx, "radius"));
    }
    if (kind == "circle-outside") {
      check_keys(obj, ctx, {"kind", "center", "radius"}, {});
      const Eigen::VectorXd c = get_vector(obj, ctx, "center", 2);
      return Predicate::circle_outside(name, c.head<2>(), get_number(obj, ctx, "radius"));
    }
    if (kind == "halfplane") {
      check_keys(obj, ctx, {"kind", "normal", "offset"}, {});
      const Eigen::VectorXd n = get_vector(obj, ctx, "normal", 2);
      return Predicate::halfplane(name, n.head<2>(), get_number(obj, ctx, "offset"));
    }
  } catch (const std::invalid_argument& e) {
    fail(ctx, e.what());
  }
  fail(ctx, "unknown predicate kind '" + kind + "'");
}

GainSchedule parse_gain(const json& obj, const std::string& ctx) {
  if (!obj.is_object() || !obj.contains("kind")) fail(ctx, "gain schedule needs a 'kind'");
  const std::string kind = get_string(obj, ctx, "kind");
  if (kind == "exp-funnel") {
    check_keys(obj, ctx, {"kind", "scale"}, {});
    return GainSchedule::exp_funnel(get_number(obj, ctx, "scale"));
  }
  if (kind == "exp-funnel-offset") {
    check_keys(obj, ctx, {"kind", "scale"}, {});
    return GainSchedule::exp_funnel_offset(get_number(obj, ctx, "scale"));
  }
  if (kind == "exact") {
    check_keys(obj, ctx, {"kind", "B_bar"}, {});
    return GainSchedule::exact(get_number(obj, ctx, "B_bar"));
  }
  fail(ctx, "unknown gain schedule kind '" + kind + "'");
}

ControllerSpec::Kind parse_kind(const std::string& kind, const std::string& ctx) {
  if (kind == "general") return ControllerSpec::Kind::General;
  if (kind == "unicycle-aug") return ControllerSpec::Kind::UnicycleAug;
  if (kind == "unicycle-prac") return ControllerSpec::Kind::UnicyclePrac;
  fail(ctx, "unknown controller kind '" + kind + "'");
}

ControllerSpec parse_controller(const json& obj, const std::string& ctx,
                                std::vector<std::string>* warnings, GainSchedule* kappa_aug,
                                GainSchedule* kappa_prac, bool* has_aug, bool* has_prac) {
  check_keys(obj, ctx, {"kind", "kappa1"},
             {"K", "delta", "kappa2", "kappa_aug", "K2", "delta2", "v_min", "alpha_band"});
  ControllerSpec spec;
  spec.kind = parse_kind(get_string(obj, ctx, "kind"), ctx);
  spec.K = get_number_or(obj, ctx, "K", 1.0);
  spec.delta = get_number_or(obj, ctx, "delta", 0.0);
  spec.kappa1 = parse_gain(obj.at("kappa1"), ctx + ".kappa1");
  spec.K2 = get_number_or(obj, ctx, "K2", 1.0);
  spec.delta2 = get_number_or(obj, ctx, "delta2", 0.0);
  spec.v_min = get_number_or(obj, ctx, "v_min", 1e-3);
  spec.alpha_band = get_number_or(obj, ctx, "alpha_band", 0.5);

  *has_aug = obj.contains("kappa_aug");
  *has_prac = obj.contains("kappa2");
  if (*has_aug) *kappa_aug = parse_gain(obj.at("kappa_aug"), ctx + ".kappa_aug");
  if (*has_prac) *kappa_prac = parse_gain(obj.at("kappa2"), ctx + ".kappa2");

  if (spec.kind == ControllerSpec::Kind::UnicycleAug) {
    if (!*has_aug && !*has_prac) fail(ctx, "kind 'unicycle-aug' needs a 'kappa_aug' schedule");
    spec.kappa2 = *has_aug ? *kappa_aug : *kappa_prac;
  } else if (spec.kind == ControllerSpec::Kind::UnicyclePrac) {
    if (!*has_prac) fail(ctx, "kind 'unicycle-prac' needs a 'kappa2' schedule");
    spec.kappa2 = *kappa_prac;
  }
  try {
    return ControllerSpec::checked(spec, warnings);
  } catch (const std::invalid_argument& e) {
    fail(ctx, e.what());
  }
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return j;
}

}  // namespace

PredicateTable load_predicates(const std::string& path) {
  const json j = load_json(path);
  if (!j.is_object()) throw SchemaError(path + ": expected a predicate object");
  PredicateTable table;
  for (const auto& [name, body] : j.items())
    table.add(parse_predicate(name, body, path + ".predicates." + name));
  return table;
}

Scenario parse_scenario(const std::string& json_text, const std::string& context) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(context + ": " + e.what());
  }

  check_keys(j, context, {"system", "predicates", "tasks", "sim"},
             {"name", "formula", "combiner", "output"});

  Scenario sc;
  sc.name = j.contains("name") ? get_string(j, context, "name") : "scenario";

  // system
  {
    const json& sys = j.at("system");
    check_keys(sys, context + ".system", {"kind"}, {"noise"});
    const std::string kind = get_string(sys, context + ".system", "kind");
    NoiseSpec noise;
    if (sys.contains("noise")) {
      const json& nz = sys.at("noise");
      check_keys(nz, context + ".system.noise", {"cov_diag"}, {"clip_sigmas"});
      noise.cov_diag = get_vector(nz, context + ".system.noise", "cov_diag");
      noise.clip_sigmas = get_number_or(nz, context + ".system.noise", "clip_sigmas", 4.0);
      for (int i = 0; i < noise.cov_diag.size(); ++i)
        if (noise.cov_diag[i] < 0.0) fail(context + ".system.noise", "cov_diag must be >= 0");
    }
    if (kind == "unicycle") {
      sc.bundle.model = unicycle_model(noise);
      if (noise.cov_diag.size() > 0 && noise.cov_diag.size() != 3)
        fail(context + ".system.noise", "cov_diag must have 3 entries for the unicycle");
    } else if (kind == "single-integrator") {
      sc.bundle.model = single_integrator_model(noise);
      if (noise.cov_diag.size() > 0 && noise.cov_diag.size() != 2)
        fail(context + ".system.noise", "cov_diag must have 2 entries for the single integrator");
    } else {
      fail(context + ".system", "unknown system kind '" + kind + "'");
    }
  }

  // predicates
  {
    const json& preds = j.at("predicates");
    if (!preds.is_object()) fail(context + ".predicates", "expected an object");
    for (const auto& [name, body] : preds.items())
      sc.bundle.predicates.add(parse_predicate(name, body, context + ".predicates." + name));
  }

  // sim
  {
    const json& sim = j.at("sim");
    check_keys(sim, context + ".sim", {"horizon", "x0"},
               {"dt", "seed", "record_stride", "input_limits", "theta0", "noise"});
    sc.sim.dt = get_number_or(sim, context + ".sim", "dt", 0.005);
    sc.sim.horizon = get_number(sim, context + ".sim", "horizon");
    sc.sim.seed = static_cast<std::uint64_t>(get_number_or(sim, context + ".sim", "seed", 1.0));
    sc.sim.record_stride =
        static_cast<int>(get_number_or(sim, context + ".sim", "record_stride", 2.0));
    if (sim.contains("input_limits"))
      sc.sim.input_limits = get_vector(sim, context + ".sim", "input_limits", sc.bundle.model.m);
    if (sim.contains("noise")) {
      if (!sim.at("noise").is_boolean()) fail(context + ".sim", "'noise' must be a boolean");
      sc.sim.noise_on = sim.at("noise").get<bool>();
    }
    Eigen::VectorXd pos = get_vector(sim, context + ".sim", "x0");
    if (sc.bundle.model.n == 3) {
      if (pos.size() != 2) fail(context + ".sim", "'x0' must be [x, y] for the unicycle");
      sc.x0 = Eigen::VectorXd(3);
      sc.x0 << pos[0], pos[1], get_number_or(sim, context + ".sim", "theta0", 0.0);
    } else {
      if (pos.size() != sc.bundle.model.n)
        fail(context + ".sim", "'x0' must match the state dimension");
      if (sim.contains("theta0")) fail(context + ".sim", "'theta0' only applies to the unicycle");
      sc.x0 = pos;
    }
    if (!(sc.sim.dt > 0.0)) fail(context + ".sim", "'dt' must be > 0");
    if (!(sc.sim.horizon >= sc.sim.dt)) fail(context + ".sim", "'horizon' must be >= dt");
    if (sc.sim.record_stride < 1) fail(context + ".sim", "'record_stride' must be >= 1");
  }

  // combiner
  if (j.contains("combiner")) {
    const json& comb = j.at("combiner");
    check_keys(comb, context + ".combiner", {}, {"saturate_after_combine"});
    if (comb.contains("saturate_after_combine")) {
      if (!comb.at("saturate_after_combine").is_boolean())
        fail(context + ".combiner", "'saturate_after_combine' must be a boolean");
      sc.bundle.saturate_after_combine = comb.at("saturate_after_combine").get<bool>();
    }
  }

  // tasks
  std::vector<Scenario::AltGains> alt_gains;
  {
    const json& tasks = j.at("tasks");
    if (!tasks.is_array() || tasks.empty()) fail(context + ".tasks", "expected a non-empty array");
    for (size_t i = 0; i < tasks.size(); ++i) {
      const std::string ctx = context + ".tasks[" + std::to_string(i) + "]";
      const json& tj = tasks[i];
      check_keys(tj, ctx, {"name", "psi", "funnel", "controller"}, {});
      Task task;
      task.name = get_string(tj, ctx, "name");
      try {
        task.psi = parse_formula(get_string(tj, ctx, "psi"), sc.bundle.predicates);
      } catch (const ParseError& e) {
        fail(ctx + ".psi", e.what());
      }
      if (contains_temporal(*task.psi)) fail(ctx + ".psi", "task formula must be non-temporal");

      const json& fj = tj.at("funnel");
      check_keys(fj, ctx + ".funnel", {"gamma", "Gamma"}, {"epsilon"});
      const Curve gamma = parse_curve(fj.at("gamma"), ctx + ".funnel.gamma");
      const Curve Gamma = parse_curve(fj.at("Gamma"), ctx + ".funnel.Gamma");
      const double eps = get_number_or(fj, ctx + ".funnel", "epsilon", 1e-3);
      try {
        task.funnel = FunnelSpec::checked(gamma, Gamma, sc.sim.horizon, eps);
      } catch (const FunnelError& e) {
        fail(ctx + ".funnel", e.what());
      }

      GainSchedule kappa_aug, kappa_prac;
      bool has_aug = false, has_prac = false;
      task.ctrl = parse_controller(tj.at("controller"), ctx + ".controller", &sc.warnings,
                                   &kappa_aug, &kappa_prac, &has_aug, &has_prac);
      sc.bundle.tasks.push_back(std::move(task));
      // Stash both schedules for controller-kind overrides.
      alt_gains.push_back({kappa_aug, kappa_prac, has_aug, has_prac});
    }
  }

  // formula
  if (j.contains("formula")) {
    sc.formula_text = get_string(j, context, "formula");
    try {
      sc.formula = parse_formula(sc.formula_text, sc.bundle.predicates);
    } catch (const ParseError& e) {
      fail(context + ".formula", e.what());
    }
    if (horizon(*sc.formula) > sc.sim.horizon + 1e-9)
      fail(context + ".formula",
           "formula horizon exceeds the simulation horizon (" + std::to_string(horizon(*sc.formula)) +
               " > " + std::to_string(sc.sim.horizon) + ")");
  }

  // output
  if (j.contains("output")) {
    const json& out = j.at("output");
    check_keys(out, context + ".output", {}, {"csv", "trajectory_svg", "robustness_svg", "summary"});
    if (out.contains("csv")) sc.output.csv = get_string(out, context + ".output", "csv");
    if (out.contains("trajectory_svg"))
      sc.output.trajectory_svg = get_string(out, context + ".output", "trajectory_svg");
    if (out.contains("robustness_svg"))
      sc.output.robustness_svg = get_string(out, context + ".output", "robustness_svg");
    if (out.contains("summary")) sc.output.summary = get_string(out, context + ".output", "summary");
  }

  sc.alt_gains = std::move(alt_gains);
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_scenario(text, path);
}

void apply_controller_kind(Scenario& scenario, const std::string& kind) {
  ControllerSpec::Kind target;
  if (kind == "aug") target = ControllerSpec::Kind::UnicycleAug;
  else if (kind == "prac") target = ControllerSpec::Kind::UnicyclePrac;
  else throw SchemaError("controller override must be 'aug' or 'prac', got '" + kind + "'");

  for (size_t i = 0; i < scenario.bundle.tasks.size(); ++i) {
    Task& task = scenario.bundle.tasks[i];
    const Scenario::AltGains& alt = scenario.alt_gains.at(i);
    if (target == ControllerSpec::Kind::UnicycleAug) {
      if (!alt.has_aug)
        throw SchemaError("task '" + task.name + "' has no 'kappa_aug' schedule for --controller aug");
      task.ctrl.kind = target;
      task.ctrl.kappa2 = alt.kappa_aug;
    } else {
      if (!alt.has_prac)
        throw SchemaError("task '" + task.name + "' has no 'kappa2' schedule for --controller prac");
      task.ctrl.kind = target;
      task.ctrl.kappa2 = alt.kappa_prac;
    }
  }
}

}  // namespace fstl
