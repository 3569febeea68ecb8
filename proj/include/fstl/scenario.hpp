// Scenario files: JSON description of system, tasks, controllers, and sim
// settings. Validation is strict; unknown keys are rejected.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fstl/combiner.hpp"
#include "fstl/formula.hpp"
#include "fstl/simulator.hpp"

namespace fstl {

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputSpec {
  std::string csv = "trace.csv";
  std::string trajectory_svg = "trajectory.svg";
  std::string robustness_svg = "robustness.svg";
  std::string summary = "summary.json";
};

struct Scenario {
  std::string name;
  TaskBundle bundle;
  SimConfig sim;
  Eigen::VectorXd x0;           // full initial state (x, y, theta)
  FormulaPtr formula;           // overall STL task; may be null
  std::string formula_text;
  OutputSpec output;
  std::vector<std::string> warnings;  // controller-parameter advisories

  /// Both second-input gain schedules per task, kept so --controller can
  /// switch between the augmented and practical laws.
  struct AltGains {
    GainSchedule kappa_aug;
    GainSchedule kappa_prac;
    bool has_aug = false;
    bool has_prac = false;
  };
  std::vector<AltGains> alt_gains;
};

Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& json_text, const std::string& context);

/// Loads only a predicate table from a JSON object file
/// { "name": {"kind": "circle-inside", "center": [..], "radius": ..}, ... }.
PredicateTable load_predicates(const std::string& path);

/// Switches every task's second-input law ("aug" or "prac").
void apply_controller_kind(Scenario& scenario, const std::string& kind);

}  // namespace fstl
