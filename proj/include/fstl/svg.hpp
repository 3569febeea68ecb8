#pragma once

#include <string>
#include <vector>

#include "fstl/predicate.hpp"
#include "fstl/simulator.hpp"

namespace fstl {

/// Overhead plot: predicate discs/lines plus one polyline per trajectory.
/// Output bytes are a pure function of the inputs.
void write_trajectory_svg(const std::string& path, const std::vector<const Trajectory*>& runs,
                          const std::vector<std::string>& run_labels, const PredicateTable& table);

/// One panel per task: rho(t) against its gamma/Gamma curves.
void write_robustness_svg(const std::string& path, const Trajectory& traj,
                          const std::vector<std::string>& task_names);

}  // namespace fstl
