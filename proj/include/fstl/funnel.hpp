#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "fstl/curve.hpp"

namespace fstl {

struct FunnelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Lower/upper specification curve pair (gamma, Gamma) with separation margin.
struct FunnelSpec {
  Curve gamma;
  Curve Gamma;
  double epsilon = 1e-3;

  double gamma_value(double t) const { return gamma.value(t); }
  double gamma_rate(double t) const { return gamma.rate(t); }
  double Gamma_value(double t) const { return Gamma.value(t); }
  double width(double t) const { return Gamma.value(t) - gamma.value(t); }

  /// Validates Gamma(t) >= gamma(t) + epsilon on a dense grid over [0, horizon]
  /// (kink times included). Throws FunnelError on violation.
  static FunnelSpec checked(Curve gamma, Curve Gamma, double horizon, double epsilon = 1e-3);
};

/// State classification relative to a funnel at fixed time. `s` is the
/// normalized coordinate (Gamma - rho)/(Gamma - gamma), set only in Interest.
struct RegionLabel {
  enum class Kind { Uncontrolled, Interest, Violation };
  Kind kind = Kind::Interest;
  double s = std::numeric_limits<double>::quiet_NaN();
};

/// Boundary cases rho == Gamma and rho == gamma both classify as Interest.
RegionLabel classify(const FunnelSpec& spec, double rho, double t);

/// Curve pair for an eventually-type task: gamma ramps up and saturates at
/// gamma_cap, Gamma runs `band` above it and saturates at final_floor. The
/// (uncapped) ramp must reach zero no later than the deadline.
struct EventuallyFunnelParams {
  double deadline = 0.0;
  double final_floor = 0.0;
  double slope = 0.0;
  double c0 = 0.0;
  double gamma_cap = 0.0;   // defaulted to final_floor - band if NaN
  double band = 1.0;
};

/// Curve pair for an always-type task: constant floor and floor + band.
struct AlwaysFunnelParams {
  double floor = 0.0;
  double band = 0.0;
};

FunnelSpec funnel_for_task(const EventuallyFunnelParams& p, double horizon, double epsilon = 1e-3);
FunnelSpec funnel_for_task(const AlwaysFunnelParams& p, double horizon, double epsilon = 1e-3);

}  // namespace fstl
