#include "fstl/funnel.hpp"

#include <algorithm>
#include <vector>

namespace fstl {

FunnelSpec FunnelSpec::checked(Curve gamma, Curve Gamma, double horizon, double epsilon) {
  if (!(epsilon > 0.0)) throw FunnelError("funnel epsilon must be > 0");
  if (!(horizon >= 0.0) || !std::isfinite(horizon))
    throw FunnelError("funnel validation horizon must be finite and >= 0");
  FunnelSpec spec{gamma, Gamma, epsilon};

  std::vector<double> ts;
  const int kGrid = 2048;
  ts.reserve(kGrid + 4);
  for (int i = 0; i <= kGrid; ++i) ts.push_back(horizon * i / kGrid);
  for (double tk : {gamma.kink_time(), Gamma.kink_time()})
    if (std::isfinite(tk) && tk >= 0.0 && tk <= horizon) ts.push_back(tk);

  for (double t : ts) {
    if (spec.width(t) < epsilon)
      throw FunnelError("funnel invalid: Gamma(t) < gamma(t) + eps at t=" + std::to_string(t) +
                        " (width " + std::to_string(spec.width(t)) + ")");
  }
  return spec;
}

RegionLabel classify(const FunnelSpec& spec, double rho, double t) {
  const double lo = spec.gamma_value(t);
  const double hi = spec.Gamma_value(t);
  if (rho > hi) return RegionLabel{RegionLabel::Kind::Uncontrolled, std::numeric_limits<double>::quiet_NaN()};
  if (rho < lo) return RegionLabel{RegionLabel::Kind::Violation, std::numeric_limits<double>::quiet_NaN()};
  return RegionLabel{RegionLabel::Kind::Interest, (hi - rho) / (hi - lo)};
}

FunnelSpec funnel_for_task(const EventuallyFunnelParams& p, double horizon, double epsilon) {
  if (!(p.deadline > 0.0)) throw FunnelError("eventually funnel: deadline must be > 0");
  if (!(p.slope > 0.0)) throw FunnelError("eventually funnel: slope must be > 0");
  if (!(p.band > 0.0)) throw FunnelError("eventually funnel: band must be > 0");
  const double zero_crossing = -p.c0 / p.slope;
  if (!(zero_crossing <= p.deadline))
    throw FunnelError("eventually funnel: gamma ramp does not reach 0 before the deadline");
  const double cap = std::isnan(p.gamma_cap) ? p.final_floor - p.band : p.gamma_cap;
  const Curve gamma = Curve::affine_capped(p.c0, p.slope, cap);
  const Curve Gamma = Curve::affine_capped(p.c0 + p.band, p.slope, p.final_floor);
  return FunnelSpec::checked(gamma, Gamma, horizon, epsilon);
}

FunnelSpec funnel_for_task(const AlwaysFunnelParams& p, double horizon, double epsilon) {
  if (!(p.band > 0.0)) throw FunnelError("always funnel: band must be > 0");
  return FunnelSpec::checked(Curve::constant(p.floor), Curve::constant(p.floor + p.band), horizon,
                             epsilon);
}

}  // namespace fstl
