#pragma once

#include <algorithm>
#include <cmath>

#include "fstl/funnel.hpp"

namespace fstl {

/// Gain coefficient schedules for the funnel laws.
///   exp-funnel        : kbar * exp(-(rho - gamma)/(Gamma - rho)), 0 above Gamma
///   exp-funnel-offset : max(0, feedthrough + scale) * the same exponential;
///                       the augmented law passes feedthrough = -G(x) u1
///   exact             : max(0, gamma_rate(t) + B_bar), state-independent
struct GainSchedule {
  enum class Kind { ExpFunnel, ExpFunnelOffset, Exact };

  Kind kind = Kind::ExpFunnel;
  double scale = 0.0;   // kbar for the exponential kinds
  double b_bar = 0.0;   // bound estimate for the exact kind

  static GainSchedule exp_funnel(double scale) { return {Kind::ExpFunnel, scale, 0.0}; }
  static GainSchedule exp_funnel_offset(double scale) { return {Kind::ExpFunnelOffset, scale, 0.0}; }
  static GainSchedule exact(double b_bar) { return {Kind::Exact, 0.0, b_bar}; }

  bool wants_feedthrough() const { return kind == Kind::ExpFunnelOffset; }

  /// Exponent argument clamped at +/-50 before exponentiation; below the
  /// funnel the argument tends to (gamma - rho)/(Gamma - rho) < 1 on its own.
  double evaluate(double rho, const FunnelSpec& funnel, double t, double feedthrough = 0.0) const {
    switch (kind) {
      case Kind::Exact:
        return std::max(0.0, funnel.gamma_rate(t) + b_bar);
      case Kind::ExpFunnel:
      case Kind::ExpFunnelOffset: {
        const double hi = funnel.Gamma_value(t);
        if (rho >= hi) return 0.0;
        const double lo = funnel.gamma_value(t);
        const double z = std::clamp((rho - lo) / (hi - rho), -50.0, 50.0);
        const double front = kind == Kind::ExpFunnel ? scale : std::max(0.0, feedthrough + scale);
        return front * std::exp(-z);
      }
    }
    return 0.0;
  }
};

}  // namespace fstl
