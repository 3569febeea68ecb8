#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fstl {

/// Time-varying specification curve with an analytic derivative.
/// The affine-capped kink belongs to the "below" branch: rate(t) == slope
/// exactly at the kink.
struct Curve {
  enum class Kind { Constant, Affine, AffineCapped };

  Kind kind = Kind::Constant;
  double c0 = 0.0;
  double slope = 0.0;
  double cap = 0.0;

  static Curve constant(double c) { return Curve{Kind::Constant, c, 0.0, 0.0}; }
  static Curve affine(double c0, double slope) { return Curve{Kind::Affine, c0, slope, 0.0}; }
  static Curve affine_capped(double c0, double slope, double cap) {
    return Curve{Kind::AffineCapped, c0, slope, cap};
  }

  double value(double t) const {
    switch (kind) {
      case Kind::Constant: return c0;
      case Kind::Affine: return c0 + slope * t;
      case Kind::AffineCapped: return std::min(cap, c0 + slope * t);
    }
    return 0.0;
  }

  double rate(double t) const {
    switch (kind) {
      case Kind::Constant: return 0.0;
      case Kind::Affine: return slope;
      case Kind::AffineCapped: return c0 + slope * t <= cap ? slope : 0.0;
    }
    return 0.0;
  }

  /// Time where the capped affine segment meets its cap; +inf if never.
  double kink_time() const {
    if (kind != Kind::AffineCapped || slope == 0.0) return std::numeric_limits<double>::infinity();
    return (cap - c0) / slope;
  }
};

}  // namespace fstl
