#pragma once

// Differential geometry of time-parameterized curves in R^n, computed from
// the first and second time derivatives only: the curve itself never needs
// to be known.

#include <cmath>

#include "errors.hpp"
#include "ga.hpp"

namespace genfreq {

/// First and second time derivatives of a curve at one instant.
struct CurveState {
  VecN xdot;
  VecN xddot;

  CurveState(VecN first, VecN second)
      : xdot(std::move(first)), xddot(std::move(second)) {
    if (xdot.dim() != xddot.dim()) {
      throw DimensionMismatch("CurveState: xdot and xddot dims differ");
    }
  }
};

/// Frenet-style bundle at one instant. curvature_vector is d^2x/ds^2, the
/// tangent of the unit tangent; it is orthogonal to unit_tangent and its
/// magnitude is the curvature.
struct FrenetData {
  double speed;
  VecN unit_tangent;
  VecN curvature_vector;
  double curvature;
};

namespace detail {

// Speeds below 1e-12 * (1 + |xddot|) count as degenerate: the (s')^3
// division below that point amplifies cancellation noise past usefulness.
inline void require_regular(double speed, double scale, const char* what) {
  if (!(speed > 1e-12 * (1.0 + scale))) {
    throw DegenerateCurve(std::string(what) + ": arc speed is zero (degenerate curve)");
  }
}

}  // namespace detail

/// s' = |x'|, the rate of arc-length traversal.
inline double arc_speed(const VecN& xdot) { return magnitude(xdot); }

/// dx/ds = x'/|x'|; unit magnitude by construction.
inline VecN unit_tangent(const VecN& xdot) {
  const double speed = arc_speed(xdot);
  detail::require_regular(speed, 0.0, "unit_tangent");
  return xdot / speed;
}

/// s'' = d|x'|/dt, by the chain rule (x'.x'')/s'.
inline double arc_speed_rate(const CurveState& state) {
  const double speed = arc_speed(state.xdot);
  detail::require_regular(speed, magnitude(state.xddot), "arc_speed_rate");
  return inner(state.xdot, state.xddot) / speed;
}

/// d^2x/ds^2 = x''/(s')^2 - s'' x'/(s')^3.
inline VecN curvature_vector(const CurveState& state) {
  const double speed = arc_speed(state.xdot);
  detail::require_regular(speed, magnitude(state.xddot), "curvature_vector");
  const double s2 = inner(state.xdot, state.xddot) / speed;
  return state.xddot / (speed * speed) - state.xdot * (s2 / (speed * speed * speed));
}

/// kappa = |x' ^ x''| / (s')^3.
inline double curvature(const CurveState& state) {
  const double speed = arc_speed(state.xdot);
  detail::require_regular(speed, magnitude(state.xddot), "curvature");
  return wedge(state.xdot, state.xddot).magnitude() / (speed * speed * speed);
}

inline FrenetData frenet(const CurveState& state) {
  const double speed = arc_speed(state.xdot);
  detail::require_regular(speed, magnitude(state.xddot), "frenet");
  return {speed, unit_tangent(state.xdot), curvature_vector(state), curvature(state)};
}

}  // namespace genfreq
