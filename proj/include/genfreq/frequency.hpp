#pragma once

// Generalized frequency of a signal vector: the multivector eta = rho + Omega
// built from the signal and its time derivative. rho is the logarithmic rate
// of change of the magnitude, Omega the rotation-rate bivector; |Omega|
// coincides with d(theta)/dt for stationary sinusoids. Both are invariant
// under orthogonal changes of coordinates, so the same formulas serve abc,
// alpha-beta, dq and dc representations alike.

#include <cmath>

#include "curve.hpp"
#include "errors.hpp"
#include "ga.hpp"

namespace genfreq {

/// eta = rho + Omega at one instant. omega_mag caches |omega|.
struct GeneralizedFrequency {
  double rho;        // 1/s
  Bivector omega;    // rad/s
  double omega_mag;  // rad/s, == omega.magnitude()

  /// Signed rotation rate b_12 for two-dimensional signals, where positive
  /// and negative sequence are distinguishable. |omega_signed()| == omega_mag.
  double omega_signed() const {
    if (omega.dim() != 2) {
      throw DimensionMismatch("omega_signed: defined for dim-2 signals only");
    }
    return omega.coeff(0, 1);
  }
};

/// Instantaneous active power p = v.i and generalized instantaneous
/// reactive power Q = i ^ v.
struct PowerPair {
  double p;    // W
  Bivector q;  // var
};

namespace detail {

// Same degeneracy rule as curve_geometry: the signal vector is the arc speed
// of the underlying flux curve, so |v| = 0 means an undefined frequency.
inline double require_signal_regular(const VecN& v, const VecN& vdot,
                                     const char* what) {
  if (v.dim() != vdot.dim()) {
    throw DimensionMismatch(std::string(what) + ": signal and derivative dims differ");
  }
  const double v2 = inner(v, v);
  if (!(std::sqrt(v2) > 1e-12 * (1.0 + magnitude(vdot)))) {
    throw DegenerateCurve(std::string(what) + ": signal magnitude is zero (degenerate)");
  }
  return v2;
}

}  // namespace detail

/// rho = (v.v')/v^2, the magnitude rate d|v|/dt divided by |v|.
inline double rho(const VecN& v, const VecN& vdot) {
  const double v2 = detail::require_signal_regular(v, vdot, "rho");
  return inner(v, vdot) / v2;
}

/// Omega = (v ^ v')/v^2, the rotation-rate bivector.
inline Bivector omega_bivector(const VecN& v, const VecN& vdot) {
  const double v2 = detail::require_signal_regular(v, vdot, "omega_bivector");
  return wedge(v, vdot) / v2;
}

/// omega = |Omega|; equals |v| times the curvature of the flux curve.
inline double omega_mag(const VecN& v, const VecN& vdot) {
  return omega_bivector(v, vdot).magnitude();
}

inline GeneralizedFrequency generalized_frequency(const VecN& v, const VecN& vdot) {
  const double v2 = detail::require_signal_regular(v, vdot, "generalized_frequency");
  Bivector omega = wedge(v, vdot) / v2;
  const double mag = omega.magnitude();
  return {inner(v, vdot) / v2, std::move(omega), mag};
}

/// Frequency of the current, from the charge curve whose tangent is i.
/// The computation is identical to the voltage-side one.
inline GeneralizedFrequency current_frequency(const VecN& i, const VecN& idot) {
  return generalized_frequency(i, idot);
}

inline PowerPair power_pair(const VecN& v, const VecN& i) {
  if (v.dim() != i.dim()) {
    throw DimensionMismatch("power_pair: voltage and current dims differ");
  }
  return {inner(v, i), wedge(i, v)};
}

/// eta = (p - Q)/(C v^2) for a capacitive branch carrying i = C v'. With
/// Q = i ^ v this equals generalized_frequency(v, i/C), so the frequency of
/// a circuit is measurable from instantaneous v and i alone.
inline GeneralizedFrequency frequency_from_power(const VecN& v, const VecN& i,
                                                 double capacitance) {
  if (!(capacitance > 0.0)) {
    throw InvalidParameter("frequency_from_power: capacitance must be positive");
  }
  if (v.dim() != i.dim()) {
    throw DimensionMismatch("frequency_from_power: voltage and current dims differ");
  }
  const double v2 = inner(v, v);
  if (!(std::sqrt(v2) > 1e-12 * (1.0 + magnitude(i) / capacitance))) {
    throw DegenerateCurve("frequency_from_power: signal magnitude is zero (degenerate)");
  }
  const PowerPair pq = power_pair(v, i);
  const double denom = capacitance * v2;
  Bivector omega = -pq.q / denom;
  const double mag = omega.magnitude();
  return {pq.p / denom, std::move(omega), mag};
}

}  // namespace genfreq
