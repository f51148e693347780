#pragma once

// Analytic test waveforms with exact closed-form derivatives (single-phase,
// balanced three-phase, rotating dq frame, dc, and a synthetic three-phase
// fault), plus a uniform sampler that turns them into discrete records.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "ga.hpp"

namespace genfreq {

/// Signal value and its time derivative at one instant.
struct SignalPoint {
  VecN value;
  VecN derivative;
};

/// A continuous-time vector signal with an exact derivative.
struct AnalyticSignal {
  std::size_t dim;
  std::string description;
  std::vector<std::string> channels;
  std::function<SignalPoint(double)> eval;

  SignalPoint operator()(double t) const { return eval(t); }
};

/// Uniformly sampled multi-channel record, row-major [n_samples x dim].
class SampledSignal {
public:
  SampledSignal(double sample_rate, double t0, std::vector<std::string> channels,
                std::vector<double> data)
      : fs_(sample_rate), t0_(t0), channels_(std::move(channels)), data_(std::move(data)) {
    if (!(fs_ > 0.0) || !std::isfinite(fs_)) {
      throw InvalidParameter("SampledSignal: sample_rate must be positive");
    }
    if (!std::isfinite(t0_)) throw InvalidParameter("SampledSignal: t0 must be finite");
    if (channels_.empty()) throw InvalidParameter("SampledSignal: needs >= 1 channel");
    if (data_.size() % channels_.size() != 0) {
      throw DimensionMismatch("SampledSignal: data size is not a multiple of dim");
    }
    if (data_.size() / channels_.size() < 2) {
      throw InvalidParameter("SampledSignal: needs >= 2 samples");
    }
    detail::check_finite(data_, "SampledSignal");
  }

  double sample_rate() const { return fs_; }
  double t0() const { return t0_; }
  std::size_t dim() const { return channels_.size(); }
  std::size_t n_samples() const { return data_.size() / channels_.size(); }
  const std::vector<std::string>& channels() const { return channels_; }

  double time(std::size_t k) const { return t0_ + static_cast<double>(k) / fs_; }
  double at(std::size_t k, std::size_t c) const { return data_[k * dim() + c]; }
  double& at(std::size_t k, std::size_t c) { return data_[k * dim() + c]; }

  VecN row(std::size_t k) const {
    VecN v(dim());
    for (std::size_t c = 0; c < dim(); ++c) v[c] = at(k, c);
    return v;
  }

private:
  double fs_;
  double t0_;
  std::vector<std::string> channels_;
  std::vector<double> data_;
};

/// Stationary single-phase voltage as a dim-2 vector (cos, sin) rotating at
/// omega0; the trajectory is a circle of radius `amplitude`.
inline AnalyticSignal single_phase(double amplitude, double omega0, double phase = 0.0) {
  if (!(amplitude > 0.0)) {
    throw InvalidParameter("single_phase: amplitude must be positive");
  }
  return {2,
          "single-phase stationary voltage",
          {"v1", "v2"},
          [amplitude, omega0, phase](double t) {
            const double theta = omega0 * t + phase;
            const double c = std::cos(theta);
            const double s = std::sin(theta);
            return SignalPoint{VecN{amplitude * c, amplitude * s},
                               VecN{-omega0 * amplitude * s, omega0 * amplitude * c}};
          }};
}

/// Balanced three-phase set: V sin(theta_p) with theta_b lagging and theta_c
/// leading phase a by 2*pi/3. |v|^2 == 1.5 V^2 at every instant.
inline AnalyticSignal three_phase_balanced(double amplitude, double omega0) {
  if (!(amplitude > 0.0)) {
    throw InvalidParameter("three_phase_balanced: amplitude must be positive");
  }
  constexpr double alpha = 2.0 * std::numbers::pi / 3.0;
  return {3,
          "balanced three-phase stationary voltage",
          {"va", "vb", "vc"},
          [amplitude, omega0](double t) {
            const double ta = omega0 * t;
            const double tb = ta - alpha;
            const double tc = ta + alpha;
            return SignalPoint{
                VecN{amplitude * std::sin(ta), amplitude * std::sin(tb),
                     amplitude * std::sin(tc)},
                VecN{omega0 * amplitude * std::cos(ta), omega0 * amplitude * std::cos(tb),
                     omega0 * amplitude * std::cos(tc)}};
          }};
}

using TimeFn = std::function<double(double)>;

/// Signal in a dq frame rotating at omega0 (q axis leading d). The value is
/// (v_d, v_q); the derivative carries the rotating-frame correction
/// (v_d' - omega0 v_q, v_q' + omega0 v_d), i.e. the inertial-frame rate
/// expressed in rotating coordinates.
inline AnalyticSignal dq_signal(TimeFn vd, TimeFn vq, TimeFn vd_dot, TimeFn vq_dot,
                                double omega0) {
  if (!vd || !vq || !vd_dot || !vq_dot) {
    throw InvalidParameter("dq_signal: all four component callables are required");
  }
  return {2,
          "rotating-frame dq voltage",
          {"vd", "vq"},
          [vd = std::move(vd), vq = std::move(vq), vd_dot = std::move(vd_dot),
           vq_dot = std::move(vq_dot), omega0](double t) {
            const double d = vd(t);
            const double q = vq(t);
            return SignalPoint{VecN{d, q},
                               VecN{vd_dot(t) - omega0 * q, vq_dot(t) + omega0 * d}};
          }};
}

/// Single-component dc signal; its wedge with its own derivative is
/// identically zero, so omega_mag == 0 and only rho survives.
inline AnalyticSignal dc_signal(TimeFn v, TimeFn vdot) {
  if (!v || !vdot) {
    throw InvalidParameter("dc_signal: value and derivative callables are required");
  }
  return {1,
          "dc voltage",
          {"vdc"},
          [v = std::move(v), vdot = std::move(vdot)](double t) {
            return SignalPoint{VecN{v(t)}, VecN{vdot(t)}};
          }};
}

/// Rewrites a dim-2 rotating-frame signal in stationary coordinates by
/// applying the frame rotation R(omega0 t). Orthogonal at every instant, so
/// the generalized frequency is unchanged.
inline AnalyticSignal rotate_to_stationary(AnalyticSignal rotating, double omega0) {
  if (rotating.dim != 2) {
    throw DimensionMismatch("rotate_to_stationary: defined for dim-2 signals only");
  }
  return {2,
          rotating.description + " (stationary frame)",
          {"valpha", "vbeta"},
          [inner_eval = std::move(rotating.eval), omega0](double t) {
            const SignalPoint p = inner_eval(t);
            const double c = std::cos(omega0 * t);
            const double s = std::sin(omega0 * t);
            auto rot = [c, s](const VecN& u) {
              return VecN{c * u[0] - s * u[1], s * u[0] + c * u[1]};
            };
            return SignalPoint{rot(p.value), rot(p.derivative)};
          }};
}

/// Synthetic three-phase fault: balanced outside [t_fault, t_clear]; inside,
/// phases b and c sag by `sag`, phase b picks up `phase_jump`, and all
/// phases gain a 3rd harmonic of relative amplitude `harmonic3`. Entry and
/// exit are blended with 1 ms raised-cosine ramps placed inside the fault
/// interval, keeping the waveform C^1.
inline AnalyticSignal fault_scenario(double amplitude, double omega0, double t_fault,
                                     double t_clear, double sag, double phase_jump,
                                     double harmonic3) {
  constexpr double ramp = 1e-3;
  if (!(amplitude > 0.0)) {
    throw InvalidParameter("fault_scenario: amplitude must be positive");
  }
  if (!(sag >= 0.0 && sag < 1.0)) {
    throw InvalidParameter("fault_scenario: sag must be in [0, 1)");
  }
  if (!(t_fault < t_clear)) {
    throw InvalidParameter("fault_scenario: t_fault must precede t_clear");
  }
  if (!(t_clear - t_fault > 2.0 * ramp)) {
    throw InvalidParameter("fault_scenario: fault interval shorter than the ramps");
  }
  constexpr double alpha = 2.0 * std::numbers::pi / 3.0;
  const double pi = std::numbers::pi;

  // Blend factor r(t) in [0, 1] and its rate: raised cosine up over
  // [t_fault, t_fault + ramp], down over [t_clear - ramp, t_clear].
  auto blend = [=](double t) -> std::pair<double, double> {
    if (t <= t_fault || t >= t_clear) return {0.0, 0.0};
    if (t < t_fault + ramp) {
      const double u = (t - t_fault) / ramp;
      return {0.5 * (1.0 - std::cos(pi * u)), 0.5 * pi * std::sin(pi * u) / ramp};
    }
    if (t > t_clear - ramp) {
      const double u = (t_clear - t) / ramp;
      return {0.5 * (1.0 - std::cos(pi * u)), -0.5 * pi * std::sin(pi * u) / ramp};
    }
    return {1.0, 0.0};
  };

  return {3,
          "three-phase fault scenario",
          {"va", "vb", "vc"},
          [=](double t) {
            const auto [r, rdot] = blend(t);
            const double ta = omega0 * t;
            const double tb = ta - alpha;
            const double tc = ta + alpha;
            const double depth = 1.0 - sag * r;

            VecN v(3);
            VecN d(3);
            // phase a: nominal plus harmonic
            v[0] = amplitude * std::sin(ta);
            d[0] = amplitude * omega0 * std::cos(ta);
            // phase b: sagged, phase-jumped
            const double argb = tb + phase_jump * r;
            v[1] = amplitude * depth * std::sin(argb);
            d[1] = amplitude * (-sag * rdot) * std::sin(argb) +
                   amplitude * depth * std::cos(argb) * (omega0 + phase_jump * rdot);
            // phase c: sagged
            v[2] = amplitude * depth * std::sin(tc);
            d[2] = amplitude * (-sag * rdot) * std::sin(tc) +
                   amplitude * depth * std::cos(tc) * omega0;
            if (harmonic3 != 0.0) {
              const double h = amplitude * harmonic3;
              const double args[3] = {ta, tb, tc};
              for (std::size_t p = 0; p < 3; ++p) {
                v[p] += h * r * std::sin(3.0 * args[p]);
                d[p] += h * (rdot * std::sin(3.0 * args[p]) +
                             3.0 * omega0 * r * std::cos(3.0 * args[p]));
              }
            }
            return SignalPoint{std::move(v), std::move(d)};
          }};
}

/// Samples sig.value on the uniform grid t_start + k/sample_rate up to
/// t_end, adding i.i.d. Gaussian noise of std `noise_std` per channel.
/// Draws are ordered sample-major then channel, so output is reproducible
/// from the seed alone.
inline SampledSignal sample(const AnalyticSignal& sig, double sample_rate,
                            double t_start, double t_end, double noise_std = 0.0,
                            std::uint64_t seed = 0) {
  if (!(sample_rate > 0.0)) {
    throw InvalidParameter("sample: sample_rate must be positive");
  }
  if (!(t_end > t_start)) {
    throw InvalidParameter("sample: t_end must be after t_start");
  }
  if (noise_std < 0.0) {
    throw InvalidParameter("sample: noise_std must be >= 0");
  }
  const double span = (t_end - t_start) * sample_rate;
  const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  if (n < 2) {
    throw InvalidParameter("sample: range holds fewer than 2 samples at this rate");
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, noise_std > 0.0 ? noise_std : 1.0);

  std::vector<double> data;
  data.reserve(n * sig.dim);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = t_start + static_cast<double>(k) / sample_rate;
    const SignalPoint p = sig.eval(t);
    if (p.value.dim() != sig.dim) {
      throw DimensionMismatch("sample: eval returned wrong dimension");
    }
    for (std::size_t c = 0; c < sig.dim; ++c) {
      double x = p.value[c];
      if (noise_std > 0.0) x += dist(rng);
      data.push_back(x);
    }
  }
  return SampledSignal(sample_rate, t_start, sig.channels, std::move(data));
}

}  // namespace genfreq
