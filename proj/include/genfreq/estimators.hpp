#pragma once

// Discrete-time frequency estimation: numerical differentiation of sampled
// records, first-order smoothing, the geometric estimator built on
// generalized_frequency, a reference SRF-PLL, and trace comparison metrics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "frequency.hpp"
#include "signals.hpp"

namespace genfreq {

/// Endpoint policy for the sampled differentiator. Interior samples always
/// use 2nd-order central differences; both schemes fill the two boundary
/// samples with 3-point one-sided stencils. Central treats those boundary
/// estimates as untrusted (the estimator flags them invalid);
/// OneSidedStartEnd keeps them.
enum class DiffScheme { Central, OneSidedStartEnd };

struct EstimatorConfig {
  DiffScheme diff_scheme = DiffScheme::Central;
  /// Time constant of the first-order smoothing filter; 0 disables it.
  double filter_tau = 0.0;
  /// Samples with |v| at or below this are flagged invalid instead of being
  /// pushed through the division by v^2. Unset: 1e-6 * max |v| over the record.
  std::optional<double> mask_threshold{};
  /// Report omega in Hz in CLI summaries (the trace itself stays in rad/s).
  bool report_hz = false;
  /// Smooth the derivative channels before the per-sample frequency instead
  /// of smoothing the rho/Omega traces after it.
  bool prefilter_derivative = false;
};

/// Per-sample generalized-frequency series. valid[k] is 0 exactly where
/// masking or boundary effects apply; omega_mag[k] is the magnitude of
/// omega_biv[k] everywhere.
struct FrequencyTrace {
  std::vector<double> t;
  std::vector<double> rho;
  std::vector<double> omega_mag;
  std::vector<Bivector> omega_biv;
  std::vector<std::uint8_t> valid;

  std::size_t size() const { return t.size(); }
  double omega_hz(std::size_t k) const {
    return omega_mag[k] / (2.0 * std::numbers::pi);
  }
};

/// SRF-PLL loop gains, normalized so the PI input is v_q / v_base. The
/// defaults give the linearized loop a natural frequency of ~65 rad/s at
/// damping ~0.707.
struct PllConfig {
  double kp = 92.0;
  double ki = 4230.0;
  double omega_init = 120.0 * std::numbers::pi;  // rad/s
  double v_base = 1.0;                           // V, phase amplitude
};

struct ComparisonReport {
  double rmse_omega;      // rad/s, over samples valid in both traces
  double max_abs_dev;     // rad/s
  double settle_time_a;   // s, absolute time
  double settle_time_b;   // s
  std::size_t n_compared;
};

/// d/dt of every channel: central differences (x[k+1]-x[k-1])*fs/2 on the
/// interior, 3-point one-sided stencils at both ends. Output length equals
/// input length. Exact on polynomials up to degree 2.
inline SampledSignal differentiate(const SampledSignal& sig,
                                   DiffScheme scheme = DiffScheme::Central) {
  (void)scheme;  // both schemes share the arithmetic; see DiffScheme
  const std::size_t n = sig.n_samples();
  const std::size_t d = sig.dim();
  if (n < 3) throw InvalidParameter("differentiate: needs >= 3 samples");
  const double half_fs = 0.5 * sig.sample_rate();

  std::vector<double> out(n * d);
  for (std::size_t c = 0; c < d; ++c) {
    out[c] = (-3.0 * sig.at(0, c) + 4.0 * sig.at(1, c) - sig.at(2, c)) * half_fs;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      out[k * d + c] = (sig.at(k + 1, c) - sig.at(k - 1, c)) * half_fs;
    }
    out[(n - 1) * d + c] = (3.0 * sig.at(n - 1, c) - 4.0 * sig.at(n - 2, c) +
                            sig.at(n - 3, c)) * half_fs;
  }
  return SampledSignal(sig.sample_rate(), sig.t0(),
                       std::vector<std::string>(sig.channels()), std::move(out));
}

/// First-order low-pass y[k] = y[k-1] + a (u[k] - y[k-1]) with
/// a = dt/(tau + dt), seeded by y[0] = u[0]. tau = 0 is the identity.
inline std::vector<double> lowpass(std::span<const double> series, double sample_rate,
                                   double tau) {
  if (!(sample_rate > 0.0)) throw InvalidParameter("lowpass: sample_rate must be positive");
  if (tau < 0.0) throw InvalidParameter("lowpass: tau must be >= 0");
  std::vector<double> out(series.begin(), series.end());
  if (out.empty() || tau == 0.0) return out;
  const double dt = 1.0 / sample_rate;
  const double a = dt / (tau + dt);
  for (std::size_t k = 1; k < out.size(); ++k) {
    out[k] = out[k - 1] + a * (out[k] - out[k - 1]);
  }
  return out;
}

namespace detail {

// Masked-aware EMA: masked samples neither update nor reseed the state;
// they inherit the last filtered value (0 before the first unmasked one).
inline std::vector<double> lowpass_masked(std::span<const double> series,
                                          std::span<const std::uint8_t> masked,
                                          double sample_rate, double tau) {
  const double dt = 1.0 / sample_rate;
  const double a = tau > 0.0 ? dt / (tau + dt) : 1.0;
  std::vector<double> out(series.size(), 0.0);
  bool seeded = false;
  double y = 0.0;
  for (std::size_t k = 0; k < series.size(); ++k) {
    if (!masked[k]) {
      y = seeded ? y + a * (series[k] - y) : series[k];
      seeded = true;
    }
    out[k] = y;
  }
  return out;
}

}  // namespace detail

/// Geometric frequency estimator: numerically differentiates the record,
/// evaluates generalized_frequency per sample, and smooths the result.
/// Smoothing acts on rho and on the Omega coefficients; omega_mag is the
/// magnitude of the smoothed bivector. Samples with |v| at or below the mask
/// threshold are skipped and flagged; so are the two boundary samples under
/// DiffScheme::Central.
inline FrequencyTrace estimate_geometric(const SampledSignal& sig,
                                         const EstimatorConfig& cfg = {}) {
  const std::size_t n = sig.n_samples();
  const std::size_t d = sig.dim();
  if (n < 3) throw InvalidParameter("estimate_geometric: needs >= 3 samples");
  if (cfg.filter_tau < 0.0) {
    throw InvalidParameter("estimate_geometric: filter_tau must be >= 0");
  }
  if (cfg.mask_threshold && *cfg.mask_threshold < 0.0) {
    throw InvalidParameter("estimate_geometric: mask_threshold must be >= 0");
  }

  SampledSignal deriv = differentiate(sig, cfg.diff_scheme);
  if (cfg.prefilter_derivative && cfg.filter_tau > 0.0) {
    for (std::size_t c = 0; c < d; ++c) {
      std::vector<double> col(n);
      for (std::size_t k = 0; k < n; ++k) col[k] = deriv.at(k, c);
      col = lowpass(col, sig.sample_rate(), cfg.filter_tau);
      for (std::size_t k = 0; k < n; ++k) deriv.at(k, c) = col[k];
    }
  }

  std::vector<double> vmag(n);
  for (std::size_t k = 0; k < n; ++k) vmag[k] = magnitude(sig.row(k));
  const double mask = cfg.mask_threshold
                          ? *cfg.mask_threshold
                          : 1e-6 * *std::max_element(vmag.begin(), vmag.end());

  const std::size_t m = d * (d - 1) / 2;
  std::vector<double> raw_rho(n, 0.0);
  std::vector<std::vector<double>> raw_biv(m, std::vector<double>(n, 0.0));
  std::vector<std::uint8_t> masked(n, 0);
  std::size_t n_unmasked = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (vmag[k] <= mask) {
      masked[k] = 1;
      continue;
    }
    ++n_unmasked;
    const VecN v = sig.row(k);
    const VecN vd = deriv.row(k);
    const double v2 = inner(v, v);
    raw_rho[k] = inner(v, vd) / v2;
    const Bivector b = wedge(v, vd) / v2;
    const auto coeffs = b.coefficients();
    for (std::size_t j = 0; j < m; ++j) raw_biv[j][k] = coeffs[j];
  }
  if (n_unmasked == 0) {
    throw DegenerateCurve("estimate_geometric: every sample is below the mask threshold");
  }

  const bool post_filter = cfg.filter_tau > 0.0 && !cfg.prefilter_derivative;
  std::vector<double> sm_rho =
      post_filter ? detail::lowpass_masked(raw_rho, masked, sig.sample_rate(), cfg.filter_tau)
                  : std::move(raw_rho);
  for (std::size_t j = 0; post_filter && j < m; ++j) {
    raw_biv[j] = detail::lowpass_masked(raw_biv[j], masked, sig.sample_rate(),
                                        cfg.filter_tau);
  }

  FrequencyTrace trace;
  trace.t.resize(n);
  trace.rho = std::move(sm_rho);
  trace.omega_mag.resize(n);
  trace.omega_biv.reserve(n);
  trace.valid.resize(n);
  const bool distrust_boundary = cfg.diff_scheme == DiffScheme::Central;
  for (std::size_t k = 0; k < n; ++k) {
    trace.t[k] = sig.time(k);
    Bivector b(d);
    std::size_t j = 0;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t l = i + 1; l < d; ++l) b.set_coeff(i, l, raw_biv[j++][k]);
    }
    trace.omega_mag[k] = b.magnitude();
    trace.omega_biv.push_back(std::move(b));
    const bool boundary = distrust_boundary && (k == 0 || k + 1 == n);
    trace.valid[k] = (!masked[k] && !boundary) ? 1 : 0;
  }
  return trace;
}

/// Reference synchronous-reference-frame PLL over an abc record: Clarke
/// transform (amplitude-invariant), Park rotation by the tracked angle, and
/// a PI loop driving v_q to zero. Discrete Euler update:
///   omega[k] = omega_init + ki * sum(vq/v_base) dt + kp * (vq/v_base)
///   theta[k+1] = theta[k] + omega[k] dt
/// The PLL observes only the rotation magnitude, so rho is reported as 0 and
/// the bivector is the tracked rate in the Clarke plane.
inline FrequencyTrace srf_pll(const SampledSignal& sig, const PllConfig& cfg = {}) {
  if (sig.dim() != 3) {
    throw DimensionMismatch("srf_pll: requires a 3-channel abc record");
  }
  if (!(cfg.kp > 0.0) || !(cfg.ki > 0.0)) {
    throw InvalidParameter("srf_pll: kp and ki must be positive");
  }
  if (!(cfg.v_base > 0.0)) throw InvalidParameter("srf_pll: v_base must be positive");

  const std::size_t n = sig.n_samples();
  const double dt = 1.0 / sig.sample_rate();
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  constexpr double two_pi = 2.0 * std::numbers::pi;

  auto clarke = [&](std::size_t k) {
    const double a = sig.at(k, 0), b = sig.at(k, 1), c = sig.at(k, 2);
    return std::pair{(2.0 * a - b - c) / 3.0, (b - c) * inv_sqrt3};
  };

  // Start aligned with the first sample's space vector.
  auto [a0, b0] = clarke(0);
  double theta = (a0 == 0.0 && b0 == 0.0) ? 0.0 : std::atan2(b0, a0);
  double integral = 0.0;

  FrequencyTrace trace;
  trace.t.resize(n);
  trace.rho.assign(n, 0.0);
  trace.omega_mag.resize(n);
  trace.omega_biv.reserve(n);
  trace.valid.assign(n, 1);
  for (std::size_t k = 0; k < n; ++k) {
    const auto [va, vb] = clarke(k);
    const double vq = -va * std::sin(theta) + vb * std::cos(theta);
    const double e = vq / cfg.v_base;
    integral += cfg.ki * e * dt;
    const double omega = cfg.omega_init + integral + cfg.kp * e;

    trace.t[k] = sig.time(k);
    Bivector biv(2);
    biv.set_coeff(0, 1, omega);
    trace.omega_mag[k] = biv.magnitude();
    trace.omega_biv.push_back(std::move(biv));

    theta = std::remainder(theta + omega * dt, two_pi);
  }
  return trace;
}

/// Error metrics between two traces over a time window. Both traces must
/// carry the same sample instants inside the window (tolerance 1e-12);
/// rmse/max_abs_dev run over samples valid in both. Settle time per trace is
/// the first instant after which |omega - omega_final| stays within 1% of
/// omega_final, omega_final being the last valid value in the window.
inline ComparisonReport compare_traces(const FrequencyTrace& a, const FrequencyTrace& b,
                                       std::pair<double, double> window) {
  const auto [w0, w1] = window;
  if (!(w0 <= w1)) throw InvalidParameter("compare_traces: empty window");

  auto indices_in_window = [&](const FrequencyTrace& tr) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < tr.size(); ++k) {
      if (tr.t[k] >= w0 - 1e-12 && tr.t[k] <= w1 + 1e-12) idx.push_back(k);
    }
    return idx;
  };
  const auto ia = indices_in_window(a);
  const auto ib = indices_in_window(b);
  if (ia.empty() || ib.empty()) {
    throw InvalidParameter("compare_traces: window contains no samples of both traces");
  }
  if (ia.size() != ib.size()) {
    throw DimensionMismatch("compare_traces: traces have different sample counts in window");
  }
  for (std::size_t k = 0; k < ia.size(); ++k) {
    const double ta = a.t[ia[k]], tb = b.t[ib[k]];
    if (std::abs(ta - tb) > 1e-12 * std::max(1.0, std::abs(ta))) {
      throw DimensionMismatch("compare_traces: time bases differ inside the window");
    }
  }

  double sq = 0.0, maxdev = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < ia.size(); ++k) {
    if (!a.valid[ia[k]] || !b.valid[ib[k]]) continue;
    const double dev = a.omega_mag[ia[k]] - b.omega_mag[ib[k]];
    sq += dev * dev;
    maxdev = std::max(maxdev, std::abs(dev));
    ++count;
  }
  if (count == 0) {
    throw InvalidParameter("compare_traces: no commonly valid samples in window");
  }

  auto settle_time = [&](const FrequencyTrace& tr, const std::vector<std::size_t>& idx) {
    std::vector<std::size_t> v;
    for (std::size_t k : idx) {
      if (tr.valid[k]) v.push_back(k);
    }
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double final_omega = tr.omega_mag[v.back()];
    const double thr = 0.01 * std::abs(final_omega);
    std::size_t first_settled = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (std::abs(tr.omega_mag[v[k]] - final_omega) > thr) first_settled = k + 1;
    }
    return first_settled < v.size() ? tr.t[v[first_settled]] : tr.t[v.back()];
  };

  return {std::sqrt(sq / static_cast<double>(count)), maxdev, settle_time(a, ia),
          settle_time(b, ib), count};
}

}  // namespace genfreq
