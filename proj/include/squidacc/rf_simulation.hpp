#pragma once

// Time-domain integration of the rf SQUID flux equation
//
//   (L C d2/dt2 + (L/R) d/dt + 1) dphi + (2 pi L Ic / Phi0) sin(dphi) = 2 pi Phi_ac / Phi0
//
// with Phi_ac(t) = Phi0 f a(t) / (2 pi Idc), plus phasor read-out of the
// sampled channels and per-bin inversion of a measured voltage record.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "squidacc/ode.hpp"
#include "squidacc/rf_squid.hpp"

namespace squidacc {

/// Acceleration drive a(t) and the highest angular frequency it contains
/// (used for the step-size rule).
struct Drive {
  std::function<double(double)> a;
  double omega = 0.0;

  static Drive none() {
    return {[](double) { return 0.0; }, 0.0};
  }

  /// a(t) = a_w e^{i w t} + c.c.
  static Drive tone(cplx a_omega, double omega) {
    return {[=](double t) { return 2.0 * (a_omega * std::polar(1.0, omega * t)).real(); }, omega};
  }

  /// The same drive, switched off from `t_off` on.
  Drive gated(double t_off) const {
    auto inner = a;
    return {[inner, t_off](double t) { return t < t_off ? inner(t) : 0.0; }, omega};
  }
};

/// Uniformly sampled real signal: value k sits at t0 + k dt.
struct UniformSamples {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> x;

  double t_last() const { return t0 + dt * static_cast<double>(x.empty() ? 0 : x.size() - 1); }
};

struct TimeSeries {
  double dt = 0.0;
  std::vector<double> t;
  std::vector<double> delta_phi;  // [rad]
  std::vector<double> V;          // [V]
  std::vector<double> I_minus;    // [A]
  std::vector<double> I_plus;     // [A]
  std::vector<double> phi_ac;     // [Wb]

  std::size_t size() const noexcept { return t.size(); }

  UniformSamples channel(const std::vector<double>& values) const {
    return {t.empty() ? 0.0 : t.front(), dt, values};
  }
};

/// Largest step the integrator accepts: 200 steps per shortest period.
inline double max_step(const RfCircuitConfig& cfg, double drive_omega) {
  const double w = std::max(std::abs(drive_omega), derived_circuit(cfg).omega0);
  return 2.0 * std::numbers::pi / (200.0 * w);
}

inline TimeSeries simulate(const RfCircuitConfig& cfg, const Drive& drive, double t_end,
                           double dt) {
  validate(cfg);
  detail::require(cfg.Idc > 0, errc::domain, "bias current must be positive");
  detail::require(cfg.f > 0, errc::domain, "form factor must be positive");
  if (!(dt > 0) || dt > max_step(cfg, drive.omega) * (1.0 + 1e-12)) {
    throw error(errc::configuration, "time step violates 200 steps per shortest period");
  }
  detail::require(t_end > 0, errc::configuration, "simulation end time must be positive");

  const auto& k = kConst;
  const double flux_scale = k.flux_quantum / (2.0 * std::numbers::pi);  // Phi0 / 2 pi
  const double beta = cfg.L / derived_circuit(cfg).LJ;                  // 2 pi L Ic / Phi0
  const double LC = cfg.L * cfg.C;
  const double damping = cfg.L / cfg.R;
  const double drive_gain = cfg.f / cfg.Idc;  // 2 pi Phi_ac / Phi0 per unit a

  auto rhs = [&](double t, const ode::State<2>& s) {
    const double forcing = drive_gain * drive.a(t);
    return ode::State<2>{s[1], (forcing - s[0] - beta * std::sin(s[0]) - damping * s[1]) / LC};
  };

  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  TimeSeries out;
  out.dt = dt;
  for (auto* v : {&out.t, &out.delta_phi, &out.V, &out.I_minus, &out.I_plus, &out.phi_ac}) {
    v->reserve(steps + 1);
  }

  auto record = [&](double t, const ode::State<2>& s) {
    const double phi_ac = flux_scale * drive_gain * drive.a(t);
    const double i_minus = (phi_ac - s[0] * flux_scale) / cfg.L;
    out.t.push_back(t);
    out.delta_phi.push_back(s[0]);
    out.V.push_back(-flux_scale * s[1]);
    out.I_minus.push_back(i_minus);
    out.I_plus.push_back(cfg.Idc - i_minus);
    out.phi_ac.push_back(phi_ac);
  };

  ode::State<2> state{0.0, 0.0};
  record(0.0, state);
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * dt;
    state = ode::rk4_step<2>(rhs, t, state, dt);
    if (!std::isfinite(state[0]) || !std::isfinite(state[1])) {
      throw error(errc::instability, "non-finite state during integration");
    }
    record(static_cast<double>(n + 1) * dt, state);
  }
  return out;
}

/// Largest |dphi Phi0/2pi + L I_minus - Phi_ac| relative to the largest of
/// the three terms over the record (0 for an all-zero record).
inline double flux_relation_residual(const TimeSeries& ts, const RfCircuitConfig& cfg) {
  const double flux_scale = kConst.flux_quantum / (2.0 * std::numbers::pi);
  double worst_abs = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double a = ts.delta_phi[i] * flux_scale;
    const double b = cfg.L * ts.I_minus[i];
    const double c = ts.phi_ac[i];
    worst_abs = std::max(worst_abs, std::abs(a + b - c));
    scale = std::max({scale, std::abs(a), std::abs(b), std::abs(c)});
  }
  return scale == 0.0 ? 0.0 : worst_abs / scale;
}

namespace detail {

// (1 / (t1 - t0)) * integral of x(t) e^{-i w t} over [t0, t1], with x the
// piecewise-linear interpolant of the samples and the trapezoid rule on
// each sample interval.
inline cplx project(const UniformSamples& s, double omega, double t_begin, double t_end) {
  const double eps = 1e-9 * s.dt;
  auto index_at = [&](double t) { return (t - s.t0) / s.dt; };
  auto value_at = [&](double t) {
    const double u = index_at(t);
    const auto i = static_cast<std::size_t>(std::clamp(std::floor(u), 0.0,
                                                       static_cast<double>(s.x.size() - 2)));
    const double frac = u - static_cast<double>(i);
    return s.x[i] + frac * (s.x[i + 1] - s.x[i]);
  };
  auto term = [&](double t, double x) { return x * std::polar(1.0, -omega * t); };

  // first interior sample at or after t_begin, last at or before t_end
  auto first = static_cast<std::size_t>(std::ceil(index_at(t_begin) - 1e-9));
  auto last = static_cast<std::size_t>(std::floor(index_at(t_end) + 1e-9));
  auto time_of = [&](std::size_t i) { return s.t0 + s.dt * static_cast<double>(i); };

  cplx sum = 0.0;
  cplx prev_val = term(t_begin, value_at(t_begin));
  double prev_t = t_begin;
  for (std::size_t i = first; i <= last; ++i) {
    const double t = time_of(i);
    if (std::abs(t - prev_t) > eps) {
      const cplx val = term(t, s.x[i]);
      sum += 0.5 * (t - prev_t) * (prev_val + val);
      prev_val = val;
      prev_t = t;
    } else {
      prev_val = term(t, s.x[i]);
      prev_t = t;
    }
  }
  if (t_end - prev_t > eps) {
    sum += 0.5 * (t_end - prev_t) * (prev_val + term(t_end, value_at(t_end)));
  }
  return sum / (t_end - t_begin);
}

}  // namespace detail

/// Phasor X of x(t) = X e^{i w t} + c.c. over `analysis_periods` whole
/// periods after skipping `settle_periods`.
inline cplx extract_fundamental(const UniformSamples& samples, double omega, double settle_periods,
                                int analysis_periods) {
  detail::require(omega > 0, errc::configuration, "extraction frequency must be positive");
  detail::require(analysis_periods >= 1, errc::configuration, "need at least one analysis period");
  detail::require(samples.x.size() >= 2 && samples.dt > 0, errc::configuration,
                  "series too short");
  const double period = 2.0 * std::numbers::pi / omega;
  const double t_begin = samples.t0 + settle_periods * period;
  const double t_end = t_begin + analysis_periods * period;
  if (t_end > samples.t_last() + 1e-9 * samples.dt) {
    throw error(errc::configuration, "series shorter than settle + analysis window");
  }
  return detail::project(samples, omega, t_begin, t_end);
}

/// Periods to skip: the requested count or enough to cover 10 / (zeta w0),
/// whichever is larger.
inline double transient_periods(const RfCircuitConfig& cfg, double omega, double settle_periods) {
  const auto dc = derived_circuit(cfg);
  const double horizon = 10.0 / (dc.zeta * dc.omega0);
  return std::max(settle_periods, std::ceil(horizon * omega / (2.0 * std::numbers::pi)));
}

inline cplx extract_fundamental(const UniformSamples& samples, double omega,
                                const RfCircuitConfig& cfg, double settle_periods,
                                int analysis_periods) {
  return extract_fundamental(samples, omega, transient_periods(cfg, omega, settle_periods),
                             analysis_periods);
}

struct WindowPolicy {
  // Whole periods per bin; unset means as many as fit in the record.
  std::optional<int> periods;
  double skip_time = 0.0;
};

struct SpectrumBin {
  double omega;
  Phasor V;
  Phasor a;
  std::optional<Status> bandwidth;
};

/// Voltage phasor per requested bin, then the voltage-side acceleration
/// inversion. Bandwidth flags are attached when a ring geometry is given.
inline std::vector<SpectrumBin> invert_spectrum(const UniformSamples& voltage,
                                                const RfCircuitConfig& cfg,
                                                const std::vector<double>& omegas,
                                                const WindowPolicy& policy = {},
                                                const std::optional<WireGeometry>& geometry = {},
                                                Strictness strictness = {}) {
  detail::require(voltage.x.size() >= 2 && voltage.dt > 0, errc::configuration,
                  "voltage record too short");
  std::vector<SpectrumBin> out;
  for (double omega : omegas) {
    if (omega == 0.0) throw error(errc::singular_inversion, "bin at w = 0 cannot be inverted");
    detail::require(omega > 0, errc::configuration, "bin frequencies must be positive");
    const double period = 2.0 * std::numbers::pi / omega;
    const double t_begin = voltage.t0 + policy.skip_time;
    const double available = voltage.t_last() - t_begin;
    const int fit = static_cast<int>(std::floor(available / period + 1e-9));
    const int n = policy.periods.value_or(fit);
    if (n < 2 || n > fit) {
      throw error(errc::configuration, "record must hold at least two periods of every bin");
    }
    const Phasor V{detail::project(voltage, omega, t_begin, t_begin + n * period),
                   PhasorUnit::volt};
    SpectrumBin bin{omega, V, acceleration_from_voltage(V, omega, cfg), std::nullopt};
    if (geometry && geometry->is_ring()) {
      bin.bandwidth = bandwidth_status(bandwidth_limit(cfg, *geometry, omega, strictness));
    }
    out.push_back(bin);
  }
  return out;
}

/// Checks that the sample times are evenly spaced (relative 1e-6 of the
/// mean step) and returns them as UniformSamples.
inline UniformSamples to_uniform(const std::vector<double>& t, const std::vector<double>& x) {
  detail::require(t.size() == x.size() && t.size() >= 2, errc::configuration,
                  "time and value columns must match and hold at least two samples");
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  detail::require(dt > 0, errc::configuration, "time column must increase");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::abs((t[i] - t[i - 1]) - dt) > 1e-6 * dt) {
      throw error(errc::configuration, "samples are not uniformly spaced");
    }
  }
  return {t.front(), dt, x};
}

}  // namespace squidacc
