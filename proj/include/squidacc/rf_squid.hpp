#pragma once

// Small-signal response of the rf SQUID accelerometer. Every signal follows
// x(t) = X e^{i w t} + c.c., so a real tone A cos(w t) has |X| = A / 2.
//
// Two linear responses coexist:
//  * the circuit chain built on w0^2 = 1/(LJ C) (impedance, voltage and the
//    two acceleration inversions), used for figure reproduction;
//  * the linearisation of the time-domain flux equation, the oracle for the
//    simulator.
// Composing the chain's current inversion with Z_w reproduces the same
// 1 + L/LJ - L C w^2 + i w L / R denominator, so the two agree in magnitude
// at every w. They are opposite in sign: the simulator reports
// V = -(Phi0/2pi) d(dphi)/dt while the chain's V_w carries +i w.

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "squidacc/core.hpp"
#include "squidacc/sweep_table.hpp"

namespace squidacc {

using cplx = std::complex<double>;

enum class PhasorUnit { ampere, volt, weber, acceleration, ohm, volt_per_acceleration };

struct Phasor {
  cplx value;
  PhasorUnit unit;

  double re() const noexcept { return value.real(); }
  double im() const noexcept { return value.imag(); }
  double abs() const noexcept { return std::abs(value); }
};

struct DerivedCircuit {
  double LJ;      // Josephson inductance [H]
  double omega0;  // [rad/s]
  double zeta;    // damping factor
  double betaL;   // L / LJ
};

inline double josephson_inductance(double Ic) {
  detail::require(Ic > 0, errc::domain, "critical current must be positive");
  return kConst.flux_quantum / (2.0 * std::numbers::pi * Ic);
}

/// Ic = Phi0 / (2 pi LJ); the same relation read the other way.
inline double critical_current_from_inductance(double LJ) {
  detail::require(LJ > 0, errc::domain, "Josephson inductance must be positive");
  return kConst.flux_quantum / (2.0 * std::numbers::pi * LJ);
}

inline DerivedCircuit derived_circuit(const RfCircuitConfig& cfg) {
  validate(cfg);
  const double LJ = josephson_inductance(cfg.Ic);
  const double omega0 = 1.0 / std::sqrt(LJ * cfg.C);
  return {LJ, omega0, 1.0 / (2.0 * cfg.R * cfg.C * omega0), cfg.L / LJ};
}

namespace detail {

// C (w0^2 + 2 i zeta w w0 - w^2)
inline cplx resonance_denominator(double omega, const RfCircuitConfig& cfg) {
  const auto dc = derived_circuit(cfg);
  return cfg.C * cplx(dc.omega0 * dc.omega0 - omega * omega, 2.0 * dc.zeta * omega * dc.omega0);
}

inline double flux_to_acceleration(const RfCircuitConfig& cfg) {
  require(cfg.f > 0, errc::domain, "form factor must be positive");
  return 2.0 * std::numbers::pi * cfg.Idc / (cfg.f * kConst.flux_quantum);
}

}  // namespace detail

/// Phi_w = Phi0 f a_w / (2 pi Idc).
inline Phasor effective_flux(const Phasor& a_omega, double f, double Idc) {
  detail::require(Idc > 0, errc::domain, "bias current must be positive");
  return {kConst.flux_quantum * f * a_omega.value / (2.0 * std::numbers::pi * Idc),
          PhasorUnit::weber};
}

/// Z_w = i w / (C (w0^2 + 2 i zeta w w0 - w^2)).
inline Phasor impedance(double omega, const RfCircuitConfig& cfg) {
  return {cplx(0.0, omega) / detail::resonance_denominator(omega, cfg), PhasorUnit::ohm};
}

inline Phasor voltage_response(const Phasor& I_omega, double omega, const RfCircuitConfig& cfg) {
  return {cplx(0.0, omega) * I_omega.value / detail::resonance_denominator(omega, cfg),
          PhasorUnit::volt};
}

/// a_w = (2 pi Idc / (f Phi0)) (L + 1 / (C (w0^2 + 2 i zeta w w0 - w^2))) I_w.
inline Phasor acceleration_from_current(const Phasor& I_omega, double omega,
                                        const RfCircuitConfig& cfg) {
  const double k = detail::flux_to_acceleration(cfg);
  return {k * (cfg.L + 1.0 / detail::resonance_denominator(omega, cfg)) * I_omega.value,
          PhasorUnit::acceleration};
}

/// a_w = (2 pi Idc / (f Phi0)) (L / Z_w + 1 / (i w)) V_w.
inline Phasor acceleration_from_voltage(const Phasor& V_omega, double omega,
                                        const RfCircuitConfig& cfg) {
  if (omega == 0.0) throw error(errc::singular_inversion, "voltage inversion at w = 0");
  const double k = detail::flux_to_acceleration(cfg);
  const cplx Z = impedance(omega, cfg).value;
  return {k * (cfg.L / Z + 1.0 / cplx(0.0, omega)) * V_omega.value, PhasorUnit::acceleration};
}

/// Inverse of acceleration_from_current.
inline Phasor current_from_acceleration(const Phasor& a_omega, double omega,
                                        const RfCircuitConfig& cfg) {
  const double k = detail::flux_to_acceleration(cfg);
  return {a_omega.value / (k * (cfg.L + 1.0 / detail::resonance_denominator(omega, cfg))),
          PhasorUnit::ampere};
}

/// V_w / a_w of the circuit chain: I_w from the current inversion, then Z_w I_w.
inline Phasor circuit_transfer(double omega, const RfCircuitConfig& cfg) {
  const Phasor unit_a{1.0, PhasorUnit::acceleration};
  return {impedance(omega, cfg).value * current_from_acceleration(unit_a, omega, cfg).value,
          PhasorUnit::volt_per_acceleration};
}

/// V_w / a_w of the flux equation linearised in dphi:
///   dphi_w (1 + L/LJ - L C w^2 + i w L / R) = 2 pi Phi_w / Phi0,
///   V_w = -i w (Phi0 / 2 pi) dphi_w.
inline Phasor linearized_ode_response(double omega, const RfCircuitConfig& cfg) {
  detail::require(cfg.Idc > 0, errc::domain, "bias current must be positive");
  const auto dc = derived_circuit(cfg);
  const cplx stiffness(1.0 + dc.betaL - cfg.L * cfg.C * omega * omega, omega * cfg.L / cfg.R);
  const cplx dphi_per_a = cfg.f / cfg.Idc / stiffness;  // 2 pi Phi_w / Phi0 = f a_w / Idc
  return {cplx(0.0, -omega) * (kConst.flux_quantum / (2.0 * std::numbers::pi)) * dphi_per_a,
          PhasorUnit::volt_per_acceleration};
}

/// Drive frequency limits for a ring device:
///  * passage_time: w << Omega = 4 m Rs Idc / (hbar f)
///  * passage_time_critical: w << hbar Idc / (m Rs^2 Ic)
///  * quasi_static: Rs / v << 2 pi / w, with v = Omega Rs
///  * dc_contribution: m^2 Rs^3 Ic << hbar^2 f (frequency independent)
inline std::vector<ValidityVerdict> bandwidth_limit(const RfCircuitConfig& cfg,
                                                    const WireGeometry& geometry, double omega,
                                                    Strictness strictness = {}) {
  if (!geometry.is_ring()) {
    throw error(errc::unsupported, "bandwidth bound is only defined for the ring");
  }
  detail::require(cfg.f > 0, errc::domain, "form factor must be positive");
  const auto& k = kConst;
  const double Rs = geometry.ring().Rs;
  const double w = std::abs(omega);
  const double Omega = 4.0 * k.cooper_mass * Rs * cfg.Idc / (k.hbar * cfg.f);
  const double Omega_c = k.hbar * cfg.Idc / (k.cooper_mass * Rs * Rs * cfg.Ic);
  std::vector<ValidityVerdict> out;
  if (Omega > 0) {
    out.push_back(dominance(w, Omega, "passage_time", strictness));
  } else {
    out.push_back({w > 0 ? HUGE_VAL : 0.0, w > 0 ? Status::fail : Status::pass, "passage_time"});
  }
  if (Omega_c > 0) {
    out.push_back(dominance(w, Omega_c, "passage_time_critical", strictness));
  } else {
    out.push_back(
        {w > 0 ? HUGE_VAL : 0.0, w > 0 ? Status::fail : Status::pass, "passage_time_critical"});
  }
  // Rs / v = 1 / Omega, so the ratio (Rs/v) / (2 pi / w) is w / (2 pi Omega).
  if (Omega > 0) {
    out.push_back(dominance(w / Omega, 2.0 * std::numbers::pi, "quasi_static", strictness));
  } else {
    out.push_back({w > 0 ? HUGE_VAL : 0.0, w > 0 ? Status::fail : Status::pass, "quasi_static"});
  }
  out.push_back(dominance(k.cooper_mass * k.cooper_mass * Rs * Rs * Rs * cfg.Ic,
                          k.hbar * k.hbar * cfg.f, "dc_contribution", strictness));
  return out;
}

/// Worst status among the frequency-dependent bandwidth verdicts.
inline Status bandwidth_status(const std::vector<ValidityVerdict>& verdicts) {
  Status s = Status::pass;
  for (const auto& v : verdicts) {
    if (v.label != "dc_contribution") s = worst(s, v.status);
  }
  return s;
}

/// Voltage spectrum for a fixed acceleration amplitude across `omega_grid`.
/// Bandwidth flags need a ring geometry; otherwise the column is left empty.
inline SweepTable frequency_sweep(const RfCircuitConfig& cfg, double a_omega_magnitude,
                                  const std::vector<double>& omega_grid,
                                  const std::optional<WireGeometry>& geometry = std::nullopt,
                                  Strictness strictness = {}) {
  detail::require(!omega_grid.empty(), errc::configuration, "empty sweep");
  SweepTable table({{"omega", "rad/s"},
                    {"ReV", "V"},
                    {"ImV", "V"},
                    {"absI", "A"},
                    {"bandwidth_ok", ""},
                    {"amplitude_ok", ""}});
  const Phasor a{a_omega_magnitude, PhasorUnit::acceleration};
  for (double omega : omega_grid) {
    detail::require(omega > 0, errc::configuration, "frequency grid must be positive");
    const Phasor I = current_from_acceleration(a, omega, cfg);
    const Phasor V{impedance(omega, cfg).value * I.value, PhasorUnit::volt};
    Cell band;
    if (geometry && geometry->is_ring()) {
      band = to_string(bandwidth_status(bandwidth_limit(cfg, *geometry, omega, strictness)));
    }
    const auto amplitude = I.abs() <= cfg.Ic ? Status::pass : Status::fail;
    table.add_row({omega, V.re(), V.im(), I.abs(), band, std::string(to_string(amplitude))});
  }
  return table;
}

}  // namespace squidacc
