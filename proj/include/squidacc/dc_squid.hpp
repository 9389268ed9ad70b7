#pragma once

// dc SQUID readout: the interference current I = 2 Ic cos(dphi/2) together
// with dphi = f a / I. Eliminating I gives h(dphi) = 2 Ic dphi cos(dphi/2) = f a,
// which is solved on the branch continuous with dphi = 0 (up to the maximum
// of h). The phase-locked dphi = pi regime is not represented.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "squidacc/core.hpp"
#include "squidacc/phase_engine.hpp"
#include "squidacc/sweep_table.hpp"

namespace squidacc {

inline double interference_current(double delta_phi, double Ic) {
  return 2.0 * Ic * std::cos(0.5 * delta_phi);
}

namespace detail {

// Bisection on [lo, hi] where pred(lo) is false and pred(hi) is true, until
// the midpoint no longer separates the endpoints.
template <typename Pred>
double bisect_boundary(Pred&& pred, double lo, double hi) {
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (pred(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Maximiser of x cos(x/2): the root of cos(x/2) - (x/2) sin(x/2) in (0, pi),
/// i.e. tan(x/2) = 2/x. About 1.72067.
inline double critical_phase() {
  static const double x_star = detail::bisect_boundary(
      [](double x) { return std::cos(0.5 * x) - 0.5 * x * std::sin(0.5 * x) < 0.0; }, 0.0,
      std::numbers::pi);
  return x_star;
}

/// Largest acceleration reachable on the principal branch, h(dphi*) / f.
inline double max_acceleration(const DcSquidConfig& config) {
  const double x = critical_phase();
  const double f = form_factor(config.geometry, config.material).f;
  return 2.0 * config.Ic * x * std::cos(0.5 * x) / f;
}

struct OperatingPoint {
  double a;          // [m/s^2]
  double delta_phi;  // [rad]
  double I;          // total current [A]
  double ratio;      // I / (2 Ic)
};

inline OperatingPoint operating_point(double a, const DcSquidConfig& config) {
  detail::require(a >= 0, errc::domain, "operating point needs a >= 0");
  const double f = form_factor(config.geometry, config.material).f;
  const double target = f * a;
  const double x_star = critical_phase();
  const double h_max = 2.0 * config.Ic * x_star * std::cos(0.5 * x_star);
  if (target > h_max) {
    throw exceeds_critical_error("acceleration beyond the principal branch", h_max / f);
  }
  // h is flat at its maximum, so a target within rounding of h_max would
  // otherwise land ~sqrt(eps) away from dphi*.
  double dphi = 0.0;
  if (target >= h_max * (1.0 - 8.0 * std::numeric_limits<double>::epsilon())) {
    dphi = x_star;
  } else if (target > 0.0) {
    dphi = detail::bisect_boundary(
        [&](double x) { return 2.0 * config.Ic * x * std::cos(0.5 * x) >= target; }, 0.0, x_star);
  }
  const double I = interference_current(dphi, config.Ic);
  return {a, dphi, I, I / (2.0 * config.Ic)};
}

/// First-order current with I -> 2 Ic inside the correction:
/// 2 Ic [1 - f^2 a^2 / (32 Ic^2)].
inline double weak_shift_current(double a, const DcSquidConfig& config) {
  const double f = form_factor(config.geometry, config.material).f;
  const double u = f * a / config.Ic;
  return 2.0 * config.Ic * (1.0 - u * u / 32.0);
}

/// Inverse readout on the principal branch: a = (2 I / f) arccos(I / 2Ic).
inline double acceleration_from_current(double I_meas, const DcSquidConfig& config) {
  const double full = 2.0 * config.Ic;
  if (I_meas > full) {
    throw error(errc::impossible_reading, "measured current exceeds 2 Ic");
  }
  const double floor_current = full * std::cos(0.5 * critical_phase());
  // one part in 1e12 of slack so the critical point itself reads back
  if (I_meas < floor_current * (1.0 - 1e-12)) {
    throw error(errc::ambiguous_reading, "measured current below the principal-branch window");
  }
  const double f = form_factor(config.geometry, config.material).f;
  return 2.0 * I_meas / f * std::acos(std::min(1.0, I_meas / full));
}

/// phi_+/pi for the unaccelerated arm. The ring uses 2 m^2 Rs^3 I/(hbar^2 f);
/// the rectangle uses m v l / (2 pi hbar) over its arm length l = 2b + 2c.
inline double winding_number(const WireGeometry& geometry, const Material& material, double I) {
  if (geometry.is_ring()) {
    return winding_number(geometry.ring().Rs, I, form_factor(geometry, material).f);
  }
  const auto& r = geometry.rectangle();
  const double v = drift_velocity(I, material, geometry);
  return kConst.cooper_mass * v * (2.0 * r.b + 2.0 * r.c) /
         (2.0 * std::numbers::pi * kConst.hbar);
}

/// Verdicts for the weak-shift regime (a < I/f at I = 2Ic), the ring
/// asymmetry condition a dRs << (m Rs^2 Ic / (hbar f))^2, and the small
/// winding condition phi_+/pi <= 1.
inline std::vector<ValidityVerdict> validity_report(const DcSquidConfig& config, double a,
                                                    Strictness strictness = {}) {
  const double f = form_factor(config.geometry, config.material).f;
  const double I = 2.0 * config.Ic;
  std::vector<ValidityVerdict> out;
  out.push_back(dominance(std::abs(a), I / f, "weak_regime", strictness));
  if (config.geometry.is_ring()) {
    const auto& r = config.geometry.ring();
    const double scale = kConst.cooper_mass * r.Rs * r.Rs * config.Ic / (kConst.hbar * f);
    out.push_back(dominance(std::abs(a) * r.dRs, scale * scale, "asymmetry", strictness));
  } else {
    out.push_back(dominance(0.0, 1.0, "asymmetry", strictness));
  }
  out.push_back(
      dominance(winding_number(config.geometry, config.material, I), 1.0, "winding", strictness));
  return out;
}

/// `count` evenly spaced points on [0, a_max].
inline std::vector<double> default_dc_grid(const DcSquidConfig& config, std::size_t count) {
  detail::require(count >= 1, errc::configuration, "empty sweep");
  const double a_max = max_acceleration(config);
  std::vector<double> grid(count, 0.0);
  for (std::size_t i = 1; i < count; ++i) {
    grid[i] = a_max * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  if (count > 1) grid.back() = a_max;
  return grid;
}

inline SweepTable dc_sweep(const DcSquidConfig& config, const std::vector<double>& a_grid,
                           Strictness strictness = {}) {
  detail::require(!a_grid.empty(), errc::configuration, "empty sweep");
  detail::require(a_grid.front() >= 0, errc::domain, "acceleration grid must be non-negative");
  for (std::size_t i = 1; i < a_grid.size(); ++i) {
    detail::require(a_grid[i] > a_grid[i - 1], errc::configuration,
                    "acceleration grid must be strictly increasing");
  }
  SweepTable table({{"a", "m/s^2"},
                    {"I", "A"},
                    {"ratio", ""},
                    {"delta_phi", "rad"},
                    {"weak_regime", ""},
                    {"winding_ok", ""},
                    {"asymmetry_ok", ""}});
  for (double a : a_grid) {
    std::vector<Cell> row{a};
    try {
      const auto op = operating_point(a, config);
      row.insert(row.end(), {op.I, op.ratio, op.delta_phi});
    } catch (const exceeds_critical_error&) {
      row.insert(row.end(), {Cell{}, Cell{}, Cell{}});
    }
    const auto verdicts = validity_report(config, a, strictness);
    row.emplace_back(to_string(verdicts[0].status));
    row.emplace_back(to_string(verdicts[2].status));
    row.emplace_back(to_string(verdicts[1].status));
    table.add_row(std::move(row));
  }
  return table;
}

}  // namespace squidacc
