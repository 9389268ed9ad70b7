#pragma once

// Physical constants, device records and the "much smaller than" comparator.
// All quantities are SI; there is no unit conversion layer.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <variant>

#include "squidacc/error.hpp"

namespace squidacc {

struct Constants {
  double planck;             // h [J s], exact
  double hbar;               // [J s]
  double elementary_charge;  // e [C], exact
  double electron_mass;      // [kg]
  double cooper_mass;        // m = 2 m_e [kg]
  double cooper_charge;      // q = 2 e [C]
  double flux_quantum;       // Phi0 = h / 2e [Wb]
  double boltzmann;          // k_B [J/K], exact
};

/// CODATA-2018. hbar is derived from the exact h so that Phi0 = pi hbar / e
/// holds to rounding.
constexpr Constants constants() noexcept {
  constexpr double h = 6.62607015e-34;
  constexpr double e = 1.602176634e-19;
  constexpr double me = 9.1093837015e-31;
  return Constants{
      .planck = h,
      .hbar = h / (2.0 * std::numbers::pi),
      .elementary_charge = e,
      .electron_mass = me,
      .cooper_mass = 2.0 * me,
      .cooper_charge = 2.0 * e,
      .flux_quantum = h / (2.0 * e),
      .boltzmann = 1.380649e-23,
  };
}

inline constexpr Constants kConst = constants();

struct Material {
  double n;       // Cooper-pair density [m^-3]
  double lambda;  // London penetration depth [m]
  double xi0;     // coherence length [m]
  double T;       // temperature [K]
  double Tc;      // critical temperature [K]
  double vF;      // Fermi velocity [m/s]
};

struct Ring {
  double Rs;         // radius [m]
  double dRs = 0.0;  // arm asymmetry [m]
};

struct Rectangle {
  double b;  // half-length [m]
  double c;  // arm height [m]
};

struct WireGeometry {
  std::variant<Ring, Rectangle> shape;
  double d;  // wire cross-section diameter [m]

  bool is_ring() const noexcept { return std::holds_alternative<Ring>(shape); }
  const Ring& ring() const { return std::get<Ring>(shape); }
  const Rectangle& rectangle() const { return std::get<Rectangle>(shape); }
};

struct DcSquidConfig {
  WireGeometry geometry;
  Material material;
  double Ic;  // critical current [A]
};

struct RfCircuitConfig {
  double L;    // loop inductance [H]
  double R;    // shunt resistance [Ohm]
  double C;    // shunt capacitance [F]
  double Ic;   // junction critical current [A]
  double Idc;  // bias current [A]
  double f;    // form factor [A s^2 / m]
};

/// Throws errc::domain unless every field is strictly positive and T < Tc.
/// T = 0 is accepted: the zero-temperature limit is the case the deviation
/// estimates are quoted at.
inline void validate(const Material& m) {
  detail::require(m.n > 0 && m.lambda > 0 && m.xi0 > 0 && m.Tc > 0 && m.vF > 0, errc::domain,
                  "material parameters must be strictly positive");
  detail::require(m.T >= 0 && m.T < m.Tc, errc::domain, "material requires 0 <= T < Tc");
}

/// Throws on non-positive lengths. Returns false when the wire is not thinner
/// than the loop, which callers report as a warning.
inline bool validate(const WireGeometry& g) {
  detail::require(g.d > 0, errc::domain, "wire diameter must be positive");
  if (g.is_ring()) {
    const auto& r = g.ring();
    detail::require(r.Rs > 0, errc::domain, "ring radius must be positive");
    detail::require(r.dRs >= 0, errc::domain, "ring asymmetry must be non-negative");
    return g.d < r.Rs;
  }
  const auto& r = g.rectangle();
  detail::require(r.b > 0 && r.c > 0, errc::domain, "rectangle sides must be positive");
  return g.d < std::min(r.b, r.c);
}

inline void validate(const DcSquidConfig& cfg) {
  validate(cfg.geometry);
  validate(cfg.material);
  detail::require(cfg.Ic > 0, errc::domain, "critical current must be positive");
}

inline void validate(const RfCircuitConfig& cfg) {
  detail::require(cfg.L > 0 && cfg.R > 0 && cfg.C > 0 && cfg.Ic > 0, errc::domain,
                  "L, R, C and Ic must be positive");
  detail::require(cfg.Idc >= 0, errc::domain, "bias current must be non-negative");
}

enum class Status { pass, warn, fail };

inline const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::pass: return "pass";
    case Status::warn: return "warn";
    case Status::fail: return "fail";
  }
  return "fail";
}

inline Status worst(Status a, Status b) noexcept { return a > b ? a : b; }

/// Thresholds turning a ratio into a verdict: pass below `pass_below`,
/// fail at or above `fail_at`.
struct Strictness {
  double pass_below = 0.1;
  double fail_at = 1.0;
};

struct ValidityVerdict {
  double ratio;
  Status status;
  std::string label;
};

inline ValidityVerdict dominance(double numerator, double denominator, std::string label,
                                 Strictness strictness = {}) {
  detail::require(denominator > 0, errc::domain, "dominance denominator must be positive");
  const double ratio = numerator / denominator;
  Status status = Status::fail;
  if (ratio < strictness.pass_below) {
    status = Status::pass;
  } else if (ratio < strictness.fail_at) {
    status = Status::warn;
  }
  return {ratio, status, std::move(label)};
}

}  // namespace squidacc
