#pragma once

#include "squidacc/squidacc.hpp"

namespace squidacc::testing {

// Device values quoted for the ring/rectangle current curves.
inline Material fig2_material() {
  return Material{.n = 1.0e29, .lambda = 5e-8, .xi0 = 1e-7, .T = 0.0, .Tc = 9.2, .vF = 1e6};
}

inline WireGeometry fig2_ring(double dRs = 0.0) { return {Ring{3e-4, dRs}, 1e-5}; }
inline WireGeometry fig2_rectangle() { return {Rectangle{3e-4, 3e-4}, 1e-5}; }

inline DcSquidConfig fig2_ring_config() { return {fig2_ring(), fig2_material(), 0.5e-6}; }
inline DcSquidConfig fig2_rectangle_config() { return {fig2_rectangle(), fig2_material(), 0.5e-6}; }

// Circuit values quoted for the voltage spectrum: LJ = 0.66 nH, C = 48 uF,
// L = 1 nH, R = 1 mOhm. f and Idc are not given there; the ring form factor
// and Idc = Ic stand in.
inline RfCircuitConfig fig4_circuit() {
  const double Ic = critical_current_from_inductance(0.66e-9);
  return {.L = 1e-9,
          .R = 1e-3,
          .C = 4.8e-5,
          .Ic = Ic,
          .Idc = Ic,
          .f = form_factor(fig2_ring(), fig2_material()).f};
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

}  // namespace squidacc::testing
