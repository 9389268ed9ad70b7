#pragma once

#include <array>
#include <cstddef>

namespace squidacc::ode {

template <std::size_t N>
using State = std::array<double, N>;

/// One classical fourth-order Runge-Kutta step. `rhs(t, x)` returns dx/dt.
template <std::size_t N, typename Rhs>
State<N> rk4_step(Rhs&& rhs, double t, const State<N>& x, double dt) {
  auto axpy = [](const State<N>& base, const State<N>& k, double h) {
    State<N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = base[i] + h * k[i];
    return out;
  };
  const double half = 0.5 * dt;
  const State<N> k1 = rhs(t, x);
  const State<N> k2 = rhs(t + half, axpy(x, k1, half));
  const State<N> k3 = rhs(t + half, axpy(x, k2, half));
  const State<N> k4 = rhs(t + dt, axpy(x, k3, dt));
  State<N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
  }
  return out;
}

}  // namespace squidacc::ode
