#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "squidacc/error.hpp"

namespace squidacc::quad {

struct SimpsonOptions {
  std::size_t initial_panels = 64;
  double rel_tol = 1e-10;
  int max_doublings = 24;
};

struct SimpsonResult {
  double value;
  std::size_t panels;
};

/// Composite Simpson on [a, b], doubling the panel count until two
/// successive estimates agree to `rel_tol`. Function values from the coarser
/// level are reused, so each doubling costs only the new midpoints.
template <typename F>
SimpsonResult simpson(F&& f, double a, double b, const SimpsonOptions& opt = {}) {
  std::size_t n = opt.initial_panels;
  double h = (b - a) / static_cast<double>(n);

  double ends = f(a) + f(b);
  double evens = 0.0;  // interior nodes shared with the coarser level
  double odds = 0.0;   // midpoints introduced at this level
  for (std::size_t i = 1; i < n; ++i) {
    const double fx = f(a + static_cast<double>(i) * h);
    (i % 2 == 0 ? evens : odds) += fx;
  }
  double previous = h / 3.0 * (ends + 4.0 * odds + 2.0 * evens);

  for (int k = 0; k < opt.max_doublings; ++k) {
    evens += odds;
    n *= 2;
    h *= 0.5;
    odds = 0.0;
    for (std::size_t i = 1; i < n; i += 2) odds += f(a + static_cast<double>(i) * h);
    const double current = h / 3.0 * (ends + 4.0 * odds + 2.0 * evens);
    if (std::abs(current - previous) <= opt.rel_tol * std::abs(current)) {
      return {current, n};
    }
    previous = current;
  }
  throw error(errc::numerical, "Simpson quadrature did not converge");
}

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

/// Nodes by Newton iteration on P_n from the Chebyshev-like initial guess.
inline GaussLegendreRule gauss_legendre(std::size_t n) {
  GaussLegendreRule rule{std::vector<double>(n), std::vector<double>(n)};
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace squidacc::quad
