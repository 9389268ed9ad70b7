#pragma once

// Thomas-Fermi estimate of how far the condensate centre of mass moves
// across the wire under a transverse acceleration.
//
// Inside the hard-wall wire of diameter d the density is
//   n(r) = (mu/g) (1 - m a.r / mu),  a = (0, 0, -a),
// so it tilts linearly towards -a. The centroid is taken with the line
// measure dr dtheta over the disk, which integrates to m a d^2 / (24 mu).

#include <cmath>
#include <numbers>
#include <vector>

#include "squidacc/core.hpp"
#include "squidacc/quadrature.hpp"
#include "squidacc/sweep_table.hpp"

namespace squidacc {

/// mu = hbar^2 (Tc - T) / (2 m xi0^2 Tc).
inline double chemical_potential(const Material& material) {
  detail::require(material.T <= material.Tc, errc::domain, "chemical potential needs T <= Tc");
  const auto& k = kConst;
  return k.hbar * k.hbar * (material.Tc - material.T) /
         (2.0 * k.cooper_mass * material.xi0 * material.xi0 * material.Tc);
}

struct CondensateParams {
  double mu;  // [J]
  double gc;  // as printed for the estimate, not J m^3
  double N0;  // density of states at the Fermi surface [J^-1 m^-3]
};

/// gc = 0.107 (hbar^2 / (2 m xi0^2))^2 N0 / (kB Tc),  N0 = m^2 vF / (2 pi^2 hbar^3).
inline CondensateParams condensate_params(const Material& material) {
  const auto& k = kConst;
  const double N0 = k.cooper_mass * k.cooper_mass * material.vF /
                    (2.0 * std::numbers::pi * std::numbers::pi * k.hbar * k.hbar * k.hbar);
  const double e0 = k.hbar * k.hbar / (2.0 * k.cooper_mass * material.xi0 * material.xi0);
  const double gc = 0.107 * e0 * e0 * N0 / (k.boltzmann * material.Tc);
  return {chemical_potential(material), gc, N0};
}

inline double coupling_constant(const Material& material) { return condensate_params(material).gc; }

/// delta r_z = m a d^2 / (24 mu).
inline double deviation_closed(double a, double d, double mu) {
  detail::require(mu > 0, errc::domain, "chemical potential must be positive");
  return kConst.cooper_mass * a * d * d / (24.0 * mu);
}

enum class RadialMeasure {
  line,  // dr dtheta
  area,  // r dr dtheta
};

struct CentroidMoments {
  double z;        // density-weighted z moment
  double y;        // density-weighted y moment
  double density;  // total weight
  std::size_t radial_points;
  std::size_t angular_points;

  double dr_z() const { return z / density; }
  double dr_y() const { return y / density; }
};

/// Polar quadrature of the Thomas-Fermi density over the wire disk:
/// Gauss-Legendre in r times a uniform midpoint grid in theta, both doubled
/// until the centroid changes by less than `rel_tol`.
///
/// The density is carried as its uniform part plus the acceleration-induced
/// part and each is integrated separately. Angles are visited in (theta,
/// theta + pi) pairs so the odd moment of the uniform part cancels exactly;
/// otherwise its rounding (~1e-16) would swamp a tilt that is itself only
/// ~1e-12 of the density.
inline CentroidMoments centroid_moments(double a, double d, double mu,
                                        RadialMeasure measure = RadialMeasure::line,
                                        double rel_tol = 1e-10) {
  detail::require(mu > 0, errc::domain, "chemical potential must be positive");
  const double tilt = kConst.cooper_mass * a / mu;  // fractional density change per metre
  detail::require(std::abs(tilt) * 0.5 * d < 1.0, errc::regime,
                  "Thomas-Fermi density would go negative inside the wire");
  const double radius = 0.5 * d;

  auto integrate = [&](std::size_t nr, std::size_t nt) {
    const auto rule = quad::gauss_legendre(nr);
    const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(nt);
    CentroidMoments m{0.0, 0.0, 0.0, nr, nt};
    double z_uniform = 0.0;
    double z_tilt = 0.0;
    double y_moment = 0.0;
    double w_uniform = 0.0;
    double w_tilt = 0.0;
    for (std::size_t i = 0; i < nr; ++i) {
      const double r = radius * 0.5 * (rule.nodes[i] + 1.0);
      double w = rule.weights[i] * 0.5 * radius * dtheta;
      if (measure == RadialMeasure::area) w *= r;
      for (std::size_t k = 0; k < nt / 2; ++k) {
        const double theta = (static_cast<double>(k) + 0.5) * dtheta;
        const double z = r * std::sin(theta);
        const double y = r * std::cos(theta);
        // (theta) and (theta + pi): z -> -z, y -> -y
        const double dn = tilt * z;  // density excess over the uniform part at +z
        z_uniform += w * z + w * -z;
        z_tilt += w * z * dn + w * -z * -dn;
        y_moment += w * y * dn + w * -y * -dn;
        w_uniform += 2.0 * w;
        w_tilt += w * dn + w * -dn;
      }
    }
    m.z = z_uniform + z_tilt;
    m.y = y_moment;
    m.density = w_uniform + w_tilt;
    return m;
  };

  std::size_t nr = 64;
  std::size_t nt = 256;
  CentroidMoments previous = integrate(nr, nt);
  for (int k = 0; k < 8; ++k) {
    nr *= 2;
    nt *= 2;
    CentroidMoments current = integrate(nr, nt);
    const double change = std::abs(current.dr_z() - previous.dr_z());
    if (change <= rel_tol * std::abs(current.dr_z())) return current;
    previous = current;
  }
  throw error(errc::numerical, "centroid quadrature did not converge");
}

inline double deviation_numeric(double a, double d, double mu) {
  return centroid_moments(a, d, mu).dr_z();
}

struct DeviationResult {
  double dr_z;  // [m]
  ValidityVerdict bound;
};

/// delta r << hbar / (m v), the wavelength of the macroscopic wave function.
inline ValidityVerdict deviation_bound(double dr_z, double v, Strictness strictness = {}) {
  detail::require(v > 0, errc::domain, "drift speed must be positive");
  return dominance(dr_z, kConst.hbar / (kConst.cooper_mass * v), "trajectory_deviation",
                   strictness);
}

inline DeviationResult deviation_report(const Material& material, double a, double d, double v,
                                        Strictness strictness = {}) {
  const double dr = deviation_closed(a, d, chemical_potential(material));
  return {dr, deviation_bound(dr, v, strictness)};
}

/// Deviation over a temperature grid; every point must lie below Tc.
inline SweepTable deviation_vs_temperature(const Material& material, double a, double d,
                                           const std::vector<double>& T_grid) {
  SweepTable table({{"T", "K"}, {"mu", "J"}, {"dr_z", "m"}});
  for (double T : T_grid) {
    detail::require(T < material.Tc, errc::domain, "temperature grid must stay below Tc");
    Material at = material;
    at.T = T;
    const double mu = chemical_potential(at);
    table.add_row({T, mu, deviation_closed(a, d, mu)});
  }
  return table;
}

}  // namespace squidacc
