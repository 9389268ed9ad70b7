#pragma once

// Cooper-pair arm trajectories and the phases they accumulate.
//
// The action phase of one arm is the time integral of m |r'(t)|^2 / (2 hbar)
// along its trajectory. The closed forms below are the analytic values of the
// plus/minus difference; the quadrature is kept as an independent route.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "squidacc/core.hpp"
#include "squidacc/quadrature.hpp"

namespace squidacc {

using Vec3 = std::array<double, 3>;

enum class Arm { plus, minus };

inline double arm_sign(Arm arm) noexcept { return arm == Arm::plus ? 1.0 : -1.0; }

struct Segment {
  std::function<Vec3(double)> position;
  std::function<Vec3(double)> velocity;
  double t_start;
  double t_end;
};

class Trajectory {
 public:
  Trajectory(std::vector<Segment> segments, Arm arm, double acceleration)
      : segments_(std::move(segments)), arm_(arm), acceleration_(acceleration) {
    detail::require(!segments_.empty(), errc::domain, "trajectory needs at least one segment");
    for (std::size_t k = 0; k < segments_.size(); ++k) {
      detail::require(segments_[k].t_end > segments_[k].t_start, errc::domain,
                      "segment must have positive duration");
      if (k + 1 < segments_.size()) {
        detail::require(segments_[k].t_end == segments_[k + 1].t_start, errc::domain,
                        "trajectory segments must be contiguous in time");
      }
    }
  }

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  Arm arm() const noexcept { return arm_; }
  double acceleration() const noexcept { return acceleration_; }
  double t_start() const noexcept { return segments_.front().t_start; }
  double t_end() const noexcept { return segments_.back().t_end; }

 private:
  std::vector<Segment> segments_;
  Arm arm_;
  double acceleration_;
};

/// Checks that each segment's velocity is the time derivative of its
/// position: central differences with step 1e-6 x segment duration at
/// interior points, relative tolerance 1e-6 against the segment's speed scale.
inline bool velocity_consistent(const Trajectory& traj, int points_per_segment = 9,
                                double rel_tol = 1e-6) {
  for (const auto& seg : traj.segments()) {
    const double span = seg.t_end - seg.t_start;
    const double h = 1e-6 * span;
    double scale = 0.0;
    for (int i = 1; i <= points_per_segment; ++i) {
      const double t = seg.t_start + span * i / (points_per_segment + 1);
      for (double c : seg.velocity(t)) scale = std::max(scale, std::abs(c));
    }
    if (scale == 0.0) continue;
    for (int i = 1; i <= points_per_segment; ++i) {
      const double t = seg.t_start + span * i / (points_per_segment + 1);
      const Vec3 ahead = seg.position(t + h);
      const Vec3 behind = seg.position(t - h);
      const Vec3 vel = seg.velocity(t);
      for (int c = 0; c < 3; ++c) {
        const double fd = (ahead[c] - behind[c]) / (2.0 * h);
        if (std::abs(fd - vel[c]) > rel_tol * scale) return false;
      }
    }
  }
  return true;
}

struct KinematicState {
  double v;             // drift speed [m/s]
  double Omega;         // angular rate [rad/s], zero for rectangles
  double transit_time;  // [s]
};

inline KinematicState kinematics(const WireGeometry& geometry, double v) {
  detail::require(v > 0, errc::domain, "drift speed must be positive");
  if (geometry.is_ring()) {
    const double omega = v / geometry.ring().Rs;
    return {v, omega, std::numbers::pi / omega};
  }
  const auto& r = geometry.rectangle();
  return {v, 0.0, (2.0 * r.c + 2.0 * r.b) / v};
}

enum class GeometryTag { ring, rectangle };

struct FormFactor {
  double f;  // [A s^2 / m]
  GeometryTag geometry_tag;
};

/// f = 8 m Rs^2 q n d lambda / hbar (ring) or 4 m c (2b + c) q n d lambda / hbar
/// (rectangle), from I/2 = q n v d lambda.
inline FormFactor form_factor(const WireGeometry& geometry, const Material& material) {
  const auto& k = kConst;
  const double carrier = k.cooper_charge * material.n * geometry.d * material.lambda;
  if (geometry.is_ring()) {
    const double Rs = geometry.ring().Rs;
    return {8.0 * k.cooper_mass * Rs * Rs * carrier / k.hbar, GeometryTag::ring};
  }
  const auto& r = geometry.rectangle();
  return {4.0 * k.cooper_mass * r.c * (2.0 * r.b + r.c) * carrier / k.hbar,
          GeometryTag::rectangle};
}

/// Speed of the pairs when the total current I splits evenly between arms.
inline double drift_velocity(double total_current, const Material& material,
                             const WireGeometry& geometry) {
  detail::require(total_current >= 0, errc::domain, "current must be non-negative");
  return total_current /
         (2.0 * kConst.cooper_charge * material.n * geometry.d * material.lambda);
}

namespace detail {

inline Trajectory ring_arm(double Rs, Arm arm, double v, double a) {
  const double s = arm_sign(arm);
  const double omega = v / Rs;
  Segment seg{
      [=](double t) {
        return Vec3{Rs * std::cos(omega * t), s * Rs * std::sin(omega * t) + 0.5 * a * t * t, 0.0};
      },
      [=](double t) {
        return Vec3{-Rs * omega * std::sin(omega * t), s * Rs * omega * std::cos(omega * t) + a * t,
                    0.0};
      },
      0.0, std::numbers::pi / omega};
  return Trajectory({std::move(seg)}, arm, a);
}

// Three legs with the boundary times t1 = c/v, t2 = 2b/v + t1, t3 = t1 + t2.
// The vertical legs carry opposite y-velocity signs on the two arms: the plus
// arm descends on the first leg and rises on the last, the minus arm the
// reverse. The horizontal leg is identical for both arms.
inline Trajectory rectangle_arm(double b, double c, Arm arm, double v, double a) {
  const double s = arm_sign(arm);
  const double t1 = c / v;
  const double t2 = 2.0 * b / v + t1;
  const double t3 = t1 + t2;
  std::vector<Segment> legs;
  legs.push_back(Segment{[=](double t) { return Vec3{0.0, -s * v * t + 0.5 * a * t * t, 0.0}; },
                         [=](double t) { return Vec3{0.0, -s * v + a * t, 0.0}; }, 0.0, t1});
  legs.push_back(Segment{[=](double t) { return Vec3{v * t, 0.5 * a * t * t, 0.0}; },
                         [=](double t) { return Vec3{v, a * t, 0.0}; }, t1, t2});
  legs.push_back(Segment{[=](double t) { return Vec3{0.0, s * v * t + 0.5 * a * t * t, 0.0}; },
                         [=](double t) { return Vec3{0.0, s * v + a * t, 0.0}; }, t2, t3});
  return Trajectory(std::move(legs), arm, a);
}

}  // namespace detail

inline Trajectory arm_trajectory(const WireGeometry& geometry, Arm arm, double v, double a) {
  detail::require(v > 0, errc::domain, "drift speed must be positive");
  if (geometry.is_ring()) return detail::ring_arm(geometry.ring().Rs, arm, v, a);
  const auto& r = geometry.rectangle();
  return detail::rectangle_arm(r.b, r.c, arm, v, a);
}

/// Kinetic action phase of one arm by Simpson panel doubling per segment.
inline double action_phase(const Trajectory& traj, const quad::SimpsonOptions& opt = {}) {
  double total = 0.0;
  for (const auto& seg : traj.segments()) {
    auto speed2 = [&seg](double t) {
      const Vec3 u = seg.velocity(t);
      return u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
    };
    total += quad::simpson(speed2, seg.t_start, seg.t_end, opt).value;
  }
  return kConst.cooper_mass * total / (2.0 * kConst.hbar);
}

/// Potential-energy phase m g.r / hbar for a field g along +y. The
/// trajectory must be built without the kinematic acceleration term.
inline double gravity_phase(const Trajectory& traj, double g,
                            const quad::SimpsonOptions& opt = {}) {
  detail::require(traj.acceleration() == 0.0, errc::domain,
                  "gravity phase needs a trajectory built with a = 0");
  double total = 0.0;
  for (const auto& seg : traj.segments()) {
    auto height = [&seg](double t) { return seg.position(t)[1]; };
    total += quad::simpson(height, seg.t_start, seg.t_end, opt).value;
  }
  return kConst.cooper_mass * g * total / kConst.hbar;
}

/// phi_plus - phi_minus. `magnitude` is what every readout formula uses;
/// `signed_value` keeps the raw orientation of the two arms.
struct PhaseDifference {
  double magnitude;
  double signed_value;
};

inline PhaseDifference make_difference(double phi_plus, double phi_minus) noexcept {
  const double diff = phi_plus - phi_minus;
  return {std::abs(diff), diff};
}

/// Quadrature route: builds both arms and integrates each.
inline PhaseDifference kinetic_phase_difference(const WireGeometry& geometry, double v, double a,
                                                const quad::SimpsonOptions& opt = {}) {
  return make_difference(action_phase(arm_trajectory(geometry, Arm::plus, v, a), opt),
                         action_phase(arm_trajectory(geometry, Arm::minus, v, a), opt));
}

inline PhaseDifference gravity_phase_difference(const WireGeometry& geometry, double v, double g,
                                                const quad::SimpsonOptions& opt = {}) {
  return make_difference(gravity_phase(arm_trajectory(geometry, Arm::plus, v, 0.0), g, opt),
                         gravity_phase(arm_trajectory(geometry, Arm::minus, v, 0.0), g, opt));
}

inline double ring_phase_difference(double Rs, double a, double v) {
  detail::require(v > 0, errc::domain, "drift speed must be positive");
  return 4.0 * kConst.cooper_mass * Rs * Rs * a / (kConst.hbar * v);
}

inline double rectangle_phase_difference(double b, double c, double a, double v) {
  detail::require(v > 0, errc::domain, "drift speed must be positive");
  return 2.0 * c * (2.0 * b + c) * kConst.cooper_mass * a / (kConst.hbar * v);
}

/// delta_phi = f a / I.
inline double phase_difference_closed(const FormFactor& f, double a, double I) {
  detail::require(I > 0, errc::domain, "current must be positive");
  return f.f * a / I;
}

/// Ring: f a / I. Rectangle: the leg-by-leg sum 2c(2b+c) m a / (hbar v) with
/// v taken from the current.
inline double phase_difference_closed(const WireGeometry& geometry, const Material& material,
                                      double a, double I) {
  detail::require(I > 0, errc::domain, "current must be positive");
  if (geometry.is_ring()) return phase_difference_closed(form_factor(geometry, material), a, I);
  const auto& r = geometry.rectangle();
  return rectangle_phase_difference(r.b, r.c, a, drift_velocity(I, material, geometry));
}

/// Quadratic phase correction from unequal arm radii, m pi Rs dRs a^2 / (2 hbar v^3).
inline double asymmetry_phase(double Rs, double dRs, double a, double v) {
  detail::require(v > 0, errc::domain, "drift speed must be positive");
  return kConst.cooper_mass * std::numbers::pi * Rs * dRs * a * a / (2.0 * kConst.hbar * v * v * v);
}

/// phi_+/pi = 2 m^2 Rs^3 I / (hbar^2 f); kept below 1 for small winding.
inline double winding_number(double Rs, double I, double f) {
  detail::require(f > 0, errc::domain, "form factor must be positive");
  const auto& k = kConst;
  return 2.0 * k.cooper_mass * k.cooper_mass * Rs * Rs * Rs * I / (k.hbar * k.hbar * f);
}

}  // namespace squidacc
