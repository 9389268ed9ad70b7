#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"

namespace squidacc {
namespace {

using testing::fig2_ring;
using testing::fig4_circuit;
using testing::rel_err;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double phase_deg(cplx got, cplx want) {
  return std::abs(std::arg(got / want)) * 180.0 / std::numbers::pi;
}

// Steps per drive period satisfying the 200-per-shortest-period rule, times
// `refine`.
std::size_t steps_per_period(const RfCircuitConfig& cfg, double omega, int refine = 1) {
  const double w = std::max(omega, derived_circuit(cfg).omega0);
  return static_cast<std::size_t>(std::ceil(200.0 * w / omega)) * refine;
}

struct ToneRun {
  cplx V;          // extracted voltage phasor
  double max_phi;  // largest |dphi| in the analysis window
};

// Drives a real tone, skips ~15 us of transient and projects 4 periods.
ToneRun run_tone(const RfCircuitConfig& cfg, double omega, cplx a_omega, int refine = 1) {
  const double period = kTwoPi / omega;
  const double dt = period / static_cast<double>(steps_per_period(cfg, omega, refine));
  const double settle = std::ceil(1.5e-5 / period);
  const int analysis = 4;
  const auto ts = simulate(cfg, Drive::tone(a_omega, omega), (settle + analysis) * period, dt);
  ToneRun out{extract_fundamental(ts.channel(ts.V), omega, cfg, settle, analysis), 0.0};
  const auto start = static_cast<std::size_t>(settle * period / dt);
  for (std::size_t i = start; i < ts.size(); ++i) {
    out.max_phi = std::max(out.max_phi, std::abs(ts.delta_phi[i]));
  }
  return out;
}

// Acceleration phasor giving a linear peak |dphi| of `peak`.
cplx drive_for_peak(const RfCircuitConfig& cfg, double omega, double peak) {
  const auto dc = derived_circuit(cfg);
  const cplx stiffness(1.0 + dc.betaL - cfg.L * cfg.C * omega * omega, omega * cfg.L / cfg.R);
  return 0.5 * peak * std::abs(stiffness) * cfg.Idc / cfg.f;
}

TEST(Simulate, ZeroDriveStaysAtRest) {
  const auto cfg = fig4_circuit();
  const double dt = max_step(cfg, 0.0);
  const auto ts = simulate(cfg, Drive::none(), 200 * dt, dt);
  ASSERT_EQ(ts.size(), 201u);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    EXPECT_EQ(ts.delta_phi[i], 0.0);
    EXPECT_EQ(ts.V[i], 0.0);
    EXPECT_EQ(ts.I_minus[i], 0.0);
    EXPECT_EQ(ts.I_plus[i], cfg.Idc);
  }
}

TEST(Simulate, StepRuleEnforced) {
  const auto cfg = fig4_circuit();
  const double w = 2e7;
  try {
    simulate(cfg, Drive::tone(1.0, w), 1e-6, 1.01 * max_step(cfg, w));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::configuration);
  }
  EXPECT_NO_THROW(simulate(cfg, Drive::tone(1.0, w), 1e-7, max_step(cfg, w)));
}

TEST(Simulate, FluxRelationHoldsEverywhere) {
  const auto cfg = fig4_circuit();
  const double w = 4e6;
  const auto ts = simulate(cfg, Drive::tone(drive_for_peak(cfg, w, 0.5), w), 5e-6,
                           max_step(cfg, w));
  EXPECT_LT(flux_relation_residual(ts, cfg), 1e-9);
  for (std::size_t i = 0; i < ts.size(); i += 97) {
    EXPECT_DOUBLE_EQ(ts.I_plus[i] + ts.I_minus[i], cfg.Idc);
  }
}

TEST(Simulate, MatchesLinearisedResponse) {
  const auto cfg = fig4_circuit();
  const double w0 = derived_circuit(cfg).omega0;
  for (double ratio : {0.1, 0.5, 1.0, 2.0, 3.0}) {
    const double w = ratio * w0;
    const cplx a = drive_for_peak(cfg, w, 5e-3);
    const auto run = run_tone(cfg, w, a);
    EXPECT_LE(run.max_phi, 1e-2);
    const cplx expected = linearized_ode_response(w, cfg).value * a;
    EXPECT_LT(std::abs(run.V) / std::abs(expected) - 1.0, 0.01) << ratio;
    EXPECT_GT(std::abs(run.V) / std::abs(expected) - 1.0, -0.01) << ratio;
    EXPECT_LT(phase_deg(run.V, expected), 1.0) << ratio;
  }
}

TEST(Simulate, StepHalvingConverges) {
  const auto cfg = fig4_circuit();
  const double w = 0.7 * derived_circuit(cfg).omega0;
  const cplx a = drive_for_peak(cfg, w, 5e-3);
  const cplx coarse = run_tone(cfg, w, a, 1).V;
  const cplx fine = run_tone(cfg, w, a, 2).V;
  EXPECT_LT(std::abs(coarse - fine) / std::abs(fine), 1e-4);
}

TEST(Simulate, SmallSignalLimitApproachedMonotonically) {
  const auto cfg = fig4_circuit();
  const double w = 0.5 * derived_circuit(cfg).omega0;
  double previous = HUGE_VAL;
  for (double peak : {1.0, 0.1, 0.01, 0.001}) {
    const cplx a = drive_for_peak(cfg, w, peak);
    const cplx expected = linearized_ode_response(w, cfg).value * a;
    const double err = std::abs(run_tone(cfg, w, a).V - expected) / std::abs(expected);
    EXPECT_LT(err, previous) << peak;
    previous = err;
  }
}

TEST(Simulate, FreeDecayAfterDriveRemoved) {
  const auto cfg = fig4_circuit();
  const double w0 = derived_circuit(cfg).omega0;
  const double period = kTwoPi / w0;
  const double dt = period / 200.0;
  const double t_off = 5e-6;
  const auto drive = Drive::tone(drive_for_peak(cfg, w0, 0.3), w0).gated(t_off);
  const auto ts = simulate(cfg, drive, t_off + 12 * period, dt);
  const auto first = static_cast<std::size_t>(std::ceil(t_off / dt));
  double previous = HUGE_VAL;
  for (std::size_t start = first; start + 200 <= ts.size(); start += 200) {
    double peak = 0.0;
    for (std::size_t i = start; i < start + 200; ++i) {
      peak = std::max(peak, std::abs(ts.delta_phi[i]));
    }
    EXPECT_LE(peak, previous);
    previous = peak;
  }
}

TEST(ExtractFundamental, PureToneConvention) {
  const double w = 3.0;
  const double A = 2.5;
  const double phi = 0.4;
  UniformSamples s{0.0, kTwoPi / w / 64, {}};
  for (int i = 0; i <= 64 * 10; ++i) s.x.push_back(A * std::cos(w * i * s.dt + phi));
  const cplx X = extract_fundamental(s, w, 2, 5);
  EXPECT_NEAR(std::abs(X), A / 2, 1e-12);
  EXPECT_NEAR(std::arg(X), phi, 1e-12);
}

TEST(ExtractFundamental, ConstantSignalVanishes) {
  UniformSamples s{0.0, 0.01, std::vector<double>(2001, 4.2)};
  EXPECT_LT(std::abs(extract_fundamental(s, kTwoPi / 1.0, 1, 10)), 1e-12);
}

TEST(ExtractFundamental, ThirdHarmonicRejected) {
  const double w = 1.0;
  UniformSamples s{0.0, kTwoPi / w / 200, {}};
  for (int i = 0; i <= 200 * 6; ++i) {
    const double t = i * s.dt;
    s.x.push_back(std::cos(w * t) + 0.01 * std::cos(3 * w * t + 0.3));
  }
  const cplx X = extract_fundamental(s, w, 1, 4);
  EXPECT_LT(std::abs(X - 0.5) / 0.5, 1e-3);
}

TEST(ExtractFundamental, UnalignedWindowStillAccurate) {
  const double w = 2.0;
  UniformSamples s{0.013, 0.0071, {}};
  for (int i = 0; i < 20000; ++i) s.x.push_back(std::sin(w * (s.t0 + i * s.dt)));
  const cplx X = extract_fundamental(s, w, 1.37, 20);
  EXPECT_LT(std::abs(X - cplx(0.0, -0.5)) / 0.5, 1e-4);
}

TEST(ExtractFundamental, WindowTooShort) {
  UniformSamples s{0.0, 0.1, std::vector<double>(100, 0.0)};
  try {
    extract_fundamental(s, 1.0, 1, 2);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::configuration);
  }
}

TEST(ExtractFundamental, TransientPolicyUsesLargerSettle) {
  const auto cfg = fig4_circuit();
  const auto dc = derived_circuit(cfg);
  const double w = 3 * dc.omega0;
  const double policy = std::ceil(10.0 / (dc.zeta * dc.omega0) * w / kTwoPi);
  EXPECT_EQ(transient_periods(cfg, w, 0), policy);
  EXPECT_EQ(transient_periods(cfg, w, policy + 5), policy + 5);
}

UniformSamples synth_voltage(const RfCircuitConfig& cfg, const std::vector<double>& omegas,
                             const std::vector<double>& amps, double dt, std::size_t n) {
  UniformSamples s{0.0, dt, std::vector<double>(n, 0.0)};
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    // a(t) = A cos(w t) has phasor A / 2
    const cplx V = circuit_transfer(omegas[k], cfg).value * (0.5 * amps[k]);
    for (std::size_t i = 0; i < n; ++i) {
      s.x[i] += 2.0 * (V * std::polar(1.0, omegas[k] * dt * static_cast<double>(i))).real();
    }
  }
  return s;
}

TEST(InvertSpectrum, ZeroInput) {
  const auto cfg = fig4_circuit();
  UniformSamples s{0.0, 1e-9, std::vector<double>(20000, 0.0)};
  for (const auto& bin : invert_spectrum(s, cfg, {2e6, 5e6})) EXPECT_EQ(bin.a.abs(), 0.0);
}

TEST(InvertSpectrum, TwoToneRoundTrip) {
  const auto cfg = fig4_circuit();
  const double w0 = derived_circuit(cfg).omega0;
  const std::vector<double> omegas{0.43 * w0, 1.71 * w0};
  const std::vector<double> amps{800.0, 300.0};
  const double dt = kTwoPi / (200 * omegas[1]);
  const auto s = synth_voltage(cfg, omegas, amps, dt, 200000);
  const auto bins = invert_spectrum(s, cfg, omegas, {}, fig2_ring());
  ASSERT_EQ(bins.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_LT(std::abs(bins[k].a.abs() - 0.5 * amps[k]) / (0.5 * amps[k]), 0.02);
    EXPECT_LT(phase_deg(bins[k].a.value, 0.5 * amps[k]), 2.0);
    ASSERT_TRUE(bins[k].bandwidth.has_value());
  }
}

TEST(InvertSpectrum, SingleToneAtResonancePhase) {
  const auto cfg = fig4_circuit();
  const double w0 = derived_circuit(cfg).omega0;
  const double dt = kTwoPi / (256 * w0);
  const auto s = synth_voltage(cfg, {w0}, {1e3}, dt, 256 * 20 + 1);
  const auto bins = invert_spectrum(s, cfg, {w0});
  EXPECT_LT(phase_deg(bins[0].a.value, 500.0), 1.0);
  EXPECT_LT(std::abs(bins[0].a.abs() - 500.0) / 500.0, 1e-6);
}

TEST(InvertSpectrum, RejectsZeroBinAndShortRecords) {
  const auto cfg = fig4_circuit();
  UniformSamples s{0.0, 1e-9, std::vector<double>(1000, 0.0)};
  try {
    invert_spectrum(s, cfg, {0.0});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::singular_inversion);
  }
  try {
    invert_spectrum(s, cfg, {1e6});  // 1 us record, 6.3 us period
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::configuration);
  }
}

TEST(Samples, UniformityCheck) {
  EXPECT_NO_THROW(to_uniform({0.0, 0.1, 0.2, 0.3}, {1, 2, 3, 4}));
  EXPECT_THROW(to_uniform({0.0, 0.1, 0.25, 0.3}, {1, 2, 3, 4}), error);
  EXPECT_THROW(to_uniform({0.0, 0.1}, {1}), error);
}

}  // namespace
}  // namespace squidacc
