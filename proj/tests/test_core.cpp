#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "squidacc/core.hpp"

namespace squidacc {
namespace {

TEST(Constants, DefinedValues) {
  const auto c = constants();
  EXPECT_NEAR(c.flux_quantum, 2.067833848e-15, 1e-24);
  EXPECT_EQ(c.cooper_mass, 2.0 * 9.1093837015e-31);
  EXPECT_EQ(c.cooper_charge, 2.0 * c.elementary_charge);
}

TEST(Constants, FluxQuantumIsPiHbarOverE) {
  const auto c = constants();
  const double alt = std::numbers::pi * c.hbar / c.elementary_charge;
  EXPECT_LT(std::abs(c.flux_quantum - alt) / c.flux_quantum, 1e-12);
}

TEST(Constants, IdenticalAcrossCalls) {
  const auto a = constants();
  const auto b = constants();
  EXPECT_EQ(a.hbar, b.hbar);
  EXPECT_EQ(a.flux_quantum, b.flux_quantum);
  EXPECT_EQ(a.boltzmann, b.boltzmann);
}

TEST(Dominance, Thresholds) {
  auto zero = dominance(0.0, 1.0, "x");
  EXPECT_EQ(zero.status, Status::pass);
  EXPECT_EQ(zero.ratio, 0.0);
  EXPECT_EQ(dominance(0.5, 1.0, "x").status, Status::warn);
  EXPECT_EQ(dominance(2.0, 1.0, "x").status, Status::fail);
  EXPECT_EQ(dominance(0.1, 1.0, "x").status, Status::warn);
  EXPECT_EQ(dominance(1.0, 1.0, "x").status, Status::fail);
}

TEST(Dominance, RejectsNonPositiveDenominator) {
  EXPECT_THROW(dominance(1.0, 0.0, "x"), error);
  EXPECT_THROW(dominance(1.0, -1.0, "x"), error);
}

TEST(Dominance, CustomStrictness) {
  Strictness loose{.pass_below = 0.5};
  EXPECT_EQ(dominance(0.3, 1.0, "x", loose).status, Status::pass);
  EXPECT_EQ(dominance(0.3, 1.0, "x").status, Status::warn);
}

TEST(Dominance, MonotoneInNumerator) {
  Status previous = Status::pass;
  for (int i = 0; i <= 400; ++i) {
    const double num = 0.01 * i;
    const Status s = dominance(num, 1.0, "x").status;
    EXPECT_GE(static_cast<int>(s), static_cast<int>(previous)) << "numerator " << num;
    previous = s;
  }
}

TEST(Validation, Material) {
  Material m{1e29, 5e-8, 1e-7, 1.0, 9.2, 1e6};
  EXPECT_NO_THROW(validate(m));
  m.T = 9.2;
  EXPECT_THROW(validate(m), error);
  m.T = 1.0;
  m.n = 0.0;
  EXPECT_THROW(validate(m), error);
}

TEST(Validation, ThickWireIsAWarningNotAnError) {
  WireGeometry thin{Ring{3e-4}, 1e-5};
  WireGeometry thick{Ring{3e-4}, 5e-4};
  EXPECT_TRUE(validate(thin));
  EXPECT_FALSE(validate(thick));
  WireGeometry bad{Rectangle{-1.0, 1.0}, 1e-5};
  EXPECT_THROW(validate(bad), error);
  WireGeometry negative_asym{Ring{3e-4, -1e-6}, 1e-5};
  EXPECT_THROW(validate(negative_asym), error);
}

}  // namespace
}  // namespace squidacc
