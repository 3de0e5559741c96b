#include <gtest/gtest.h>

#include <cdelab/homoclinic.hpp>

#include <cmath>

using namespace cdelab;

TEST(Homoclinic, DerivedConstants) {
  const auto d = derive_homoclinic_constants();
  EXPECT_DOUBLE_EQ(d.alpha_sq, 1.5);
  EXPECT_DOUBLE_EQ(d.beta_sq, 0.375);
  EXPECT_LE(d.max_residual_derived, 1e-12);
  EXPECT_LE(d.max_energy_derived, 1e-13);
}

TEST(Homoclinic, ValuesAtTheCentre) {
  const State4 s = homoclinic_profile()(0.0);
  EXPECT_NEAR(s.u, std::sqrt(1.5), 1e-15);
  EXPECT_EQ(s.v, 0.0);
  EXPECT_NEAR(s.a, std::sqrt(0.375), 1e-15);
  EXPECT_NEAR(s.b, std::sqrt(0.375), 1e-15);
}

TEST(Homoclinic, DecaysToTheOriginInBothDirections) {
  const auto p = homoclinic_profile();
  for (double t : {-20.0, 20.0}) {
    const State4 s = p(t);
    EXPECT_LT(s.norm_inf(), 1e-4) << "t = " << t;
    EXPECT_TRUE(s.finite());
  }
  // Far tails stay finite where a naive cosh would overflow.
  EXPECT_TRUE(p(800.0).finite());
  EXPECT_TRUE(p(-800.0).finite());
}

TEST(Homoclinic, TimeReversalSymmetry) {
  const auto p = homoclinic_profile();
  for (double t = -6.0; t <= 6.0; t += 0.37) {
    EXPECT_LE(distance_inf(p(-t), time_reversal_swap(p(t))), 1e-15);
  }
}

TEST(Homoclinic, LimitEnergyQuadrature) {
  EXPECT_NEAR(delta0_quadrature(homoclinic_profile()), 9.0 * std::numbers::pi / 32.0, 1e-10);
}

TEST(Homoclinic, PrintedConstantsDoNotSolveTheSystem) {
  const auto d = derive_homoclinic_constants();
  EXPECT_GT(d.max_residual_printed, 0.1);
  EXPECT_GT(d.max_residual_printed_swapped, 0.1);
}
