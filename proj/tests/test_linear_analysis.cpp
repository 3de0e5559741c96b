#include <gtest/gtest.h>

#include <cdelab/linear_analysis.hpp>

#include <random>

using namespace cdelab;

TEST(Eigenvalues, IdentityHasFourfoldUnitRoot) {
  const auto sr = eigenvalues_4x4(Mat4::Identity());
  for (const auto& z : sr.eigenvalues) EXPECT_NEAR(std::abs(z - Complex(1.0, 0.0)), 0.0, 1e-6);
  EXPECT_FALSE(sr.elliptic_pair.has_value());
  EXPECT_THROW(lyapunov_period(sr), NoEllipticPair);
}

TEST(Eigenvalues, VietaRelationsOnRandomMatrices) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 50; ++trial) {
    Mat4 m;
    for (int i = 0; i < 16; ++i) m.data()[i] = n01(rng);
    const auto sr = eigenvalues_4x4(m);
    Complex sum = 0.0, prod = 1.0;
    for (const auto& z : sr.eigenvalues) {
      sum += z;
      prod *= z;
    }
    EXPECT_NEAR(std::abs(sum - m.trace()), 0.0, 1e-9) << "trial " << trial;
    EXPECT_NEAR(std::abs(prod - m.determinant()), 0.0, 1e-8 * (1.0 + std::abs(m.determinant())));
    for (int i = 0; i < 4; ++i) {
      const Eigen::Vector4cd r = m.cast<Complex>() * sr.eigenvectors[i] - sr.eigenvalues[i] * sr.eigenvectors[i];
      EXPECT_LE(r.norm(), 1e-9 * m.norm());
    }
  }
}

TEST(Linearization, MatchesHandWrittenMatrix) {
  Mat4 c;
  // clang-format off
  c << 0, 1, 0, 0,
       0, 0, -1, 0,
       0, 0, 0, -2,
       1, 0, 0, 0;
  // clang-format on
  EXPECT_EQ(linearization_c(), c);
}

TEST(Linearization, SaddleCenterSpectrum) {
  const auto sr = eigenvalues_4x4(linearization_c());
  const double q = std::pow(2.0, 0.25);
  ASSERT_TRUE(sr.hyperbolic_pair.has_value());
  ASSERT_TRUE(sr.elliptic_pair.has_value());
  EXPECT_NEAR(*sr.hyperbolic_pair, q, 1e-12);
  EXPECT_NEAR(*sr.elliptic_pair, q, 1e-12);
  EXPECT_NEAR(lyapunov_period(sr), 5.283508001182123, 1e-12);
}

TEST(Linearization, RotatedAndOriginalChartsAreSimilar) {
  const Mat4 j = jacobian_at(kPPlus).entries;
  const auto a = eigenvalues_4x4(j);
  const auto b = eigenvalues_4x4(linearization_c());
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(a.eigenvalues[i] - b.eigenvalues[i]), 0.0, 1e-12);
}

TEST(Linearization, OriginHasOnlyHyperbolicDirections) {
  // At P0 the blocks decouple: u'' = u/4 and (a, b) -> (-a, b).
  const auto sr = eigenvalues_4x4(jacobian_at(kP0).entries);
  EXPECT_FALSE(sr.elliptic_pair.has_value());
  ASSERT_TRUE(sr.hyperbolic_pair.has_value());
}
