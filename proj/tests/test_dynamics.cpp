#include <gtest/gtest.h>

#include <cdelab/dynamics.hpp>
#include <cdelab/linear_analysis.hpp>

#include <random>

using namespace cdelab;

namespace {

State4 random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  return {d(rng), d(rng), d(rng), d(rng)};
}

}  // namespace

TEST(VectorField, JacobianMatchesCentralDifferences) {
  std::mt19937_64 rng(11);
  const double h = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    const State4 x = random_state(rng);
    const Mat4 j = jacobian_at(x).entries;
    for (int c = 0; c < 4; ++c) {
      Vec4 e = Vec4::Zero();
      e[c] = h;
      const Vec4 fd = (vector_field(State4::from(x.vec() + e)).vec() -
                       vector_field(State4::from(x.vec() - e)).vec()) /
                      (2.0 * h);
      EXPECT_LE((fd - j.col(c)).cwiseAbs().maxCoeff(), 1e-7) << "trial " << trial << " column " << c;
    }
  }
}

TEST(VectorField, HamiltonianIsConservedAlongTheField) {
  // dH/dt = grad H . f must vanish identically.
  std::mt19937_64 rng(12);
  const double h = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    const State4 x = random_state(rng);
    const Vec4 f = vector_field(x).vec();
    const double dh = (hamiltonian(State4::from(x.vec() + h * f)) -
                       hamiltonian(State4::from(x.vec() - h * f))) /
                      (2.0 * h);
    EXPECT_NEAR(dh, 0.0, 1e-6 * (1.0 + f.squaredNorm()));
  }
}

TEST(VectorField, SplitFormOfHamiltonianAgrees) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const State4 x = random_state(rng);
    EXPECT_NEAR(hamiltonian(x), hamiltonian_split_form(x), 1e-13);
  }
}

TEST(RotatedChart, FieldAndEnergyAgreeWithOriginalChart) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const State4 x = random_state(rng);
    const RotatedState4 r = to_rotated(x);
    EXPECT_LE(distance_inf(from_rotated(r), x), 1e-15);
    EXPECT_NEAR(hamiltonian_rotated(r), hamiltonian(x), 1e-13);
    const State4 f_back = from_rotated(rotated_vector_field(r));
    EXPECT_LE(distance_inf(f_back, vector_field(x)), 1e-13);
  }
}

TEST(Symmetry, TimeReversalSwapMapsSolutionsToSolutions) {
  // If s(t) is a solution, w(t) = swap(s(-t)) satisfies w' = -swap(f(s)) = f(w).
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const State4 x = random_state(rng);
    const State4 w = time_reversal_swap(x);
    const State4 lhs = -1.0 * time_reversal_swap(vector_field(x));
    EXPECT_LE(distance_inf(lhs, vector_field(w)), 1e-14);
    EXPECT_DOUBLE_EQ(hamiltonian(w), hamiltonian(x));
  }
}

TEST(Spinor, RoundTripThroughComplexPair) {
  const State4 x{0.3, -0.1, 0.7, -1.2};
  const SpinorPair p = spinor_from_state(x);
  EXPECT_EQ(state_from_spinor(x.u, x.v, p), x);
}

TEST(Spinor, NonConjugatePairIsRejected) {
  SpinorPair p{{0.5, 0.2}, {0.5, 0.2}};
  EXPECT_THROW(state_from_spinor(1.0, 0.0, p), NonConjugatePair);
}

TEST(Equilibria, CatalogValues) {
  const auto eq = equilibria();
  EXPECT_EQ(eq.p0, kP0);
  EXPECT_DOUBLE_EQ(eq.p_plus.a, std::sqrt(2.0) / 4.0);
  EXPECT_DOUBLE_EQ(eq.p_minus.b, -std::sqrt(2.0) / 4.0);
  EXPECT_EQ(eq.h0, 0.0);
  EXPECT_EQ(eq.h_plus, -0.125);
  EXPECT_EQ(eq.h_minus, -0.125);
  for (const State4& p : {eq.p0, eq.p_plus, eq.p_minus}) {
    EXPECT_LE(vector_field(p).norm_inf(), 1e-15);
  }
}
