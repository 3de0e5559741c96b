#include <gtest/gtest.h>

#include <cdelab/orbits.hpp>

#include <cmath>

using namespace cdelab;

namespace {

const double kT0 = std::pow(2.0, 0.75) * std::numbers::pi;

}  // namespace

TEST(Lyapunov, SmallAmplitudeOrbitCloses) {
  const auto o = lyapunov_orbit(1e-3);
  EXPECT_LE(o.residual, 1e-9);
  EXPECT_NEAR(o.period(), kT0, 1e-2 * kT0);
  EXPECT_GT(o.H, -0.125);
  EXPECT_LE(o.energy_drift, 1e-10);
  EXPECT_EQ(o.provenance, "lyapunov");
  EXPECT_EQ(o.trajectory.times.back(), o.period());
}

TEST(Lyapunov, PeriodGrowsAndOrbitShrinksWithAmplitude) {
  const auto fam = lyapunov_family({1e-2, 1e-3, 1e-4});
  EXPECT_GT(fam[0].period(), fam[1].period());
  EXPECT_GT(fam[1].period(), fam[2].period());
  EXPECT_GT(sup_distance_to(fam[0].trajectory, kPPlus), sup_distance_to(fam[1].trajectory, kPPlus));
  EXPECT_GT(sup_distance_to(fam[1].trajectory, kPPlus), sup_distance_to(fam[2].trajectory, kPPlus));
}

TEST(Lyapunov, ZeroAmplitudeIsTheEquilibrium) {
  EXPECT_THROW(lyapunov_orbit(0.0), ConvergedToEquilibrium);
  EXPECT_THROW(lyapunov_orbit(-1e-3), InvalidInput);
}

TEST(Shooting, GuessAtEquilibriumIsReported) {
  EXPECT_THROW(shoot_periodic(0.5 * kT0, kPPlus), ConvergedToEquilibrium);
}

TEST(Shooting, RecoversLyapunovOrbitFromPerturbedGuess) {
  const auto o = lyapunov_orbit(2e-3);
  const State4 guess = o.initial_state + State4{1e-4, 0.0, -1e-4, 5e-5};
  const auto s = shoot_periodic(o.T, guess);
  EXPECT_LE(s.residual, 1e-9);
  EXPECT_NEAR(s.H, o.H, 1e-8);
}

TEST(Shooting, StepGridOrbitUsesTheRequestedStep) {
  const auto o = lyapunov_orbit_on_step_grid(1e-2);
  const double h = o.trajectory.times[1] - o.trajectory.times[0];
  EXPECT_NEAR(h, 1e-3, 1e-15);
  EXPECT_LE(o.residual, 1e-9);
}

TEST(Extension, TiledOrbitIsAMidpointTrajectory) {
  const auto o = lyapunov_orbit_on_step_grid(1e-2);
  const auto e = extend_periodic(o, 50.0);
  EXPECT_LE(e.step_defect, 1e-10);
  EXPECT_NEAR(e.trajectory.times.back(), 50.0, 1e-3);
  EXPECT_LE(energy_drift(e.trajectory), 1e-10);
  EXPECT_THROW(extend_periodic(PeriodicOrbit{}, 1.0), EmptyTrajectory);
}

TEST(HomoclinicDistance, RecoversAKnownShift) {
  const auto p = homoclinic_profile();
  Trajectory tr;
  for (int i = -2000; i <= 2000; ++i) tr.push(0.01 * i, p(0.01 * i - 1.3));
  const auto d = distance_to_homoclinic(tr, 20.0, p);
  EXPECT_NEAR(d.shift, 1.3, 1e-6);
  EXPECT_LE(d.sup_dist, 1e-6);
  EXPECT_THROW(distance_to_homoclinic(Trajectory{}, 1.0, p), EmptyTrajectory);
}

TEST(Diagram, SingleEpsilonRow) {
  const auto rows = period_energy_diagram({0.25});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].converged) << rows[0].message;
  EXPECT_EQ(rows[0].T, 4.0);
  EXPECT_LT(rows[0].delta_eps, 1.0);
  EXPECT_NEAR(rows[0].gap, std::abs(rows[0].delta_eps - kDelta0), 1e-8);
  EXPECT_THROW(period_energy_diagram({0.5}), InvalidInput);
}

TEST(FieldOrbit, SampledGroundStateIsClosed) {
  GroundStateOptions opt;
  opt.K = 32;
  const auto gs = ground_state(0.25, opt);
  const auto o = orbit_from_field(gs.field);
  EXPECT_EQ(o.provenance, "spectral");
  EXPECT_EQ(o.T, 4.0);
  EXPECT_LE(o.residual, 1e-12);
  // Samples solve the ODE: compare against an RK4 step from each sample.
  StepperConfig cfg;
  cfg.method = Method::rk4;
  const double h = o.trajectory.times[1] - o.trajectory.times[0];
  cfg.dt = h;
  double defect = 0.0;
  for (std::size_t i = 0; i + 1 < o.trajectory.size(); i += 25) {
    const Vec4 next = step_vec(o.trajectory.states[i].vec(), h, cfg);
    defect = std::max(defect, (next - o.trajectory.states[i + 1].vec()).lpNorm<Eigen::Infinity>());
  }
  EXPECT_LE(defect, 1e-7);
}
