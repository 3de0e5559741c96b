#include <gtest/gtest.h>

#include <cdelab/geometry.hpp>
#include <cdelab/homoclinic.hpp>

#include <random>

using namespace cdelab;

namespace {

Spinor2 random_spinor(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  Spinor2 s;
  s.c = {cplx(n01(rng), n01(rng)), cplx(n01(rng), n01(rng))};
  return s;
}

}  // namespace

TEST(Clifford, SkewAdjointAndSquaresToMinusNorm) {
  std::mt19937_64 rng(51);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Vector3d x(n01(rng), n01(rng), n01(rng));
    const Spinor2 p = random_spinor(rng), q = random_spinor(rng);
    EXPECT_NEAR(std::abs(inner(clifford_mult(x, p), q) + inner(p, clifford_mult(x, q))), 0.0, 1e-12);
    const Spinor2 xx = clifford_mult(x, clifford_mult(x, p));
    for (int i = 0; i < 2; ++i) EXPECT_NEAR(std::abs(xx.c[i] + x.squaredNorm() * p.c[i]), 0.0, 1e-12);
  }
}

TEST(ClosedForm, ValuesAtTheOrigin) {
  Spinor2 phi0;
  phi0.c = {cplx(1.0, 0.0), cplx(0.0, 0.0)};
  for (double lambda : {0.5, 1.0, 3.0}) {
    const auto v = ground_state_closed_form(lambda, Eigen::Vector3d::Zero(), phi0);
    EXPECT_NEAR(v.U, std::sqrt(2.0 / lambda), 1e-15);
    EXPECT_NEAR(std::abs(v.Psi.c[0] - std::pow(2.0 / lambda, 1.5)), 0.0, 1e-14);
    EXPECT_EQ(std::abs(v.Psi.c[1]), 0.0);
  }
  Spinor2 bad;
  bad.c = {cplx(2.0, 0.0), cplx(0.0, 0.0)};
  EXPECT_THROW(ground_state_closed_form(1.0, Eigen::Vector3d::Zero(), bad), InvalidInput);
}

TEST(ClosedForm, RadialProfileMatchesPointwiseFormula) {
  Spinor2 phi0;
  phi0.c = {cplx(1.0, 0.0), cplx(0.0, 0.0)};
  const std::vector<double> r{0.1, 0.7, 2.0};
  const auto p = closed_form_radial_profile(1.5, r);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto v = ground_state_closed_form(1.5, Eigen::Vector3d(0.0, 0.0, r[i]), phi0);
    EXPECT_NEAR(p.u[i], v.U, 1e-15);
    EXPECT_NEAR(std::hypot(p.f1[i], p.f2[i]), std::sqrt(inner(v.Psi, v.Psi).real()), 1e-14);
  }
}

TEST(Charts, EuclideanCylinderRoundTrip) {
  const auto r = log_uniform_grid(std::exp(-3.0), std::exp(3.0), 601);
  const auto orig = closed_form_radial_profile(1.0, r);
  const auto back = cylinder_to_euclidean(euclidean_to_cylinder(orig), r);
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_NEAR(back.u[i], orig.u[i], 1e-13);
    EXPECT_NEAR(back.f1[i], orig.f1[i], 1e-13);
    EXPECT_NEAR(back.f2[i], orig.f2[i], 1e-13);
  }
}

TEST(Charts, RadiusOutsideCylinderGridIsRejected) {
  const auto cyl = euclidean_to_cylinder(closed_form_radial_profile(1.0, log_uniform_grid(0.1, 10.0, 50)));
  EXPECT_THROW(cylinder_to_euclidean(cyl, {20.0}), GridCoverage);
  EXPECT_THROW(cylinder_to_euclidean(cyl, {-1.0}), GridCoverage);
}

TEST(Charts, BubbleScaleFromCylinderPeak) {
  for (double lambda : {0.5, 1.0, 2.0}) {
    const auto cyl = euclidean_to_cylinder(closed_form_radial_profile(lambda, log_uniform_grid(0.01, 100.0, 4001)));
    EXPECT_NEAR(bubble_scale_from_cylinder(cyl), lambda, 1e-5 * lambda);
  }
}

TEST(Sphere, UnitBubbleIsConstantOnTheSphere) {
  const auto euc = closed_form_radial_profile(1.0, log_uniform_grid(1e-3, 1e3, 301));
  for (auto conv : {SphereConvention::origin_at_north, SphereConvention::origin_at_south}) {
    const auto s = euclidean_to_sphere(euc, conv);
    EXPECT_FALSE(s.convention.empty());
    for (std::size_t i = 0; i < s.size(); ++i) {
      ASSERT_TRUE(std::isfinite(s.u[i]) && std::isfinite(s.f1[i]) && std::isfinite(s.f2[i]));
      EXPECT_NEAR(s.u[i], 1.0, 1e-13);
      EXPECT_NEAR(s.f1[i] * s.f1[i] + s.f2[i] * s.f2[i], 2.0, 1e-12);
      EXPECT_GT(s.grid[i], 0.0);
      EXPECT_LT(s.grid[i], std::numbers::pi);
    }
  }
}

TEST(Sphere, ConventionsAreMirrorImages) {
  const auto euc = closed_form_radial_profile(0.7, log_uniform_grid(1e-2, 1e2, 101));
  const auto n = euclidean_to_sphere(euc, SphereConvention::origin_at_north);
  const auto s = euclidean_to_sphere(euc, SphereConvention::origin_at_south);
  for (std::size_t i = 0; i < n.size(); ++i) {
    const std::size_t j = n.size() - 1 - i;
    EXPECT_NEAR(n.grid[i] + s.grid[j], std::numbers::pi, 1e-14);
    EXPECT_EQ(n.u[i], s.u[j]);
  }
}

TEST(Kelvin, UnitBubbleIsInvariant) {
  const auto r = log_uniform_grid(0.1, 10.0, 201);
  const auto euc = closed_form_radial_profile(1.0, r);
  const auto k = kelvin_inversion(euc);
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_NEAR(k.grid[i], r[i], 1e-13 * r[i]);
    EXPECT_NEAR(k.u[i], euc.u[i], 1e-13);
    EXPECT_NEAR(k.f1[i], std::hypot(euc.f1[i], euc.f2[i]), 1e-13);
  }
}

TEST(Coupling, ClosedFormPairFitsThreeEighths) {
  const auto p = closed_form_radial_profile(1.0, log_uniform_grid(std::exp(-3.0), std::exp(3.0), 6001));
  const auto fit = coupling_constant_fit(p);
  EXPECT_NEAR(fit.kappa, 0.375, 1e-6);
  EXPECT_LE(fit.residual, 1e-6);
}

TEST(Coupling, HomoclinicImageFitsOne) {
  const auto hp = homoclinic_profile();
  std::vector<double> t, u, a, b;
  for (int i = -4000; i <= 4000; ++i) {
    const double ti = 1e-3 * i;
    const State4 s = hp(ti);
    t.push_back(ti);
    u.push_back(s.u);
    a.push_back(s.a);
    b.push_back(s.b);
  }
  const auto cyl = cylinder_profile(t, u, a, b);
  const auto euc = cylinder_to_euclidean(cyl, log_uniform_grid(std::exp(-3.0), std::exp(3.0), 6001));
  const auto fit = coupling_constant_fit(euc);
  EXPECT_NEAR(fit.kappa, 1.0, 1e-5);
  EXPECT_LE(fit.residual, 1e-6);
}

TEST(Coupling, VanishingSpinorIsDegenerate) {
  auto p = closed_form_radial_profile(1.0, log_uniform_grid(0.5, 2.0, 20));
  std::fill(p.f1.begin(), p.f1.end(), 0.0);
  std::fill(p.f2.begin(), p.f2.end(), 0.0);
  EXPECT_THROW(coupling_constant_fit(p), DegenerateProfile);
}

TEST(Profile, ValidationRejectsBadGrids) {
  RadialProfile p;
  p.grid = {1.0, 0.5};
  p.u = p.f1 = p.f2 = {0.0, 0.0};
  EXPECT_THROW(p.validate(), InvalidInput);
  p.grid = {0.0, 1.0};
  EXPECT_THROW(p.validate(), InvalidInput);
  EXPECT_THROW(radial_chart_from_string("torus"), InvalidInput);
}
