#pragma once

// Self-check suites behind `cdelab verify <suite>`.

#include <cdelab/cdelab.hpp>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace cdelab::tools {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

using Suite = std::function<std::vector<Check>(std::uint64_t seed, double tol)>;

inline Check check(std::string name, bool ok, const std::string& detail) {
  return {std::move(name), ok, detail};
}

inline std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

inline std::vector<Check> suite_linear(std::uint64_t, double) {
  const auto sr = eigenvalues_4x4(linearization_c());
  double worst = 0.0;
  for (const auto& z : sr.eigenvalues) worst = std::max(worst, std::abs(z * z * z * z - 2.0));
  const double t0 = lyapunov_period(sr);
  return {check("quartic identity lambda^4 = 2", worst <= 1e-10, "max |lambda^4 - 2| = " + sci(worst)),
          check("hyperbolic and elliptic pairs", sr.hyperbolic_pair && sr.elliptic_pair, ""),
          check("Lyapunov period 2^(3/4) pi", std::abs(t0 - std::pow(2.0, 0.75) * std::numbers::pi) <= 1e-10,
                "T0 = " + io::fmt(t0))};
}

inline std::vector<Check> suite_equilibria(std::uint64_t, double) {
  const auto eq = equilibria();
  double f = 0.0;
  for (const auto& p : {eq.p0, eq.p_plus, eq.p_minus}) f = std::max(f, vector_field(p).norm_inf());
  return {check("vector field vanishes", f <= 1e-15, "max |f| = " + sci(f)),
          check("H(P0) = 0", eq.h0 == 0.0, io::fmt(eq.h0)),
          check("H(P+-) = -1/8", eq.h_plus == -0.125 && eq.h_minus == -0.125,
                io::fmt(eq.h_plus) + ", " + io::fmt(eq.h_minus))};
}

inline std::vector<Check> suite_homoclinic(std::uint64_t, double) {
  const auto d = derive_homoclinic_constants();
  return {check("alpha^2 = 3/2", d.alpha_sq == 1.5, io::fmt(d.alpha_sq)),
          check("beta^2 = 3/8", d.beta_sq == 0.375, io::fmt(d.beta_sq)),
          check("ODE residual on [-10,10]", d.max_residual_derived <= 1e-10, sci(d.max_residual_derived)),
          check("H along profile", d.max_energy_derived <= 1e-12, sci(d.max_energy_derived)),
          check("delta0 quadrature", std::abs(delta0_quadrature(d.profile()) - kDelta0) <= 1e-8,
                io::fmt(delta0_quadrature(d.profile()))),
          check("printed constants (informational)", true,
                "residual " + sci(d.max_residual_printed) + ", swapped placement " +
                    sci(d.max_residual_printed_swapped))};
}

inline std::vector<Check> suite_spectral(std::uint64_t seed, double) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  const auto sp = make_space(0.2, 24);
  PeriodicField f(sp);
  for (int i = 0; i < sp->m(); ++i) {
    const double damp = std::exp(-0.3 * basis_mode(i));
    f.u[i] = damp * n01(rng);
    f.z_plus[i] = damp * n01(rng);
    f.z_minus[i] = damp * n01(rng);
  }
  PeriodicField h(sp);
  for (int i = 0; i < sp->m(); ++i) {
    h.u[i] = n01(rng) / (1.0 + basis_mode(i));
    h.z_plus[i] = n01(rng) / (1.0 + basis_mode(i));
    h.z_minus[i] = n01(rng) / (1.0 + basis_mode(i));
  }
  const double d = 1e-5;
  const double fd = (energy(f + d * h).total - energy(f + (-d) * h).total) / (2.0 * d);
  const double an = directional_derivative(f, h);
  const double rel = std::abs(fd - an) / std::max(1e-300, std::abs(an));
  const auto r = reduce_g(*sp, f.u, f.z_plus);
  return {check("gradient vs finite difference", rel <= 1e-6, "relative error " + sci(rel)),
          check("reduction residual", r.residual <= 1e-10, sci(r.residual)),
          check("min |lambda| = 1", sp->lambda().minCoeff() == 1.0, io::fmt(sp->lambda().minCoeff()))};
}

inline std::vector<Check> suite_lyapunov(std::uint64_t, double tol) {
  ShootingOptions opt;
  if (tol > 0.0) opt.tol = tol;
  const auto fam = lyapunov_family({1e-2, 1e-3, 1e-4}, opt);
  const double t0 = std::pow(2.0, 0.75) * std::numbers::pi;
  const double rel = std::abs(fam[1].period() - t0) / t0;
  const double d0 = sup_distance_to(fam[0].trajectory, kPPlus);
  const double d1 = sup_distance_to(fam[1].trajectory, kPPlus);
  const double d2 = sup_distance_to(fam[2].trajectory, kPPlus);
  return {check("period at amplitude 1e-3 within 1%", rel <= 0.01, "relative gap " + sci(rel)),
          check("distance to P+ decreasing", d0 > d1 && d1 > d2, sci(d0) + " > " + sci(d1) + " > " + sci(d2)),
          check("closure residual", fam[1].residual <= 1e-9, sci(fam[1].residual))};
}

inline std::vector<Check> suite_ground_state(std::uint64_t, double tol) {
  GroundStateOptions opt;
  if (tol > 0.0) opt.gradient_tol = tol;
  const auto gs = ground_state(0.1, opt);
  const auto& d = gs.diagnostics;
  return {check("gradient norm", d.gradient_norm <= opt.gradient_tol, sci(d.gradient_norm)),
          check("Nehari residuals", std::max({d.nehari.relative_r1(), d.nehari.relative_r2(), d.nehari.relative_r3()}) <= 1e-6,
                sci(d.nehari.relative_r1()) + ", " + sci(d.nehari.relative_r2()) + ", " + sci(d.nehari.relative_r3())),
          check("below equilibrium level 1/(4 eps)", gs.delta < 2.5, io::fmt(gs.delta)),
          check("within 5% of delta0", std::abs(gs.delta - kDelta0) <= 0.05 * kDelta0, io::fmt(gs.delta))};
}

inline std::vector<Check> suite_geometry(std::uint64_t seed, double) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Eigen::Vector3d x(n01(rng), n01(rng), n01(rng));
    Spinor2 phi;
    phi.c = {cplx(n01(rng), n01(rng)), cplx(n01(rng), n01(rng))};
    const Spinor2 xx = clifford_mult(x, clifford_mult(x, phi));
    for (int i = 0; i < 2; ++i) worst = std::max(worst, std::abs(xx.c[i] + x.squaredNorm() * phi.c[i]));
  }
  const auto r = log_uniform_grid(std::exp(-3.0), std::exp(3.0), 6001);
  const auto fit = coupling_constant_fit(closed_form_radial_profile(1.0, r));
  const auto back = cylinder_to_euclidean(euclidean_to_cylinder(closed_form_radial_profile(1.0, r)), r);
  const auto orig = closed_form_radial_profile(1.0, r);
  double rt = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) rt = std::max(rt, std::abs(back.u[i] - orig.u[i]));
  return {check("Clifford relation", worst <= 1e-12, sci(worst)),
          check("round trip", rt <= 1e-12, sci(rt)),
          check("coupling fit of closed form (informational)", fit.residual <= 1e-6,
                "kappa = " + io::fmt(fit.kappa) + ", residual " + sci(fit.residual))};
}

inline std::vector<Check> suite_energy(std::uint64_t, double) {
  const auto o1 = lyapunov_orbit_on_step_grid(1e-2);
  ShootingOptions half;
  half.stepper.dt = 5e-4;
  const auto o2 = shoot_periodic(o1.T, o1.initial_state, {}, half);
  const auto e1 = extend_periodic(o1, 50.0), e2 = extend_periodic(o2, 50.0);
  const double d1 = energy_drift(e1.trajectory), d2 = energy_drift(e2.trajectory);
  return {check("drift over [0,50]", d1 <= 1e-8, sci(d1)),
          check("O(dt^2) ratio", d1 / d2 >= 3.0 && d1 / d2 <= 5.0, io::fmt(d1 / d2)),
          check("discrete orbit step defect", e1.step_defect <= 1e-10, sci(e1.step_defect))};
}

inline const std::map<std::string, Suite>& suites() {
  static const std::map<std::string, Suite> s{
      {"linear", suite_linear},         {"equilibria", suite_equilibria},
      {"homoclinic", suite_homoclinic}, {"spectral", suite_spectral},
      {"lyapunov", suite_lyapunov},     {"ground-state", suite_ground_state},
      {"geometry", suite_geometry},     {"energy", suite_energy},
  };
  return s;
}

}  // namespace cdelab::tools
