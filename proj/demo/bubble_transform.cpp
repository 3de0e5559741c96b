// Carries the homoclinic profile from the cylinder to R^3 and to S^3 and fits the coupling
// constant of -Lap u = kappa |psi|^2 u on each side.

#include <cdelab/cdelab.hpp>
#include <cmath>
#include <cstdio>

int main() {
  using namespace cdelab;
  const auto h = homoclinic_profile();
  std::vector<double> t, u, a, b;
  for (int i = -4000; i <= 4000; ++i) {
    const double ti = 1e-3 * i;
    const State4 s = h(ti);
    t.push_back(ti);
    u.push_back(s.u);
    a.push_back(s.a);
    b.push_back(s.b);
  }
  const auto cyl = cylinder_profile(t, u, a, b);
  std::vector<double> r;
  for (auto it = t.rbegin(); it != t.rend(); ++it) r.push_back(std::exp(-*it));
  const auto euc = cylinder_to_euclidean(cyl, r);
  const auto fit_h = coupling_constant_fit(euc);
  const auto fit_b = coupling_constant_fit(closed_form_radial_profile(1.0, log_uniform_grid(std::exp(-3.0), std::exp(3.0), 6001)));
  std::printf("homoclinic image: kappa = %.9f (residual %.2e)\n", fit_h.kappa, fit_h.residual);
  std::printf("closed form U_1, Psi_1: kappa = %.9f (residual %.2e)\n", fit_b.kappa, fit_b.residual);
  std::printf("bubble scale of the homoclinic image: %.12f\n", bubble_scale_from_cylinder(cyl));
  const auto sph = euclidean_to_sphere(euc);
  std::printf("sphere chart: chi in [%.4f, %.4f], u_S at equator %.12f\n", sph.grid.front(), sph.grid.back(),
              sph.u[sph.size() / 2]);
  std::printf("%s\n", sph.convention.c_str());
}
