// Periods of the Lyapunov orbits around P+ as the amplitude shrinks.

#include <cdelab/cdelab.hpp>
#include <cstdio>

int main() {
  using namespace cdelab;
  const double t0 = lyapunov_period(eigenvalues_4x4(linearization_c()));
  std::printf("limit period 2^(3/4) pi = %.12f\n", t0);
  std::printf("%10s %16s %12s %12s %12s\n", "amplitude", "period", "rel gap", "H", "drift");
  for (double a : {5e-2, 2e-2, 1e-2, 3e-3, 1e-3, 1e-4}) {
    const auto orb = lyapunov_orbit(a);
    std::printf("%10.1e %16.12f %12.4e %12.9f %12.3e\n", a, orb.period(), (orb.period() - t0) / t0, orb.H,
                orb.energy_drift);
  }
}
