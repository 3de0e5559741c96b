// Ground-state energies for a range of epsilon, solved concurrently, and their distance to the
// limit value 9 pi / 32.

#include <cdelab/cdelab.hpp>
#include <cstdio>

int main() {
  using namespace cdelab;
  const auto rows = period_energy_diagram({0.25, 0.2, 0.15, 0.1, 0.075, 0.05});
  std::printf("delta0 = %.12f\n", kDelta0);
  std::printf("%8s %8s %16s %12s %s\n", "eps", "T", "delta_eps", "gap", "converged");
  for (const auto& r : rows) {
    std::printf("%8.3f %8.2f %16.12f %12.4e %s\n", r.epsilon, r.T, r.delta_eps, r.gap,
                r.converged ? "yes" : r.message.c_str());
  }
  const auto gs = ground_state(0.1);
  const auto d = distance_to_homoclinic(orbit_from_field(gs.field));
  std::printf("eps = 0.1: sup distance to the homoclinic %.3e after shift %.3e\n", d.sup_dist, d.shift);
}
