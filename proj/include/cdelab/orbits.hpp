#pragma once

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <future>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "cdelab/dynamics.hpp"
#include "cdelab/errors.hpp"
#include "cdelab/ground_state.hpp"
#include "cdelab/homoclinic.hpp"
#include "cdelab/integrate.hpp"
#include "cdelab/linear_analysis.hpp"

namespace cdelab {

struct PeriodicOrbit {
  double T = 0.0;  ///< half period; the orbit closes after 2T
  double epsilon = std::numeric_limits<double>::quiet_NaN();
  State4 initial_state;
  Trajectory trajectory;
  double H = 0.0;
  double residual = 0.0;
  double energy_drift = 0.0;
  std::string provenance;

  [[nodiscard]] double period() const { return 2.0 * T; }
};

/// Fixes one phase-space component of the initial state (default v(0) = 0).
struct PhaseCondition {
  int component = 1;
  double value = 0.0;
};

struct ShootingOptions {
  StepperConfig stepper{};
  double tol = 1e-9;
  int max_iters = 50;
};

inline double sup_distance_to(const Trajectory& tr, const State4& p) {
  double d = 0.0;
  for (const auto& s : tr.states) d = std::max(d, distance_inf(s, p));
  return d;
}

inline double min_distance_to_equilibria(const Trajectory& tr) {
  const auto eq = equilibria();
  return std::min({sup_distance_to(tr, eq.p0), sup_distance_to(tr, eq.p_plus),
                   sup_distance_to(tr, eq.p_minus)});
}

namespace detail {

inline int steps_for(double duration, double dt) {
  return std::max(1, static_cast<int>(std::ceil(duration / dt - 1e-9)));
}

/// x_N after N implicit midpoint steps of size h, with D x_N / D x_0 and d x_N / d h.
inline Vec4 flow_with_sensitivity(const Vec4& x0, double h, int n, const StepperConfig& cfg,
                                  Mat4& phi, Vec4& dx_dh) {
  phi.setIdentity();
  dx_dh.setZero();
  Vec4 x = x0;
  for (int k = 0; k < n; ++k) {
    x = midpoint_step_with_sensitivity<OriginalChart>(x, h, cfg, phi, &dx_dh);
    if (!x.allFinite() || x.lpNorm<Eigen::Infinity>() > kEscapeThreshold) {
      throw NewtonDivergence("shooting trajectory escaped");
    }
  }
  return x;
}

inline PeriodicOrbit assemble_orbit(const Vec4& x0, double period, int n, const StepperConfig& cfg,
                                    std::string provenance) {
  StepperConfig c = cfg;
  c.method = Method::implicit_midpoint;
  c.dt = period / n;
  PeriodicOrbit orb;
  orb.T = 0.5 * period;
  orb.initial_state = State4::from(x0);
  orb.trajectory = integrate(orb.initial_state, period, c);
  orb.H = hamiltonian(orb.initial_state);
  orb.residual = distance_inf(orb.trajectory.states.back(), orb.initial_state);
  orb.energy_drift = energy_drift(orb.trajectory);
  orb.provenance = std::move(provenance);
  if (min_distance_to_equilibria(orb.trajectory) <= 1e-8) {
    throw ConvergedToEquilibrium("shooting converged to an equilibrium");
  }
  return orb;
}

}  // namespace detail

/// Periodic orbit of period 2T by Gauss-Newton on x_N(x_0) - x_0 = 0 plus a phase condition.
/// The flow is the implicit midpoint map with N = ceil(2T / dt) equal steps, so the returned
/// orbit is periodic for the discrete map itself.
inline PeriodicOrbit shoot_periodic(double T, const State4& guess, PhaseCondition phase = {},
                                    const ShootingOptions& opt = {}) {
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidInput("half period T must be positive");
  if (phase.component < 0 || phase.component > 3) throw InvalidInput("phase component out of range");
  opt.stepper.validate();
  const double period = 2.0 * T;
  const int n = detail::steps_for(period, opt.stepper.dt);
  const double h = period / n;
  Vec4 x0 = guess.vec();
  x0[phase.component] = phase.value;
  Eigen::Matrix<double, 5, 1> f;
  Eigen::Matrix<double, 5, 4> jac;
  Mat4 phi;
  Vec4 dxdh;
  double res = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opt.max_iters; ++it) {
    const Vec4 xn = detail::flow_with_sensitivity(x0, h, n, opt.stepper, phi, dxdh);
    f.head<4>() = xn - x0;
    f[4] = x0[phase.component] - phase.value;
    res = f.lpNorm<Eigen::Infinity>();
    if (res <= 1e-3 * opt.tol) break;
    jac.topRows<4>() = phi - Mat4::Identity();
    jac.row(4).setZero();
    jac(4, phase.component) = 1.0;
    const Vec4 dx = jac.completeOrthogonalDecomposition().solve(-f);
    x0 += dx;
    if (!x0.allFinite()) throw NewtonDivergence("shooting iterate is not finite");
    if (dx.lpNorm<Eigen::Infinity>() <= 1e-15 * (1.0 + x0.lpNorm<Eigen::Infinity>())) {
      const Vec4 xe = detail::flow_with_sensitivity(x0, h, n, opt.stepper, phi, dxdh);
      res = (xe - x0).lpNorm<Eigen::Infinity>();
      break;
    }
  }
  if (!(res <= opt.tol)) throw NewtonDivergence("shooting did not close the orbit");
  return detail::assemble_orbit(x0, period, n, opt.stepper, "shooting");
}

/// Member of the Lyapunov family at P+ whose maximum of u is 1 + amplitude.
///
/// Unknowns (a0, b0, P) with u0 = 1 + amplitude and v0 = 0; the step count N is fixed from
/// the initial period guess so that d x_N / d P = (d x_N / d h) / N.
inline PeriodicOrbit lyapunov_orbit(double amplitude, const ShootingOptions& opt = {}) {
  if (amplitude == 0.0) throw ConvergedToEquilibrium("zero amplitude is the equilibrium P+");
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
    throw InvalidInput("Lyapunov amplitude must be positive");
  }
  opt.stepper.validate();
  const double t0 = lyapunov_period(eigenvalues_4x4(linearization_c()));
  const int n = detail::steps_for(t0, opt.stepper.dt);
  // Linear elliptic mode at P+: (du, dv, da, db) proportional to (1, 0, 1, 1).
  Eigen::Vector3d y(kEquilibriumSpinor + amplitude, kEquilibriumSpinor + amplitude, t0);
  auto state = [&](const Eigen::Vector3d& p) { return Vec4(1.0 + amplitude, 0.0, p[0], p[1]); };
  Mat4 phi;
  Vec4 dxdh;
  double res = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opt.max_iters; ++it) {
    const Vec4 x0 = state(y);
    const Vec4 xn = detail::flow_with_sensitivity(x0, y[2] / n, n, opt.stepper, phi, dxdh);
    const Vec4 f = xn - x0;
    res = f.lpNorm<Eigen::Infinity>();
    if (res <= 1e-3 * opt.tol) break;
    Eigen::Matrix<double, 4, 3> jac;
    jac.col(0) = phi.col(2) - Vec4::UnitZ();
    jac.col(1) = phi.col(3) - Vec4::UnitW();
    jac.col(2) = dxdh / n;
    const Eigen::Vector3d dy = jac.colPivHouseholderQr().solve(-f);
    y += dy;
    if (!y.allFinite() || !(y[2] > 0.0)) throw NewtonDivergence("Lyapunov continuation diverged");
    if (dy.lpNorm<Eigen::Infinity>() <= 1e-15 * (1.0 + y.lpNorm<Eigen::Infinity>())) {
      const Vec4 xe = detail::flow_with_sensitivity(state(y), y[2] / n, n, opt.stepper, phi, dxdh);
      res = (xe - state(y)).lpNorm<Eigen::Infinity>();
      break;
    }
  }
  if (!(res <= opt.tol)) throw NewtonDivergence("Lyapunov orbit did not close");
  return detail::assemble_orbit(state(y), y[2], n, opt.stepper, "lyapunov");
}

/// Lyapunov orbit near the given amplitude whose period is an exact multiple of the step
/// opt.stepper.dt: the period of the seed orbit is rounded up to the step grid and the orbit is
/// re-shot at that fixed period. The same half period can be reused with dt / 2.
inline PeriodicOrbit lyapunov_orbit_on_step_grid(double amplitude, const ShootingOptions& opt = {}) {
  const PeriodicOrbit seed = lyapunov_orbit(amplitude, opt);
  const double dt = opt.stepper.dt;
  const double n = std::ceil(seed.period() / dt);
  return shoot_periodic(0.5 * n * dt, seed.initial_state, {}, opt);
}

inline std::vector<PeriodicOrbit> lyapunov_family(const std::vector<double>& amplitudes,
                                                  const ShootingOptions& opt = {}) {
  std::vector<PeriodicOrbit> out;
  out.reserve(amplitudes.size());
  for (double a : amplitudes) out.push_back(lyapunov_orbit(a, opt));
  return out;
}

// ---------------------------------------------------------------------------
// Long-time extension

struct ExtendedOrbit {
  Trajectory trajectory;
  /// max_k |step(x_k) - x_{k+1}| over one period, wrap-around included
  double step_defect = 0.0;
};

/// Repeats one period of a discrete periodic orbit up to t_final. Every consecutive pair of
/// samples is one step of the map up to step_defect.
inline ExtendedOrbit extend_periodic(const PeriodicOrbit& orb, double t_final) {
  const auto& tr = orb.trajectory;
  if (tr.size() < 2) throw EmptyTrajectory("orbit has no samples");
  if (!(t_final > 0.0)) throw InvalidInput("t_final must be positive");
  const auto n = static_cast<long>(tr.size()) - 1;
  const double period = tr.times.back();
  const double h = period / static_cast<double>(n);
  StepperConfig cfg;
  cfg.dt = h;
  ExtendedOrbit ext;
  for (long k = 0; k < n; ++k) {
    const Vec4 next = step_vec<OriginalChart>(tr.states[k].vec(), h, cfg);
    const Vec4 want = (k + 1 == n ? tr.states[0] : tr.states[k + 1]).vec();
    ext.step_defect = std::max(ext.step_defect, (next - want).lpNorm<Eigen::Infinity>());
  }
  const long total = static_cast<long>(std::ceil(t_final / h - 1e-9));
  ext.trajectory.times.reserve(total + 1);
  for (long k = 0; k <= total; ++k) ext.trajectory.push(k * h, tr.states[k % n]);
  return ext;
}

// ---------------------------------------------------------------------------
// Comparison with the homoclinic

struct HomoclinicDistance {
  double shift = 0.0;
  double sup_dist = 0.0;
};

/// min over t0 of sup |x(t) - profile(t - t0)| for samples within min(10, half_period) of the
/// maximum of u.
inline HomoclinicDistance distance_to_homoclinic(const Trajectory& tr, double half_period,
                                                 const HomoclinicProfile& profile = homoclinic_profile()) {
  if (tr.empty()) throw EmptyTrajectory("distance_to_homoclinic on an empty trajectory");
  std::size_t ipk = 0;
  for (std::size_t i = 1; i < tr.size(); ++i) {
    if (tr.states[i].u > tr.states[ipk].u) ipk = i;
  }
  const double tpk = tr.times[ipk];
  const double radius = std::min(10.0, half_period);
  std::vector<std::size_t> window;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    if (std::abs(tr.times[i] - tpk) <= radius) window.push_back(i);
  }
  auto sup = [&](double t0) {
    double d = 0.0;
    for (auto i : window) d = std::max(d, distance_inf(tr.states[i], profile(tr.times[i] - t0)));
    return d;
  };
  double best = tpk, best_d = sup(tpk);
  for (int k = -200; k <= 200; ++k) {
    const double t0 = tpk + 0.01 * k;
    const double d = sup(t0);
    if (d < best_d) {
      best_d = d;
      best = t0;
    }
  }
  const auto r = boost::math::tools::brent_find_minima(sup, best - 0.01, best + 0.01, 50);
  if (r.second < best_d) return {r.first, r.second};
  return {best, best_d};
}

inline HomoclinicDistance distance_to_homoclinic(const PeriodicOrbit& orb,
                                                 const HomoclinicProfile& profile = homoclinic_profile()) {
  return distance_to_homoclinic(orb.trajectory, orb.T, profile);
}

/// Samples a spectral field in the cylinder chart t = s / eps, with v = eps u_s, over one
/// period [-1/eps, 1/eps] at spacing at most dt.
inline PeriodicOrbit orbit_from_field(const PeriodicField& f, double dt = 1e-2) {
  const auto& sp = *f.space;
  const double eps = sp.eps();
  const int n = detail::steps_for(2.0 / eps, dt);
  VectorXd a, b;
  sp.spectrum().merge(f.z_plus, f.z_minus, a, b);
  const VectorXd du = sp.derivative(f.u);
  PeriodicOrbit orb;
  orb.T = 1.0 / eps;
  orb.epsilon = eps;
  for (int j = 0; j <= n; ++j) {
    const double s = -1.0 + 2.0 * j / n;
    const VectorXd row = sp.basis_row(s);
    orb.trajectory.push(s / eps, State4{row.dot(f.u), eps * row.dot(du), row.dot(a), row.dot(b)});
  }
  orb.initial_state = orb.trajectory.states.front();
  orb.H = orb.trajectory.energy_series.front();
  orb.residual = distance_inf(orb.trajectory.states.back(), orb.initial_state);
  orb.energy_drift = energy_drift(orb.trajectory);
  orb.provenance = "spectral";
  return orb;
}

// ---------------------------------------------------------------------------
// Energy versus period

struct DiagramRow {
  double epsilon = 0.0;
  double T = 0.0;
  double delta_eps = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
  std::string message;
};

/// Ground-state energy per eps, each eps solved on its own thread.
inline std::vector<DiagramRow> period_energy_diagram(const std::vector<double>& eps_grid,
                                                     const GroundStateOptions& opt = {}) {
  for (double e : eps_grid) {
    if (!(e > 0.0 && e <= 0.25)) throw InvalidInput("diagram epsilon must lie in (0, 1/4]");
  }
  const double delta0 = delta0_quadrature(homoclinic_profile());
  std::vector<std::future<DiagramRow>> jobs;
  jobs.reserve(eps_grid.size());
  for (double e : eps_grid) {
    jobs.push_back(std::async(std::launch::async, [e, opt, delta0] {
      DiagramRow row;
      row.epsilon = e;
      row.T = 1.0 / e;
      try {
        const auto gs = ground_state(e, opt);
        row.delta_eps = gs.delta;
        row.gap = std::abs(gs.delta - delta0);
        row.converged = true;
      } catch (const NonConvergence& err) {
        row.delta_eps = energy(err.best()).total;
        row.gap = std::abs(row.delta_eps - delta0);
        row.message = err.what();
      } catch (const SolverError& err) {
        row.message = err.what();
      }
      return row;
    }));
  }
  std::vector<DiagramRow> rows;
  rows.reserve(jobs.size());
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

}  // namespace cdelab
