#pragma once

// Ground states of E_eps: a Nehari-projected gradient descent on the reduced functional
// F(u, z+) = E_eps(u, z+ + g(u, z+)), followed by a Newton polish of the full critical-point
// equations with a translation phase condition.

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdelab/errors.hpp"
#include "cdelab/functional.hpp"
#include "cdelab/homoclinic.hpp"
#include "cdelab/spectral.hpp"

namespace cdelab {

// ---------------------------------------------------------------------------
// Cutoff construction

/// Smooth step: 0 for x <= 0, 1 for x >= 1, C-infinity in between.
inline double smooth_step(double x) {
  auto f = [](double y) { return y > 0.0 ? std::exp(-1.0 / y) : 0.0; };
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double p = f(x);
  return p / (p + f(1.0 - x));
}

/// Bump equal to 1 on [-1/2, 1/2] and vanishing for |s| >= 1.
inline double smooth_bump(double s) { return smooth_step((1.0 - std::abs(s)) / 0.5); }

/// beta(s) (U, Z)(s / eps) with (U, Z) the homoclinic profile, projected on the space.
inline PeriodicField cutoff_test_pair(const SpacePtr& space,
                                      const HomoclinicProfile& profile = homoclinic_profile()) {
  if (space->eps() > 0.25) throw InvalidInput("cutoff_test_pair needs eps <= 1/4");
  const VectorXd& s = space->grid();
  VectorXd u(s.size()), a(s.size()), b(s.size());
  for (int j = 0; j < s.size(); ++j) {
    const double beta = smooth_bump(s[j]);
    const State4 x = profile(s[j] / space->eps());
    u[j] = beta * x.u;
    a[j] = beta * x.a;
    b[j] = beta * x.b;
  }
  return field_from_grid(space, u, a, b);
}

inline PeriodicField cutoff_test_pair(double eps, int K) { return cutoff_test_pair(make_space(eps, K)); }

/// u = 1, a = b = 1/(2 sqrt 2): the constant solution with energy 1/(4 eps).
inline PeriodicField equilibrium_pair(const SpacePtr& space) {
  const VectorXd& s = space->grid();
  const VectorXd ones = VectorXd::Ones(s.size());
  return field_from_grid(space, ones, kEquilibriumSpinor * ones, kEquilibriumSpinor * ones);
}

// ---------------------------------------------------------------------------
// Concentration

struct ConcentrationReport {
  double y_center = 0.0;  ///< in the s chart
  double mass_u = 0.0;
  double mass_z = 0.0;
};

/// Largest windowed masses (1/eps) int_{|s - y| <= eps r0} |u|^2 and the same for |z|^2.
inline ConcentrationReport concentration_diagnostic(const PeriodicField& f, double r0) {
  if (!(r0 > 0.0)) throw InvalidInput("window radius r0 must be positive");
  const auto& sp = *f.space;
  const int n = 8 * sp.N();
  const double h = 2.0 / n;
  VectorXd a, b;
  sp.spectrum().merge(f.z_plus, f.z_minus, a, b);
  std::vector<double> mu(n), mz(n);
  for (int j = 0; j < n; ++j) {
    const VectorXd row = sp.basis_row(-1.0 + j * h);
    const double uj = row.dot(f.u), aj = row.dot(a), bj = row.dot(b);
    mu[j] = uj * uj;
    mz[j] = aj * aj + bj * bj;
  }
  const int half = std::max(0, static_cast<int>(std::floor(sp.eps() * r0 / h)));
  auto window = [&](const std::vector<double>& v, int c) {
    double acc = 0.0;
    for (int k = -half; k <= half; ++k) acc += v[((c + k) % n + n) % n];
    return acc * h / sp.eps();
  };
  ConcentrationReport best;
  double best_total = -1.0;
  for (int c = 0; c < n; ++c) {
    const double wu = window(mu, c), wz = window(mz, c);
    if (wu + wz > best_total) {
      best_total = wu + wz;
      best = {-1.0 + c * h, wu, wz};
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Solver

struct GroundStateOptions {
  int K = 0;                       ///< 0 selects default_modes(eps)
  double gradient_tol = 1e-8;      ///< dual eps-norm of dE
  double nehari_tol = 1e-6;        ///< relative
  double descent_switch = 1e-3;    ///< hand over to Newton below this gradient norm
  int max_descent_iters = 300;
  int max_newton_iters = 40;
  bool fallback_init = true;       ///< retry from the perturbed equilibrium pair on failure
};

struct IterationRecord {
  std::string phase;
  int iteration = 0;
  double energy = 0.0;
  double gradient_norm = 0.0;
  double step = 0.0;
};

struct GroundStateDiagnostics {
  std::vector<IterationRecord> history;
  int descent_iterations = 0;
  int newton_iterations = 0;
  double gradient_norm = 0.0;
  NehariResiduals nehari;
  EnergyBreakdown energy;
  /// |E - coupling / 2| / (coupling / 2)
  double identity_defect = 0.0;
  std::string initializer;
};

struct GroundStateResult {
  PeriodicField field;
  double delta = 0.0;
  GroundStateDiagnostics diagnostics;
};

class NonConvergence : public SolverError {
 public:
  NonConvergence(const std::string& what, PeriodicField best, GroundStateDiagnostics diag)
      : SolverError(what), best_(std::move(best)), diag_(std::move(diag)) {}
  [[nodiscard]] const PeriodicField& best() const { return best_; }
  [[nodiscard]] const GroundStateDiagnostics& diagnostics() const { return diag_; }

 private:
  PeriodicField best_;
  GroundStateDiagnostics diag_;
};

namespace detail {

inline double reduced_energy(const SpacePtr& sp, const VectorXd& u, const VectorXd& zp) {
  return energy(reduced_field(sp, u, zp)).total;
}

/// Maximizes (t, s) -> F(t u, s z+) by Newton's method on the two fibre derivatives.
inline PeriodicField nehari_project(const SpacePtr& sp, const VectorXd& u, const VectorXd& zp) {
  auto fibre_gradient = [&](double t, double s) {
    const PeriodicField f = reduced_field(sp, t * u, s * zp);
    const Cotangent c = gradient(f);
    return Eigen::Vector2d(c.u.dot(u), c.z_plus.dot(zp));
  };
  double t = 1.0, s = 1.0;
  for (int it = 0; it < 60; ++it) {
    const Eigen::Vector2d g = fibre_gradient(t, s);
    const double scale = std::max({1.0, std::abs(t * u.squaredNorm()), std::abs(s * zp.squaredNorm())});
    if (g.lpNorm<Eigen::Infinity>() <= 1e-13 * scale) break;
    const double d = 1e-6;
    Eigen::Matrix2d j;
    j.col(0) = (fibre_gradient(t + d, s) - fibre_gradient(t - d, s)) / (2.0 * d);
    j.col(1) = (fibre_gradient(t, s + d) - fibre_gradient(t, s - d)) / (2.0 * d);
    Eigen::Vector2d step = -j.fullPivLu().solve(g);
    if (!step.allFinite()) break;
    // Keep both scalings positive.
    double tau = 1.0;
    while ((t + tau * step[0] <= 0.05 * t || s + tau * step[1] <= 0.05 * s) && tau > 1e-3) tau *= 0.5;
    t += tau * step[0];
    s += tau * step[1];
    if (step.lpNorm<Eigen::Infinity>() < 1e-15) break;
  }
  return reduced_field(sp, t * u, s * zp);
}

inline void finalize_diagnostics(const PeriodicField& f, GroundStateDiagnostics& d) {
  d.gradient_norm = gradient_norm(f);
  d.nehari = nehari_residuals(f);
  d.energy = energy(f);
  const double half_c = 0.5 * d.energy.coupling;
  d.identity_defect = half_c > 0.0 ? std::abs(d.energy.total - half_c) / half_c : 0.0;
}

inline GroundStateResult solve_from(PeriodicField f, const GroundStateOptions& opt,
                                    const std::string& label) {
  const SpacePtr sp = f.space;
  GroundStateDiagnostics diag;
  diag.initializer = label;

  // Phase 1: descent on the reduced functional, projected back on the Nehari set.
  f = recenter(nehari_project(sp, f.u, f.z_plus));
  double fe = energy(f).total;
  for (int it = 0; it < opt.max_descent_iters; ++it) {
    const Cotangent c = gradient(f);
    const double gn = gradient_norm(*sp, c);
    diag.history.push_back({"descent", it, fe, gn, 0.0});
    diag.descent_iterations = it;
    if (gn <= opt.descent_switch) break;
    const VectorXd du = -c.u.cwiseQuotient(sp->scalar_weight());
    const VectorXd dp = -c.z_plus.cwiseQuotient(sp->lambda());
    double tau = 0.5;
    bool accepted = false;
    while (tau > 1e-6) {
      PeriodicField trial = nehari_project(sp, f.u + tau * du, f.z_plus + tau * dp);
      const double te = energy(trial).total;
      if (std::isfinite(te) && te < fe && !trial.is_zero()) {
        f = recenter(trial);
        fe = te;
        diag.history.back().step = tau;
        accepted = true;
        break;
      }
      tau *= 0.5;
    }
    if (!accepted) break;
  }

  // Phase 2: Newton on dE = 0 bordered by the phase condition <generator, delta> = 0.
  const MatrixXd q = eigen_to_trig(*sp);
  const int n = 3 * sp->m();
  PeriodicField best = f;
  double best_gn = gradient_norm(f);
  double gn = best_gn;
  for (int it = 0; it < opt.max_newton_iters && gn > 0.01 * opt.gradient_tol; ++it) {
    diag.newton_iterations = it + 1;
    const VectorXd g = stack(gradient(f));
    const VectorXd gen = stack(translation_generator(f));
    MatrixXd big = MatrixXd::Zero(n + 1, n + 1);
    big.topLeftCorner(n, n) = hessian(f, q);
    big.block(0, n, n, 1) = gen;
    big.block(n, 0, 1, n) = gen.transpose();
    VectorXd rhs = VectorXd::Zero(n + 1);
    rhs.head(n) = -g;
    const VectorXd delta = big.partialPivLu().solve(rhs).head(n);
    if (!delta.allFinite()) break;
    double tau = 1.0;
    PeriodicField trial = f;
    double tgn = gn;
    for (int ls = 0; ls < 12; ++ls) {
      unstack(stack(f) + tau * delta, trial);
      tgn = gradient_norm(trial);
      if (std::isfinite(tgn) && tgn < gn) break;
      tau *= 0.5;
    }
    diag.history.push_back({"newton", it, energy(trial).total, tgn, tau});
    if (!(tgn < gn)) break;
    f = trial;
    gn = tgn;
    if (gn < best_gn) {
      best = f;
      best_gn = gn;
    }
  }

  best = recenter(best);
  finalize_diagnostics(best, diag);
  const bool ok = diag.gradient_norm <= opt.gradient_tol &&
                  diag.nehari.relative_r1() <= opt.nehari_tol &&
                  diag.nehari.relative_r2() <= opt.nehari_tol &&
                  diag.nehari.relative_r3() <= opt.nehari_tol && !diag.nehari.trivial &&
                  diag.energy.coupling > 0.0;
  if (!ok) {
    throw NonConvergence("ground_state: gradient norm " + std::to_string(diag.gradient_norm) +
                             " above tolerance",
                         best, diag);
  }
  return {best, diag.energy.total, diag};
}

}  // namespace detail

/// Equilibrium pair with a first-mode bump on u.
inline PeriodicField perturbed_equilibrium_pair(const SpacePtr& space) {
  PeriodicField f = equilibrium_pair(space);
  f.u[1] += 0.5;
  return f;
}

inline GroundStateResult ground_state(double eps, const GroundStateOptions& opt = {},
                                      std::optional<PeriodicField> init = std::nullopt) {
  if (!(eps > 0.0)) throw InvalidInput("epsilon must be positive");
  const int K = opt.K > 0 ? opt.K : default_modes(eps);
  if (init) {
    if (init->K() != K || init->eps() != eps) {
      throw TruncationMismatch("initial field does not match (eps, K)");
    }
    return detail::solve_from(*init, opt, "user");
  }
  const SpacePtr sp = make_space(eps, K);
  if (eps <= 0.25) {
    try {
      return detail::solve_from(cutoff_test_pair(sp), opt, "cutoff");
    } catch (const NonConvergence&) {
      if (!opt.fallback_init) throw;
    }
  }
  return detail::solve_from(perturbed_equilibrium_pair(sp), opt, "perturbed-equilibrium");
}

}  // namespace cdelab
