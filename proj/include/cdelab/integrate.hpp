#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "cdelab/dynamics.hpp"
#include "cdelab/errors.hpp"
#include "cdelab/linear_analysis.hpp"

namespace cdelab {

enum class Method { implicit_midpoint, rk4 };

inline std::string to_string(Method m) { return m == Method::rk4 ? "rk4" : "implicit_midpoint"; }

inline Method method_from_string(const std::string& s) {
  if (s == "rk4") return Method::rk4;
  if (s == "implicit_midpoint" || s == "midpoint") return Method::implicit_midpoint;
  throw InvalidInput("unknown integration method '" + s + "'");
}

struct StepperConfig {
  Method method = Method::implicit_midpoint;
  double dt = 1e-3;
  double newton_tol = 1e-13;
  int max_newton_iters = 50;

  void validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("dt must be positive");
    if (!(newton_tol > 0.0)) throw InvalidInput("newton_tol must be positive");
    if (max_newton_iters < 1) throw InvalidInput("max_newton_iters must be >= 1");
  }
};

/// Phase-space states beyond this magnitude are treated as escaped.
inline constexpr double kEscapeThreshold = 1e12;

// ---------------------------------------------------------------------------
// Chart policies

struct OriginalChart {
  using State = State4;
  static Vec4 rhs(const Vec4& x) { return vector_field(State4::from(x)).vec(); }
  static Mat4 jacobian(const Vec4& x) { return jacobian_at(State4::from(x)).entries; }
  static double energy(const Vec4& x) { return hamiltonian(State4::from(x)); }
};

struct RotatedChart {
  using State = RotatedState4;
  static Vec4 rhs(const Vec4& x) { return rotated_vector_field(RotatedState4::from(x)).vec(); }
  static Mat4 jacobian(const Vec4& x) { return jacobian_at(RotatedState4::from(x)).entries; }
  static double energy(const Vec4& x) { return hamiltonian_rotated(RotatedState4::from(x)); }
};

// ---------------------------------------------------------------------------
// One step

namespace detail {

template <class ChartT>
Vec4 rk4_step(const Vec4& x, double h) {
  const Vec4 k1 = ChartT::rhs(x);
  const Vec4 k2 = ChartT::rhs(x + 0.5 * h * k1);
  const Vec4 k3 = ChartT::rhs(x + 0.5 * h * k2);
  const Vec4 k4 = ChartT::rhs(x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Solves y = x + h f((x + y) / 2) by Newton iteration.
template <class ChartT>
Vec4 midpoint_step(const Vec4& x, double h, const StepperConfig& cfg) {
  Vec4 y = x + h * ChartT::rhs(x);
  for (int it = 0; it < cfg.max_newton_iters; ++it) {
    const Vec4 mid = 0.5 * (x + y);
    const Vec4 g = y - x - h * ChartT::rhs(mid);
    const Mat4 jac = Mat4::Identity() - 0.5 * h * ChartT::jacobian(mid);
    const Vec4 dy = jac.partialPivLu().solve(g);
    y -= dy;
    if (!y.allFinite()) break;
    if (dy.lpNorm<Eigen::Infinity>() <= cfg.newton_tol * (1.0 + y.lpNorm<Eigen::Infinity>())) {
      return y;
    }
  }
  throw NewtonDivergence("implicit midpoint Newton solve did not converge");
}

}  // namespace detail

/// Advances a state by one step of signed size h.
template <class ChartT = OriginalChart>
Vec4 step_vec(const Vec4& x, double h, const StepperConfig& cfg) {
  return cfg.method == Method::rk4 ? detail::rk4_step<ChartT>(x, h)
                                   : detail::midpoint_step<ChartT>(x, h, cfg);
}

inline State4 step(const State4& s, const StepperConfig& cfg) {
  cfg.validate();
  return State4::from(step_vec<OriginalChart>(s.vec(), cfg.dt, cfg));
}

inline RotatedState4 step(const RotatedState4& r, const StepperConfig& cfg) {
  cfg.validate();
  return RotatedState4::from(step_vec<RotatedChart>(r.vec(), cfg.dt, cfg));
}

/// Implicit midpoint step together with the derivative of the discrete map with respect to the
/// initial state (phi <- D step * phi) and with respect to the step size (dstep_dh).
template <class ChartT = OriginalChart>
Vec4 midpoint_step_with_sensitivity(const Vec4& x, double h, const StepperConfig& cfg,
                                    Mat4& phi, Vec4* dx_dh = nullptr) {
  const Vec4 y = detail::midpoint_step<ChartT>(x, h, cfg);
  const Vec4 mid = 0.5 * (x + y);
  const Mat4 jf = ChartT::jacobian(mid);
  const auto lhs = (Mat4::Identity() - 0.5 * h * jf).partialPivLu();
  phi = lhs.solve((Mat4::Identity() + 0.5 * h * jf) * phi);
  if (dx_dh != nullptr) {
    *dx_dh = lhs.solve((Mat4::Identity() + 0.5 * h * jf) * (*dx_dh) + ChartT::rhs(mid));
  }
  return y;
}

// ---------------------------------------------------------------------------
// Trajectories

template <class ChartT>
struct BasicTrajectory {
  using State = typename ChartT::State;
  std::vector<double> times;
  std::vector<State> states;
  std::vector<double> energy_series;

  [[nodiscard]] std::size_t size() const { return times.size(); }
  [[nodiscard]] bool empty() const { return times.empty(); }

  void push(double t, const State& s) {
    times.push_back(t);
    states.push_back(s);
    energy_series.push_back(ChartT::energy(s.vec()));
  }
};

using Trajectory = BasicTrajectory<OriginalChart>;
using RotatedTrajectory = BasicTrajectory<RotatedChart>;

/// Uniform-step integration from t = 0 to t_final (negative values integrate backwards).
/// The step is shrunk so that the grid lands on t_final exactly; times are strictly
/// monotone in the direction of integration.
template <class ChartT>
BasicTrajectory<ChartT> integrate_chart(const typename ChartT::State& s0, double t_final,
                                        const StepperConfig& cfg) {
  cfg.validate();
  if (t_final == 0.0 || !std::isfinite(t_final)) {
    throw InvalidInput("t_final must be finite and nonzero");
  }
  const auto n = static_cast<long>(std::ceil(std::abs(t_final) / cfg.dt - 1e-9));
  const double h = t_final / static_cast<double>(n);
  BasicTrajectory<ChartT> tr;
  tr.times.reserve(n + 1);
  tr.states.reserve(n + 1);
  tr.energy_series.reserve(n + 1);
  Vec4 x = s0.vec();
  tr.push(0.0, s0);
  for (long k = 1; k <= n; ++k) {
    x = step_vec<ChartT>(x, h, cfg);
    if (!x.allFinite() || x.lpNorm<Eigen::Infinity>() > kEscapeThreshold) {
      throw NonFiniteState("trajectory escaped at t = " + std::to_string(k * h));
    }
    tr.push(k == n ? t_final : k * h, ChartT::State::from(x));
  }
  return tr;
}

inline Trajectory integrate(const State4& s0, double t_final, const StepperConfig& cfg = {}) {
  return integrate_chart<OriginalChart>(s0, t_final, cfg);
}

inline RotatedTrajectory integrate(const RotatedState4& r0, double t_final,
                                   const StepperConfig& cfg = {}) {
  return integrate_chart<RotatedChart>(r0, t_final, cfg);
}

/// max_k |H_k - H_0| along the trajectory.
template <class ChartT>
double energy_drift(const BasicTrajectory<ChartT>& tr) {
  if (tr.empty()) throw EmptyTrajectory("energy_drift of an empty trajectory");
  double drift = 0.0;
  for (double h : tr.energy_series) drift = std::max(drift, std::abs(h - tr.energy_series.front()));
  return drift;
}

}  // namespace cdelab
