#pragma once

// Radial profiles on the cylinder R x S^2, on R^3 \ {0} and on S^3 minus two poles.
//
// Emden-Fowler chart: r = e^{-t}, scalar weight e^{t/2}, spinor weight e^{t} with the
// component map f1 = -a e^t, f2 = b e^t. Stereographic chart: chi = 2 arctan r, conformal factor
// w = 2 / (1 + r^2), scalar weight w^{-1/2}, spinor weight w^{-1}.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <boost/math/interpolators/makima.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "cdelab/errors.hpp"

namespace cdelab {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Spinors on R^3

struct Spinor2 {
  std::array<cplx, 2> c{};
  Eigen::Vector3d base_point = Eigen::Vector3d::Zero();

  [[nodiscard]] double norm() const { return std::sqrt(std::norm(c[0]) + std::norm(c[1])); }
};

/// e1 = i sigma_1, e2 = i sigma_2, e3 = i sigma_3.
inline Spinor2 clifford_mult(const Eigen::Vector3d& x, const Spinor2& phi) {
  const cplx i(0.0, 1.0);
  const cplx p0 = phi.c[0], p1 = phi.c[1];
  Spinor2 out;
  out.base_point = phi.base_point;
  out.c[0] = i * x[0] * p1 + x[1] * p1 + i * x[2] * p0;
  out.c[1] = i * x[0] * p0 - x[1] * p0 - i * x[2] * p1;
  return out;
}

inline cplx inner(const Spinor2& x, const Spinor2& y) {
  return std::conj(x.c[0]) * y.c[0] + std::conj(x.c[1]) * y.c[1];
}

struct ClosedFormValue {
  double U = 0.0;
  Spinor2 Psi;
};

/// U = (2 lambda / (lambda^2 + |x|^2))^{1/2}, Psi = (2 lambda / (lambda^2 + |x|^2))^{3/2} (1 - x) . phi0
/// with the concentration point at the origin.
inline ClosedFormValue ground_state_closed_form(double lambda, const Eigen::Vector3d& x,
                                                const Spinor2& phi0) {
  if (!(lambda > 0.0)) throw InvalidInput("lambda must be positive");
  if (std::abs(phi0.norm() - 1.0) > 1e-12) throw InvalidInput("phi0 must have unit norm");
  const double w = 2.0 * lambda / (lambda * lambda + x.squaredNorm());
  const Spinor2 xphi = clifford_mult(x, phi0);
  ClosedFormValue v;
  v.U = std::sqrt(w);
  const double w32 = w * v.U;
  v.Psi.base_point = x;
  v.Psi.c = {w32 * (phi0.c[0] - xphi.c[0]), w32 * (phi0.c[1] - xphi.c[1])};
  return v;
}

// ---------------------------------------------------------------------------
// Radial profiles

enum class RadialChart { cylinder, euclidean, sphere };

inline std::string to_string(RadialChart c) {
  switch (c) {
    case RadialChart::cylinder: return "cylinder";
    case RadialChart::euclidean: return "euclidean";
    case RadialChart::sphere: return "sphere";
  }
  return "?";
}

inline RadialChart radial_chart_from_string(const std::string& s) {
  if (s == "cylinder") return RadialChart::cylinder;
  if (s == "euclidean") return RadialChart::euclidean;
  if (s == "sphere") return RadialChart::sphere;
  throw InvalidInput("unknown chart '" + s + "'");
}

/// Scalar u and radial spinor components on a strictly increasing grid: t on the cylinder,
/// r > 0 on R^3, the polar angle chi on S^3. On the cylinder (f1, f2) hold (a, b).
struct RadialProfile {
  RadialChart chart = RadialChart::euclidean;
  std::vector<double> grid;
  std::vector<double> u;
  std::vector<double> f1;
  std::vector<double> f2;
  std::optional<double> lambda;
  std::string convention;

  [[nodiscard]] std::size_t size() const { return grid.size(); }

  void validate() const {
    const auto n = grid.size();
    if (u.size() != n || f1.size() != n || f2.size() != n) {
      throw InvalidInput("profile columns have different lengths");
    }
    for (std::size_t i = 1; i < n; ++i) {
      if (!(grid[i] > grid[i - 1])) throw InvalidInput("profile grid must be strictly increasing");
    }
    if (chart == RadialChart::euclidean && n > 0 && !(grid.front() > 0.0)) {
      throw InvalidInput("euclidean grid must exclude r = 0");
    }
  }
};

/// Closed-form (U_lambda, Psi_lambda) on a radial grid: f1 = w^{3/2}, f2 = -r w^{3/2}, the
/// coefficients of Phi0 and (x/r) . Phi0.
inline RadialProfile closed_form_radial_profile(double lambda, const std::vector<double>& r) {
  if (!(lambda > 0.0)) throw InvalidInput("lambda must be positive");
  RadialProfile p;
  p.chart = RadialChart::euclidean;
  p.lambda = lambda;
  p.grid = r;
  for (double ri : r) {
    const double w = 2.0 * lambda / (lambda * lambda + ri * ri);
    const double w32 = w * std::sqrt(w);
    p.u.push_back(std::sqrt(w));
    p.f1.push_back(w32);
    p.f2.push_back(-ri * w32);
  }
  p.validate();
  return p;
}

/// n points with uniform spacing in log r over [r_min, r_max].
inline std::vector<double> log_uniform_grid(double r_min, double r_max, int n) {
  if (!(r_min > 0.0 && r_max > r_min) || n < 2) throw InvalidInput("bad log-uniform grid request");
  std::vector<double> r(n);
  const double l0 = std::log(r_min), l1 = std::log(r_max);
  for (int i = 0; i < n; ++i) r[i] = std::exp(l0 + (l1 - l0) * i / (n - 1));
  return r;
}

// ---------------------------------------------------------------------------
// Emden-Fowler transform

namespace detail {

/// Cubic (modified Akima) interpolant that returns node values on shared nodes.
class ColumnInterpolant {
 public:
  ColumnInterpolant(const std::vector<double>& x, const std::vector<double>& y) : x_(x), y_(y) {
    if (x.size() >= 4) {
      spline_.emplace(std::vector<double>(x), std::vector<double>(y));
    }
  }

  double operator()(double t) const {
    const auto it = std::lower_bound(x_.begin(), x_.end(), t);
    // Nodes reached through exp/log round trips may differ from t in the last bits.
    const double tol = 1e-12 * std::max(1.0, std::abs(t));
    if (it != x_.end() && std::abs(*it - t) <= tol) return y_[static_cast<std::size_t>(it - x_.begin())];
    if (it != x_.begin() && std::abs(*(it - 1) - t) <= tol) {
      return y_[static_cast<std::size_t>(it - x_.begin()) - 1];
    }
    if (spline_) return (*spline_)(t);
    // Fewer than four nodes: linear.
    const auto k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(1, it - x_.begin()));
    const double s = (t - x_[k - 1]) / (x_[k] - x_[k - 1]);
    return (1.0 - s) * y_[k - 1] + s * y_[k];
  }

 private:
  std::vector<double> x_, y_;
  std::optional<boost::math::interpolators::makima<std::vector<double>>> spline_;
};

}  // namespace detail

inline RadialProfile cylinder_to_euclidean(const RadialProfile& cyl, const std::vector<double>& r_grid) {
  if (cyl.chart != RadialChart::cylinder) throw InvalidInput("input profile is not on the cylinder");
  cyl.validate();
  if (cyl.size() < 2) throw GridCoverage("cylinder profile needs at least two nodes");
  RadialProfile out;
  out.chart = RadialChart::euclidean;
  out.lambda = cyl.lambda;
  out.grid = r_grid;
  const detail::ColumnInterpolant iu(cyl.grid, cyl.u), ia(cyl.grid, cyl.f1), ib(cyl.grid, cyl.f2);
  for (double r : r_grid) {
    if (!(r > 0.0) || !std::isfinite(r)) throw GridCoverage("radius must be positive and finite");
    const double t = -std::log(r);
    if (t < cyl.grid.front() || t > cyl.grid.back()) {
      throw GridCoverage("radius " + std::to_string(r) + " maps outside the cylinder grid");
    }
    const double et = 1.0 / r;
    out.u.push_back(std::sqrt(et) * iu(t));
    out.f1.push_back(-ia(t) * et);
    out.f2.push_back(ib(t) * et);
  }
  out.validate();
  return out;
}

/// Inverse weights on the node set t = -ln r (returned in increasing t).
inline RadialProfile euclidean_to_cylinder(const RadialProfile& euc) {
  if (euc.chart != RadialChart::euclidean) throw InvalidInput("input profile is not euclidean");
  euc.validate();
  RadialProfile out;
  out.chart = RadialChart::cylinder;
  out.lambda = euc.lambda;
  for (std::size_t k = euc.size(); k-- > 0;) {
    const double r = euc.grid[k];
    out.grid.push_back(-std::log(r));
    out.u.push_back(std::sqrt(r) * euc.u[k]);
    out.f1.push_back(-euc.f1[k] * r);
    out.f2.push_back(euc.f2[k] * r);
  }
  out.validate();
  return out;
}

/// Cylinder profile from samples of (t, u, a, b) given in any order of t.
inline RadialProfile cylinder_profile(std::vector<double> t, std::vector<double> u, std::vector<double> a,
                                      std::vector<double> b) {
  RadialProfile p;
  p.chart = RadialChart::cylinder;
  std::vector<std::size_t> idx(t.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](auto x, auto y) { return t[x] < t[y]; });
  for (auto i : idx) {
    p.grid.push_back(t[i]);
    p.u.push_back(u[i]);
    p.f1.push_back(a[i]);
    p.f2.push_back(b[i]);
  }
  p.validate();
  return p;
}

// ---------------------------------------------------------------------------
// Coupling constant

struct CouplingFit {
  double kappa = 0.0;
  double residual = 0.0;  ///< ||L - kappa q|| / ||L|| over interior nodes
  int nodes = 0;
};

/// Least-squares kappa in -Lap u = kappa (f1^2 + f2^2) u, with the radial Laplacian
/// r^{-2}(u_rho rho + u_rho) in rho = ln r discretized by central differences. The grid must be
/// uniform in ln r.
inline CouplingFit coupling_constant_fit(const RadialProfile& p) {
  if (p.chart != RadialChart::euclidean) throw InvalidInput("coupling fit needs a euclidean profile");
  p.validate();
  const std::size_t n = p.size();
  if (n < 5) throw InvalidInput("coupling fit needs at least five nodes");
  const double h = std::log(p.grid[1]) - std::log(p.grid[0]);
  for (std::size_t i = 1; i < n; ++i) {
    const double hi = std::log(p.grid[i]) - std::log(p.grid[i - 1]);
    if (std::abs(hi - h) > 1e-9 * std::max(1.0, std::abs(h))) {
      throw InvalidInput("coupling fit needs a grid uniform in log r");
    }
  }
  double lq = 0.0, qq = 0.0, ll = 0.0;
  std::vector<double> lap(n), q(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double r = p.grid[i];
    const double urr = (p.u[i + 1] - 2.0 * p.u[i] + p.u[i - 1]) / (h * h);
    const double ur = (p.u[i + 1] - p.u[i - 1]) / (2.0 * h);
    lap[i] = -(urr + ur) / (r * r);
    q[i] = (p.f1[i] * p.f1[i] + p.f2[i] * p.f2[i]) * p.u[i];
    lq += lap[i] * q[i];
    qq += q[i] * q[i];
    ll += lap[i] * lap[i];
  }
  if (qq == 0.0) throw DegenerateProfile("(f1^2 + f2^2) u vanishes on every interior node");
  CouplingFit fit;
  fit.kappa = lq / qq;
  double rr = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) rr += (lap[i] - fit.kappa * q[i]) * (lap[i] - fit.kappa * q[i]);
  fit.residual = ll > 0.0 ? std::sqrt(rr / ll) : std::sqrt(rr);
  fit.nodes = static_cast<int>(n - 2);
  return fit;
}

// ---------------------------------------------------------------------------
// Stereographic pullback

enum class SphereConvention {
  origin_at_north,  ///< r = 0 goes to chi = 0
  origin_at_south,  ///< r = 0 goes to chi = pi
};

inline std::string describe(SphereConvention c) {
  const std::string pole = c == SphereConvention::origin_at_north ? "chi = 2 arctan(r)"
                                                                  : "chi = pi - 2 arctan(r)";
  return "round unit S^3 via inverse stereographic projection, " + pole +
         "; conformal factor w = 2/(1+r^2); u_S = w^(-1/2) u; (f1,f2)_S = w^(-1) (f1,f2); "
         "singular set {r = 0, r = infinity} = two antipodal poles, excluded";
}

inline RadialProfile euclidean_to_sphere(const RadialProfile& euc,
                                         SphereConvention conv = SphereConvention::origin_at_north) {
  if (euc.chart != RadialChart::euclidean) throw InvalidInput("input profile is not euclidean");
  euc.validate();
  for (double r : euc.grid) {
    if (!(r > 0.0) || !std::isfinite(r)) throw GridCoverage("sphere pullback needs 0 < r < infinity");
  }
  RadialProfile out;
  out.chart = RadialChart::sphere;
  out.lambda = euc.lambda;
  out.convention = describe(conv);
  const std::size_t n = euc.size();
  for (std::size_t j = 0; j < n; ++j) {
    // Keep chi increasing in either convention.
    const std::size_t k = conv == SphereConvention::origin_at_north ? j : n - 1 - j;
    const double r = euc.grid[k];
    const double w = 2.0 / (1.0 + r * r);
    const double chi = 2.0 * std::atan(r);
    out.grid.push_back(conv == SphereConvention::origin_at_north ? chi : std::numbers::pi - chi);
    out.u.push_back(euc.u[k] / std::sqrt(w));
    out.f1.push_back(euc.f1[k] / w);
    out.f2.push_back(euc.f2[k] / w);
  }
  out.validate();
  return out;
}

/// Kelvin-type inversion r -> 1/r: u -> r^{-1} u(1/r), |psi| -> r^{-2} |psi|(1/r). Reported
/// through (f1, f2) = (|psi|, 0).
inline RadialProfile kelvin_inversion(const RadialProfile& euc) {
  if (euc.chart != RadialChart::euclidean) throw InvalidInput("input profile is not euclidean");
  euc.validate();
  RadialProfile out;
  out.chart = RadialChart::euclidean;
  out.lambda = euc.lambda;
  for (std::size_t k = euc.size(); k-- > 0;) {
    const double s = euc.grid[k];
    const double r = 1.0 / s;
    out.grid.push_back(r);
    out.u.push_back(s * euc.u[k]);
    out.f1.push_back(s * s * std::hypot(euc.f1[k], euc.f2[k]));
    out.f2.push_back(0.0);
  }
  out.validate();
  return out;
}

/// Bubble scale lambda = e^{-t_peak} read off the maximum of u on the cylinder, refined by a
/// parabola through the three largest samples. The cylinder image of U_lambda peaks at -ln lambda.
inline double bubble_scale_from_cylinder(const RadialProfile& cyl) {
  if (cyl.chart != RadialChart::cylinder) throw InvalidInput("input profile is not on the cylinder");
  cyl.validate();
  if (cyl.size() < 3) throw InvalidInput("need at least three samples");
  std::size_t k = 0;
  for (std::size_t i = 1; i < cyl.size(); ++i) {
    if (std::abs(cyl.u[i]) > std::abs(cyl.u[k])) k = i;
  }
  k = std::clamp<std::size_t>(k, 1, cyl.size() - 2);
  const double x0 = cyl.grid[k - 1], x1 = cyl.grid[k], x2 = cyl.grid[k + 1];
  const double y0 = std::abs(cyl.u[k - 1]), y1 = std::abs(cyl.u[k]), y2 = std::abs(cyl.u[k + 1]);
  const double d = (x0 - x1) * (x0 - x2) * (x1 - x2);
  const double A = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / d;
  const double B = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / d;
  const double tp = A < 0.0 ? -B / (2.0 * A) : x1;
  return std::exp(-tp);
}

}  // namespace cdelab
