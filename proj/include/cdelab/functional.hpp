#pragma once

// Rescaled energy on 2-periodic fields over s in [-1, 1]:
//
//   E_eps(u, z) = 1/(2 eps) [ int (eps^2 u'^2 + u^2/4) + <A_eps z, z> - int u^2 |z|^2 ]
//
// In coefficients every quadratic form is diagonal; the quartic term is evaluated on the
// collocation grid of the space, which integrates it exactly.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "cdelab/errors.hpp"
#include "cdelab/spectral.hpp"

namespace cdelab {

struct EnergyBreakdown {
  double scalar_quadratic = 0.0;  ///< ||u||^2_{1,eps}
  double spinor_quadratic = 0.0;  ///< <A_eps z, z> / eps
  double coupling = 0.0;          ///< (1/eps) int u^2 |z|^2
  double total = 0.0;
};

struct FieldNorms {
  double h1_sq = 0.0;    ///< ||u||^2_{1,eps}
  double half_sq = 0.0;  ///< ||z||^2_{1/2,eps}
  double l4_u = 0.0;     ///< ||u||_{L^4,eps}
  double l4_z = 0.0;     ///< || |z| ||_{L^4,eps}
};

struct NehariResiduals {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  double coupling = 0.0;
  /// The trivial pair satisfies the identities but is not on the manifold.
  bool trivial = false;

  [[nodiscard]] double relative_r1() const { return coupling > 0.0 ? r1 / coupling : r1; }
  [[nodiscard]] double relative_r2() const { return coupling > 0.0 ? r2 / coupling : r2; }
  [[nodiscard]] double relative_r3() const {
    return coupling > 0.0 ? r3 / std::sqrt(coupling) : r3;
  }
};

/// Coefficient representation of dE: dE[h] = (1/eps) (u.h_u + z_plus.h_plus + z_minus.h_minus).
/// Each block is the Fourier image of -eps^2 u'' + u/4 - u|z|^2 and of A_eps z - u^2 z.
struct Cotangent {
  VectorXd u;
  VectorXd z_plus;
  VectorXd z_minus;
};

// ---------------------------------------------------------------------------
// Grid evaluation

struct GridValues {
  VectorXd u, a, b;
  [[nodiscard]] VectorXd z_sq() const { return a.cwiseAbs2() + b.cwiseAbs2(); }
};

inline GridValues grid_values(const PeriodicField& f) {
  const auto& sp = *f.space;
  VectorXd a, b;
  sp.spectrum().merge(f.z_plus, f.z_minus, a, b);
  return {sp.to_grid(f.u), sp.to_grid(a), sp.to_grid(b)};
}

/// Coordinates along (plus, minus) eigenvectors of the grid spinor (a, b).
inline SpinorEigen project_grid_spinor(const SpectralSpace& sp, const VectorXd& a,
                                       const VectorXd& b) {
  SpinorEigen out;
  sp.spectrum().split(sp.from_grid(a), sp.from_grid(b), out.plus, out.minus);
  return out;
}

// ---------------------------------------------------------------------------
// Norms and energy

inline FieldNorms norms(const PeriodicField& f) {
  const auto& sp = *f.space;
  const double ie = 1.0 / sp.eps();
  const GridValues g = grid_values(f);
  FieldNorms n;
  n.h1_sq = ie * sp.scalar_weight().dot(f.u.cwiseAbs2());
  n.half_sq = ie * sp.lambda().dot(f.z_plus.cwiseAbs2() + f.z_minus.cwiseAbs2());
  n.l4_u = std::pow(ie * sp.integrate_grid(g.u.array().pow(4).matrix()), 0.25);
  n.l4_z = std::pow(ie * sp.integrate_grid(g.z_sq().cwiseAbs2()), 0.25);
  return n;
}

inline EnergyBreakdown energy(const PeriodicField& f) {
  const auto& sp = *f.space;
  const double ie = 1.0 / sp.eps();
  const GridValues g = grid_values(f);
  EnergyBreakdown e;
  e.scalar_quadratic = ie * sp.scalar_weight().dot(f.u.cwiseAbs2());
  e.spinor_quadratic = ie * sp.lambda().dot(f.z_plus.cwiseAbs2() - f.z_minus.cwiseAbs2());
  e.coupling = ie * sp.integrate_grid(g.u.cwiseAbs2().cwiseProduct(g.z_sq()));
  e.total = 0.5 * (e.scalar_quadratic + e.spinor_quadratic - e.coupling);
  return e;
}

// ---------------------------------------------------------------------------
// First variation

inline Cotangent gradient(const PeriodicField& f) {
  const auto& sp = *f.space;
  const GridValues g = grid_values(f);
  const VectorXd u2 = g.u.cwiseAbs2();
  const SpinorEigen nl = project_grid_spinor(sp, u2.cwiseProduct(g.a), u2.cwiseProduct(g.b));
  Cotangent c;
  c.u = sp.scalar_weight().cwiseProduct(f.u) - sp.from_grid(g.u.cwiseProduct(g.z_sq()));
  c.z_plus = sp.lambda().cwiseProduct(f.z_plus) - nl.plus;
  c.z_minus = -sp.lambda().cwiseProduct(f.z_minus) - nl.minus;
  return c;
}

/// dE_eps(f)[h].
inline double directional_derivative(const PeriodicField& f, const PeriodicField& h) {
  require_same_space(f, h);
  const Cotangent c = gradient(f);
  return (c.u.dot(h.u) + c.z_plus.dot(h.z_plus) + c.z_minus.dot(h.z_minus)) / f.eps();
}

/// Dual norm of dE in the eps-weighted energy norm
/// ||h||^2 = ||h_u||^2_{1,eps} + ||h_z||^2_{1/2,eps}.
inline double gradient_norm(const SpectralSpace& sp, const Cotangent& c) {
  const double s = c.u.cwiseAbs2().cwiseQuotient(sp.scalar_weight()).sum() +
                   (c.z_plus.cwiseAbs2() + c.z_minus.cwiseAbs2()).cwiseQuotient(sp.lambda()).sum();
  return std::sqrt(s / sp.eps());
}

inline double gradient_norm(const PeriodicField& f) { return gradient_norm(*f.space, gradient(f)); }

// ---------------------------------------------------------------------------
// Nehari identities

inline NehariResiduals nehari_residuals(const PeriodicField& f) {
  const EnergyBreakdown e = energy(f);
  const Cotangent c = gradient(f);
  const auto& sp = *f.space;
  NehariResiduals r;
  r.coupling = e.coupling;
  r.r1 = std::abs(e.scalar_quadratic - e.coupling);
  r.r2 = std::abs(e.spinor_quadratic - e.coupling);
  r.r3 = std::sqrt(c.z_minus.cwiseAbs2().cwiseQuotient(sp.lambda()).sum() / sp.eps());
  r.trivial = f.is_zero();
  return r;
}

// ---------------------------------------------------------------------------
// Reduction onto the negative space

struct ReductionReport {
  VectorXd z_minus;
  int iterations = 0;
  double residual = 0.0;  ///< || -lambda w - P^-(u^2 (z_plus + w)) ||_2 in coefficients
};

/// Unique maximizer w of z_minus -> E_eps(u, z_plus + z_minus). Stationarity reads
/// (Lambda + P^- u^2 P^-) w = -P^-(u^2 z_plus); the operator is symmetric positive definite
/// and is inverted by conjugate gradients preconditioned with 1/lambda.
inline ReductionReport reduce_g(const SpectralSpace& sp, const VectorXd& u, const VectorXd& z_plus,
                                double tol = 1e-14, int max_iter = 500) {
  if (u.size() != sp.m() || z_plus.size() != sp.m()) {
    throw TruncationMismatch("reduce_g: coefficient sizes do not match the space");
  }
  const VectorXd u2 = sp.to_grid(u).cwiseAbs2();
  const VectorXd& lam = sp.lambda();
  const VectorXd zero = VectorXd::Zero(sp.m());

  auto minus_part_of_u2 = [&](const VectorXd& plus, const VectorXd& minus) {
    VectorXd a, b;
    sp.spectrum().merge(plus, minus, a, b);
    return project_grid_spinor(sp, u2.cwiseProduct(sp.to_grid(a)), u2.cwiseProduct(sp.to_grid(b)))
        .minus;
  };
  auto apply = [&](const VectorXd& w) -> VectorXd {
    return lam.cwiseProduct(w) + minus_part_of_u2(zero, w);
  };

  ReductionReport rep;
  const VectorXd rhs = -minus_part_of_u2(z_plus, zero);
  const double rhs_norm = rhs.norm();
  VectorXd w = VectorXd::Zero(sp.m());
  if (rhs_norm == 0.0) {
    rep.z_minus = w;
    return rep;
  }
  VectorXd r = rhs;
  VectorXd zr = r.cwiseQuotient(lam);
  VectorXd p = zr;
  double rz = r.dot(zr);
  for (int it = 1; it <= max_iter; ++it) {
    const VectorXd ap = apply(p);
    const double alpha = rz / p.dot(ap);
    w += alpha * p;
    r -= alpha * ap;
    rep.iterations = it;
    if (r.norm() <= tol * std::max(1.0, rhs_norm)) {
      rep.z_minus = w;
      rep.residual = (apply(w) - rhs).norm();
      return rep;
    }
    zr = r.cwiseQuotient(lam);
    const double rz_new = r.dot(zr);
    p = zr + (rz_new / rz) * p;
    rz = rz_new;
  }
  throw SolverStall("reduce_g: conjugate gradients did not reach tolerance");
}

inline PeriodicField reduced_field(const SpacePtr& sp, const VectorXd& u, const VectorXd& z_plus) {
  PeriodicField f(sp);
  f.u = u;
  f.z_plus = z_plus;
  f.z_minus = reduce_g(*sp, u, z_plus).z_minus;
  return f;
}

// ---------------------------------------------------------------------------
// Second variation

/// Matrix mapping eigen-coordinates (plus, minus) to trig coefficients (a, b).
inline MatrixXd eigen_to_trig(const SpectralSpace& sp) {
  const int m = sp.m();
  MatrixXd q(2 * m, 2 * m);
  VectorXd e = VectorXd::Zero(2 * m), a, b;
  for (int j = 0; j < 2 * m; ++j) {
    e.setZero();
    e[j] = 1.0;
    sp.spectrum().merge(e.head(m), e.tail(m), a, b);
    q.col(j) << a, b;
  }
  return q;
}

/// eps times the Hessian of E_eps in the coordinates (u, z_plus, z_minus).
inline MatrixXd hessian(const PeriodicField& f, const MatrixXd& eig_to_trig) {
  const auto& sp = *f.space;
  const int m = sp.m();
  const GridValues g = grid_values(f);
  const MatrixXd& s = sp.synthesis();
  const MatrixXd ga = s * eig_to_trig.topRows(m);     // N x 2m
  const MatrixXd gb = s * eig_to_trig.bottomRows(m);  // N x 2m
  const double w = sp.quadrature_weight();
  const VectorXd u2 = g.u.cwiseAbs2();

  MatrixXd h = MatrixXd::Zero(3 * m, 3 * m);
  h.topLeftCorner(m, m) = -w * s.transpose() * g.z_sq().asDiagonal() * s;
  const MatrixXd cross =
      -w * s.transpose() *
      ((2.0 * g.u.cwiseProduct(g.a)).asDiagonal() * ga + (2.0 * g.u.cwiseProduct(g.b)).asDiagonal() * gb);
  h.topRightCorner(m, 2 * m) = cross;
  h.bottomLeftCorner(2 * m, m) = cross.transpose();
  h.bottomRightCorner(2 * m, 2 * m) =
      -w * (ga.transpose() * u2.asDiagonal() * ga + gb.transpose() * u2.asDiagonal() * gb);
  for (int i = 0; i < m; ++i) {
    h(i, i) += sp.scalar_weight()[i];
    h(m + i, m + i) += sp.lambda()[i];
    h(2 * m + i, 2 * m + i) -= sp.lambda()[i];
  }
  return h;
}

inline VectorXd stack(const Cotangent& c) {
  VectorXd v(c.u.size() * 3);
  v << c.u, c.z_plus, c.z_minus;
  return v;
}

inline VectorXd stack(const PeriodicField& f) {
  VectorXd v(f.u.size() * 3);
  v << f.u, f.z_plus, f.z_minus;
  return v;
}

inline void unstack(const VectorXd& v, PeriodicField& f) {
  const auto m = f.u.size();
  f.u = v.head(m);
  f.z_plus = v.segment(m, m);
  f.z_minus = v.tail(m);
}

/// Infinitesimal translation d/dc shift(f, c) at c = 0.
inline PeriodicField translation_generator(const PeriodicField& f) {
  PeriodicField t = f;
  t.u = f.space->derivative(f.u);
  t.z_plus = f.space->derivative(f.z_plus);
  t.z_minus = f.space->derivative(f.z_minus);
  return t;
}

}  // namespace cdelab
