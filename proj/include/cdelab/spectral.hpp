#pragma once

// Fourier realization of 2-periodic fields on s in [-1, 1] (the rescaled chart t = s / eps).
//
// Real orthonormal basis in L^2(-1, 1):
//   phi_0 = 1/sqrt(2),  phi_{2k-1} = cos(k pi s),  phi_{2k} = sin(k pi s),  k = 1..K.
//
// The spinor z = (a, b) is stored in the eigenbasis of A_eps z = (-eps b' + b, eps a' + a).
// On mode k the operator acts on (a_c, a_s, b_c, b_s) as [[0, R], [R^T, 0]] with
// R = [[1, -theta], [theta, 1]], theta = eps k pi, so its eigenvalues are +-sqrt(1 + theta^2),
// each with multiplicity two.

#include <Eigen/Dense>
#include <cmath>
#include <algorithm>
#include <array>
#include <memory>
#include <numbers>
#include <vector>

#include "cdelab/errors.hpp"

namespace cdelab {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline int basis_size(int K) { return 2 * K + 1; }
inline int basis_mode(int i) { return (i + 1) / 2; }

/// Explicit eigen table of A on 2T-periodic spinors truncated to |k| <= K.
struct SpectrumA {
  double T = 1.0;
  int K = 0;
  std::vector<double> omega;  ///< k pi / T for k = 0..K

  [[nodiscard]] double eigenvalue(int k) const { return std::sqrt(1.0 + omega[k] * omega[k]); }

  /// Columns are the orthonormal eigenvectors (plus_cos, plus_sin, minus_cos, minus_sin) in
  /// (a_cos, a_sin, b_cos, b_sin) coordinates, for k >= 1.
  [[nodiscard]] Eigen::Matrix4d eigenvectors(int k) const {
    const double th = omega[k];
    const double r = eigenvalue(k);
    const double c = 1.0 / std::numbers::sqrt2;
    Eigen::Matrix4d q;
    // clang-format off
    q << c,            0.0,          c,             0.0,
         0.0,          c,            0.0,           c,
         c / r,        c * th / r,   -c / r,        -c * th / r,
         -c * th / r,  c / r,        c * th / r,    -c / r;
    // clang-format on
    return q;
  }

  /// Coordinates of (a, b) along the positive and negative eigenvectors.
  void split(const VectorXd& a, const VectorXd& b, VectorXd& plus, VectorXd& minus) const {
    const int m = basis_size(K);
    if (a.size() != m || b.size() != m) throw TruncationMismatch("spinor size does not match K");
    plus.resize(m);
    minus.resize(m);
    const double c = 1.0 / std::numbers::sqrt2;
    plus[0] = c * (a[0] + b[0]);
    minus[0] = c * (a[0] - b[0]);
    for (int k = 1; k <= K; ++k) {
      const int ic = 2 * k - 1, is = 2 * k;
      const double th = omega[k];
      const double r = eigenvalue(k);
      const double yc = (b[ic] - th * b[is]) / r;
      const double ys = (th * b[ic] + b[is]) / r;
      plus[ic] = c * (a[ic] + yc);
      plus[is] = c * (a[is] + ys);
      minus[ic] = c * (a[ic] - yc);
      minus[is] = c * (a[is] - ys);
    }
  }

  void merge(const VectorXd& plus, const VectorXd& minus, VectorXd& a, VectorXd& b) const {
    const int m = basis_size(K);
    if (plus.size() != m || minus.size() != m) {
      throw TruncationMismatch("eigen-coordinate size does not match K");
    }
    a.resize(m);
    b.resize(m);
    const double c = 1.0 / std::numbers::sqrt2;
    a[0] = c * (plus[0] + minus[0]);
    b[0] = c * (plus[0] - minus[0]);
    for (int k = 1; k <= K; ++k) {
      const int ic = 2 * k - 1, is = 2 * k;
      const double th = omega[k];
      const double r = eigenvalue(k);
      a[ic] = c * (plus[ic] + minus[ic]);
      a[is] = c * (plus[is] + minus[is]);
      const double yc = c * (plus[ic] - minus[ic]);
      const double ys = c * (plus[is] - minus[is]);
      b[ic] = (yc + th * ys) / r;
      b[is] = (-th * yc + ys) / r;
    }
  }

  /// |lambda| for every basis index.
  [[nodiscard]] VectorXd abs_eigenvalues() const {
    VectorXd lam(basis_size(K));
    for (int i = 0; i < lam.size(); ++i) lam[i] = eigenvalue(basis_mode(i));
    return lam;
  }
};

inline SpectrumA build_spectrum(double T, int K) {
  if (!(T > 0.0)) throw InvalidInput("half period T must be positive");
  if (K < 1) throw InvalidInput("truncation K must be >= 1");
  SpectrumA sp;
  sp.T = T;
  sp.K = K;
  sp.omega.resize(K + 1);
  for (int k = 0; k <= K; ++k) sp.omega[k] = k * std::numbers::pi / T;
  return sp;
}

// ---------------------------------------------------------------------------
// Discretization shared by all fields at one (eps, K)

/// Truncation K(eps) such that the coefficient tail of the concentrated profile sits below
/// 1e-10. The profile has singularities at distance pi/2 from the real axis in t, so its
/// coefficients decay like exp(-pi^2 eps k / 2).
///
///   eps   : 0.25  0.2  0.1  0.05  0.025
///   K     :   32   40   80   160    320
inline int default_modes(double eps) {
  return std::max(16, static_cast<int>(std::ceil(8.0 / eps - 1e-9)));
}

class SpectralSpace {
 public:
  SpectralSpace(double eps, int K) : eps_(eps), K_(K) {
    if (!(eps > 0.0)) throw InvalidInput("epsilon must be positive");
    if (K < 1) throw InvalidInput("truncation K must be >= 1");
    spectrum_ = build_spectrum(1.0 / eps, K);
    const int m = basis_size(K);
    // N > 4K makes the quadrature exact for every quartic integrand in the functional.
    N_ = 4 * K + 4;
    grid_.resize(N_);
    synth_.resize(N_, m);
    for (int j = 0; j < N_; ++j) {
      grid_[j] = -1.0 + 2.0 * j / N_;
      synth_.row(j) = basis_row(grid_[j]).transpose();
    }
    lam_ = spectrum_.abs_eigenvalues();
    wu_.resize(m);
    for (int i = 0; i < m; ++i) {
      const double w = eps * basis_mode(i) * std::numbers::pi;
      wu_[i] = w * w + 0.25;
    }
  }

  [[nodiscard]] double eps() const { return eps_; }
  [[nodiscard]] int K() const { return K_; }
  [[nodiscard]] int m() const { return basis_size(K_); }
  [[nodiscard]] int N() const { return N_; }
  [[nodiscard]] const SpectrumA& spectrum() const { return spectrum_; }
  [[nodiscard]] const VectorXd& grid() const { return grid_; }
  [[nodiscard]] const MatrixXd& synthesis() const { return synth_; }
  /// |lambda_eps| per basis index.
  [[nodiscard]] const VectorXd& lambda() const { return lam_; }
  /// eps^2 (k pi)^2 + 1/4 per basis index: the scalar quadratic form.
  [[nodiscard]] const VectorXd& scalar_weight() const { return wu_; }
  [[nodiscard]] double quadrature_weight() const { return 2.0 / N_; }

  [[nodiscard]] VectorXd basis_row(double s) const {
    VectorXd row(m());
    row[0] = 1.0 / std::numbers::sqrt2;
    for (int k = 1; k <= K_; ++k) {
      row[2 * k - 1] = std::cos(k * std::numbers::pi * s);
      row[2 * k] = std::sin(k * std::numbers::pi * s);
    }
    return row;
  }

  [[nodiscard]] VectorXd to_grid(const VectorXd& coeffs) const { return synth_ * coeffs; }

  /// L^2 projection of grid data onto the basis (exact for integrands of degree <= 4K).
  [[nodiscard]] VectorXd from_grid(const VectorXd& values) const {
    return quadrature_weight() * (synth_.transpose() * values);
  }

  /// Coefficients of d/ds.
  [[nodiscard]] VectorXd derivative(const VectorXd& c) const {
    VectorXd d = VectorXd::Zero(c.size());
    for (int k = 1; k <= K_; ++k) {
      const double w = k * std::numbers::pi;
      d[2 * k - 1] = w * c[2 * k];
      d[2 * k] = -w * c[2 * k - 1];
    }
    return d;
  }

  [[nodiscard]] double integrate_grid(const VectorXd& values) const {
    return quadrature_weight() * values.sum();
  }

 private:
  double eps_;
  int K_;
  int N_ = 0;
  SpectrumA spectrum_;
  VectorXd grid_;
  MatrixXd synth_;
  VectorXd lam_;
  VectorXd wu_;
};

using SpacePtr = std::shared_ptr<const SpectralSpace>;

inline SpacePtr make_space(double eps, int K) { return std::make_shared<const SpectralSpace>(eps, K); }

// ---------------------------------------------------------------------------
// Fields

/// Pair (u, z) of a 2-periodic scalar and spinor, the spinor split along the A-eigenbasis.
struct PeriodicField {
  SpacePtr space;
  VectorXd u;
  VectorXd z_plus;
  VectorXd z_minus;

  PeriodicField() = default;
  explicit PeriodicField(SpacePtr sp)
      : space(std::move(sp)),
        u(VectorXd::Zero(space->m())),
        z_plus(VectorXd::Zero(space->m())),
        z_minus(VectorXd::Zero(space->m())) {}

  [[nodiscard]] double eps() const { return space->eps(); }
  [[nodiscard]] int K() const { return space->K(); }

  [[nodiscard]] VectorXd a() const {
    VectorXd a, b;
    space->spectrum().merge(z_plus, z_minus, a, b);
    return a;
  }
  [[nodiscard]] VectorXd b() const {
    VectorXd a, b;
    space->spectrum().merge(z_plus, z_minus, a, b);
    return b;
  }
  void set_spinor(const VectorXd& a, const VectorXd& b) {
    space->spectrum().split(a, b, z_plus, z_minus);
  }

  /// (u, a, b) at an arbitrary point s.
  [[nodiscard]] std::array<double, 3> at(double s) const {
    const VectorXd row = space->basis_row(s);
    VectorXd a, b;
    space->spectrum().merge(z_plus, z_minus, a, b);
    return {row.dot(u), row.dot(a), row.dot(b)};
  }

  [[nodiscard]] bool is_zero() const {
    return u.isZero(0.0) && z_plus.isZero(0.0) && z_minus.isZero(0.0);
  }

  PeriodicField& operator+=(const PeriodicField& o) {
    u += o.u;
    z_plus += o.z_plus;
    z_minus += o.z_minus;
    return *this;
  }
  friend PeriodicField operator+(PeriodicField x, const PeriodicField& y) { return x += y; }
  friend PeriodicField operator*(double s, PeriodicField x) {
    x.u *= s;
    x.z_plus *= s;
    x.z_minus *= s;
    return x;
  }
};

/// Builds a field from grid samples of (u, a, b) on space->grid().
inline PeriodicField field_from_grid(const SpacePtr& space, const VectorXd& u, const VectorXd& a,
                                     const VectorXd& b) {
  PeriodicField f(space);
  f.u = space->from_grid(u);
  f.set_spinor(space->from_grid(a), space->from_grid(b));
  return f;
}

inline void require_same_space(const PeriodicField& x, const PeriodicField& y) {
  if (x.space->K() != y.space->K() || x.space->eps() != y.space->eps()) {
    throw TruncationMismatch("fields live on different discretizations");
  }
}

// ---------------------------------------------------------------------------
// Operator A_eps and the +- splitting

struct SpinorEigen {
  VectorXd plus;
  VectorXd minus;
};

/// Diagonal action in the eigenbasis.
inline SpinorEigen apply_A(const SpinorEigen& z, const SpectrumA& sp) {
  const VectorXd lam = sp.abs_eigenvalues();
  if (z.plus.size() != lam.size() || z.minus.size() != lam.size()) {
    throw TruncationMismatch("spinor truncation does not match the spectrum");
  }
  return {lam.cwiseProduct(z.plus), -lam.cwiseProduct(z.minus)};
}

/// Real-space formula (-eps b' + b, eps a' + a) evaluated through Fourier differentiation.
inline void apply_A_real_space(const SpectralSpace& sp, const VectorXd& a, const VectorXd& b,
                               VectorXd& out_a, VectorXd& out_b) {
  if (a.size() != sp.m() || b.size() != sp.m()) throw TruncationMismatch("spinor size mismatch");
  out_a = -sp.eps() * sp.derivative(b) + b;
  out_b = sp.eps() * sp.derivative(a) + a;
}

/// (z_plus, z_minus) = (P+ z, P- z) for z = (a, b) given in the trig basis, both returned in
/// the trig basis.
struct SpinorSplit {
  VectorXd plus_a, plus_b, minus_a, minus_b;
};

inline SpinorSplit project(const SpectrumA& sp, const VectorXd& a, const VectorXd& b) {
  VectorXd plus, minus;
  sp.split(a, b, plus, minus);
  SpinorSplit out;
  const VectorXd zero = VectorXd::Zero(plus.size());
  sp.merge(plus, zero, out.plus_a, out.plus_b);
  sp.merge(zero, minus, out.minus_a, out.minus_b);
  return out;
}

// ---------------------------------------------------------------------------
// Translations

/// Coefficients of c(s + shift) for trig coefficients c.
inline VectorXd shift_coefficients(const VectorXd& c, double shift) {
  VectorXd out = c;
  const int K = (static_cast<int>(c.size()) - 1) / 2;
  for (int k = 1; k <= K; ++k) {
    const double ph = k * std::numbers::pi * shift;
    const double co = std::cos(ph), si = std::sin(ph);
    const double cc = c[2 * k - 1], ss = c[2 * k];
    out[2 * k - 1] = cc * co + ss * si;
    out[2 * k] = ss * co - cc * si;
  }
  return out;
}

/// The field translated so that its new value at s is the old value at s + shift.
/// Translations commute with A, so the eigen-coordinates rotate mode by mode like the
/// trig coefficients.
inline PeriodicField shift(const PeriodicField& f, double shift) {
  PeriodicField g = f;
  g.u = shift_coefficients(f.u, shift);
  g.z_plus = shift_coefficients(f.z_plus, shift);
  g.z_minus = shift_coefficients(f.z_minus, shift);
  return g;
}

/// Circular centre of mass of u^2 on [-1, 1).
inline double u_mass_center(const PeriodicField& f) {
  const VectorXd ug = f.space->to_grid(f.u);
  const VectorXd& s = f.space->grid();
  double re = 0.0, im = 0.0;
  for (int j = 0; j < ug.size(); ++j) {
    const double w = ug[j] * ug[j];
    re += w * std::cos(std::numbers::pi * s[j]);
    im += w * std::sin(std::numbers::pi * s[j]);
  }
  if (re == 0.0 && im == 0.0) return 0.0;
  return std::atan2(im, re) / std::numbers::pi;
}

inline PeriodicField recenter(const PeriodicField& f) { return shift(f, u_mass_center(f)); }

}  // namespace cdelab
