#pragma once

// Reduced cylinder system for the conformal Dirac-Einstein problem:
//
//   u' = v
//   v' = -(a^2 + b^2 - 1/4) u
//   a' = -a + u^2 b
//   b' =  b - u^2 a
//
// together with its rotated chart abar = (a+b)/sqrt2, bbar = (a-b)/sqrt2.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "cdelab/errors.hpp"

namespace cdelab {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

/// Point (u, v, a, b) of the four dimensional phase space.
struct State4 {
  double u = 0.0;
  double v = 0.0;
  double a = 0.0;
  double b = 0.0;

  [[nodiscard]] Vec4 vec() const { return {u, v, a, b}; }
  static State4 from(const Vec4& x) { return {x[0], x[1], x[2], x[3]}; }

  [[nodiscard]] double norm_inf() const {
    return std::max({std::abs(u), std::abs(v), std::abs(a), std::abs(b)});
  }
  [[nodiscard]] bool finite() const {
    return std::isfinite(u) && std::isfinite(v) && std::isfinite(a) && std::isfinite(b);
  }

  friend State4 operator+(const State4& x, const State4& y) {
    return {x.u + y.u, x.v + y.v, x.a + y.a, x.b + y.b};
  }
  friend State4 operator-(const State4& x, const State4& y) {
    return {x.u - y.u, x.v - y.v, x.a - y.a, x.b - y.b};
  }
  friend State4 operator*(double s, const State4& x) { return {s * x.u, s * x.v, s * x.a, s * x.b}; }
  friend bool operator==(const State4&, const State4&) = default;
};

/// Same point expressed in the rotated spinor coordinates.
struct RotatedState4 {
  double u = 0.0;
  double v = 0.0;
  double abar = 0.0;
  double bbar = 0.0;

  [[nodiscard]] Vec4 vec() const { return {u, v, abar, bbar}; }
  static RotatedState4 from(const Vec4& x) { return {x[0], x[1], x[2], x[3]}; }
  friend bool operator==(const RotatedState4&, const RotatedState4&) = default;
};

/// Complex view of the spinor: psi_plus = a + i b, psi_minus = a - i b.
struct SpinorPair {
  std::complex<double> psi_plus;
  std::complex<double> psi_minus;
};

inline double distance_inf(const State4& x, const State4& y) { return (x - y).norm_inf(); }

// ---------------------------------------------------------------------------
// Hamiltonian and vector field

inline double hamiltonian(const State4& s) {
  return 0.5 * s.v * s.v + 0.5 * s.u * s.u * (s.a * s.a + s.b * s.b - 0.25) - s.a * s.b;
}

/// Second printed form of H, split around the level u = 1.
inline double hamiltonian_split_form(const State4& s) {
  const double d = s.a - s.b;
  return 0.5 * s.v * s.v + 0.5 * (s.u * s.u - 1.0) * (s.a * s.a + s.b * s.b - 0.25) +
         0.5 * (d * d - 0.25);
}

inline State4 vector_field(const State4& s) {
  const double u2 = s.u * s.u;
  return {s.v, -(s.a * s.a + s.b * s.b - 0.25) * s.u, -s.a + u2 * s.b, s.b - u2 * s.a};
}

// ---------------------------------------------------------------------------
// Rotated chart

inline RotatedState4 to_rotated(const State4& s) {
  constexpr double r = std::numbers::sqrt2 / 2.0;
  return {s.u, s.v, r * (s.a + s.b), r * (s.a - s.b)};
}

inline State4 from_rotated(const RotatedState4& r) {
  constexpr double c = std::numbers::sqrt2 / 2.0;
  return {r.u, r.v, c * (r.abar + r.bbar), c * (r.abar - r.bbar)};
}

inline RotatedState4 rotated_vector_field(const RotatedState4& r) {
  const double u2 = r.u * r.u;
  return {r.v, (0.25 - (r.abar * r.abar + r.bbar * r.bbar)) * r.u, -(1.0 + u2) * r.bbar,
          (u2 - 1.0) * r.abar};
}

inline double hamiltonian_rotated(const RotatedState4& r) {
  return 0.5 * r.v * r.v + 0.5 * (r.u * r.u - 1.0) * (r.abar * r.abar + r.bbar * r.bbar - 0.25) +
         0.5 * (2.0 * r.bbar * r.bbar - 0.25);
}

// ---------------------------------------------------------------------------
// Discrete symmetry and spinor dictionary

/// (u, v, a, b) -> (u, -v, b, a). If s(t) solves the system so does swap(s(-t)).
inline State4 time_reversal_swap(const State4& s) { return {s.u, -s.v, s.b, s.a}; }

inline SpinorPair spinor_from_state(const State4& s) {
  return {{s.a, s.b}, {s.a, -s.b}};
}

inline State4 state_from_spinor(double u, double v, const SpinorPair& p, double tol = 1e-12) {
  const auto mismatch = std::abs(std::conj(p.psi_plus) - p.psi_minus);
  const double scale = std::max(1.0, std::abs(p.psi_plus));
  if (!(mismatch <= tol * scale)) {
    throw NonConjugatePair("psi_minus is not the conjugate of psi_plus");
  }
  const auto avg = 0.5 * (p.psi_plus + std::conj(p.psi_minus));
  return {u, v, avg.real(), avg.imag()};
}

// ---------------------------------------------------------------------------
// Equilibria

struct EquilibriumCatalog {
  State4 p0;
  State4 p_plus;
  State4 p_minus;
  double h0 = 0.0;
  double h_plus = 0.0;
  double h_minus = 0.0;
};

/// Spinor amplitude 1/(2 sqrt 2) of the nontrivial equilibria.
inline constexpr double kEquilibriumSpinor = std::numbers::sqrt2 / 4.0;

inline const State4 kP0{0.0, 0.0, 0.0, 0.0};
inline const State4 kPPlus{1.0, 0.0, kEquilibriumSpinor, kEquilibriumSpinor};
inline const State4 kPMinus{1.0, 0.0, -kEquilibriumSpinor, -kEquilibriumSpinor};

inline EquilibriumCatalog equilibria() {
  return {kP0, kPPlus, kPMinus, hamiltonian(kP0), hamiltonian(kPPlus), hamiltonian(kPMinus)};
}

}  // namespace cdelab
