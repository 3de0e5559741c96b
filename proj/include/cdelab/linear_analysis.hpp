#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

#include "cdelab/dynamics.hpp"
#include "cdelab/errors.hpp"

namespace cdelab {

enum class Chart { original, rotated };

struct Jacobian4 {
  Mat4 entries = Mat4::Zero();
  Chart chart = Chart::original;
  Vec4 base_point = Vec4::Zero();
};

inline Jacobian4 jacobian_at(const State4& s) {
  const double u = s.u, a = s.a, b = s.b;
  Mat4 m;
  // clang-format off
  m << 0.0,                           1.0, 0.0,          0.0,
       -(a * a + b * b - 0.25),       0.0, -2.0 * a * u, -2.0 * b * u,
       2.0 * u * b,                   0.0, -1.0,         u * u,
       -2.0 * u * a,                  0.0, -u * u,       1.0;
  // clang-format on
  return {m, Chart::original, s.vec()};
}

inline Jacobian4 jacobian_at(const RotatedState4& r) {
  const double u = r.u, a = r.abar, b = r.bbar;
  Mat4 m;
  // clang-format off
  m << 0.0,                      1.0, 0.0,          0.0,
       0.25 - (a * a + b * b),   0.0, -2.0 * a * u, -2.0 * b * u,
       -2.0 * u * b,             0.0, 0.0,          -(1.0 + u * u),
       2.0 * u * a,              0.0, u * u - 1.0,  0.0;
  // clang-format on
  return {m, Chart::rotated, r.vec()};
}

// ---------------------------------------------------------------------------
// 4x4 spectrum: Eigen's real Schur solver, polished on the characteristic quartic

using Complex = std::complex<double>;

struct SpectrumReport {
  std::array<Complex, 4> eigenvalues{};
  std::array<Eigen::Vector4cd, 4> eigenvectors{};
  std::array<double, 4> residuals{};
  std::optional<double> hyperbolic_pair;  ///< mu > 0 when +-mu are both eigenvalues
  std::optional<double> elliptic_pair;    ///< omega > 0 when +-i omega are both eigenvalues
};

/// Coefficients c[0..3] of det(lambda I - M) = lambda^4 + c0 lambda^3 + c1 lambda^2 + c2 lambda + c3
/// by the Faddeev-LeVerrier recursion.
inline std::array<double, 4> characteristic_coefficients(const Mat4& m) {
  std::array<double, 4> c{};
  Mat4 mk = Mat4::Zero();
  double ck = 1.0;
  for (int k = 1; k <= 4; ++k) {
    mk = m * mk + ck * Mat4::Identity();
    ck = -(m * mk).trace() / k;
    c[k - 1] = ck;
  }
  return c;
}

namespace detail {

inline Complex eval_monic_quartic(const std::array<double, 4>& c, Complex x) {
  return (((x + c[0]) * x + c[1]) * x + c[2]) * x + c[3];
}

inline Complex eval_monic_quartic_derivative(const std::array<double, 4>& c, Complex x) {
  return ((4.0 * x + 3.0 * c[0]) * x + 2.0 * c[1]) * x + c[2];
}

}  // namespace detail

/// Eigenvalues of a real 4x4 matrix; each root is polished by one Newton step on the
/// characteristic polynomial when that lowers the polynomial residual and paired with a unit eigenvector whose residual is checked.
inline SpectrumReport eigenvalues_4x4(const Mat4& m, double residual_tol = 1e-10) {
  const auto coeffs = characteristic_coefficients(m);
  const Eigen::EigenSolver<Mat4> solver(m, false);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("real Schur iteration did not converge");
  std::array<Complex, 4> roots{};
  for (int i = 0; i < 4; ++i) roots[i] = solver.eigenvalues()[i];
  for (auto& z : roots) {
    const Complex dp = detail::eval_monic_quartic_derivative(coeffs, z);
    if (std::abs(dp) > 1e-300) {
      const Complex polished = z - detail::eval_monic_quartic(coeffs, z) / dp;
      if (std::abs(detail::eval_monic_quartic(coeffs, polished)) <=
          std::abs(detail::eval_monic_quartic(coeffs, z))) {
        z = polished;
      }
    }
    // Snap roots that are real or imaginary up to rounding.
    const double scale = std::max(1.0, std::abs(z));
    if (std::abs(z.imag()) <= 1e-13 * scale) z.imag(0.0);
    if (std::abs(z.real()) <= 1e-13 * scale) z.real(0.0);
  }
  std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });

  SpectrumReport report;
  const double mnorm = std::max(m.norm(), 1e-300);
  const Eigen::Matrix4cd mc = m.cast<Complex>();
  for (int i = 0; i < 4; ++i) {
    const Eigen::Matrix4cd shifted = mc - roots[i] * Eigen::Matrix4cd::Identity();
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(shifted, Eigen::ComputeFullV);
    Eigen::Vector4cd x = svd.matrixV().col(3);
    x.normalize();
    const double res = (shifted * x).norm();
    if (!(res <= residual_tol * mnorm)) {
      throw ConvergenceFailure("eigenvector residual above tolerance for a computed root");
    }
    report.eigenvalues[i] = roots[i];
    report.eigenvectors[i] = x;
    report.residuals[i] = res;
  }

  auto is_imag = [](Complex z) { return std::abs(z.real()) <= 1e-9 * std::max(1.0, std::abs(z)); };
  auto is_real = [](Complex z) { return std::abs(z.imag()) <= 1e-9 * std::max(1.0, std::abs(z)); };
  for (const auto& z : report.eigenvalues) {
    if (is_imag(z) && z.imag() > 0.0) {
      for (const auto& w : report.eigenvalues) {
        if (is_imag(w) && std::abs(w.imag() + z.imag()) <= 1e-9 * std::max(1.0, z.imag())) {
          report.elliptic_pair = z.imag();
        }
      }
    }
    if (is_real(z) && z.real() > 0.0) {
      for (const auto& w : report.eigenvalues) {
        if (is_real(w) && std::abs(w.real() + z.real()) <= 1e-9 * std::max(1.0, z.real())) {
          report.hyperbolic_pair = z.real();
        }
      }
    }
  }
  return report;
}

/// Limiting period 2 pi / omega of the Lyapunov family attached to the elliptic pair.
inline double lyapunov_period(const SpectrumReport& sr) {
  if (!sr.elliptic_pair) throw NoEllipticPair("spectrum has no purely imaginary pair");
  return 2.0 * std::numbers::pi / *sr.elliptic_pair;
}

/// Linearization of the rotated chart at (1, 0, 1/2, 0).
inline Mat4 linearization_c() { return jacobian_at(RotatedState4{1.0, 0.0, 0.5, 0.0}).entries; }

}  // namespace cdelab
