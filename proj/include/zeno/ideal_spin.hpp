#pragma once

#include <cmath>

#include "zeno/linalg.hpp"

namespace zeno {

/// Two-level neutron spin in a transverse field: free Larmor rotation versus
/// a chain of N spin-up selections at equal time intervals.
struct IdealParams {
  double omega;  // 2 * mu * B
  double total_time;
  long n_measurements;

  IdealParams(double omega_, double total_time_, long n_) : omega(omega_), total_time(total_time_), n_measurements(n_) {
    if (!(omega > 0.0)) throw InvalidParameter("omega must be positive");
    if (!(total_time > 0.0)) throw InvalidParameter("total_time must be positive");
    if (n_ < 1) throw InvalidParameter("n_measurements must be >= 1");
  }

  double phase() const { return omega * total_time; }  // omega*T
};

/// 2x2 density matrix on the {up, down} basis.
struct SpinDensity {
  Matrix rho{2};

  static SpinDensity up() {
    SpinDensity d;
    d.rho(0, 0) = 1.0;
    return d;
  }
  static SpinDensity down() {
    SpinDensity d;
    d.rho(1, 1) = 1.0;
    return d;
  }

  double p_up() const { return rho(0, 0).real(); }
  double p_down() const { return rho(1, 1).real(); }

  bool is_valid(double tol = 1e-12) const {
    if ((rho - rho.adjoint()).norm() > tol) return false;
    if (std::abs(rho.trace() - 1.0) > tol) return false;
    // 2x2 PSD check: non-negative diagonal and determinant
    if (rho(0, 0).real() < -tol || rho(1, 1).real() < -tol) return false;
    return det(rho).real() >= -tol;
  }
};

/// rho(T) = U rho0 U^dag with H = (omega/2) sigma_1; no measurements.
inline SpinDensity evolve_free(const SpinDensity& rho0, const IdealParams& p) {
  const double half = 0.5 * p.phase();
  Matrix u = Matrix::identity(2) * cplx{std::cos(half), 0.0} + pauli(1) * (-im * std::sin(half));
  SpinDensity out;
  out.rho = u * rho0.rho * u.adjoint();
  return out;
}

/// Survival probability cos^{2N}(omega T / 2N) after N spin-up selections.
inline double survival_after_n(const IdealParams& p) {
  const double c = std::cos(0.5 * p.phase() / static_cast<double>(p.n_measurements));
  return std::pow(c * c, static_cast<double>(p.n_measurements));
}

/// Same, at the resonant choice omega T = pi (one full spin flip undisturbed).
inline double survival_after_n_matched(long n) {
  if (n < 1) throw InvalidParameter("n must be >= 1");
  const double c = std::cos(0.5 * pi / static_cast<double>(n));
  return std::pow(c * c, static_cast<double>(n));
}

}  // namespace zeno
