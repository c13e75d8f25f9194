#pragma once

#include <array>
#include <cmath>

#include "zeno/linalg.hpp"

namespace zeno {

// Four-state model of a neutron in a spin-flipping region: the direction of
// motion (R/L) and the spin (up/down) each form a two-level factor.
// Basis ordering (R up, R down, L up, L down) = direction (x) spin.

/// Amplitude 4-vector on the basis {R up, R down, L up, L down}.
struct FourState {
  std::array<cplx, 4> amp{};

  static FourState r_up() { return FourState{{1.0, 0.0, 0.0, 0.0}}; }
  static FourState r_down() { return FourState{{0.0, 1.0, 0.0, 0.0}}; }
  static FourState l_up() { return FourState{{0.0, 0.0, 1.0, 0.0}}; }
  static FourState l_down() { return FourState{{0.0, 0.0, 0.0, 1.0}}; }

  cplx& operator[](int i) { return amp[static_cast<std::size_t>(i)]; }
  cplx operator[](int i) const { return amp[static_cast<std::size_t>(i)]; }

  double norm_sq() const {
    double s = 0.0;
    for (cplx a : amp) s += std::norm(a);
    return s;
  }
};

inline FourState apply(const Matrix& m, const FourState& s) {
  if (m.dim() != 4) throw DimensionMismatch("four-state operator must be 4x4");
  FourState out;
  for (int i = 0; i < 4; ++i) {
    cplx acc = 0.0;
    for (int j = 0; j < 4; ++j) acc += m(i, j) * s[j];
    out[i] = acc;
  }
  return out;
}

/// Couplings of H = g (1 + alpha tau_1 + beta sigma_1 + gamma tau_1 sigma_1).
/// gamma defaults to alpha*beta, which factorizes H into the product
/// g (1 + alpha tau_1)(1 + beta sigma_1).
struct AbstractParams {
  double g;
  double alpha;
  double beta;
  double gamma;
  double total_time;

  AbstractParams(double g_, double alpha_, double beta_, double total_time_)
      : g(g_), alpha(alpha_), beta(beta_), gamma(alpha_ * beta_), total_time(total_time_) {}
  AbstractParams(double g_, double alpha_, double beta_, double gamma_, double total_time_)
      : g(g_), alpha(alpha_), beta(beta_), gamma(gamma_), total_time(total_time_) {}

  double gt() const { return g * total_time; }
  bool factorized(double tol = 1e-12) const { return std::abs(gamma - alpha * beta) <= tol; }
};

struct AbstractAmplitudes {
  cplx t_up, t_down, r_up, r_down;

  double flux() const {
    return std::norm(t_up) + std::norm(t_down) + std::norm(r_up) + std::norm(r_down);
  }
};

enum class ProjectorKind { FullIdentity, E1, E2 };

/// E1 drops spin-down in both directions; E2 drops only right-going spin-down.
inline Matrix projector(ProjectorKind kind) {
  switch (kind) {
    case ProjectorKind::FullIdentity:
      return Matrix::identity(4);
    case ProjectorKind::E1:
      return Matrix::diagonal({1.0, 0.0, 1.0, 0.0});
    case ProjectorKind::E2:
      return Matrix::diagonal({1.0, 0.0, 1.0, 1.0});
  }
  throw InvalidParameter("unknown projector kind");
}

inline Matrix tau1_op() { return kron(pauli(1), Matrix::identity(2)); }
inline Matrix sigma1_op() { return kron(Matrix::identity(2), pauli(1)); }
inline Matrix tau1_sigma1_op() { return kron(pauli(1), pauli(1)); }

inline Matrix hamiltonian(const AbstractParams& p) {
  return p.g * (Matrix::identity(4) + p.alpha * tau1_op() + p.beta * sigma1_op() +
                p.gamma * tau1_sigma1_op());
}

/// The four energies g (1 + tau alpha)(1 + sigma beta), ordered
/// (E++, E+-, E-+, E--). Only meaningful for the factorized Hamiltonian.
inline std::array<cplx, 4> energy_levels(const AbstractParams& p) {
  if (!p.factorized()) throw InvalidParameter("energy levels require gamma == alpha*beta");
  std::array<cplx, 4> e{};
  int idx = 0;
  for (double tau : {1.0, -1.0})
    for (double sigma : {1.0, -1.0})
      e[static_cast<std::size_t>(idx++)] = p.g * (1.0 + tau * p.alpha) * (1.0 + sigma * p.beta);
  return e;
}

inline Matrix propagator(const AbstractParams& p) {
  return mat_exp(hamiltonian(p), -im * p.total_time);
}

/// (t_up, t_down, r_up, r_down) from the Hadamard conjugation of the level
/// phases; equals the R-up column of the propagator when gamma = alpha*beta.
inline AbstractAmplitudes amplitudes_from_levels(const AbstractParams& p) {
  const auto e = energy_levels(p);
  std::array<cplx, 4> ph{};
  for (int i = 0; i < 4; ++i)
    ph[static_cast<std::size_t>(i)] = std::exp(-im * e[static_cast<std::size_t>(i)] * p.total_time);
  AbstractAmplitudes a;
  a.t_up = 0.25 * (ph[0] + ph[1] + ph[2] + ph[3]);
  a.t_down = 0.25 * (ph[0] - ph[1] + ph[2] - ph[3]);
  a.r_up = 0.25 * (ph[0] + ph[1] - ph[2] - ph[3]);
  a.r_down = 0.25 * (ph[0] - ph[1] - ph[2] + ph[3]);
  return a;
}

enum class TransmissionCase { CaseI, CaseII, Neither };

/// Total transmission with spin flip needs e^{-iHT} proportional to sigma_1,
/// which happens on two disjoint trigonometric loci of (alpha, beta, gT).
inline TransmissionCase check_total_transmission_case(const AbstractParams& p, double tol = 1e-10) {
  const double a = p.alpha * p.gt();
  const double b = p.beta * p.gt();
  const double ab = p.alpha * p.beta * p.gt();
  const bool case1 = std::abs(std::cos(a)) <= tol && std::abs(std::sin(b)) <= tol &&
                     std::abs(std::cos(ab)) <= tol;
  const bool case2 = std::abs(std::sin(a)) <= tol && std::abs(std::cos(b)) <= tol &&
                     std::abs(std::sin(ab)) <= tol;
  if (case1) return TransmissionCase::CaseI;
  if (case2) return TransmissionCase::CaseII;
  return TransmissionCase::Neither;
}

/// (E exp(-iHT/N) E)^N -- the N-measurement chain as a single 4x4 operator.
inline Matrix zeno_chain_finite(const AbstractParams& p, ProjectorKind proj, long n) {
  if (n < 1) throw InvalidParameter("chain length must be >= 1");
  AbstractParams step = p;
  step.total_time = p.total_time / static_cast<double>(n);
  const Matrix e = projector(proj);
  const Matrix one_step = e * propagator(step) * e;
  return mat_power(one_step, static_cast<unsigned long>(n));
}

/// N -> infinity limit under E1: exp(-igT) E1 exp(-i alpha gT tau_1).
inline Matrix zeno_limit_e1(const AbstractParams& p) {
  if (!p.factorized()) throw InvalidParameter("E1 limit closed form requires gamma == alpha*beta");
  const double a = p.alpha * p.gt();
  const Matrix rot = Matrix::identity(4) * cplx{std::cos(a), 0.0} + tau1_op() * (-im * std::sin(a));
  return std::exp(-im * p.gt()) * (projector(ProjectorKind::E1) * rot);
}

/// Z = E2 (H/g - 1) E2, the generator of motion inside the E2-survived space.
inline Matrix z_operator(const AbstractParams& p) {
  const Matrix e2 = projector(ProjectorKind::E2);
  const Matrix h_reduced =
      p.alpha * tau1_op() + p.beta * sigma1_op() + p.gamma * tau1_sigma1_op();
  return e2 * h_reduced * e2;
}

/// N -> infinity limit under E2: exp(-igT) exp(-igT Z) E2.
inline Matrix zeno_limit_e2(const AbstractParams& p) {
  const Matrix z = z_operator(p);
  return std::exp(-im * p.gt()) * (mat_exp(z, -im * p.gt()) * projector(ProjectorKind::E2));
}

}  // namespace zeno
