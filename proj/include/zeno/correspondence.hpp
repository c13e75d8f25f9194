#pragma once

#include <algorithm>
#include <cmath>

#include "zeno/abstract_model.hpp"
#include "zeno/scattering.hpp"

namespace zeno {

// Bridge between the stationary transfer-matrix picture and the abstract
// dynamical model: the single-slab scattering data can be written as four
// unimodular phase factors, matched at small ka by an effective dynamical
// Hamiltonian, and the full transfer matrix is reproduced exactly by a
// non-Hermitian generator exponentiated over the traversal time T = m a / k.

/// The four phase factors of a single slab together with their angle
/// decomposition: M_{+-,c} = exp(i (+- xi_c + phi_c)) per spin channel c.
struct PhaseData {
  cplx m_plus_plus, m_minus_plus;    // spin-+ channel
  cplx m_plus_minus, m_minus_minus;  // spin-- channel
  double xi_plus, xi_minus;
  double phi_plus, phi_minus;
  double hadamard_residual;  // worst mismatch of the 4x4 amplitude relation
};

inline PhaseData phase_factors(const ScatterParams& p) {
  if (p.zeta >= 0.5)
    throw InvalidParameter("phase factors are defined for propagating channels (zeta < 1/2)");
  auto [mp, mm] = transfer_matrix(p);

  PhaseData d{};
  d.m_plus_plus = (1.0 + mp(1, 0)) / mp(1, 1);
  d.m_minus_plus = (1.0 - mp(1, 0)) / mp(1, 1);
  d.m_plus_minus = (1.0 + mm(1, 0)) / mm(1, 1);
  d.m_minus_minus = (1.0 - mm(1, 0)) / mm(1, 1);

  auto angles = [&p](cplx kpm, cplx eta, double& xi, double& phi) {
    const double sin_ka = std::real(std::sin(kpm * p.a));
    const double cos_ka = std::real(std::cos(kpm * p.a));
    const double sh = std::real(std::sinh(eta));
    const double ch = std::real(std::cosh(eta));
    xi = std::atan(sh * sin_ka);
    phi = std::atan2(ch * sin_ka, cos_ka);
  };
  angles(p.k_plus, p.eta_plus, d.xi_plus, d.phi_plus);
  angles(p.k_minus, p.eta_minus, d.xi_minus, d.phi_minus);

  // Hadamard-type relation tying the slab amplitudes to the phase factors.
  const cplx r1u = 0.5 * (1.0 / mp(1, 1) + 1.0 / mm(1, 1));
  const cplx r1d = 0.5 * (1.0 / mp(1, 1) - 1.0 / mm(1, 1));
  const cplx l0u = -0.5 * (mp(1, 0) / mp(1, 1) + mm(1, 0) / mm(1, 1));
  const cplx l0d = -0.5 * (mp(1, 0) / mp(1, 1) - mm(1, 0) / mm(1, 1));
  const cplx lhs[4] = {r1u + r1d + l0u + l0d, r1u - r1d + l0u - l0d,
                       r1u + r1d - l0u - l0d, r1u - r1d - l0u + l0d};
  const cplx rhs[4] = {d.m_minus_plus, d.m_minus_minus, d.m_plus_plus, d.m_plus_minus};
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
  d.hadamard_residual = worst;
  return d;
}

/// Exact single-slab amplitudes in the convention that makes them directly
/// comparable to the dynamical model: (1, -i zeta ka, 0, -i zeta ka) + O((ka)^2).
inline ScatterAmplitudes small_a_amplitudes(const ScatterParams& p) {
  auto [mp, mm] = transfer_matrix(p);
  const cplx eka = std::exp(-im * p.ka());
  ScatterAmplitudes amp;
  amp.t_up = eka * 0.5 * (1.0 / mp(1, 1) + 1.0 / mm(1, 1));
  amp.t_down = eka * 0.5 * (1.0 / mp(1, 1) - 1.0 / mm(1, 1));
  amp.r_up = -0.5 * (mp(1, 0) / mp(1, 1) + mm(1, 0) / mm(1, 1));
  amp.r_down = -0.5 * (mp(1, 0) / mp(1, 1) - mm(1, 0) / mm(1, 1));
  return amp;
}

/// Dynamical parameters reproducing the slab's leading-order scattering data:
/// H = muB (1 + tau_1) sigma_1 evolved for the traversal time T = m a / k,
/// i.e. (g, alpha, beta, gamma) = (muB, 0, 1, 1) with beta g T = zeta ka.
inline AbstractParams matched_dynamical_hamiltonian(const ScatterParams& p) {
  if (p.zeta >= 0.5)
    throw InvalidParameter("parameter matching assumes a propagating slab (zeta < 1/2)");
  const double traversal = p.mass * p.a / p.k;
  return AbstractParams(p.mu_b, 0.0, 1.0, 1.0, traversal);
}

/// G_d = muB (i tau_2 + tau_3) sigma_1 - 2E tau_3 on direction (x) spin.
inline Matrix dynamical_generator(const ScatterParams& p) {
  const Matrix itau2_plus_tau3 = im * pauli(2) + pauli(3);
  return p.mu_b * kron(itau2_plus_tau3, pauli(1)) -
         (2.0 * p.energy) * kron(pauli(3), Matrix::identity(2));
}

/// Exponentiates G_d over T = m a / k, projects onto the spin-+- eigenspaces
/// and compares with the transfer matrices entry by entry; returns the worst
/// absolute deviation. The identity is exact at finite a, branch-free in zeta.
inline double generator_reproduces_transfer(const ScatterParams& p) {
  require_nondegenerate(p);
  const double traversal = p.mass * p.a / p.k;
  const Matrix u = mat_exp(dynamical_generator(p), -im * traversal);
  auto block = [&u](double spin_sign) {
    // spin eigenvector (1, spin_sign)/sqrt(2) in each direction slot
    Matrix b(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        cplx acc = 0.0;
        for (int s1 = 0; s1 < 2; ++s1)
          for (int s2 = 0; s2 < 2; ++s2) {
            const double w1 = (s1 == 0) ? 1.0 : spin_sign;
            const double w2 = (s2 == 0) ? 1.0 : spin_sign;
            acc += 0.5 * w1 * w2 * u(i * 2 + s1, j * 2 + s2);
          }
        b(i, j) = acc;
      }
    return b;
  };
  auto [mp, mm] = transfer_matrix(p);
  const Matrix dp = block(1.0) - mp;
  const Matrix dm = block(-1.0) - mm;
  return std::max(dp.max_abs(), dm.max_abs());
}

}  // namespace zeno
