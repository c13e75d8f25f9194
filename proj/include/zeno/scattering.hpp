#pragma once

#include <cmath>
#include <utility>

#include "zeno/linalg.hpp"

namespace zeno {

/// Stationary scattering setup: N magnetic slabs of width a (field along x),
/// separated by field-free gaps of width b, hit by a spin-up plane wave of
/// wavenumber k. The spin-diagonal basis |+-> = (|up> +- |down>)/sqrt(2) sees
/// internal wavenumbers k_pm = k sqrt(1 -+ 2 zeta), zeta = muB / 2E.
///
/// Complex branch policy: k_pm by principal square root, eta_pm = Log(k/k_pm)
/// by principal logarithm, so the same slab formulas cover propagating and
/// evanescent (zeta > 1/2) channels.
struct ScatterParams {
  double k;
  double mass;
  double mu_b;
  double a;
  double b;
  long n_slabs;

  // derived, fixed at construction
  double energy = 0.0;
  double zeta = 0.0;
  double width_total = 0.0;  // D = N a
  double y_total = 0.0;      // y_N = N (a + b)
  cplx k_plus{}, k_minus{};
  cplx eta_plus{}, eta_minus{};
  bool degenerate_channel = false;  // zeta == 1/2 within 1e-14

  ScatterParams(double k_, double mass_, double mu_b_, double a_, double b_, long n)
      : k(k_), mass(mass_), mu_b(mu_b_), a(a_), b(b_), n_slabs(n) {
    if (!(k > 0.0)) throw InvalidParameter("k must be positive");
    if (!(mass > 0.0)) throw InvalidParameter("mass must be positive");
    if (mu_b < 0.0) throw InvalidParameter("muB must be non-negative");
    if (!(a > 0.0)) throw InvalidParameter("slab width a must be positive");
    if (b < 0.0) throw InvalidParameter("gap width b must be non-negative");
    if (n < 1) throw InvalidParameter("slab count must be >= 1");
    energy = k * k / (2.0 * mass);
    zeta = mu_b / (2.0 * energy);
    width_total = static_cast<double>(n) * a;
    y_total = static_cast<double>(n) * (a + b);
    k_plus = k * std::sqrt(cplx{1.0 - 2.0 * zeta, 0.0});
    k_minus = k * std::sqrt(cplx{1.0 + 2.0 * zeta, 0.0});
    degenerate_channel = std::abs(zeta - 0.5) < 1e-14;
    if (!degenerate_channel) {
      eta_plus = std::log(k / k_plus);
      eta_minus = std::log(k / k_minus);
    }
  }

  /// Everything observable depends only on (ka, kb, zeta, N); this fixes
  /// k = 1, m = 1 (so E = 1/2 and muB = zeta).
  static ScatterParams dimensionless(double ka, double kb, double zeta, long n) {
    return ScatterParams(1.0, 1.0, zeta, ka, kb, n);
  }

  double ka() const { return k * a; }
  double kb() const { return k * b; }
  double kd() const { return k * width_total; }
};

/// Plane-wave amplitudes for a spin-up incident state; t/r carry the spin
/// label of the outgoing wave. In field-free incident/outgoing media all
/// four channels share wavenumber k, so the fluxes add to one.
struct ScatterAmplitudes {
  cplx t_up{}, t_down{}, r_up{}, r_down{};

  cplx t_plus() const { return t_up + t_down; }
  cplx t_minus() const { return t_up - t_down; }
  cplx r_plus() const { return r_up + r_down; }
  cplx r_minus() const { return r_up - r_down; }

  double flux() const {
    return std::norm(t_up) + std::norm(t_down) + std::norm(r_up) + std::norm(r_down);
  }
};

inline void require_nondegenerate(const ScatterParams& p) {
  if (p.degenerate_channel)
    throw DegenerateChannel("zeta == 1/2: spin-+ wavenumber vanishes inside the slab");
}

/// diag(e^{i phi}, e^{-i phi}) -- free flight over phase phi for an (R, L) pair.
inline Matrix gap_phase(double phi) {
  return Matrix::diagonal({std::exp(im * phi), std::exp(-im * phi)});
}

/// Single-slab transfer matrices (M+, M-) acting on (R, L) amplitude pairs of
/// the respective spin channel, unimodular by construction.
inline std::pair<Matrix, Matrix> transfer_matrix(const ScatterParams& p) {
  require_nondegenerate(p);
  auto slab = [&p](cplx kpm, cplx eta) {
    const cplx arg = kpm * p.a;
    const cplx c = std::cos(arg), s = std::sin(arg);
    const cplx ch = std::cosh(eta), sh = std::sinh(eta);
    Matrix m(2);
    m(0, 0) = c + im * ch * s;
    m(0, 1) = -im * sh * s;
    m(1, 0) = im * sh * s;
    m(1, 1) = c - im * ch * s;
    return m;
  };
  return {slab(p.k_plus, p.eta_plus), slab(p.k_minus, p.eta_minus)};
}

namespace detail {

// [N] = (q^N - q^{-N})/(q - q^{-1}) where q + 1/q = 2h; at a band edge
// (q -> +-1) the limit N q^{N-1} applies.
inline cplx chebyshev_bracket_coeff(cplx h, long n) {
  if (n < 0) return 0.0;
  cplx root = std::sqrt(h * h - 1.0);
  cplx q = h + root;
  if (std::abs(h - root) > std::abs(q)) q = h - root;  // keep |q| >= 1
  const cplx qi = 1.0 / q;
  if (std::abs(q - qi) < 1e-8) {
    return static_cast<double>(n) * std::pow(q, static_cast<double>(n - 1));
  }
  return (std::pow(q, static_cast<double>(n)) - std::pow(qi, static_cast<double>(n))) /
         (q - qi);
}

// [N] cell - [N-1] 1, which by Cayley-Hamilton equals cell^N for det(cell)=1.
inline Matrix chebyshev_power(const Matrix& cell, long n) {
  const cplx h = 0.5 * cell.trace();
  const cplx cn = chebyshev_bracket_coeff(h, n);
  const cplx cn1 = chebyshev_bracket_coeff(h, n - 1);
  return cn * cell - cn1 * Matrix::identity(cell.dim());
}

}  // namespace detail

/// Full-lattice transfer (e^{ikb tau_3} M_pm)^N for each spin channel.
inline std::pair<Matrix, Matrix> lattice_transfer(const ScatterParams& p) {
  auto [mp, mm] = transfer_matrix(p);
  const Matrix g = gap_phase(p.kb());
  return {mat_power(g * mp, static_cast<unsigned long>(p.n_slabs)),
          mat_power(g * mm, static_cast<unsigned long>(p.n_slabs))};
}

/// Transmission/reflection through the N-slab lattice with no measurements.
/// Boundary conditions: unit incident amplitude, nothing incoming from the
/// right; the transmitted phase is referenced at y_N = N(a+b).
inline ScatterAmplitudes solve_no_measurement(const ScatterParams& p) {
  auto [mp, mm] = transfer_matrix(p);
  const Matrix g = gap_phase(p.kb());
  const cplx out_phase = std::exp(-im * (p.k * p.y_total));

  auto channel = [&](const Matrix& m) {
    const Matrix w = detail::chebyshev_power(g * m, p.n_slabs);
    if (std::abs(w(1, 1)) < 1e-14)
      throw SingularMatrix("degenerate lattice: W_22 vanished");
    const cplx r = -w(1, 0) / w(1, 1);
    // row elimination gives t = det(W)/W_22 up to the phase; the cell is
    // unimodular, so det(W) = 1 -- the explicit difference of the two
    // O(q^N) products would cancel catastrophically in forbidden bands
    const cplx t = out_phase / w(1, 1);
    return std::pair<cplx, cplx>{t, r};
  };

  const auto [tp, rp] = channel(mp);
  const auto [tm, rm] = channel(mm);
  ScatterAmplitudes amp;
  amp.t_up = 0.5 * (tp + tm);
  amp.t_down = 0.5 * (tp - tm);
  amp.r_up = 0.5 * (rp + rm);
  amp.r_down = 0.5 * (rp - rm);
  return amp;
}

enum class Band { Allowed, Forbidden };

/// Half-trace of the unit cell per channel: |h| <= 1 admits Bloch waves,
/// |h| > 1 forbids propagation and the lattice transmission dies off
/// exponentially with N.
inline std::pair<double, double> band_half_traces(const ScatterParams& p) {
  require_nondegenerate(p);
  auto half_trace = [&p](cplx kpm, cplx eta) {
    const cplx arg = kpm * p.a;
    const cplx h = std::cos(p.kb()) * std::cos(arg) -
                   std::cosh(eta) * std::sin(p.kb()) * std::sin(arg);
    return h.real();  // imaginary part cancels identically
  };
  return {half_trace(p.k_plus, p.eta_plus), half_trace(p.k_minus, p.eta_minus)};
}

inline std::pair<Band, Band> band_classify(const ScatterParams& p) {
  const auto [hp, hm] = band_half_traces(p);
  auto cls = [](double h) { return std::abs(h) <= 1.0 ? Band::Allowed : Band::Forbidden; };
  return {cls(hp), cls(hm)};
}

/// (E, muB) making a single width-D barrier totally transmitting with spin
/// flip: k_pm D integer multiples of pi with opposite parity.
struct ResonanceParams {
  double energy;
  double mu_b;
  double k;
  double zeta;
  double kd;
};

inline ResonanceParams total_transmission_params(int n_minus, int n_plus, double mass, double width) {
  if (n_minus < 1 || n_plus <= n_minus)
    throw InvalidParameter("need n_plus > n_minus >= 1");
  if ((n_plus - n_minus) % 2 == 0)
    throw InvalidParameter("n_plus - n_minus must be odd");
  const double np2 = static_cast<double>(n_plus) * n_plus;
  const double nm2 = static_cast<double>(n_minus) * n_minus;
  ResonanceParams r{};
  r.energy = pi * pi * (np2 + nm2) / (4.0 * mass * width * width);
  r.mu_b = pi * pi * (np2 - nm2) / (4.0 * mass * width * width);
  r.k = std::sqrt(2.0 * mass * r.energy);
  r.zeta = r.mu_b / (2.0 * r.energy);
  r.kd = r.k * width;
  return r;
}

}  // namespace zeno
