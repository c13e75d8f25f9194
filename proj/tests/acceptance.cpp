// Acceptance suite: one pass/fail line per criterion, exit 0 only if all pass.
// Usage: acceptance [fig6_regression.csv]

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "zeno/abstract_model.hpp"
#include "zeno/correspondence.hpp"
#include "zeno/fit.hpp"
#include "zeno/ideal_spin.hpp"
#include "zeno/runner.hpp"
#include "zeno/scattering.hpp"
#include "zeno/zeno_scattering.hpp"

using namespace zeno;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail) {
  std::printf("[%s] %2d. %s  --  %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
              detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// --- 1 -----------------------------------------------------------------

void criterion_ideal_freezing() {
  const double p1 = survival_after_n_matched(1);
  const double p2 = survival_after_n_matched(2);
  bool monotone = true;
  double prev = p2;
  for (long n = 3; n <= 10000; ++n) {
    const double cur = survival_after_n_matched(n);
    if (!(cur > prev)) {
      monotone = false;
      break;
    }
    prev = cur;
  }
  const double p6 = survival_after_n_matched(1000000);
  const bool ok = p1 < 1e-30 && std::abs(p2 - 0.25) <= 1e-12 && monotone && p6 > 1.0 - 3e-6;
  report(1, "ideal Zeno freezing: cos^2N(pi/2N) survival chain", ok,
         "P(1)=" + fmt(p1) + " P(2)=" + fmt(p2) + " monotone=" + (monotone ? "yes" : "no") +
             " 1-P(1e6)=" + fmt(1.0 - p6));
}

// --- 2 -----------------------------------------------------------------

void criterion_case_i_reversal() {
  const AbstractParams p{1.0, -0.5, -1.0, pi};
  const FourState free_out = apply(propagator(p), FourState::r_up());
  const double mag_dev = std::max({std::abs(free_out[0]), std::abs(std::abs(free_out[1]) - 1.0),
                                   std::abs(free_out[2]), std::abs(free_out[3])});
  const FourState zeno_out = apply(zeno_limit_e1(p), FourState::r_up());
  const double state_dev = std::max({std::abs(zeno_out[0]), std::abs(zeno_out[1]),
                                     std::abs(zeno_out[2] - (-im)), std::abs(zeno_out[3])});
  report(2, "case i: free spin-flip transmission vs E1-limit total reflection",
         mag_dev <= 1e-10 && state_dev <= 1e-10,
         "free |R down> dev=" + fmt(mag_dev) + "  -i|L up> dev=" + fmt(state_dev));
}

// --- 3 -----------------------------------------------------------------

void criterion_case_ii_freeze() {
  double state_dev = 0.0, chain_dev = 0.0;
  double worst_slope = -1.0;
  for (int n : {0, 1, 2}) {
    const AbstractParams p{1.0, 2.0 * n, -1.0, pi / 2.0};
    const FourState out = apply(zeno_limit_e1(p), FourState::r_up());
    const cplx expect = -im * (n % 2 == 0 ? 1.0 : -1.0);
    state_dev = std::max({state_dev, std::abs(out[0] - expect), std::abs(out[1]),
                          std::abs(out[2]), std::abs(out[3])});
    const Matrix limit = zeno_limit_e1(p);
    std::vector<double> logn, logerr;
    for (long chain_n : {100L, 1000L, 10000L}) {
      const double err = (zeno_chain_finite(p, ProjectorKind::E1, chain_n) - limit).norm();
      if (chain_n == 10000) chain_dev = std::max(chain_dev, err);
      logn.push_back(std::log10(static_cast<double>(chain_n)));
      logerr.push_back(std::log10(err));
    }
    const double slope = fit_line(logn, logerr).slope;
    if (std::abs(slope + 1.0) > std::abs(worst_slope + 1.0)) worst_slope = slope;
  }
  const bool ok = state_dev <= 1e-10 && chain_dev <= 1e-2 && worst_slope >= -1.2 &&
                  worst_slope <= -0.8;
  report(3, "case ii: E1 limit -i(-1)^n |R up>, chain error O(1/N)", ok,
         "state dev=" + fmt(state_dev) + " N=1e4 err=" + fmt(chain_dev) +
             " slope=" + fmt(worst_slope));
}

// --- 4 -----------------------------------------------------------------

void criterion_e2_operator_algebra() {
  double alg_dev = 0.0, state_dev = 0.0, norm_dev = 0.0;
  for (double alpha : {0.0, 1.0, 2.0}) {
    const AbstractParams p{1.0, alpha, -1.0, pi / 2.0};
    const Matrix shifted = z_operator(p) - 0.5 * Matrix::identity(4);
    const FourState zsq = apply(shifted * shifted, FourState::r_up());
    const double theta = 0.5 * std::sqrt(8.0 * alpha * alpha + 1.0);
    alg_dev = std::max({alg_dev, std::abs(zsq[0] - theta * theta), std::abs(zsq[1]),
                        std::abs(zsq[2]), std::abs(zsq[3])});

    const FourState out = apply(zeno_limit_e2(p), FourState::r_up());
    const cplx pref = std::exp(-1.5 * im * p.gt());
    const cplx c_rup =
        pref * (std::cos(p.gt() * theta) + im / (2.0 * theta) * std::sin(p.gt() * theta));
    const cplx c_l = pref * (im * alpha / theta) * std::sin(p.gt() * theta);
    state_dev = std::max({state_dev, std::abs(out[0] - c_rup), std::abs(out[1]),
                          std::abs(out[2] + c_l), std::abs(out[3] - c_l)});
    norm_dev = std::max(norm_dev, std::abs(out.norm_sq() - 1.0));
  }
  report(4, "E2 algebra: (Z-1/2)^2 = theta^2 on R-up; closed-form limit state",
         alg_dev <= 1e-12 && state_dev <= 1e-10 && norm_dev <= 1e-10,
         "algebra dev=" + fmt(alg_dev) + " state dev=" + fmt(state_dev) +
             " norm dev=" + fmt(norm_dev));
}

// --- 5 -----------------------------------------------------------------

void criterion_transfer_structure() {
  double det_dev = 0.0, flux_dev = 0.0, gen_dev = 0.0;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const double ka = pi * (i + 1) / 20.0;
      const double zeta = 1.2 * j / 19.0;  // never hits 1/2 on this grid
      const ScatterParams p = ScatterParams::dimensionless(ka, 0.8, zeta, 4);
      auto [mp, mm] = transfer_matrix(p);
      det_dev = std::max({det_dev, std::abs(det(mp) - 1.0), std::abs(det(mm) - 1.0)});
      flux_dev = std::max(flux_dev, std::abs(solve_no_measurement(p).flux() - 1.0));
      gen_dev = std::max(gen_dev, generator_reproduces_transfer(p));
    }
  report(5, "transfer matrices: det = 1, flux = 1, generator identity on 20x20 grid",
         det_dev <= 1e-10 && flux_dev <= 1e-9 && gen_dev <= 1e-10,
         "det dev=" + fmt(det_dev) + " flux dev=" + fmt(flux_dev) + " gen dev=" + fmt(gen_dev));
}

// --- 6 -----------------------------------------------------------------

void criterion_total_transmission() {
  double down_dev = 0.0, rest = 0.0;
  for (auto [nm, np] : {std::pair{1, 2}, std::pair{1, 10}, std::pair{2, 5}}) {
    const ResonanceParams res = total_transmission_params(nm, np, 1.0, 1.0);
    const ScatterAmplitudes amp =
        solve_no_measurement(ScatterParams(res.k, 1.0, res.mu_b, 1.0, 0.0, 1));
    down_dev = std::max(down_dev, std::abs(std::norm(amp.t_down) - 1.0));
    rest = std::max(rest, std::norm(amp.t_up) + std::norm(amp.r_up) + std::norm(amp.r_down));
  }
  report(6, "resonant barrier: |t_down|^2 = 1, all else dark", down_dev <= 1e-9 && rest < 1e-9,
         "|t_down|^2 dev=" + fmt(down_dev) + " leakage=" + fmt(rest));
}

// --- 7 -----------------------------------------------------------------

void criterion_band_decay() {
  // both channels forbidden here (checked below), so |t_up|^2 must die off
  const double ka = 1.0, kb = 0.5, zeta = 2.0;
  const auto bands = band_classify(ScatterParams::dimensionless(ka, kb, zeta, 1));
  std::vector<double> ns, logt;
  for (long n : {10L, 20L, 40L}) {
    const ScatterParams p = ScatterParams::dimensionless(ka, kb, zeta, n);
    ns.push_back(static_cast<double>(n));
    logt.push_back(std::log(std::norm(solve_no_measurement(p).t_up)));
  }
  const LineFit f = fit_line(ns, logt);
  const bool ok = bands.first == Band::Forbidden && bands.second == Band::Forbidden &&
                  f.slope < 0.0 && f.normalized_residual < 0.05;
  report(7, "forbidden band: log |t|^2 linear in N over {10,20,40}", ok,
         "slope=" + fmt(f.slope) + " fit residual=" + fmt(f.normalized_residual));
}

// --- 8 -----------------------------------------------------------------

void criterion_insensitive_transmission() {
  double limit_dev = 0.0;
  for (double zeta : {0.0, 0.3, 2.0}) {
    const ScatterParams p = ScatterParams::dimensionless(6.0, 0.0, zeta, 1);
    limit_dev = std::max(limit_dev,
                         std::abs(insensitive_chain(p, ChainRegime::ContinuousLimit).survival - 1.0));
  }
  const double kd = 4.0, zeta = 0.3, kb0 = 0.5;
  bool approaching = true;
  double prev_gap = 2.0, last_gap = 1.0;
  for (long n : {10L, 100L, 1000L}) {
    const ScatterParams p = ScatterParams::dimensionless(kd / static_cast<double>(n),
                                                         kb0 / static_cast<double>(n), zeta, n);
    last_gap = 1.0 - insensitive_chain(p, ChainRegime::FiniteN).survival;
    if (!(last_gap < prev_gap)) approaching = false;
    prev_gap = last_gap;
  }
  report(8, "direction-insensitive limit: |t_up|^2 = 1 (sub-barrier too), finite N approaches",
         limit_dev <= 1e-9 && approaching && last_gap < 1e-2,
         "limit dev=" + fmt(limit_dev) + " final gap=" + fmt(last_gap));
}

// --- 9 -----------------------------------------------------------------

void criterion_sensitive_regimes() {
  double cons_dev = 0.0;
  for (int i = 0; i < 200; ++i)
    for (int j = 0; j < 200; ++j) {
      const double kd = 30.0 * i / 199.0;
      const double zeta = 1.2 * j / 199.0;
      cons_dev = std::max(cons_dev, std::abs(sensitive_limit(kd, zeta).survival - 1.0));
    }

  std::vector<double> logkd, logt_crit, kds, logt_exp;
  for (int i = 0; i < 10; ++i) {
    const double kd = 20.0 * std::pow(10.0, i / 9.0);
    logkd.push_back(std::log(kd));
    kds.push_back(kd);
    logt_crit.push_back(std::log(std::norm(sensitive_limit(kd, zeta_critical).amplitudes.t_up)));
    logt_exp.push_back(std::log(std::norm(sensitive_limit(kd, 1.0).amplitudes.t_up)));
  }
  const double crit_slope = fit_line(logkd, logt_crit).slope;
  const LineFit exp_fit = fit_line(kds, logt_exp);

  // oscillation witness thresholds frozen from the computed curve: at
  // zeta = 0.3 the transmission swings between 0.904 and 0.999 on kD <= 30
  double tmax = 0.0, tmin = 1.0;
  for (int i = 0; i <= 300; ++i) {
    const double t = std::norm(sensitive_limit(30.0 * i / 300.0, 0.3).amplitudes.t_up);
    tmax = std::max(tmax, t);
    tmin = std::min(tmin, t);
  }

  const bool ok = cons_dev <= 1e-9 && std::abs(crit_slope + 2.0) <= 0.1 && exp_fit.slope < 0.0 &&
                  exp_fit.normalized_residual < 0.05 && tmax > 0.99 && tmin < 0.91;
  report(9, "direction-sensitive regimes: conservation, kD^-2 at critical zeta, exp decay, oscillation",
         ok,
         "cons dev=" + fmt(cons_dev) + " crit slope=" + fmt(crit_slope) + " exp residual=" +
             fmt(exp_fit.normalized_residual) + " osc range=[" + fmt(tmin) + "," + fmt(tmax) + "]");
}

// --- 10 ----------------------------------------------------------------

void criterion_fig6(const std::string& regression_path) {
  const auto rows = zeno_vs_no_measurement_report(20, 9);
  double nomeas_dev = 0.0, ins_dev = 0.0;
  bool sensitive_below_one = true;
  for (const ZenoReportRow& row : rows) {
    nomeas_dev = std::max(nomeas_dev, std::abs(row.t_down_no_meas - 1.0));
    ins_dev = std::max(ins_dev, std::abs(row.t_up_insensitive - 1.0));
    if (!(row.t_up_sensitive < 1.0)) sensitive_below_one = false;
  }

  double regression_dev = -1.0;
  std::ifstream reg(regression_path);
  if (reg) {
    regression_dev = 0.0;
    std::string line;
    std::size_t idx = 0;
    while (std::getline(reg, line)) {
      if (line.empty() || line[0] == '#' || line[0] == 'n') continue;
      std::stringstream ss(line);
      std::string cell;
      std::vector<double> vals;
      while (std::getline(ss, cell, ',')) vals.push_back(std::strtod(cell.c_str(), nullptr));
      if (vals.size() == 4 && idx < rows.size()) {
        regression_dev = std::max(regression_dev,
                                  std::abs(vals[3] - rows[idx].t_up_sensitive));
        ++idx;
      }
    }
    if (idx != rows.size()) regression_dev = 1.0;
  }

  const bool ok = nomeas_dev <= 1e-9 && ins_dev <= 1e-9 && sensitive_below_one &&
                  regression_dev >= 0.0 && regression_dev <= 1e-9;
  report(10, "figure-6 table: bare and insensitive columns at 1, sensitive below, regression match",
         ok,
         "nomeas dev=" + fmt(nomeas_dev) + " ins dev=" + fmt(ins_dev) + " regression dev=" +
             (regression_dev < 0.0 ? std::string("file missing") : fmt(regression_dev)));
}

// --- 11 ----------------------------------------------------------------

void criterion_defective_exponential() {
  const Matrix g = z_two(zeta_critical) - (2.0 / 3.0) * Matrix::identity(3);
  double dev = 0.0;
  for (double kd : {1.0, 5.0, 10.0}) {
    const Matrix closed = Matrix::identity(3) - im * kd * g +
                          ((std::exp(2.0 * im * kd) - 1.0 - 2.0 * im * kd) / 4.0) * (g * g);
    dev = std::max(dev, (mat_exp(g, -im * kd) - closed).norm());
  }
  report(11, "defective generator exponential matches the nilpotent closed form", dev <= 1e-8,
         "dev=" + fmt(dev));
}

// --- 12 ----------------------------------------------------------------

void criterion_small_a_matching() {
  const double zeta = 0.3;
  auto residual = [&](double ka) {
    const ScatterAmplitudes amp =
        small_a_amplitudes(ScatterParams::dimensionless(ka, 0.0, zeta, 1));
    const cplx pred = -im * zeta * ka;
    return std::max({std::abs(amp.t_up - 1.0), std::abs(amp.t_down - pred), std::abs(amp.r_up),
                     std::abs(amp.r_down - pred)});
  };
  const double r1 = residual(1e-4);
  const double r2 = residual(5e-5);
  const double ratio = r1 / r2;
  report(12, "appendix matching: slab amplitudes (1, -i zeta ka, 0, -i zeta ka) + O((ka)^2)",
         r1 < 1e-7 && ratio > 3.5 && ratio < 4.5,
         "residual=" + fmt(r1) + " halving ratio=" + fmt(ratio));
}

}  // namespace

int main(int argc, char** argv) {
  const std::string regression = argc > 1 ? argv[1] : "tests/data/fig6_regression.csv";
  criterion_ideal_freezing();
  criterion_case_i_reversal();
  criterion_case_ii_freeze();
  criterion_e2_operator_algebra();
  criterion_transfer_structure();
  criterion_total_transmission();
  criterion_band_decay();
  criterion_insensitive_transmission();
  criterion_sensitive_regimes();
  criterion_fig6(regression);
  criterion_defective_exponential();
  criterion_small_a_matching();
  if (failures == 0) {
    std::printf("all 12 acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", failures);
  return 1;
}
