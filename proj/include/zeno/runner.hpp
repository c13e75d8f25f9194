#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "zeno/config.hpp"
#include "zeno/verify.hpp"

namespace zeno {

/// What a command produced: a data table, or check results for the verify
/// commands (verify_failed drives exit code 2).
struct RunOutput {
  Table table;
  std::vector<CheckResult> checks;
  bool verify_failed = false;
};

inline RunConfig default_config(const std::string& command) {
  RunConfig cfg;
  cfg.command = command;
  cfg.set_default("format", "csv");
  if (command == "ideal") {
    cfg.set_default("omega_t", format_g17(pi));
    cfg.set_default("axis.n", "1,1024,11,geom");
  } else if (command == "abstract") {
    cfg.set_default("g_t", format_g17(pi / 2.0));
    cfg.set_default("alpha", "2");
    cfg.set_default("beta", "-1");
    cfg.set_default("axis.n", "100,10000,3,geom");
  } else if (command == "scatter") {
    cfg.set_default("units", "dimensionless");
    cfg.set_default("ka", "1");
    cfg.set_default("kb", "0.5");
    cfg.set_default("zeta", "0.3");
    cfg.set_default("n", "5");
    cfg.set_default("axis.ka", "0.1,3.1,31");
  } else if (command == "zeno-scatter") {
    cfg.set_default("scheme", "sensitive");
    cfg.set_default("regime", "limit");
    cfg.set_default("zeta", "0.3");
    cfg.set_default("axis.kD", "0.5,30,60");
    cfg.set_default("kb", "0.1");
    cfg.set_default("n", "100");
  } else if (command == "fig5a") {
    cfg.set_default("axis.kD", "0,30,200");
    cfg.set_default("axis.zeta", "0,1.2,200");
  } else if (command == "fig5b") {
    cfg.set_default("axis.b1", "0,30,200");
    cfg.set_default("axis.kD", "1.5,30,200");
  } else if (command == "fig6") {
    cfg.set_default("n_max", "20");
    cfg.set_default("n_offset", "9");
  } else if (command == "verify-appendix" || command == "verify-all") {
    // no parameters
  } else {
    throw ConfigError("unknown command: " + command);
  }
  return cfg;
}

namespace detail {

// Odometer sweep, first axis slowest; emits axis values then payload columns.
inline void sweep(const std::vector<Axis>& axes,
                  const std::function<std::vector<double>(const std::map<std::string, double>&)>& eval,
                  Table& table) {
  std::map<std::string, double> point;
  std::vector<int> idx(axes.size(), 0);
  while (true) {
    std::vector<double> row;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const double v = axes[a].value(idx[a]);
      point[axes[a].name] = v;
      row.push_back(v);
    }
    const std::vector<double> payload = eval(point);
    row.insert(row.end(), payload.begin(), payload.end());
    table.rows.push_back(std::move(row));
    int a = static_cast<int>(axes.size()) - 1;
    while (a >= 0) {
      if (++idx[static_cast<std::size_t>(a)] < axes[static_cast<std::size_t>(a)].steps) break;
      idx[static_cast<std::size_t>(a)] = 0;
      --a;
    }
    if (a < 0) break;
  }
}

inline long to_count(double v, const std::string& what) {
  const double r = std::round(v);
  if (!(r >= 1.0) || std::abs(v - r) > 1e-9)
    throw ConfigError(what + " must be a positive integer, got " + format_g12(v));
  return static_cast<long>(r);
}

// Every axis must be a key the command actually sweeps; a leftover default
// axis would silently multiply the output with constant rows.
inline void require_axes_among(const std::vector<Axis>& axes,
                               std::initializer_list<const char*> allowed) {
  for (const Axis& ax : axes) {
    bool ok = false;
    for (const char* name : allowed) ok = ok || ax.name == name;
    if (!ok) {
      std::string names;
      for (const char* name : allowed) names += std::string(names.empty() ? "" : ", ") + name;
      throw ConfigError("axis." + ax.name + " is not swept by this command (use " +
                        (names.empty() ? "no axes" : names) +
                        "); clear unwanted axes with --set axis." + ax.name + "=");
    }
  }
}

inline ScatterParams scatter_params_from(const RunConfig& cfg,
                                         const std::map<std::string, double>& point) {
  auto pick = [&](const std::string& key, double fallback) {
    auto it = point.find(key);
    if (it != point.end()) return it->second;
    return cfg.get_double(key, fallback);
  };
  const long n = to_count(pick("n", 1.0), "slab count n");
  if (cfg.get_string("units", "dimensionless") == "physical") {
    return ScatterParams(pick("k", 1.0), pick("m", 1.0), pick("mu_b", 0.0), pick("a", 1.0),
                         pick("b", 0.0), n);
  }
  return ScatterParams::dimensionless(pick("ka", 1.0), pick("kb", 0.0), pick("zeta", 0.0), n);
}

}  // namespace detail

inline RunOutput run_command(const RunConfig& cfg) {
  RunOutput out;
  const std::vector<Axis> axes = cfg.axes();
  std::vector<std::string> axis_names;
  for (const Axis& a : axes) axis_names.push_back(a.name);

  if (cfg.command == "ideal") {
    if (axes.size() != 1 || axes[0].name != "n")
      throw ConfigError("ideal sweeps exactly one axis, axis.n");
    const double omega_t = cfg.get_double("omega_t", pi);
    if (!(omega_t > 0.0)) throw ConfigError("omega_t must be positive");
    out.table.columns = {"n", "survival"};
    detail::sweep(axes, [&](const std::map<std::string, double>& pt) {
      const long n = detail::to_count(pt.at("n"), "n");
      return std::vector<double>{survival_after_n(IdealParams{1.0, omega_t, n})};
    }, out.table);
    // axis column should carry the rounded measurement count
    for (auto& row : out.table.rows) row[0] = std::round(row[0]);
  } else if (cfg.command == "abstract") {
    if (axes.size() != 1 || axes[0].name != "n")
      throw ConfigError("abstract sweeps exactly one axis, axis.n");
    const double gt = cfg.get_double("g_t", pi / 2.0);
    const double alpha = cfg.get_double("alpha", 2.0);
    const double beta = cfg.get_double("beta", -1.0);
    const double gamma = cfg.get_double("gamma", alpha * beta);
    const AbstractParams p{1.0, alpha, beta, gamma, gt};
    const Matrix lim1 = zeno_limit_e1(p);
    const Matrix lim2 = zeno_limit_e2(p);
    out.table.columns = {"n",         "surv_e1",       "surv_e2",      "surv_e1_limit",
                         "surv_e2_limit", "err_e1", "err_e2"};
    const double s1 = apply(lim1, FourState::r_up()).norm_sq();
    const double s2 = apply(lim2, FourState::r_up()).norm_sq();
    detail::sweep(axes, [&](const std::map<std::string, double>& pt) {
      const long n = detail::to_count(pt.at("n"), "n");
      const Matrix v1 = zeno_chain_finite(p, ProjectorKind::E1, n);
      const Matrix v2 = zeno_chain_finite(p, ProjectorKind::E2, n);
      return std::vector<double>{apply(v1, FourState::r_up()).norm_sq(),
                                 apply(v2, FourState::r_up()).norm_sq(),
                                 s1,
                                 s2,
                                 (v1 - lim1).norm(),
                                 (v2 - lim2).norm()};
    }, out.table);
    for (auto& row : out.table.rows) row[0] = std::round(row[0]);
  } else if (cfg.command == "scatter") {
    if (axes.size() > 2) throw ConfigError("scatter supports at most two sweep axes");
    if (cfg.get_string("units", "dimensionless") == "physical")
      detail::require_axes_among(axes, {"k", "m", "mu_b", "a", "b", "n"});
    else
      detail::require_axes_among(axes, {"ka", "kb", "zeta", "n"});
    out.table.columns = axis_names;
    for (const char* c : {"T_up", "T_down", "R_up", "R_down", "flux", "band_plus", "band_minus"})
      out.table.columns.push_back(c);
    detail::sweep(axes, [&](const std::map<std::string, double>& pt) {
      const ScatterParams p = detail::scatter_params_from(cfg, pt);
      const ScatterAmplitudes amp = solve_no_measurement(p);
      const auto bands = band_classify(p);
      return std::vector<double>{std::norm(amp.t_up),
                                 std::norm(amp.t_down),
                                 std::norm(amp.r_up),
                                 std::norm(amp.r_down),
                                 amp.flux(),
                                 bands.first == Band::Allowed ? 1.0 : 0.0,
                                 bands.second == Band::Allowed ? 1.0 : 0.0};
    }, out.table);
  } else if (cfg.command == "zeno-scatter") {
    if (axes.size() > 2) throw ConfigError("zeno-scatter supports at most two sweep axes");
    const std::string scheme = cfg.get_string("scheme", "sensitive");
    const std::string regime = cfg.get_string("regime", "limit");
    if (scheme != "sensitive" && scheme != "insensitive")
      throw ConfigError("scheme must be sensitive or insensitive");
    if (regime != "limit" && regime != "finite")
      throw ConfigError("regime must be limit or finite");
    if (regime == "limit")
      detail::require_axes_among(axes, {"kD", "zeta"});
    else
      detail::require_axes_among(axes, {"ka", "kb", "zeta", "n"});
    out.table.columns = axis_names;
    for (const char* c : {"T_up", "R_up", "R_down", "survival"}) out.table.columns.push_back(c);
    detail::sweep(axes, [&](const std::map<std::string, double>& pt) {
      MeasuredChainResult r;
      if (regime == "limit") {
        auto get = [&](const std::string& key, double fallback) {
          auto it = pt.find(key);
          return it != pt.end() ? it->second : cfg.get_double(key, fallback);
        };
        const double kd = get("kD", 10.0);
        const double zeta = get("zeta", 0.3);
        if (kd < 0.0 || zeta < 0.0) throw ConfigError("kD and zeta must be non-negative");
        r = scheme == "sensitive" ? sensitive_limit(kd, zeta) : insensitive_limit(kd);
      } else {
        const ScatterParams p = detail::scatter_params_from(cfg, pt);
        r = scheme == "sensitive" ? sensitive_chain(p, ChainRegime::FiniteN)
                                  : insensitive_chain(p, ChainRegime::FiniteN);
      }
      return std::vector<double>{std::norm(r.amplitudes.t_up), std::norm(r.amplitudes.r_up),
                                 std::norm(r.amplitudes.r_down), r.survival};
    }, out.table);
  } else if (cfg.command == "fig5a") {
    if (axes.size() != 2 || axes[0].name != "kD" || axes[1].name != "zeta")
      throw ConfigError("fig5a needs exactly axis.kD and axis.zeta");
    out.table.columns = {"kD", "zeta", "T_up"};
    detail::sweep(axes, [&](const std::map<std::string, double>& pt) {
      return std::vector<double>{
          std::norm(sensitive_limit(pt.at("kD"), pt.at("zeta")).amplitudes.t_up)};
    }, out.table);
  } else if (cfg.command == "fig5b") {
    if (axes.size() != 2 || axes[0].name != "b1" || axes[1].name != "kD")
      throw ConfigError("fig5b needs exactly axis.b1 and axis.kD");
    out.table.columns = {"B1", "kD", "T_up"};
    detail::sweep(axes, [&](const std::map<std::string, double>& pt) {
      const double kd = pt.at("kD"), b1 = pt.at("b1");
      if (!(kd > 0.0)) throw ConfigError("fig5b needs kD > 0 to map B1 onto zeta");
      const double zeta = (b1 / kd) * (b1 / kd);
      return std::vector<double>{std::norm(sensitive_limit(kd, zeta).amplitudes.t_up)};
    }, out.table);
  } else if (cfg.command == "fig6") {
    detail::require_axes_among(axes, {});
    const long n_max = cfg.get_long("n_max", 20);
    const long n_offset = cfg.get_long("n_offset", 9);
    out.table.columns = {"n", "T_down_nomeas", "T_up_insensitive", "T_up_sensitive"};
    for (const ZenoReportRow& row :
         zeno_vs_no_measurement_report(static_cast<int>(n_max), static_cast<int>(n_offset)))
      out.table.rows.push_back({static_cast<double>(row.n), row.t_down_no_meas,
                                row.t_up_insensitive, row.t_up_sensitive});
  } else if (cfg.command == "verify-appendix") {
    detail::require_axes_among(axes, {});
    out.checks = verify_correspondence();
  } else if (cfg.command == "verify-all") {
    detail::require_axes_among(axes, {});
    out.checks = verify_all();
  } else {
    throw ConfigError("unknown command: " + cfg.command);
  }

  for (const CheckResult& c : out.checks)
    if (!c.passed) out.verify_failed = true;
  for (const auto& row : out.table.rows)
    for (double v : row)
      if (!std::isfinite(v)) throw std::runtime_error("non-finite value in sweep output");
  return out;
}

}  // namespace zeno
