#pragma once

#include <cmath>
#include <vector>

#include "zeno/common.hpp"

namespace zeno {

/// Least-squares line y = slope * x + intercept. `normalized_residual` is
/// rms(fit error) / rms(y - mean), i.e. the share of the data's spread the
/// line fails to explain -- the decay-classification tests bound it.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  double normalized_residual = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw InvalidParameter("fit_line needs matching samples, at least two");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw InvalidParameter("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0;
  const double ymean = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.slope * x[i] + f.intercept);
    ss_res += e * e;
    ss_tot += (y[i] - ymean) * (y[i] - ymean);
  }
  f.rms_residual = std::sqrt(ss_res / n);
  f.normalized_residual = ss_tot > 0.0 ? std::sqrt(ss_res / ss_tot) : (ss_res > 0.0 ? 1.0 : 0.0);
  return f;
}

}  // namespace zeno
