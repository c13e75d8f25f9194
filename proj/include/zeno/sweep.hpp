#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "zeno/common.hpp"

namespace zeno {

/// 12 significant digits -- enough to regenerate files bit-identically at the
/// tolerances used anywhere in this project.
inline std::string format_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Round-trip-exact formatting, for config values rather than data files.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// One sweep axis: `steps` samples from lo to hi, linearly or geometrically.
struct Axis {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
  bool geometric = false;

  double value(int i) const {
    if (steps < 2) return lo;
    const double t = static_cast<double>(i) / static_cast<double>(steps - 1);
    if (geometric) {
      if (!(lo > 0.0) || !(hi > 0.0))
        throw InvalidParameter("geometric axis needs positive endpoints: " + name);
      return lo * std::pow(hi / lo, t);
    }
    return lo + (hi - lo) * t;
  }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Writes `# <comment>` then a delimiter-joined column line then the rows.
inline void write_table(std::ostream& os, const Table& table, char delim,
                        const std::string& comment) {
  if (!comment.empty()) os << "# " << comment << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) os << delim;
    os << table.columns[c];
  }
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << delim;
      os << format_g12(row[c]);
    }
    os << "\n";
  }
}

}  // namespace zeno
