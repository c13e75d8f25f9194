#pragma once

#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "zeno/sweep.hpp"

namespace zeno {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r\n");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t\r\n");
  return s.substr(from, to - from + 1);
}

}  // namespace detail

/// Run description: a command plus a flat key=value store. Sweep axes are
/// keys of the form `axis.<name> = lo,hi,steps[,geom]`; everything else is a
/// scalar model parameter or an output option. Serialization is canonical
/// (sorted keys), so parse(serialize(c)) == c.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> values;

  bool operator==(const RunConfig&) const = default;

  bool has(const std::string& key) const { return values.count(key) > 0; }

  void set(const std::string& key, const std::string& value) { values[key] = value; }
  void set(const std::string& key, double value) { values[key] = format_g17(value); }

  /// Sets only if absent; used to lay down per-command defaults.
  void set_default(const std::string& key, const std::string& value) {
    values.emplace(key, value);
  }

  std::string get_string(const std::string& key, const std::string& fallback = "") const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
  }

  double get_double(const std::string& key, double fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    return parse_double(key, it->second);
  }

  double require_double(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw ConfigError("missing required key: " + key);
    return parse_double(key, it->second);
  }

  long get_long(const std::string& key, long fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(it->second.c_str(), &end, 10);
    if (errno != 0 || end == it->second.c_str() || *end != '\0')
      throw ConfigError("key '" + key + "': not an integer: " + it->second);
    return v;
  }

  /// "key=value", as supplied by --set on the command line. An empty value
  /// removes the key, which is how per-command defaults are switched off.
  void apply_override(const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("--set expects key=value, got: " + kv);
    const std::string key = detail::trim(kv.substr(0, eq));
    const std::string value = detail::trim(kv.substr(eq + 1));
    if (value.empty())
      values.erase(key);
    else
      set(key, value);
  }

  /// All `axis.<name>` keys, in key order (so the first axis is the slow,
  /// grid-major one).
  std::vector<Axis> axes() const {
    std::vector<Axis> out;
    for (const auto& [key, value] : values) {
      if (key.rfind("axis.", 0) != 0) continue;
      Axis ax;
      ax.name = key.substr(5);
      std::vector<std::string> parts;
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) parts.push_back(detail::trim(item));
      if (parts.size() != 3 && parts.size() != 4)
        throw ConfigError("key '" + key + "': expected lo,hi,steps[,geom]");
      ax.lo = parse_double(key, parts[0]);
      ax.hi = parse_double(key, parts[1]);
      ax.steps = static_cast<int>(std::strtol(parts[2].c_str(), nullptr, 10));
      if (parts.size() == 4) {
        if (parts[3] == "geom")
          ax.geometric = true;
        else if (parts[3] != "linear")
          throw ConfigError("key '" + key + "': unknown scale '" + parts[3] + "'");
      }
      if (ax.steps < 2) throw ConfigError("key '" + key + "': swept axes need steps >= 2");
      out.push_back(ax);
    }
    return out;
  }

  std::string serialize() const {
    std::string out = "command = " + command + "\n";
    for (const auto& [key, value] : values) out += key + " = " + value + "\n";
    return out;
  }

  /// Parses `key = value` lines; '#' starts a comment; a `command` key sets
  /// the command. Errors carry the line number.
  static RunConfig parse(std::istream& in, const std::string& source = "<config>") {
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = detail::trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError(source + ":" + std::to_string(lineno) + ": expected key = value");
      const std::string key = detail::trim(line.substr(0, eq));
      const std::string value = detail::trim(line.substr(eq + 1));
      if (key.empty())
        throw ConfigError(source + ":" + std::to_string(lineno) + ": empty key");
      if (key == "command")
        cfg.command = value;
      else
        cfg.values[key] = value;
    }
    return cfg;
  }

  static RunConfig from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse(in, path);
  }

 private:
  static double parse_double(const std::string& key, const std::string& text) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (errno != 0 || end == text.c_str() || *end != '\0')
      throw ConfigError("key '" + key + "': not a number: " + text);
    return v;
  }
};

}  // namespace zeno
