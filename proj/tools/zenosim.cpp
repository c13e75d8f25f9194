// zenosim -- command-line driver for the neutron-spin Zeno models.
//
//   zenosim <command> [--config FILE] [--set key=value]... [--out FILE]
//           [--format csv|tsv]
//
// Commands: ideal, abstract, scatter, zeno-scatter, fig5a, fig5b, fig6,
// verify-appendix, verify-all. Exit codes: 0 ok, 1 validation error,
// 2 numerical failure, 3 I/O error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zeno/runner.hpp"

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string resolved_header(const zeno::RunConfig& cfg) {
  std::string line = "command=" + cfg.command;
  for (const auto& [key, value] : cfg.values) {
    if (key == "out") continue;  // not part of the data; keeps files relocatable
    line += " " + key + "=" + value;
  }
  return line;
}

void emit_checks(std::ostream& os, const std::vector<zeno::CheckResult>& checks) {
  int passed = 0;
  for (const auto& c : checks) {
    os << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << "  (observed "
       << zeno::format_g12(c.observed) << ", bound " << zeno::format_g12(c.bound) << ")\n";
    if (c.passed) ++passed;
  }
  os << passed << "/" << checks.size() << " checks passed\n";
}

int run(const zeno::RunConfig& cfg) {
  const zeno::RunOutput out = zeno::run_command(cfg);
  const std::string out_path = cfg.get_string("out");
  const std::string format = cfg.get_string("format", "csv");
  if (format != "csv" && format != "tsv") throw zeno::ConfigError("format must be csv or tsv");
  const char delim = format == "tsv" ? '\t' : ',';

  std::ostringstream body;
  if (!out.checks.empty())
    emit_checks(body, out.checks);
  else
    zeno::write_table(body, out.table, delim, resolved_header(cfg));

  if (out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw IoError("cannot open output file: " + out_path);
    file << body.str();
    if (!file) throw IoError("failed writing output file: " + out_path);
  }
  return out.verify_failed ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"neutron-spin quantum Zeno simulations"};
  std::string command, config_path, out_path, format;
  std::vector<std::string> overrides;
  app.add_option("command", command,
                 "ideal | abstract | scatter | zeno-scatter | fig5a | fig5b | fig6 | "
                 "verify-appendix | verify-all")
      ->required();
  app.add_option("--config", config_path, "key = value run configuration file");
  app.add_option("--set", overrides, "override a single key (key=value), repeatable");
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--format", format, "csv or tsv")->check(CLI::IsMember({"csv", "tsv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    zeno::RunConfig cfg = zeno::default_config(command);
    if (!config_path.empty()) {
      const zeno::RunConfig file_cfg = zeno::RunConfig::from_file(config_path);
      if (!file_cfg.command.empty() && file_cfg.command != command)
        throw zeno::ConfigError("config file is for command '" + file_cfg.command + "'");
      for (const auto& [key, value] : file_cfg.values) cfg.set(key, value);
    }
    for (const std::string& kv : overrides) cfg.apply_override(kv);
    if (!out_path.empty()) cfg.set("out", out_path);
    if (!format.empty()) cfg.set("format", format);
    return run(cfg);
  } catch (const zeno::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const zeno::DegenerateChannel& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const zeno::DegenerateCell& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const zeno::SingularMatrix& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}
