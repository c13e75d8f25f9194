#include <sstream>

#include "test_helpers.hpp"
#include "zeno/config.hpp"
#include "zeno/fit.hpp"
#include "zeno/runner.hpp"

using namespace zeno;

TEST_CASE("config parsing") {
  std::istringstream in(
      "# a comment\n"
      "command = scatter\n"
      "ka = 1.25\n"
      "n = 7   # trailing comment\n"
      "axis.zeta = 0,1.2,13\n");
  const RunConfig cfg = RunConfig::parse(in);
  CHECK(cfg.command == "scatter");
  CHECK(cfg.get_double("ka", 0.0) == 1.25);
  CHECK(cfg.get_long("n", 0) == 7);
  const auto axes = cfg.axes();
  REQUIRE(axes.size() == 1);
  CHECK(axes[0].name == "zeta");
  CHECK(axes[0].steps == 13);
  CHECK(axes[0].value(0) == 0.0);
  CHECK(axes[0].value(12) == Catch::Approx(1.2));

  SECTION("errors carry the line number") {
    std::istringstream bad("ka = 1\nnot a kv line\n");
    try {
      RunConfig::parse(bad, "test.cfg");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("test.cfg:2") != std::string::npos);
    }
  }

  SECTION("bad numbers name the key") {
    std::istringstream bad("ka = twelve\n");
    const RunConfig c = RunConfig::parse(bad);
    try {
      c.get_double("ka", 0.0);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("ka") != std::string::npos);
    }
  }

  SECTION("swept axes need at least two steps") {
    std::istringstream bad("axis.ka = 0,1,1\n");
    CHECK_THROWS_AS(RunConfig::parse(bad).axes(), ConfigError);
  }
}

TEST_CASE("config round-trip through serialization") {
  RunConfig cfg = default_config("fig5a");
  cfg.set("out", "surface.csv");
  cfg.apply_override("axis.kD=0,30,40");
  std::istringstream back(cfg.serialize());
  const RunConfig again = RunConfig::parse(back);
  CHECK(again == cfg);
}

TEST_CASE("geometric axes hit exact powers") {
  const Axis ax{"n", 1.0, 1024.0, 11, true};
  for (int i = 0; i <= 10; ++i) CHECK(ax.value(i) == Catch::Approx(std::pow(2.0, i)).epsilon(1e-12));
}

TEST_CASE("line fitting") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  const std::vector<double> y{-0.5, -2.5, -4.5, -6.5};
  const LineFit f = fit_line(x, y);
  CHECK(f.slope == Catch::Approx(-2.0).margin(1e-12));
  CHECK(f.intercept == Catch::Approx(1.5).margin(1e-12));
  CHECK(f.normalized_residual < 1e-12);
  CHECK_THROWS_AS(fit_line({1.0}, {2.0}), InvalidParameter);
}

TEST_CASE("table writer format") {
  Table t;
  t.columns = {"x", "y"};
  t.rows = {{1.0, 0.125}, {2.0, 1.0 / 3.0}};
  std::ostringstream os;
  write_table(os, t, ',', "command=demo");
  CHECK(os.str() ==
        "# command=demo\n"
        "x,y\n"
        "1,0.125\n"
        "2,0.333333333333\n");
}

TEST_CASE("runner: ideal survival sweep") {
  const RunConfig cfg = default_config("ideal");
  const RunOutput out = run_command(cfg);
  REQUIRE(out.table.columns == std::vector<std::string>{"n", "survival"});
  REQUIRE(out.table.rows.size() == 11);  // N = 1, 2, 4, ..., 1024
  double prev = -1.0;
  for (const auto& row : out.table.rows) {
    CHECK(row[1] >= prev);
    prev = row[1];
  }
  CHECK(out.table.rows.front()[0] == 1.0);
  CHECK(out.table.rows.back()[0] == 1024.0);
  CHECK(out.table.rows.back()[1] > 0.997);
}

TEST_CASE("runner: fig5a grid stays inside probability bounds") {
  RunConfig cfg = default_config("fig5a");
  cfg.set("axis.kD", "0,30,12");
  cfg.set("axis.zeta", "0,1.2,11");
  const RunOutput out = run_command(cfg);
  REQUIRE(out.table.rows.size() == 12u * 11u);
  for (const auto& row : out.table.rows) {
    CHECK(row[2] >= 0.0);
    CHECK(row[2] <= 1.0 + 1e-12);
  }
  // grid-major ordering: kD is the slow axis
  CHECK(out.table.rows[0][0] == 0.0);
  CHECK(out.table.rows[10][0] == 0.0);
  CHECK(out.table.rows[11][0] == Catch::Approx(30.0 / 11.0));
}

TEST_CASE("runner: fig6 table") {
  RunConfig cfg = default_config("fig6");
  cfg.set("n_max", "4");
  const RunOutput out = run_command(cfg);
  REQUIRE(out.table.rows.size() == 4);
  for (const auto& row : out.table.rows) {
    CHECK(row[1] == Catch::Approx(1.0).margin(1e-9));   // no measurement
    CHECK(row[2] == Catch::Approx(1.0).margin(1e-12));  // insensitive limit
    CHECK(row[3] < 1.0);                                // sensitive limit
  }
}

TEST_CASE("runner: scatter without axes emits one row") {
  RunConfig cfg = default_config("scatter");
  cfg.values.erase("axis.ka");
  const RunOutput out = run_command(cfg);
  REQUIRE(out.table.rows.size() == 1);
  CHECK(out.table.columns.front() == "T_up");
  CHECK(out.table.rows[0][4] == Catch::Approx(1.0).margin(1e-9));  // flux
}

TEST_CASE("runner: validation failures throw ConfigError") {
  CHECK_THROWS_AS(default_config("no-such-command"), ConfigError);
  RunConfig cfg = default_config("ideal");
  cfg.set("axis.n", "1,1024,11");  // linear axis produces fractional counts
  CHECK_THROWS_AS(run_command(cfg), ConfigError);
  RunConfig neg = default_config("ideal");
  neg.set("omega_t", "-1");
  CHECK_THROWS_AS(run_command(neg), ConfigError);
}
