#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "hstw/analytic_waves.hpp"
#include "hstw/commands.hpp"
#include "hstw/errors.hpp"
#include "hstw/io.hpp"
#include "hstw/run_config.hpp"

using namespace hstw;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "hstw_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(HSTW_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("CSV round trip is exact") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  CsvTable t;
  t.header = {"x", "n", "c", "p"};
  t.columns.assign(4, {});
  for (int i = 0; i < 500; ++i) {
    for (auto& col : t.columns) col.push_back(u(rng) * std::pow(10.0, i % 40 - 20));
  }
  t.columns[1][7] = 0.0;
  t.columns[2][9] = 5e-324;
  const fs::path dir = scratch("csv");
  write_csv((dir / "t.csv").string(), t);
  const CsvTable back = read_csv((dir / "t.csv").string());
  CHECK(back.header == t.header);
  REQUIRE(back.columns.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(back.columns[k] == t.columns[k]);
  CHECK(back.column("c") == t.columns[2]);

  std::ifstream in(dir / "t.csv");
  std::string first;
  std::getline(in, first);
  CHECK(first == "x,n,c,p");
}

TEST_CASE("profile CSV carries the wave arrays") {
  const TravelingWave w = solve_analytic(reference_parameters(), 512);
  const fs::path dir = scratch("profile");
  write_csv((dir / "p.csv").string(), profile_table(w.profile));
  const CsvTable back = read_csv((dir / "p.csv").string());
  CHECK(back.column("x") == w.profile.x);
  CHECK(back.column("p") == w.profile.p);
}

TEST_CASE("wave summary JSON") {
  const TravelingWave w = solve_analytic(reference_parameters(), 64);
  const json j = wave_summary_json(w);
  CHECK(j.at("sigma").get<double>() == w.sigma);
  CHECK(j.at("R").get<double>() == w.R);
  CHECK(j.at("solver") == "analytic");
  CHECK(j.at("model") == "vitro");
  CHECK(j.at("R_b").is_null());
  const json round = json::parse(j.dump());
  CHECK(round.at("x1").get<double>() == w.x1);
}

TEST_CASE("config parsing") {
  const RunConfig d = parse_run_config(json::object());
  CHECK(d.params.c_B == 1.0);
  CHECK(d.params.growth.threshold() == 0.6);
  CHECK(d.sim.grid.n_cells == 2000);
  CHECK(d.sim.t_end == 1.5);

  const RunConfig v = parse_run_config(json{{"model", "vivo"}});
  CHECK(v.params.model == NutrientModel::InVivo);
  CHECK(v.params.growth.threshold() == 0.3);

  const RunConfig g = parse_run_config(json::parse(R"({
    "solver": "general",
    "parameters": {"c_B": 2.0,
                   "growth": {"type": "linear", "slope": 100, "c_bar": 0.4},
                   "consumption": {"type": "linear", "psi1": 3}},
    "simulation": {"x_min": -5, "x_max": 5, "n_cells": 100},
    "sweep": {"c_bar": [0.2, 0.3]}
  })"));
  CHECK(g.solver == SolverChoice::General);
  CHECK(g.params.c_B == 2.0);
  CHECK(g.params.growth(0.5) == doctest::Approx(10.0));
  CHECK(g.params.consumption.at_full() == 3.0);
  CHECK(g.sim.grid.dx() == doctest::Approx(0.1));
  CHECK(g.sweep.c_bar.size() == 2);
  CHECK(g.at_point(std::nullopt, 0.2).params.growth(0.5) ==
        doctest::Approx(30.0));

  for (const char* bad :
       {R"({"modle": "vivo"})", R"({"parameters": {"c_B": -1}})",
        R"({"model": "vitreous"})", R"({"parameters": {"c_B": "one"}})",
        R"({"sweep": {"c_B": []}})"}) {
    try {
      parse_run_config(json::parse(bad));
      FAIL("accepted " << bad);
    } catch (const SolverError& e) {
      CHECK(e.kind() == ErrorKind::InvalidParams);
    }
  }
}

TEST_CASE("commands write their outputs") {
  const fs::path dir = scratch("cmd_wave");
  RunConfig cfg;
  cfg.profile_samples = 256;
  CommandContext ctx;
  ctx.out_dir = dir.string();
  CHECK(cmd_wave(cfg, ctx) == kExitOk);
  const json s = read_json(dir / "wave_summary.json");
  CHECK(s.at("sigma").get<double>() ==
        doctest::Approx(9.1152144312158922875 * s.at("R").get<double>())
            .epsilon(1e-14));
  CHECK(s.contains("tolerances"));
  CHECK(s.contains("residuals"));
  CHECK(read_csv((dir / "wave_profile.csv").string()).header ==
        std::vector<std::string>{"x", "n", "c", "p"});
}

TEST_CASE("sweep over c_B") {
  const fs::path dir = scratch("cmd_sweep");
  RunConfig cfg;
  cfg.profile_samples = 128;
  cfg.sweep.c_B = {1.0, 2.0};
  CommandContext ctx;
  ctx.out_dir = dir.string();
  CHECK(cmd_sweep(cfg, ctx) == kExitOk);
  const json idx = read_json(dir / "sweep_index.json");
  REQUIRE(idx.at("points").size() == 2);
  const double s1 = read_json(dir / "point_0" / "wave_summary.json").at("sigma");
  const double s2 = read_json(dir / "point_1" / "wave_summary.json").at("sigma");
  CHECK(s2 > s1);
}

TEST_CASE("simulate with t_end = 0 writes the initial snapshot only") {
  const fs::path dir = scratch("cmd_sim0");
  RunConfig cfg;
  cfg.sim.grid = Grid1D(-5.0, 5.0, 100);
  cfg.sim.t_end = 0.0;
  CommandContext ctx;
  ctx.out_dir = dir.string();
  CHECK(cmd_simulate(cfg, ctx) == kExitOk);
  const json s = read_json(dir / "sim_summary.json");
  REQUIRE(s.at("snapshots").size() == 1);
  CHECK(s.at("snapshots")[0].at("t") == 0.0);
  const CsvTable snap = read_csv(
      (dir / s.at("snapshots")[0].at("file").get<std::string>()).string());
  CHECK(snap.header == std::vector<std::string>{"x", "n", "c", "p", "H"});
  CHECK(read_csv((dir / "front_trace.csv").string()).header ==
        std::vector<std::string>{"t", "x_front"});
}

TEST_CASE("CLI exit codes") {
  const fs::path dir = scratch("cli");
  const std::string out = " --out " + (dir / "o").string();
  CHECK(run_cli("wave --quiet" + out) == 0);
  CHECK(fs::exists(dir / "o" / "wave_summary.json"));
  CHECK(run_cli("wave --model vivo --solver analytic" + out) == 0);

  const fs::path bad_vivo = write_config(
      dir, R"({"model": "vivo",
               "parameters": {"growth": {"type": "step", "c_bar": 0.6}}})");
  CHECK(run_cli("wave --config " + bad_vivo.string() + out) == 2);
  CHECK(run_cli("wave --config " + (dir / "missing.json").string()) == 2);
  CHECK(run_cli("wave --model nowhere" + out) == 2);
  CHECK(run_cli("") == 2);

  const fs::path general_step = write_config(dir, R"({"solver": "general"})");
  CHECK(run_cli("wave --config " + general_step.string() + out) == 2);

  const fs::path tight = write_config(dir, R"({
    "simulation": {"x_min": -5, "x_max": 5, "n_cells": 250, "t_end": 0.3},
    "validation": {"fit_start": 0.1, "fit_end": 0.3,
                   "lower": -1e-6, "upper": 1e-6}})");
  CHECK(run_cli("validate --quiet --config " + tight.string() + out) == 4);
  CHECK(fs::exists(dir / "o" / "validation_report.json"));
}

TEST_CASE("CLI reports the in vivo nonexistence diagnostic") {
  const fs::path dir = scratch("cli_msg");
  const fs::path cfg = write_config(
      dir, R"({"model": "vivo",
               "parameters": {"growth": {"type": "step", "c_bar": 0.6}}})");
  const std::string cmd = std::string(HSTW_CLI_PATH) + " wave --config " +
                          cfg.string() + " --out " + dir.string() + " 2> " +
                          (dir / "err.txt").string();
  CHECK(std::system(cmd.c_str()) != -1);
  std::ifstream in(dir / "err.txt");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("no traveling wave: c_bar >= c_B/2") != std::string::npos);
}
