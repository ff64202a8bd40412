#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hstw/commands.hpp"
#include "hstw/errors.hpp"
#include "hstw/run_config.hpp"

namespace {

struct Flags {
  std::string config;
  std::string model;
  std::string solver;
  std::string out;
  bool quiet = false;
};

hstw::RunConfig resolve(const Flags& f) {
  hstw::RunConfig cfg =
      f.config.empty() ? hstw::RunConfig{} : hstw::load_run_config(f.config);
  if (!f.model.empty()) cfg.set_model(hstw::parse_model(f.model));
  if (!f.solver.empty()) cfg.solver = hstw::parse_solver(f.solver);
  if (!f.out.empty()) cfg.out_dir = f.out;
  cfg.sim.params = cfg.params;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Traveling waves of the Hele-Shaw tumor growth model"};
  app.require_subcommand(1);
  Flags flags;
  app.add_option("--config", flags.config, "JSON run configuration")
      ->check(CLI::ExistingFile);
  app.add_option("--model", flags.model, "Nutrient model")
      ->check(CLI::IsMember({"vitro", "vivo"}));
  app.add_option("--solver", flags.solver, "Wave solver")
      ->check(CLI::IsMember({"analytic", "general"}));
  app.add_option("--out", flags.out, "Output directory");
  app.add_flag("--quiet", flags.quiet, "Suppress stdout summaries");
  app.fallthrough();

  using Command = int (*)(const hstw::RunConfig&, const hstw::CommandContext&);
  Command selected = nullptr;
  const auto add = [&](const char* name, const char* help, Command cmd) {
    app.add_subcommand(name, help)->callback([&selected, cmd] {
      selected = cmd;
    });
  };
  add("wave", "Solve for the traveling wave, write summary and profile",
      hstw::cmd_wave);
  add("simulate", "Run the 1D PDE, write snapshots and the front trace",
      hstw::cmd_simulate);
  add("validate", "Compare the PDE front speed with the analytic speed",
      hstw::cmd_validate);
  add("sweep", "Solve waves over lists of c_B and c_bar values",
      hstw::cmd_sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : hstw::kExitNoWave;
  }

  hstw::CommandContext ctx;
  ctx.quiet = flags.quiet;
  ctx.out = &std::cout;
  ctx.err = &std::cerr;
  return hstw::run_guarded(
      [&] {
        const hstw::RunConfig cfg = resolve(flags);
        ctx.out_dir = cfg.out_dir;
        return selected(cfg, ctx);
      },
      ctx);
}
