#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "hstw/errors.hpp"
#include "hstw/run_config.hpp"
#include "hstw/wave.hpp"

namespace hstw {

enum ExitCode : int {
  kExitOk = 0,
  kExitNoWave = 2,
  kExitNumerical = 3,
  kExitValidation = 4,
};

int exit_code_for(const SolverError& err);

struct CommandContext {
  std::string out_dir;
  bool quiet = false;
  std::ostream* out = nullptr;  // stdout-like; nullptr silences
  std::ostream* err = nullptr;  // diagnostics
};

// Step laws go to the analytic solver, anything else to the general one,
// unless the config forces a solver.
TravelingWave compute_wave(const RunConfig& cfg);

int cmd_wave(const RunConfig& cfg, const CommandContext& ctx);
int cmd_simulate(const RunConfig& cfg, const CommandContext& ctx);
int cmd_validate(const RunConfig& cfg, const CommandContext& ctx);
int cmd_sweep(const RunConfig& cfg, const CommandContext& ctx);

// Runs a command, turning exceptions into exit codes plus a one-line
// diagnostic on ctx.err.
int run_guarded(const std::function<int()>& body, const CommandContext& ctx);

}  // namespace hstw
