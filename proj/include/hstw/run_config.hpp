#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hstw/general_waves.hpp"
#include "hstw/model_core.hpp"
#include "hstw/pde1d.hpp"

namespace hstw {

enum class SolverChoice { Auto, Analytic, General };

SolverChoice parse_solver(const std::string& name);

struct ValidationBand {
  double fit_start = 0.75;
  double fit_end = 1.5;
  double lower = -0.05;  // relative gap sigma_num/sigma_an - 1
  double upper = 0.20;
};

struct SweepRanges {
  std::vector<double> c_B;
  std::vector<double> c_bar;
};

// Everything a CLI run needs. Defaults reproduce the one-dimensional in vitro
// runs: lambda=2, n_c=0.5, g+=21, g-=30, c_bar=0.6, c_B=1, gamma=50 on
// [-20, 20] with 2000 cells up to t=1.5.
struct RunConfig {
  WaveParameters params = reference_parameters();
  SolverChoice solver = SolverChoice::Auto;
  std::size_t profile_samples = 4096;
  GeneralSolverOptions general;
  SimConfig sim = default_sim_config();
  ValidationBand validation;
  SweepRanges sweep;
  std::string out_dir = "out";
  // Raw growth block, re-parsed with c_bar overridden for sweeps.
  nlohmann::json growth_block = {{"type", "step"}};
  bool growth_explicit = false;

  static SimConfig default_sim_config();

  // Copy with c_B and/or the growth threshold replaced.
  RunConfig at_point(std::optional<double> c_B,
                     std::optional<double> c_bar) const;

  void set_model(NutrientModel model);
};

// Parses the JSON config format; unknown keys are rejected. Throws
// SolverError(InvalidParams) on bad input.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

// Growth/consumption blocks: {"type": "step" | "mollified_step" | "linear", ...}
GrowthLaw parse_growth(const nlohmann::json& block);
ConsumptionLaw parse_consumption(const nlohmann::json& block);

}  // namespace hstw
